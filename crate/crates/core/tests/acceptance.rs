//! One test per acceptance criterion; each prints a single PASS/FAIL line.
//! Run with `cargo test -p gentrig --test acceptance -- --nocapture --test-threads 1`.

use gentrig::acceptance::{run_criterion, AcceptanceConfig};

fn check(id: usize) {
    let outcome = run_criterion(id, &AcceptanceConfig::default());
    println!("{outcome}");
    assert!(outcome.passed, "{outcome}");
}

#[test]
fn criterion_01_associated_matrix() {
    check(1);
}

#[test]
fn criterion_02_closed_forms() {
    check(2);
}

#[test]
fn criterion_03_known_sums() {
    check(3);
}

#[test]
fn criterion_04_identity_constancy() {
    check(4);
}

#[test]
fn criterion_05_cyclotomic_determinant() {
    check(5);
}

#[test]
fn criterion_06_cubic_identity() {
    check(6);
}

#[test]
fn criterion_07_addition_theorem() {
    check(7);
}

#[test]
fn criterion_08_taylor_direct_rescale() {
    check(8);
}

#[test]
fn criterion_09_factorial_identity() {
    check(9);
}

#[test]
fn criterion_10_matrix_a_nondegenerate() {
    check(10);
}

#[test]
fn criterion_11_fourier_quadrature() {
    check(11);
}

#[test]
fn criterion_12_derivative_matrix() {
    check(12);
}

#[test]
fn criterion_13_target_family_sums() {
    check(13);
}
