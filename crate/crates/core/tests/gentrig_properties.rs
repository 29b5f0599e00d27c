use gentrig::gentrig::{finite_difference_derivative, identity_certificate, GenTrigSystem};
use gentrig::linalg::vec_norm_inf;
use gentrig::poly::{ComplexPolynomial, RootSet};
use gentrig::C64;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn in_disc(rng: &mut ChaCha8Rng, radius: f64) -> C64 {
    C64::from_polar(
        radius * rng.gen::<f64>().sqrt(),
        rng.gen_range(0.0..std::f64::consts::TAU),
    )
}

fn random_roots(rng: &mut ChaCha8Rng, degree: usize, radius: f64) -> Vec<C64> {
    (0..degree).map(|_| in_disc(rng, radius)).collect()
}

#[test]
fn tuple_recurrence() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..100 {
        let m = rng.gen_range(2..=8);
        let p = ComplexPolynomial::from_roots(&random_roots(&mut rng, m, 1.5));
        let sys = GenTrigSystem::new(&p).unwrap();
        let t = sys.tuples();
        let a = |k: usize| p.coeff(k);
        let sign = |k: usize| if k.is_multiple_of(2) { 1.0 } else { -1.0 };
        for (j, &r) in sys.roots().roots().iter().enumerate() {
            let tol = 1e-9 * (1.0 + r.norm().powi(m as i32));
            for l in 1..m - 1 {
                let rhs = a(m - l) * r * sign(l) - t.get(l + 1, j);
                assert!((r * t.get(l, j) - rhs).norm() <= tol, "l={l}");
            }
            let rhs = a(1) * r * sign(m - 1) - a(0) * sign(m);
            assert!((r * t.get(m - 1, j) - rhs).norm() <= tol);
        }
    }
}

#[test]
fn taylor_series_matches_direct_evaluation() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for _ in 0..30 {
        let m = rng.gen_range(1..=6);
        let p = ComplexPolynomial::from_roots(&random_roots(&mut rng, m, 1.0));
        let sys = GenTrigSystem::new(&p).unwrap();
        for l in 0..m {
            let b = sys.taylor_coeffs(l, 40).unwrap();
            for _ in 0..5 {
                let x = in_disc(&mut rng, 2.0);
                let series: C64 = b
                    .iter()
                    .rev()
                    .fold(C64::new(0.0, 0.0), |acc, c| acc * x + c);
                assert!((series - sys.eval_s(l, x).unwrap()).norm() < 1e-9);
            }
        }
    }
}

#[test]
fn taylor_numerators_do_not_depend_on_root_order() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..30 {
        let m = rng.gen_range(2..=6);
        let p = ComplexPolynomial::from_roots(&random_roots(&mut rng, m, 1.0));
        let sys = GenTrigSystem::new(&p).unwrap();
        let mut shuffled = sys.roots().roots().to_vec();
        shuffled.shuffle(&mut rng);
        let other =
            GenTrigSystem::from_roots(&p, RootSet::from_roots(&p, shuffled).unwrap()).unwrap();
        for l in 0..m {
            let a = sys.taylor_numerators(l, 20).unwrap();
            let b = other.taylor_numerators(l, 20).unwrap();
            for (x, y) in a.iter().zip(&b) {
                assert!((x - y).norm() <= 1e-10 * (1.0 + x.norm()));
            }
        }
    }
}

#[test]
fn gaussian_integer_coefficients_give_gaussian_integer_numerators() {
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    for _ in 0..20 {
        let m = rng.gen_range(2..=4);
        let mut coeffs: Vec<C64> = (0..m)
            .map(|_| C64::new(rng.gen_range(-2..=2) as f64, rng.gen_range(-2..=2) as f64))
            .collect();
        coeffs.push(C64::new(1.0, 0.0));
        let p = ComplexPolynomial::new(coeffs).unwrap();
        let Ok(sys) = GenTrigSystem::new(&p) else {
            continue;
        };
        for l in 0..m {
            for (k, v) in sys.taylor_numerators(l, 10).unwrap().iter().enumerate() {
                let nearest = C64::new(v.re.round(), v.im.round());
                assert!((v - nearest).norm() < 1e-6, "{p}: l={l} k={k} value {v}");
            }
        }
    }
}

#[test]
fn derivative_matrix_matches_finite_differences() {
    let mut rng = ChaCha8Rng::seed_from_u64(25);
    for _ in 0..10 {
        let m = rng.gen_range(2..=6);
        let p = ComplexPolynomial::from_roots(&random_roots(&mut rng, m, 1.0));
        let sys = GenTrigSystem::new(&p).unwrap();
        for _ in 0..10 {
            let x = in_disc(&mut rng, 1.0);
            let exact = sys.k().mul_vec(&sys.eval_s_all(x).unwrap());
            let fd = finite_difference_derivative(&sys, x, 1e-5).unwrap();
            let diff: Vec<C64> = exact.iter().zip(&fd).map(|(a, b)| a - b).collect();
            assert!(vec_norm_inf(&diff) < 1e-6);
        }
    }
}

#[test]
fn certificate_determinant_is_constant() {
    let mut rng = ChaCha8Rng::seed_from_u64(26);
    for _ in 0..25 {
        let m = rng.gen_range(2..=6);
        let roots: Vec<C64> = (0..m)
            .map(|_| loop {
                let z = in_disc(&mut rng, 1.0);
                if z.norm() > 1e-3 {
                    break z;
                }
            })
            .collect();
        let p = ComplexPolynomial::from_roots(&roots);
        let sys = GenTrigSystem::new(&p).unwrap();
        let cert = identity_certificate(&sys).unwrap();
        assert!(cert.lambda.norm() > 0.0);
        assert!(cert.eigen_residual <= 1e-8 * (1.0 + sys.k().pow(m as u32).norm_inf()));
        let d0 = cert.eval_det_m(&sys, C64::new(0.0, 0.0)).unwrap();
        assert!((d0 - cert.det_ref).norm() < 1e-14 * (1.0 + d0.norm()));
        for _ in 0..20 {
            let x = in_disc(&mut rng, 1.0);
            let d = cert.eval_det_m(&sys, x).unwrap();
            assert!((d - d0).norm() <= 1e-7 * (1.0 + d0.norm()));
        }
    }
}
