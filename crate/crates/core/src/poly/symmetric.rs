use super::RootSet;
use crate::complex::{ONE, ZERO};
use crate::C64;

/// `e_0..e_m` of the roots, by expanding `prod (1 + r_j t)` one root at a time.
pub fn elementary_symmetric(roots: &RootSet) -> Vec<C64> {
    let mut e = vec![ONE];
    for &r in roots.roots() {
        e.push(ZERO);
        for k in (1..e.len()).rev() {
            let prev = e[k - 1];
            e[k] += r * prev;
        }
    }
    e
}

/// `p_1..p_count` via Newton's identities on the elementary symmetric
/// polynomials (never by powering the roots directly):
///
/// `p_k = sum_{i=1}^{k-1} (-1)^{i-1} e_i p_{k-i} + (-1)^{k-1} k e_k`.
pub fn power_sums(roots: &RootSet, count: usize) -> Vec<C64> {
    let e = elementary_symmetric(roots);
    let e_at = |i: usize| e.get(i).copied().unwrap_or(ZERO);
    let mut p: Vec<C64> = Vec::with_capacity(count);
    for k in 1..=count {
        let mut acc = e_at(k) * (k as f64) * crate::complex::sign(k - 1);
        for i in 1..k {
            acc += e_at(i) * p[k - i - 1] * crate::complex::sign(i - 1);
        }
        p.push(acc);
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{find_roots, ComplexPolynomial, DEFAULT_MAX_ITER, DEFAULT_TOL};

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    fn rootset(real: &[f64]) -> RootSet {
        let p = ComplexPolynomial::from_real(real).unwrap();
        find_roots(&p, DEFAULT_TOL, DEFAULT_MAX_ITER).unwrap()
    }

    fn close(a: &[C64], b: &[f64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, &y)| (x - y).norm() < tol)
    }

    #[test]
    fn vieta_on_cubic() {
        let e = elementary_symmetric(&rootset(&[1.0, 0.0, 1.0, 1.0]));
        assert!(close(&e, &[1.0, -1.0, 0.0, -1.0], 1e-12));
    }

    #[test]
    fn integer_roots() {
        let p = ComplexPolynomial::from_roots(&[c(1.0), c(2.0), c(3.0)]);
        let rs = RootSet::from_roots(&p, vec![c(1.0), c(2.0), c(3.0)]).unwrap();
        assert!(close(
            &elementary_symmetric(&rs),
            &[1.0, 6.0, 11.0, 6.0],
            0.0 + 1e-15
        ));
        let p = ComplexPolynomial::from_roots(&[c(5.0)]);
        let rs = RootSet::from_roots(&p, vec![c(5.0)]).unwrap();
        assert!(close(&elementary_symmetric(&rs), &[1.0, 5.0], 1e-15));
    }

    #[test]
    fn newton_identities() {
        // p_k worked by hand from e_1 = -1, e_2 = 0, e_3 = -1.
        let p = power_sums(&rootset(&[1.0, 0.0, 1.0, 1.0]), 4);
        assert!(close(&p, &[-1.0, 1.0, -4.0, 5.0], 1e-12));
        let p = power_sums(&rootset(&[1.0, 0.0, 1.0]), 2);
        assert!(close(&p, &[0.0, -2.0], 1e-14));
        for m in 1..=7 {
            let mut coeffs = vec![0.0; m + 1];
            coeffs[0] = -1.0;
            coeffs[m] = 1.0;
            let p = power_sums(&rootset(&coeffs), 3 * m);
            for (k, pk) in p.iter().enumerate() {
                let expect = if (k + 1) % m == 0 { m as f64 } else { 0.0 };
                assert!((pk - expect).norm() < 1e-10, "m={m} k={}", k + 1);
            }
        }
    }
}
