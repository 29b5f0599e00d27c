//! Brute-force reference values, independent of the closed forms.

use crate::complex::ZERO;
use crate::poly::ComplexPolynomial;
use crate::{Error, Result, C64};
use serde::Serialize;

/// Roots closer than this to an integer make `sum n^k / P(n)` ill-defined.
pub const NEAR_INTEGER_THRESHOLD: f64 = 1e-8;
pub const DEFAULT_ORACLE_N: usize = 100_000;
const ERROR_FLOOR: f64 = 1e-12;
const AVERAGING_DEPTH: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OracleEstimate {
    #[serde(serialize_with = "crate::complex::serde_c64::one")]
    pub estimate: C64,
    pub error_bar: f64,
}

/// Neumaier-compensated accumulator, real and imaginary parts kept apart.
#[derive(Debug, Clone, Copy, Default)]
struct Accumulator {
    sum: [f64; 2],
    comp: [f64; 2],
}

impl Accumulator {
    fn add(&mut self, z: C64) {
        for (i, v) in [z.re, z.im].into_iter().enumerate() {
            let t = self.sum[i] + v;
            if self.sum[i].abs() >= v.abs() {
                self.comp[i] += (self.sum[i] - t) + v;
            } else {
                self.comp[i] += (v - t) + self.sum[i];
            }
            self.sum[i] = t;
        }
    }

    fn value(&self) -> C64 {
        C64::new(self.sum[0] + self.comp[0], self.sum[1] + self.comp[1])
    }
}

/// Fails if any root of `p` lies within [`NEAR_INTEGER_THRESHOLD`] of an integer.
pub fn check_integer_roots(roots: &[C64]) -> Result<()> {
    for &r in roots {
        let nearest = r.re.round();
        let distance = (r - C64::new(nearest, 0.0)).norm();
        if distance < NEAR_INTEGER_THRESHOLD {
            return Err(Error::NearIntegerRoot {
                root: r,
                nearest: nearest as i64,
                distance,
            });
        }
    }
    Ok(())
}

fn term(p: &ComplexPolynomial, k: usize, n: f64) -> C64 {
    let x = C64::new(n, 0.0);
    x.powu(k as u32) / p.eval(x)
}

/// Symmetric partial sums `sum_{|n| <= N}` for every `N` in `0..=last`,
/// with `n` and `-n` combined before accumulation.
fn partial_sums(p: &ComplexPolynomial, k: usize, alternating: bool, last: usize) -> Vec<C64> {
    let mut acc = Accumulator::default();
    let mut out = Vec::with_capacity(last + 1);
    acc.add(term(p, k, 0.0));
    out.push(acc.value());
    for n in 1..=last {
        let nf = n as f64;
        let mut pair = term(p, k, nf) + term(p, k, -nf);
        if alternating && n % 2 == 1 {
            pair = -pair;
        }
        acc.add(pair);
        out.push(acc.value());
    }
    out
}

/// Estimates `sum_{n in Z} (±1)^n n^k / P(n)` as a symmetric limit.
///
/// The plain sum is extrapolated from `S(N), S(2N), S(4N)` (eliminating the
/// `1/N` and `1/N^2` tail terms); the alternating one by repeatedly averaging
/// the last twelve consecutive partial sums from `S(N)` on.
pub fn brute_force_sum(
    p: &ComplexPolynomial,
    roots: &[C64],
    k: usize,
    alternating: bool,
    n: usize,
) -> Result<OracleEstimate> {
    let m = p.degree();
    if k >= m {
        return Err(Error::InvalidArgument(format!(
            "power k = {k} must be below the degree {m}"
        )));
    }
    if n == 0 {
        return Err(Error::InvalidArgument("oracle N must be positive".into()));
    }
    check_integer_roots(roots)?;

    let (estimate, error_bar) = if alternating {
        let sums = partial_sums(p, k, true, n + AVERAGING_DEPTH - 1);
        let mut level: Vec<C64> = sums[n..].to_vec();
        let mut previous = level[level.len() - 1];
        while level.len() > 1 {
            previous = level[level.len() - 1];
            level = level.windows(2).map(|w| (w[0] + w[1]) * 0.5).collect();
        }
        (level[0], (level[0] - previous).norm())
    } else {
        let sums = partial_sums(p, k, false, 4 * n);
        let (s1, s2, s4) = (sums[n], sums[2 * n], sums[4 * n]);
        let richardson = (s4 * 8.0 - s2 * 6.0 + s1) / 3.0;
        let linear = s4 * 2.0 - s2;
        (richardson, (richardson - linear).norm())
    };
    Ok(OracleEstimate {
        estimate,
        error_bar: error_bar.max(ERROR_FLOOR),
    })
}

const GL8_NODES: [f64; 4] = [
    0.183_434_642_495_649_8,
    0.525_532_409_916_329,
    0.796_666_477_413_626_7,
    0.960_289_856_497_536_3,
];
const GL8_WEIGHTS: [f64; 4] = [
    0.362_683_783_378_362,
    0.313_706_645_877_887_3,
    0.222_381_034_453_374_5,
    0.101_228_536_290_376_3,
];

/// Composite 8-point Gauss–Legendre rule on `[a, b]` with `panels` panels.
pub fn gauss_legendre_integrate<F>(f: F, a: f64, b: f64, panels: usize) -> Result<C64>
where
    F: Fn(f64) -> Result<C64>,
{
    if panels == 0 {
        return Err(Error::InvalidArgument(
            "at least one panel is needed".into(),
        ));
    }
    let h = (b - a) / panels as f64;
    let mut acc = Accumulator::default();
    for p in 0..panels {
        let mid = a + (p as f64 + 0.5) * h;
        let half = 0.5 * h;
        let mut panel = ZERO;
        for (x, w) in GL8_NODES.iter().zip(GL8_WEIGHTS.iter()) {
            panel += (f(mid - half * x)? + f(mid + half * x)?) * *w;
        }
        acc.add(panel * half);
    }
    Ok(acc.value())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::I;
    use crate::poly::{find_roots, parse_polynomial, DEFAULT_MAX_ITER, DEFAULT_TOL};
    use std::f64::consts::PI;

    fn roots(p: &ComplexPolynomial) -> Vec<C64> {
        find_roots(p, DEFAULT_TOL, DEFAULT_MAX_ITER)
            .unwrap()
            .roots()
            .to_vec()
    }

    #[test]
    fn plain_sum_of_inverse_squares_plus_one() {
        let p = parse_polynomial("x^2+1").unwrap();
        let r = brute_force_sum(&p, &roots(&p), 0, false, 100_000).unwrap();
        let exact = PI / PI.tanh();
        assert!((r.estimate - exact).norm() < 1e-9, "{}", r.estimate);
        assert!(r.error_bar < 1e-9);
        assert!((r.estimate - 3.1533480949).norm() < 1e-10);
    }

    #[test]
    fn odd_terms_cancel() {
        let p = parse_polynomial("x^2+1").unwrap();
        let r = brute_force_sum(&p, &roots(&p), 1, false, 1000).unwrap();
        assert_eq!(r.estimate, ZERO);
        let r = brute_force_sum(&p, &roots(&p), 1, true, 1000).unwrap();
        assert_eq!(r.estimate, ZERO);
    }

    #[test]
    fn alternating_sum() {
        let p = parse_polynomial("x^2+1").unwrap();
        let r = brute_force_sum(&p, &roots(&p), 0, true, 1000).unwrap();
        assert!((r.estimate - PI / PI.sinh()).norm() < 1e-12);
        assert!((r.estimate - 0.27202905498213314).norm() < 1e-12);
    }

    #[test]
    fn non_monic_scaling() {
        let p = parse_polynomial("2x^2+2").unwrap();
        let r = brute_force_sum(&p, &roots(&p), 0, true, 1000).unwrap();
        assert!((r.estimate - PI / PI.sinh() / 2.0).norm() < 1e-12);
    }

    #[test]
    fn rejects_integer_roots_and_bad_k() {
        let p = parse_polynomial("x^2-1").unwrap();
        assert!(matches!(
            brute_force_sum(&p, &roots(&p), 0, false, 100),
            Err(Error::NearIntegerRoot { .. })
        ));
        let q = parse_polynomial("x^2+1").unwrap();
        assert!(brute_force_sum(&q, &roots(&q), 2, false, 100).is_err());
    }

    #[test]
    fn quadrature() {
        let v = gauss_legendre_integrate(|x| Ok(C64::new(x.cos(), 0.0)), 0.0, PI / 2.0, 4).unwrap();
        assert!((v - 1.0).norm() < 1e-15);
        let v = gauss_legendre_integrate(|x| Ok((I * x * 3.0).exp()), -PI, PI, 32).unwrap();
        assert!(v.norm() < 1e-13);
        let poly =
            gauss_legendre_integrate(|x| Ok(C64::new(x.powi(15), 0.0)), 0.0, 1.0, 1).unwrap();
        assert!((poly - 1.0 / 16.0).norm() < 1e-15);
    }
}
