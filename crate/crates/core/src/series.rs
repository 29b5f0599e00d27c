//! Closed-form values of
//!
//! ```text
//! A_k = sum_{n in Z} n^k / P(n),     B_k = sum_{n in Z} (-1)^n n^k / P(n),
//! ```
//!
//! for `0 <= k < m`, from the Fourier series of the boundary functions
//!
//! ```text
//! R_l(x) = sum_j T[l][j] exp(-i r_j x) / (exp(-i r_j π) - exp(i r_j π)),   |x| <= π.
//! ```
//!
//! Their coefficients are `c_{-n,l} = (-1)^n sum_k C[l][k] n^k / P(n)`, so that
//! `R(0) = C·B` and `(R(π) + R(-π))/2 = C·A`. `A_{m-1}` is the symmetric
//! limit `lim_N sum_{|n|<=N}`, the only one that matches the boundary values.

use crate::complex::{sign, I, ZERO};
use crate::gentrig::{GenTrigSystem, EXPONENT_LIMIT};
use crate::linalg::{condition_estimate, solve, vec_norm_inf, ComplexMatrix};
use crate::oracle::{brute_force_sum, check_integer_roots, OracleEstimate, DEFAULT_ORACLE_N};
use crate::poly::{ComplexPolynomial, DEFAULT_MAX_ITER, DEFAULT_TOL};
use crate::{Error, Result, C64};
use serde::Serialize;
use std::f64::consts::PI;

/// Relative disagreement between the two C(P) algorithms treated as a bug.
pub const CROSS_CHECK_TOL: f64 = 1e-9;

/// `exp(-i r x) / (exp(-i r π) - exp(i r π))`, rewritten so that only the
/// decaying exponential of the denominator is formed.
fn boundary_kernel(r: C64, x: C64) -> Result<C64> {
    let (shift, num_shift) = if r.im >= 0.0 {
        // divide through by exp(-i r π)
        (2.0 * I * r * PI, x - PI)
    } else {
        (-2.0 * I * r * PI, x + PI)
    };
    let arg = -I * r * num_shift;
    if arg.re.abs() > EXPONENT_LIMIT {
        return Err(Error::Overflow {
            root: r,
            magnitude: arg.re.abs(),
        });
    }
    let denom = if r.im >= 0.0 {
        1.0 - shift.exp()
    } else {
        shift.exp() - 1.0
    };
    Ok(arg.exp() / denom)
}

pub fn eval_r(sys: &GenTrigSystem, l: usize, x: C64) -> Result<C64> {
    if l >= sys.m() {
        return Err(Error::InvalidArgument(format!(
            "index l = {l} out of range 0..{}",
            sys.m()
        )));
    }
    Ok(eval_r_all(sys, x)?[l])
}

/// `[R_0(x), .., R_{m-1}(x)]`.
pub fn eval_r_all(sys: &GenTrigSystem, x: C64) -> Result<Vec<C64>> {
    let roots = sys.roots().roots();
    check_integer_roots(roots)?;
    let kernels: Vec<C64> = roots
        .iter()
        .map(|&r| boundary_kernel(r, x))
        .collect::<Result<_>>()?;
    let t = sys.tuples();
    Ok((0..sys.m())
        .map(|l| t.row(l).iter().zip(&kernels).map(|(a, b)| a * b).sum())
        .collect())
}

fn parity(n: i64) -> f64 {
    if n.rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    }
}

/// `c_{-n,l} = (-1)^n / (2πi) · sum_j T[l][j] / (n - r_j)`.
pub fn fourier_coefficient(sys: &GenTrigSystem, l: usize, n: i64) -> Result<C64> {
    if l >= sys.m() {
        return Err(Error::InvalidArgument(format!(
            "index l = {l} out of range 0..{}",
            sys.m()
        )));
    }
    let roots = sys.roots().roots();
    check_integer_roots(roots)?;
    let nf = C64::new(n as f64, 0.0);
    let s: C64 = sys
        .tuples()
        .row(l)
        .iter()
        .zip(roots)
        .map(|(t, r)| t / (nf - r))
        .sum();
    Ok(s * parity(n) / (2.0 * PI * I))
}

/// The same coefficient through `C`: `(-1)^n sum_k C[l][k] n^k / P(n)`, `P` monic.
pub fn fourier_coefficient_via_matrix(
    sys: &GenTrigSystem,
    c: &AssociatedMatrix,
    l: usize,
    n: i64,
) -> Result<C64> {
    if c.m() != sys.m() {
        return Err(Error::DimensionMismatch {
            expected: sys.m(),
            found: c.m(),
        });
    }
    let nf = C64::new(n as f64, 0.0);
    let numer: C64 = (0..c.m()).map(|k| c.entry(l, k) * nf.powu(k as u32)).sum();
    Ok(numer * parity(n) / sys.poly().eval(nf))
}

/// `C(P)` for the monic normalisation of `P`, columns in ascending powers of `n`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AssociatedMatrix {
    m: usize,
    /// `2πi·C`.
    #[serde(serialize_with = "crate::complex::serde_c64::grid")]
    scaled: Vec<Vec<C64>>,
    cross_check: f64,
    condition_estimate: f64,
}

impl AssociatedMatrix {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn entry(&self, l: usize, k: usize) -> C64 {
        self.scaled[l][k] / (2.0 * PI * I)
    }

    /// `2πi·C`, ascending columns.
    pub fn scaled(&self) -> &[Vec<C64>] {
        &self.scaled
    }

    /// `2πi·C` with columns ordered from `n^{m-1}` down to `n^0`.
    pub fn scaled_descending(&self) -> Vec<Vec<C64>> {
        self.scaled
            .iter()
            .map(|row| row.iter().rev().copied().collect())
            .collect()
    }

    pub fn matrix(&self) -> ComplexMatrix {
        let rows: Vec<Vec<C64>> = (0..self.m)
            .map(|l| (0..self.m).map(|k| self.entry(l, k)).collect())
            .collect();
        ComplexMatrix::from_rows(&rows).expect("square and finite by construction")
    }

    /// Largest entrywise difference between the two algorithms.
    pub fn cross_check(&self) -> f64 {
        self.cross_check
    }

    /// `||C||_1 ||C^{-1}||_1`; infinite when `C` is singular.
    pub fn condition_estimate(&self) -> f64 {
        self.condition_estimate
    }
}

/// Coefficients of `n^k` in `sum_j T[l][j]·P(n)/(n - r_j)`.
pub fn associated_by_quotients(sys: &GenTrigSystem) -> Result<Vec<Vec<C64>>> {
    let m = sys.m();
    let quotients: Vec<ComplexPolynomial> = sys
        .roots()
        .roots()
        .iter()
        .map(|&r| sys.poly().synthetic_divide(r).map(|(q, _)| q))
        .collect::<Result<_>>()?;
    Ok((0..m)
        .map(|l| {
            (0..m)
                .map(|k| {
                    sys.tuples()
                        .row(l)
                        .iter()
                        .zip(&quotients)
                        .map(|(t, q)| t * q.coeff(k))
                        .sum()
                })
                .collect()
        })
        .collect())
}

/// Same matrix from the tuple coefficients alone:
/// `sum_j T[l][j]·(a_{k+1} - (-1)^{m-k-1} T[m-k-1][j])` for `k < m-1`, `sum_j T[l][j]` for `k = m-1`.
pub fn associated_by_tuples(sys: &GenTrigSystem) -> Vec<Vec<C64>> {
    let m = sys.m();
    let t = sys.tuples();
    let a = sys.poly();
    (0..m)
        .map(|l| {
            (0..m)
                .map(|k| {
                    if k == m - 1 {
                        return t.row_sum(l);
                    }
                    let s = sign(m - k - 1);
                    (0..m)
                        .map(|j| t.get(l, j) * (a.coeff(k + 1) - t.get(m - k - 1, j) * s))
                        .sum()
                })
                .collect()
        })
        .collect()
}

pub fn associated_matrix(sys: &GenTrigSystem) -> Result<AssociatedMatrix> {
    check_integer_roots(sys.roots().roots())?;
    let primary = associated_by_quotients(sys)?;
    let secondary = associated_by_tuples(sys);
    let mut diff = 0.0f64;
    let mut size = 1.0f64;
    for (r1, r2) in primary.iter().zip(&secondary) {
        for (a, b) in r1.iter().zip(r2) {
            diff = diff.max((a - b).norm());
            size = size.max(a.norm());
        }
    }
    if diff > CROSS_CHECK_TOL * size {
        return Err(Error::CrossCheck(diff));
    }
    let mut out = AssociatedMatrix {
        m: sys.m(),
        scaled: primary,
        cross_check: diff,
        condition_estimate: f64::INFINITY,
    };
    if let Ok(c) = condition_estimate(&out.matrix()) {
        out.condition_estimate = c;
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesOptions {
    pub root_tol: f64,
    pub max_iter: usize,
    /// `None` skips the brute-force comparison.
    pub oracle_n: Option<usize>,
}

impl Default for SeriesOptions {
    fn default() -> Self {
        SeriesOptions {
            root_tol: DEFAULT_TOL,
            max_iter: DEFAULT_MAX_ITER,
            oracle_n: Some(DEFAULT_ORACLE_N),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeriesResult {
    pub m: usize,
    /// `A_k`, `k = 0..m` ascending.
    #[serde(serialize_with = "crate::complex::serde_c64::vec")]
    pub a: Vec<C64>,
    /// `B_k`, `k = 0..m` ascending.
    #[serde(serialize_with = "crate::complex::serde_c64::vec")]
    pub b: Vec<C64>,
    pub oracle_a: Option<Vec<OracleEstimate>>,
    pub oracle_b: Option<Vec<OracleEstimate>>,
    pub condition_estimate: f64,
    /// `||C·A - rhs_A||_inf` before dividing by the leading coefficient.
    pub residual_a: f64,
    pub residual_b: f64,
    pub associated: AssociatedMatrix,
}

impl SeriesResult {
    /// Largest `|value - oracle| - error_bar` over both vectors; `None` without an oracle.
    pub fn oracle_excess(&self) -> Option<f64> {
        let oa = self.oracle_a.as_ref()?;
        let ob = self.oracle_b.as_ref()?;
        let excess = |v: &[C64], o: &[OracleEstimate]| {
            v.iter()
                .zip(o)
                .map(|(x, e)| (x - e.estimate).norm() - e.error_bar)
                .fold(f64::NEG_INFINITY, f64::max)
        };
        Some(excess(&self.a, oa).max(excess(&self.b, ob)))
    }

    /// Largest certified gap `|value - oracle| + error_bar` over both vectors.
    pub fn oracle_bound(&self) -> Option<f64> {
        let oa = self.oracle_a.as_ref()?;
        let ob = self.oracle_b.as_ref()?;
        let bound = |v: &[C64], o: &[OracleEstimate]| {
            v.iter()
                .zip(o)
                .map(|(x, e)| (x - e.estimate).norm() + e.error_bar)
                .fold(0.0, f64::max)
        };
        Some(bound(&self.a, oa).max(bound(&self.b, ob)))
    }

    /// Largest `|value - oracle|` over both vectors.
    pub fn oracle_deviation(&self) -> Option<f64> {
        let oa = self.oracle_a.as_ref()?;
        let ob = self.oracle_b.as_ref()?;
        let dev = |v: &[C64], o: &[OracleEstimate]| {
            v.iter()
                .zip(o)
                .map(|(x, e)| (x - e.estimate).norm())
                .fold(0.0, f64::max)
        };
        Some(dev(&self.a, oa).max(dev(&self.b, ob)))
    }
}

pub fn evaluate_sums(p: &ComplexPolynomial) -> Result<SeriesResult> {
    evaluate_sums_with(p, &SeriesOptions::default())
}

pub fn evaluate_sums_with(p: &ComplexPolynomial, opts: &SeriesOptions) -> Result<SeriesResult> {
    let m = p.degree();
    if m < 2 {
        return Err(Error::Divergent(m));
    }
    let sys = GenTrigSystem::with_tolerance(p, opts.root_tol, opts.max_iter)?;
    evaluate_sums_for(p, &sys, opts)
}

/// As [`evaluate_sums_with`], reusing a system already built for `p`.
pub fn evaluate_sums_for(
    p: &ComplexPolynomial,
    sys: &GenTrigSystem,
    opts: &SeriesOptions,
) -> Result<SeriesResult> {
    let m = p.degree();
    if m < 2 {
        return Err(Error::Divergent(m));
    }
    if sys.m() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            found: sys.m(),
        });
    }
    let associated = associated_matrix(sys)?;
    let c = associated.matrix();

    let r0 = eval_r_all(sys, ZERO)?;
    let rp = eval_r_all(sys, C64::new(PI, 0.0))?;
    let rm = eval_r_all(sys, C64::new(-PI, 0.0))?;
    let rhs_a: Vec<C64> = rp.iter().zip(&rm).map(|(x, y)| (x + y) * 0.5).collect();

    let degenerate = |e: Error| match e {
        Error::Singular { pivot } => Error::DegenerateAssociatedMatrix { pivot },
        other => other,
    };
    let sol_a = solve(&c, &rhs_a).map_err(degenerate)?;
    let sol_b = solve(&c, &r0).map_err(degenerate)?;
    let residual = |x: &[C64], rhs: &[C64]| {
        let cx = c.mul_vec(x);
        let d: Vec<C64> = cx.iter().zip(rhs).map(|(a, b)| a - b).collect();
        vec_norm_inf(&d)
    };
    let residual_a = residual(&sol_a.x, &rhs_a);
    let residual_b = residual(&sol_b.x, &r0);

    let lead = p.leading();
    let a: Vec<C64> = sol_a.x.iter().map(|z| z / lead).collect();
    let b: Vec<C64> = sol_b.x.iter().map(|z| z / lead).collect();

    let (oracle_a, oracle_b) = match opts.oracle_n {
        None => (None, None),
        Some(n) => {
            let roots = sys.roots().roots();
            let run = |alt: bool| -> Result<Vec<OracleEstimate>> {
                (0..m)
                    .map(|k| brute_force_sum(p, roots, k, alt, n))
                    .collect()
            };
            (Some(run(false)?), Some(run(true)?))
        }
    };

    Ok(SeriesResult {
        m,
        a,
        b,
        oracle_a,
        oracle_b,
        condition_estimate: sol_a.condition_estimate,
        residual_a,
        residual_b,
        associated,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;

    fn sys(text: &str) -> GenTrigSystem {
        GenTrigSystem::new(&parse_polynomial(text).unwrap()).unwrap()
    }

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn boundary_functions_for_x2_plus_1() {
        let s = sys("x^2+1");
        let sh = PI.sinh();
        for x in [0.0, 0.5, -2.0, PI] {
            let r0 = eval_r(&s, 0, c(x, 0.0)).unwrap();
            assert!((r0 - x.sinh() / sh).norm() < 1e-14, "x={x}");
        }
        let r1 = eval_r(&s, 1, ZERO).unwrap();
        assert!((r1 - I / sh).norm() < 1e-15);
        assert!((r1.im - 0.08658953753004696).abs() < 1e-15);
        assert!(eval_r(&s, 2, ZERO).is_err());
    }

    #[test]
    fn kernel_matches_naive_form() {
        for r in [c(0.3, 0.4), c(-1.2, -0.7), c(2.5, 0.0), c(0.1, 3.0)] {
            for x in [c(0.0, 0.0), c(1.0, 0.0), c(-PI, 0.0), c(0.4, 0.2)] {
                let naive = (-I * r * x).exp() / ((-I * r * PI).exp() - (I * r * PI).exp());
                let k = boundary_kernel(r, x).unwrap();
                assert!((k - naive).norm() <= 1e-13 * (1.0 + naive.norm()));
            }
        }
        // exp(±i r π) alone would overflow here
        assert!(boundary_kernel(c(0.5, 300.0), c(1.0, 0.0))
            .unwrap()
            .is_finite());
    }

    #[test]
    fn integer_roots_rejected() {
        let s = sys("x^2-1");
        assert!(matches!(
            eval_r(&s, 0, ZERO),
            Err(Error::NearIntegerRoot { .. })
        ));
        assert!(associated_matrix(&s).is_err());
        assert!(fourier_coefficient(&s, 0, 3).is_err());
    }

    #[test]
    fn fourier_coefficients() {
        let s = sys("x^2+1");
        assert!(fourier_coefficient(&s, 0, 0).unwrap().norm() < 1e-16);
        let cubic = sys("x^3+x^2+1");
        let cm = associated_matrix(&cubic).unwrap();
        for n in -20..=20 {
            for l in 0..3 {
                let direct = fourier_coefficient(&cubic, l, n).unwrap();
                let via = fourier_coefficient_via_matrix(&cubic, &cm, l, n).unwrap();
                assert!((direct - via).norm() < 1e-10, "n={n} l={l}");
            }
        }
    }

    #[test]
    fn associated_matrix_small_cases() {
        let cm = associated_matrix(&sys("x^2+1")).unwrap();
        let expect = [[0.0, 2.0], [-2.0, 0.0]];
        for (got, want) in cm.scaled().iter().zip(expect) {
            for (g, w) in got.iter().zip(want) {
                assert!((g - w).norm() < 1e-12);
            }
        }
        let cm = associated_matrix(&sys("x^3+x^2+1")).unwrap();
        let expect = [[3.0, 2.0, 0.0], [-1.0, 0.0, -3.0], [0.0, 3.0, 2.0]];
        for (got, want) in cm.scaled_descending().iter().zip(expect) {
            for (g, w) in got.iter().zip(want) {
                assert!((g - w).norm() < 1e-10);
            }
        }
        assert!(cm.cross_check() < 1e-12);
        assert!(cm.condition_estimate().is_finite());
    }

    #[test]
    fn sums_for_x2_plus_1() {
        let res = evaluate_sums(&parse_polynomial("x^2+1").unwrap()).unwrap();
        assert!((res.a[0] - PI / PI.tanh()).norm() < 1e-12);
        assert!((res.b[0] - PI / PI.sinh()).norm() < 1e-12);
        assert!(res.a[1].norm() < 1e-10 && res.b[1].norm() < 1e-10);
        assert!(res.oracle_excess().unwrap() <= 1e-6);
        assert!(res.residual_a < 1e-12 && res.residual_b < 1e-12);

        let half = evaluate_sums_with(
            &parse_polynomial("3x^2+3").unwrap(),
            &SeriesOptions {
                oracle_n: None,
                ..Default::default()
            },
        )
        .unwrap();
        assert!((half.a[0] * 3.0 - res.a[0]).norm() < 1e-12);
        assert!(half.oracle_a.is_none());
    }

    #[test]
    fn divergent_degree() {
        assert!(matches!(
            evaluate_sums(&parse_polynomial("x+0.5").unwrap()),
            Err(Error::Divergent(1))
        ));
    }
}
