//! All-roots solver: Aberth–Ehrlich simultaneous iteration.
//!
//! Each approximation `z_i` is moved by the Newton step `w = P(z_i)/P'(z_i)`
//! corrected by the repulsion of all other approximations:
//!
//! ```text
//! z_i <- z_i - w / (1 - w * sum_{j != i} 1/(z_i - z_j))
//! ```
//!
//! An approximation is frozen once its step is below `tol·(1+|z|)` or once
//! `|P(z)|` is indistinguishable from the rounding error of evaluating `P`
//! (this is what terminates iterations on multiple roots). Approximations that
//! stagnate are kicked by a small seeded random perturbation.

use super::ComplexPolynomial;
use crate::complex::ZERO;
use crate::{Error, Result, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::f64::consts::TAU;

pub const DEFAULT_TOL: f64 = 1e-13;
pub const DEFAULT_MAX_ITER: usize = 500;

const STAGNATION_WINDOW: usize = 50;
const PERTURBATION_SEED: u64 = 0x0005_eed0_fa11_2007;

/// Roots with multiplicity, sorted by `(re, im)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RootSet {
    #[serde(serialize_with = "crate::complex::serde_c64::vec")]
    roots: Vec<C64>,
    /// `max_j |P(r_j)|` for the polynomial the roots were computed from.
    residual: f64,
}

impl RootSet {
    /// Wraps known roots in the given order; `residual` is recomputed
    /// against `p`.
    pub fn from_roots(p: &ComplexPolynomial, roots: Vec<C64>) -> Result<Self> {
        if roots.len() != p.degree() {
            return Err(Error::DimensionMismatch {
                expected: p.degree(),
                found: roots.len(),
            });
        }
        let residual = max_residual(p, &roots);
        Ok(RootSet { roots, residual })
    }

    pub fn roots(&self) -> &[C64] {
        &self.roots
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn residual(&self) -> f64 {
        self.residual
    }
}

fn sort_roots(roots: &mut [C64]) {
    roots.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
}

fn max_residual(p: &ComplexPolynomial, roots: &[C64]) -> f64 {
    roots.iter().map(|&r| p.eval(r).norm()).fold(0.0, f64::max)
}

/// `P(z)`, `P'(z)` and the running bound `sum |a_k||z|^k`.
fn eval_with_bound(coeffs: &[C64], z: C64) -> (C64, C64, f64) {
    let zn = z.norm();
    let mut p = ZERO;
    let mut dp = ZERO;
    let mut bound = 0.0;
    for &a in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
        bound = bound * zn + a.norm();
    }
    (p, dp, bound)
}

pub fn find_roots(p: &ComplexPolynomial, tol: f64, max_iter: usize) -> Result<RootSet> {
    if p.degree() == 0 {
        return Err(Error::InvalidArgument(
            "root finding needs degree >= 1".into(),
        ));
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidArgument("tolerance must be positive".into()));
    }
    let monic = p.monic();
    let coeffs = monic.coeffs();

    // Exact zero roots are split off so the iteration sees a nonzero constant.
    let zeros = coeffs.iter().take_while(|&&a| a == ZERO).count();
    let reduced = &coeffs[zeros..];
    let mut roots = vec![ZERO; zeros];
    if reduced.len() > 1 {
        roots.extend(aberth(reduced, tol, max_iter)?);
    }
    sort_roots(&mut roots);
    let residual = max_residual(p, &roots);
    Ok(RootSet { roots, residual })
}

fn initial_guesses(coeffs: &[C64]) -> Vec<C64> {
    let n = coeffs.len() - 1;
    // Fujiwara-style radius; the true roots lie within twice of it.
    let radius = (0..n)
        .map(|k| coeffs[k].norm().powf(1.0 / (n - k) as f64))
        .fold(0.0, f64::max)
        .max(f64::MIN_POSITIVE);
    let centre = -coeffs[n - 1] / n as f64;
    let spread = radius.max(1e-3);
    (0..n)
        .map(|k| centre + C64::from_polar(spread, TAU * k as f64 / n as f64 + 0.4))
        .collect()
}

fn aberth(coeffs: &[C64], tol: f64, max_iter: usize) -> Result<Vec<C64>> {
    let n = coeffs.len() - 1;
    if n == 1 {
        return Ok(vec![-coeffs[0]]);
    }
    let eps = f64::EPSILON;
    let mut z = initial_guesses(coeffs);
    let mut done = vec![false; n];
    let mut best_step = vec![f64::INFINITY; n];
    let mut last_improvement = vec![0usize; n];
    let mut rng = ChaCha8Rng::seed_from_u64(PERTURBATION_SEED);

    for iter in 0..max_iter {
        for i in 0..n {
            if done[i] {
                continue;
            }
            let (pz, dpz, bound) = eval_with_bound(coeffs, z[i]);
            if pz.norm() <= 4.0 * n as f64 * eps * bound {
                done[i] = true;
                continue;
            }
            let w = pz / dpz;
            let repulsion: C64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| {
                    let d = z[i] - z[j];
                    if d == ZERO {
                        ZERO
                    } else {
                        d.inv()
                    }
                })
                .sum();
            let mut step = w / (C64::new(1.0, 0.0) - w * repulsion);
            if !step.re.is_finite() || !step.im.is_finite() {
                step = if w.re.is_finite() && w.im.is_finite() {
                    w
                } else {
                    C64::from_polar(1e-3 * (1.0 + z[i].norm()), rng.gen::<f64>() * TAU)
                };
            }
            z[i] -= step;
            let size = step.norm();
            if size <= tol * (1.0 + z[i].norm()) {
                done[i] = true;
            } else if size < 0.5 * best_step[i] {
                best_step[i] = size;
                last_improvement[i] = iter;
            } else if iter - last_improvement[i] > STAGNATION_WINDOW {
                let kick = 1e-3 * (1.0 + z[i].norm());
                z[i] += C64::from_polar(kick, rng.gen::<f64>() * TAU);
                best_step[i] = f64::INFINITY;
                last_improvement[i] = iter;
            }
        }
        if done.iter().all(|&d| d) {
            polish(coeffs, &mut z);
            return Ok(z);
        }
    }
    let monic = ComplexPolynomial {
        coeffs: coeffs.to_vec(),
    };
    Err(Error::NoConvergence {
        iterations: max_iter,
        residual: max_residual(&monic, &z),
        best: z,
    })
}

/// A few Newton steps per root, kept only when they reduce `|P|`.
fn polish(coeffs: &[C64], z: &mut [C64]) {
    for zi in z.iter_mut() {
        for _ in 0..3 {
            let (p, dp, _) = eval_with_bound(coeffs, *zi);
            if dp == ZERO {
                break;
            }
            let cand = *zi - p / dp;
            let (pc, _, _) = eval_with_bound(coeffs, cand);
            if pc.norm() < p.norm() {
                *zi = cand;
            } else {
                break;
            }
        }
    }
}
