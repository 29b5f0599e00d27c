//! The `P = x^m - 1` case, rescaled so that `m = 2` gives `cos`/`sin`:
//!
//! ```text
//! zeta = e^{2πi/m},  eta = e^{iπ/m}  (eta^2 = zeta, eta^m = -1)
//! S_l(x) = 1/(m eta^l) * sum_j zeta^{lj} exp(eta zeta^j x)
//!        = zeta^{-l} * sum_k (-1)^k x^{km-l} / (km-l)!
//! ```
//!
//! With `f_l = zeta^l S_l` one has `f_l' = f_{l+1}` and `f_{m-1}' = -f_0`,
//! so the shift matrix of the `f_l` with `lambda = -1` has constant
//! determinant; see [`det_constant`] for its value.

use crate::complex::{i_pow, sign, I, ONE, ZERO};
use crate::gentrig::{shift_matrix, GenTrigSystem, EXPONENT_LIMIT};
use crate::linalg::{determinant, ComplexMatrix};
use crate::poly::ComplexPolynomial;
use crate::{Error, Result, C64};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CyclotomicSystem {
    m: usize,
    zeta: C64,
    eta: C64,
}

/// `(n)_m`: the representative of `n` modulo `m` in `0..m`.
pub fn residue(n: i64, m: usize) -> usize {
    n.rem_euclid(m as i64) as usize
}

impl CyclotomicSystem {
    pub fn new(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidArgument("m must be at least 1".into()));
        }
        Ok(CyclotomicSystem {
            m,
            zeta: C64::from_polar(1.0, 2.0 * PI / m as f64),
            eta: C64::from_polar(1.0, PI / m as f64),
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn zeta(&self) -> C64 {
        self.zeta
    }

    pub fn eta(&self) -> C64 {
        self.eta
    }

    /// `zeta^k` for any integer `k`, reduced modulo `m` first.
    pub fn zeta_pow(&self, k: i64) -> C64 {
        C64::from_polar(1.0, 2.0 * PI * residue(k, self.m) as f64 / self.m as f64)
    }

    /// `eta^k` for any integer `k`, reduced modulo `2m` first.
    pub fn eta_pow(&self, k: i64) -> C64 {
        let r = k.rem_euclid(2 * self.m as i64);
        C64::from_polar(1.0, PI * r as f64 / self.m as f64)
    }

    fn check_index(&self, l: usize) -> Result<()> {
        if l >= self.m {
            return Err(Error::InvalidArgument(format!(
                "index l = {l} out of range 0..{}",
                self.m
            )));
        }
        Ok(())
    }

    /// `S_l(x)` as a direct `m`-term exponential sum.
    pub fn eval_s(&self, l: usize, x: C64) -> Result<C64> {
        self.check_index(l)?;
        let mut acc = ZERO;
        for j in 0..self.m {
            let node = self.eta * self.zeta_pow(j as i64);
            let arg = node * x;
            if arg.re.abs() > EXPONENT_LIMIT {
                return Err(Error::Overflow {
                    root: self.zeta_pow(j as i64),
                    magnitude: arg.re.abs(),
                });
            }
            acc += self.zeta_pow((l * j) as i64) * arg.exp();
        }
        Ok(acc / (self.eta_pow(l as i64) * self.m as f64))
    }

    pub fn eval_s_all(&self, x: C64) -> Result<Vec<C64>> {
        (0..self.m).map(|l| self.eval_s(l, x)).collect()
    }

    /// Truncated power series with `terms` nonzero terms:
    /// `zeta^{-l} sum_k (-1)^k x^{km-l}/(km-l)!`, `k` from 1 (or 0 when `l = 0`).
    pub fn taylor_eval(&self, l: usize, x: C64, terms: usize) -> Result<C64> {
        self.check_index(l)?;
        let first = if l == 0 { 0 } else { 1 };
        let top = (first + terms).saturating_sub(1) * self.m;
        if top > crate::gentrig::MAX_TAYLOR_ORDER {
            return Err(Error::InvalidArgument(format!(
                "series reaches x^{top}; at most x^{} is supported",
                crate::gentrig::MAX_TAYLOR_ORDER
            )));
        }
        let mut acc = ZERO;
        let mut power = ONE; // x^n / n!
        let mut k = first;
        let mut n = 0usize;
        while k < first + terms {
            let target = k * self.m - l;
            while n < target {
                n += 1;
                power = power * x / n as f64;
            }
            acc += power * sign(k);
            k += 1;
        }
        Ok(acc * self.zeta_pow(-(l as i64)))
    }

    /// The literal rescaling `(1/m)·S^P_l(i·eta·x)` of the general construction
    /// for `P = x^m - 1`, next to the direct evaluation of `S_l(x)`.
    pub fn rescale_consistency(&self, l: usize, x: C64) -> Result<(C64, C64)> {
        let general = self.general_system()?;
        self.rescale_with(&general, l, x)
    }

    pub fn rescale_with(&self, general: &GenTrigSystem, l: usize, x: C64) -> Result<(C64, C64)> {
        let lhs = self.eval_s(l, x)?;
        let rhs = general.eval_s(l, I * self.eta * x)? / self.m as f64;
        Ok((lhs, rhs))
    }

    /// Factor `c_l` with `(1/m)·S^P_l(i eta x) = c_l·S_l(x)`: `1` for `l = 0`,
    /// `(-1)^{l+1} eta^l` otherwise (the tuple coefficients of `x^m - 1` are
    /// `(-1)^{l+1} zeta^{lj}`, while `S_l` is normalised by `eta^{-l}`).
    pub fn rescale_factor(&self, l: usize) -> C64 {
        if l == 0 {
            ONE
        } else {
            self.eta_pow(l as i64) * sign(l + 1)
        }
    }

    /// The general system for `x^m - 1`.
    pub fn general_system(&self) -> Result<GenTrigSystem> {
        let mut coeffs = vec![ZERO; self.m + 1];
        coeffs[0] = -ONE;
        coeffs[self.m] = ONE;
        GenTrigSystem::new(&ComplexPolynomial::new(coeffs)?)
    }

    /// `f_l = zeta^l S_l(x)`.
    pub fn eval_f(&self, x: C64) -> Result<Vec<C64>> {
        Ok(self
            .eval_s_all(x)?
            .into_iter()
            .enumerate()
            .map(|(l, s)| self.zeta_pow(l as i64) * s)
            .collect())
    }

    /// `det M(x)` for the shift matrix of the `f_l` with `lambda = -1`.
    pub fn det_m(&self, x: C64) -> Result<C64> {
        Ok(determinant(&shift_matrix(&self.eval_f(x)?, -ONE)))
    }

    pub fn apply_addition(&self, rule: &AdditionRule, x1: C64, x2: C64) -> Result<C64> {
        if rule.m != self.m {
            return Err(Error::DimensionMismatch {
                expected: self.m,
                found: rule.m,
            });
        }
        let s1 = self.eval_s_all(x1)?;
        let s2 = self.eval_s_all(x2)?;
        Ok((0..self.m)
            .map(|r| s1[rule.partners[r]] * s2[r] * f64::from(rule.signs[r]))
            .sum())
    }

    /// `Delta_l = S_l(π) - S_l(-π)`.
    pub fn delta(&self, l: usize) -> Result<C64> {
        Ok(self.eval_s(l, C64::new(PI, 0.0))? - self.eval_s(l, C64::new(-PI, 0.0))?)
    }

    /// `J^l_k = eta^{m-1-k-l+(m-1-k+l)_m} Delta_{(m-1-k+l)_m}` and
    /// `A[l][k] = (-1)^{k+1} J^l_k i^{k + m (k mod 2)}`, with `|det A|`
    /// compared against `|prod_j a_j| |det V|^2 / m^m`, where
    /// `a_j = exp(eta zeta^j π) - exp(-eta zeta^j π)` and `V` is the
    /// Vandermonde matrix on the `m`-th roots of unity.
    pub fn matrix_a(&self) -> Result<MatrixA> {
        let m = self.m;
        if m > 12 {
            return Err(Error::InvalidArgument(
                "matrix A is built for m <= 12".into(),
            ));
        }
        let deltas: Vec<C64> = (0..m).map(|l| self.delta(l)).collect::<Result<_>>()?;
        let mut a = ComplexMatrix::zeros(m);
        let mi = m as i64;
        for l in 0..mi {
            for k in 0..mi {
                let idx = residue(mi - 1 - k + l, m);
                let j = self.eta_pow(mi - 1 - k - l + idx as i64) * deltas[idx];
                let phase = i_pow(k as usize + m * (k as usize % 2));
                a[(l as usize, k as usize)] = j * phase * sign(k as usize + 1);
            }
        }
        let det = determinant(&a);

        let mut v = ComplexMatrix::zeros(m);
        for l in 0..m {
            for j in 0..m {
                v[(l, j)] = self.zeta_pow((l * j) as i64);
            }
        }
        let prod_a: f64 = (0..m)
            .map(|j| {
                let w = self.eta * self.zeta_pow(j as i64) * PI;
                (w.exp() - (-w).exp()).norm()
            })
            .product();
        let det_v = determinant(&v).norm();
        let via = prod_a * det_v * det_v / (m as f64).powi(m as i32);
        Ok(MatrixA {
            a,
            det,
            det_via_factorization: via,
        })
    }
}

/// Value of `det M(x)` for the cyclotomic shift matrix. At `x = 0` only
/// `f_0 = 1` survives, so `M(0) = [1] ⊕ (-R)` with `R` the `(m-1)`-square
/// reversal: `(-1)^{m-1}·(-1)^{(m-1)(m-2)/2}`.
pub fn det_constant(m: usize) -> f64 {
    assert!(m >= 1);
    sign(m - 1) * sign((m - 1) * m.saturating_sub(2) / 2)
}

/// `-S_0^3 + S_1^3 - S_2^3 - 3 S_0 S_1 S_2` for `m = 3`; equals `det M(x)`.
pub fn cubic_form(s: &[C64]) -> C64 {
    assert_eq!(s.len(), 3);
    -s[0].powu(3) + s[1].powu(3) - s[2].powu(3) - 3.0 * s[0] * s[1] * s[2]
}

/// `S_l(x1 + x2) = sum_r signs[r] S_{partners[r]}(x1) S_r(x2)` with
/// `partners[r] = (l - r)_m` and `signs[r] = +1` iff `r <= l`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdditionRule {
    pub m: usize,
    pub l: usize,
    pub signs: Vec<i8>,
    pub partners: Vec<usize>,
}

pub fn addition_rule(m: usize, l: usize) -> Result<AdditionRule> {
    if m == 0 || l >= m {
        return Err(Error::InvalidArgument(format!(
            "addition rule needs 0 <= l < m, got l = {l}, m = {m}"
        )));
    }
    Ok(AdditionRule {
        m,
        l,
        signs: (0..m).map(|r| if r <= l { 1 } else { -1 }).collect(),
        partners: (0..m).map(|r| residue(l as i64 - r as i64, m)).collect(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MatrixA {
    pub a: ComplexMatrix,
    #[serde(serialize_with = "crate::complex::serde_c64::one")]
    pub det: C64,
    /// Modulus predicted by the Vandermonde factorisation.
    pub det_via_factorization: f64,
}

/// Exact sums over decompositions `n = k1 + k2 + k3` of `1/(k1! k2! k3!)`.
#[derive(Debug, Clone, PartialEq)]
pub struct FactorialIdentity {
    pub n: usize,
    /// Ordered triples with `k1 ≡ k2 ≡ k3 (mod 3)`.
    pub sum_a: BigRational,
    /// Decompositions whose parts lie in the three distinct classes, each
    /// counted once (equivalently ordered triples with residues `(0, 1, 2)`).
    pub sum_b: BigRational,
    /// The same over all orderings; always `6·sum_b`.
    pub sum_b_all_orders: BigRational,
    /// `sum_a == 3·sum_b`.
    pub holds: bool,
}

pub fn factorial_identity_check(n: usize) -> Result<FactorialIdentity> {
    if !n.is_multiple_of(3) {
        return Err(Error::InvalidArgument(format!(
            "n = {n} is not divisible by 3"
        )));
    }
    if n > 120 {
        return Err(Error::InvalidArgument(format!("n = {n} exceeds 120")));
    }
    let mut fact = vec![BigInt::one()];
    for k in 1..=n {
        let next = &fact[k - 1] * BigInt::from(k);
        fact.push(next);
    }
    // Sum multinomials n!/(k1!k2!k3!) as integers, divide by n! at the end.
    let mut a = BigInt::zero();
    let mut b = BigInt::zero();
    let mut b_all = BigInt::zero();
    for k1 in 0..=n {
        for k2 in 0..=n - k1 {
            let k3 = n - k1 - k2;
            let (r1, r2, r3) = (k1 % 3, k2 % 3, k3 % 3);
            let same = r1 == r2 && r2 == r3;
            let distinct = r1 != r2 && r2 != r3 && r1 != r3;
            if !same && !distinct {
                continue;
            }
            let w = &fact[n] / (&fact[k1] * &fact[k2] * &fact[k3]);
            if same {
                a += &w;
            } else {
                if (r1, r2, r3) == (0, 1, 2) {
                    b += &w;
                }
                b_all += w;
            }
        }
    }
    let denom = fact[n].clone();
    let sum_a = BigRational::new(a, denom.clone());
    let sum_b = BigRational::new(b, denom.clone());
    let sum_b_all_orders = BigRational::new(b_all, denom);
    let holds = sum_a == &sum_b * BigRational::from_integer(3.into());
    Ok(FactorialIdentity {
        n,
        sum_a,
        sum_b,
        sum_b_all_orders,
        holds,
    })
}
