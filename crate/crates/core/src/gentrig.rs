//! Generalized trigonometric functions of a polynomial.
//!
//! For `P` with roots `r_1..r_m`,
//!
//! ```text
//! S_l(x) = sum_j T[l][j] exp(-i r_j x),     l = 0..m-1,
//! ```
//!
//! where `T[0][j]` is the leading coefficient and, for `l >= 1`, `T[l][j]` is
//! the sum of all products of `l` distinct roots that include `r_j`, i.e.
//! `r_j * e_{l-1}(roots without r_j)`. The vector `S = (S_0..S_{m-1})`
//! satisfies a linear ODE `S' = K·S`; any left eigenvector `L` of `K^m`
//! yields functions `f_l = (L·K^l)·S` whose shift matrix has a constant
//! determinant. That constant is the algebraic identity among the `S_l`.

use crate::complex::{i_pow, sign, I, ZERO};
use crate::linalg::{determinant, eigenpairs, ComplexMatrix};
use crate::poly::{find_roots, ComplexPolynomial, RootSet, DEFAULT_MAX_ITER, DEFAULT_TOL};
use crate::{Error, Result, C64};
use serde::Serialize;

/// `|Re(-i r x)|` above this would overflow `exp`.
pub const EXPONENT_LIMIT: f64 = 700.0;

/// Largest Taylor order whose factorial is representable.
pub const MAX_TAYLOR_ORDER: usize = 170;

/// `T[l][j]`: row `l` is the tuple order, column `j` the root index.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TupleCoefficientMatrix {
    #[serde(serialize_with = "crate::complex::serde_c64::grid")]
    rows: Vec<Vec<C64>>,
}

impl TupleCoefficientMatrix {
    pub fn m(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, l: usize, j: usize) -> C64 {
        self.rows[l][j]
    }

    pub fn row(&self, l: usize) -> &[C64] {
        &self.rows[l]
    }

    pub fn rows(&self) -> &[Vec<C64>] {
        &self.rows
    }

    /// `sum_j T[l][j]`, which is also `S_l(0)`.
    pub fn row_sum(&self, l: usize) -> C64 {
        self.rows[l].iter().sum()
    }
}

/// Builds `T` for the roots of `p`. The quotient `P/(x - r_j)` of the monic
/// polynomial is `prod_{i != j}(x - r_i)`, whose coefficient of `x^{m-1-k}` is
/// `(-1)^k e_k(roots without r_j)`.
pub fn tuple_coefficients(
    p: &ComplexPolynomial,
    roots: &RootSet,
) -> Result<TupleCoefficientMatrix> {
    let m = p.degree();
    if m == 0 || roots.len() != m {
        return Err(Error::DimensionMismatch {
            expected: m.max(1),
            found: roots.len(),
        });
    }
    let monic = p.monic();
    let mut rows = vec![vec![ZERO; m]; m];
    for (j, &r) in roots.roots().iter().enumerate() {
        let (quotient, _) = monic.synthetic_divide(r)?;
        let q = quotient.coeffs();
        rows[0][j] = p.leading();
        for l in 1..m {
            // e_{l-1}(others) = (-1)^{l-1} q[m-l]
            rows[l][j] = r * q[m - l] * sign(l - 1);
        }
    }
    Ok(TupleCoefficientMatrix { rows })
}

/// Polynomial (monic-normalised), its roots, `T` and the derivative matrix `K`.
#[derive(Debug, Clone, PartialEq)]
pub struct GenTrigSystem {
    poly: ComplexPolynomial,
    roots: RootSet,
    t: TupleCoefficientMatrix,
    k: ComplexMatrix,
}

impl GenTrigSystem {
    pub fn new(p: &ComplexPolynomial) -> Result<Self> {
        Self::with_tolerance(p, DEFAULT_TOL, DEFAULT_MAX_ITER)
    }

    pub fn with_tolerance(p: &ComplexPolynomial, tol: f64, max_iter: usize) -> Result<Self> {
        if p.degree() == 0 {
            return Err(Error::InvalidArgument(
                "generalized trigonometric functions need degree >= 1".into(),
            ));
        }
        let monic = p.monic();
        let roots = find_roots(&monic, tol, max_iter)?;
        Self::from_roots(&monic, roots)
    }

    /// Uses the supplied roots (in their given order) for a monic-normalised `p`.
    pub fn from_roots(p: &ComplexPolynomial, roots: RootSet) -> Result<Self> {
        let poly = p.monic();
        let t = tuple_coefficients(&poly, &roots)?;
        let k = if poly.degree() >= 2 {
            build_derivative_matrix(&poly)
        } else {
            // m = 1: S_0 = exp(-i r x) is its own eigenfunction.
            ComplexMatrix::diagonal(&[-I * roots.roots()[0]])
        };
        Ok(GenTrigSystem { poly, roots, t, k })
    }

    pub fn m(&self) -> usize {
        self.poly.degree()
    }

    pub fn poly(&self) -> &ComplexPolynomial {
        &self.poly
    }

    pub fn roots(&self) -> &RootSet {
        &self.roots
    }

    pub fn tuples(&self) -> &TupleCoefficientMatrix {
        &self.t
    }

    pub fn k(&self) -> &ComplexMatrix {
        &self.k
    }

    fn check_index(&self, l: usize) -> Result<()> {
        if l >= self.m() {
            return Err(Error::InvalidArgument(format!(
                "index l = {l} out of range 0..{}",
                self.m()
            )));
        }
        Ok(())
    }

    /// `exp(-i r_j x)` for every root, guarding against overflow.
    pub(crate) fn exponentials(&self, x: C64) -> Result<Vec<C64>> {
        self.roots
            .roots()
            .iter()
            .map(|&r| {
                let magnitude = (r.im * x.re).abs() + (r.re * x.im).abs();
                if magnitude > EXPONENT_LIMIT {
                    Err(Error::Overflow { root: r, magnitude })
                } else {
                    Ok((-I * r * x).exp())
                }
            })
            .collect()
    }

    pub fn eval_s(&self, l: usize, x: C64) -> Result<C64> {
        self.check_index(l)?;
        let e = self.exponentials(x)?;
        Ok(self.t.row(l).iter().zip(&e).map(|(t, e)| t * e).sum())
    }

    /// `[S_0(x), .., S_{m-1}(x)]`.
    pub fn eval_s_all(&self, x: C64) -> Result<Vec<C64>> {
        let e = self.exponentials(x)?;
        Ok((0..self.m())
            .map(|l| self.t.row(l).iter().zip(&e).map(|(t, e)| t * e).sum())
            .collect())
    }

    /// Taylor coefficients `b_0..b_order` of `S_l`:
    /// `b_k = (-i)^k / k! * sum_j T[l][j] r_j^k`.
    pub fn taylor_coeffs(&self, l: usize, order: usize) -> Result<Vec<C64>> {
        self.check_index(l)?;
        if order > MAX_TAYLOR_ORDER {
            return Err(Error::InvalidArgument(format!(
                "Taylor order {order} exceeds {MAX_TAYLOR_ORDER}"
            )));
        }
        let mut terms: Vec<C64> = self.t.row(l).to_vec();
        let mut out = Vec::with_capacity(order + 1);
        out.push(terms.iter().sum());
        for k in 1..=order {
            for (term, &r) in terms.iter_mut().zip(self.roots.roots()) {
                *term *= -I * r / k as f64;
            }
            out.push(terms.iter().sum());
        }
        Ok(out)
    }

    /// `k! b_k = (-i)^k sum_j T[l][j] r_j^k` for `k = 0..=order`; these are
    /// polynomials in the coefficients of `P` with integer coefficients.
    pub fn taylor_numerators(&self, l: usize, order: usize) -> Result<Vec<C64>> {
        self.check_index(l)?;
        let mut powers: Vec<C64> = self.t.row(l).to_vec();
        let mut out = Vec::with_capacity(order + 1);
        for k in 0..=order {
            if k > 0 {
                for (p, &r) in powers.iter_mut().zip(self.roots.roots()) {
                    *p *= r;
                }
            }
            out.push(i_pow((4 - k % 4) % 4) * powers.iter().sum::<C64>());
        }
        Ok(out)
    }
}

/// `K` with `S' = K·S`, for monic `p` of degree `m >= 2`:
///
/// ```text
/// row 0        : -i in column 1
/// row l (0<l<m-1): (-1)^{l+1} i a_{m-l} in column 1, i in column l+1
/// row m-1      : (-1)^m i a_0 in column 0, (-1)^m i a_1 in column 1
/// ```
fn build_derivative_matrix(p: &ComplexPolynomial) -> ComplexMatrix {
    let m = p.degree();
    let a = |k: usize| p.coeff(k);
    let mut k = ComplexMatrix::zeros(m);
    k[(0, 1)] = -I;
    for l in 1..m - 1 {
        k[(l, 1)] += I * a(m - l) * sign(l + 1);
        k[(l, l + 1)] += I;
    }
    k[(m - 1, 0)] += I * a(0) * sign(m);
    k[(m - 1, 1)] += I * a(1) * sign(m);
    k
}

pub fn derivative_matrix(sys: &GenTrigSystem) -> Result<ComplexMatrix> {
    if sys.m() < 2 {
        return Err(Error::InvalidArgument(
            "the derivative matrix display needs degree >= 2".into(),
        ));
    }
    Ok(build_derivative_matrix(sys.poly()))
}

/// `M[p][q] = f_{p+q}` for `p+q < m`, `lambda·f_{p+q-m}` otherwise.
pub fn shift_matrix(f: &[C64], lambda: C64) -> ComplexMatrix {
    let m = f.len();
    let mut out = ComplexMatrix::zeros(m);
    for p in 0..m {
        for q in 0..m {
            out[(p, q)] = if p + q < m {
                f[p + q]
            } else {
                lambda * f[p + q - m]
            };
        }
    }
    out
}

/// Witness of the algebraic identity `det M(x) = det M(0)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityCertificate {
    /// Left eigenvector of `K^m`.
    #[serde(serialize_with = "crate::complex::serde_c64::vec")]
    pub left: Vec<C64>,
    /// Eigenvalue of `K^m` for `left`, so `f_{m-1}' = lambda·f_0`.
    #[serde(serialize_with = "crate::complex::serde_c64::one")]
    pub lambda: C64,
    /// `det M(0)`.
    #[serde(serialize_with = "crate::complex::serde_c64::one")]
    pub det_ref: C64,
    /// `||L·K^m - lambda·L||_inf`.
    pub eigen_residual: f64,
    /// Row `l` is `L·K^l`, so that `f_l = rows[l]·S`.
    #[serde(serialize_with = "crate::complex::serde_c64::grid")]
    pub f_rows: Vec<Vec<C64>>,
}

impl IdentityCertificate {
    /// Certificate for a caller-chosen `L` and `lambda`.
    pub fn from_vector(sys: &GenTrigSystem, left: Vec<C64>, lambda: C64) -> Result<Self> {
        let m = sys.m();
        if left.len() != m {
            return Err(Error::DimensionMismatch {
                expected: m,
                found: left.len(),
            });
        }
        let mut f_rows = Vec::with_capacity(m);
        let mut row = left.clone();
        for _ in 0..m {
            let next = sys.k().vec_mul(&row);
            f_rows.push(row);
            row = next;
        }
        // `row` is now L·K^m.
        let eigen_residual = row
            .iter()
            .zip(&left)
            .map(|(a, b)| (a - lambda * b).norm())
            .fold(0.0, f64::max);
        let mut cert = IdentityCertificate {
            left,
            lambda,
            det_ref: ZERO,
            eigen_residual,
            f_rows,
        };
        cert.det_ref = cert.eval_det_m(sys, ZERO)?;
        Ok(cert)
    }

    /// `[f_0(x), .., f_{m-1}(x)]`.
    pub fn eval_f(&self, sys: &GenTrigSystem, x: C64) -> Result<Vec<C64>> {
        let s = sys.eval_s_all(x)?;
        Ok(self
            .f_rows
            .iter()
            .map(|row| row.iter().zip(&s).map(|(a, b)| a * b).sum())
            .collect())
    }

    pub fn eval_det_m(&self, sys: &GenTrigSystem, x: C64) -> Result<C64> {
        let f = self.eval_f(sys, x)?;
        Ok(determinant(&shift_matrix(&f, self.lambda)))
    }

    /// `|det M(x)|` over its Hadamard bound (product of row norms). Values near
    /// zero mean the identity is vacuous: when `lambda` is a simple eigenvalue,
    /// `L` is also a left eigenvector of `K`, every `f_l` is a multiple of `f_0`
    /// and `det M` vanishes identically.
    pub fn hadamard_ratio(&self, sys: &GenTrigSystem, x: C64) -> Result<f64> {
        let m = shift_matrix(&self.eval_f(sys, x)?, self.lambda);
        let bound: f64 = m
            .rows()
            .iter()
            .map(|r| r.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt())
            .product();
        if bound == 0.0 {
            return Ok(0.0);
        }
        Ok(determinant(&m).norm() / bound)
    }
}

/// Picks the largest-modulus nonzero eigenvalue of `K^m` (ties: smaller
/// argument, then lower index) and its left eigenvector.
pub fn identity_certificate(sys: &GenTrigSystem) -> Result<IdentityCertificate> {
    let m = sys.m();
    if m < 2 {
        return Err(Error::InvalidArgument(
            "identity certificates need degree >= 2".into(),
        ));
    }
    let km = sys.k().pow(m as u32);
    let scale = km.norm1();
    if scale == 0.0 {
        return Err(Error::NoNonzeroEigenvalue);
    }
    let pairs = eigenpairs(&km)?;
    let cutoff = 1e-10 * scale;
    let top = pairs
        .iter()
        .map(|p| p.value.norm())
        .filter(|&n| n > cutoff)
        .fold(0.0, f64::max);
    if top == 0.0 {
        return Err(Error::NoNonzeroEigenvalue);
    }
    let chosen = pairs
        .iter()
        .filter(|p| p.value.norm() >= top * (1.0 - 1e-9))
        .min_by(|a, b| a.value.arg().total_cmp(&b.value.arg()))
        .expect("at least one eigenvalue attains the maximum");
    IdentityCertificate::from_vector(sys, chosen.left.clone(), chosen.value)
}

pub fn eval_det_m(cert: &IdentityCertificate, sys: &GenTrigSystem, x: C64) -> Result<C64> {
    cert.eval_det_m(sys, x)
}

/// Central finite-difference derivative of the `S` vector.
pub fn finite_difference_derivative(sys: &GenTrigSystem, x: C64, h: f64) -> Result<Vec<C64>> {
    let plus = sys.eval_s_all(x + h)?;
    let minus = sys.eval_s_all(x - h)?;
    Ok(plus
        .iter()
        .zip(&minus)
        .map(|(p, q)| (p - q) / (2.0 * h))
        .collect())
}
