//! Dense complex matrices sized for `m <= 24`: determinant, solve, eigenpairs.

use crate::complex::{ONE, ZERO};
use crate::poly::{find_roots, ComplexPolynomial, DEFAULT_MAX_ITER, DEFAULT_TOL};
use crate::{Error, Result, C64};
use serde::Serialize;
use std::ops::{Index, IndexMut, Mul};

/// Pivots below `SINGULAR_RTOL * ||M||_1` make `solve` fail.
pub const SINGULAR_RTOL: f64 = 1e-13;

/// Square, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    entries: Vec<C64>,
}

impl Serialize for ComplexMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        crate::complex::serde_c64::grid(&self.rows(), s)
    }
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1, "matrix dimension must be at least 1");
        ComplexMatrix {
            dim,
            entries: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<C64>]) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::InvalidArgument("empty matrix".into()));
        }
        if let Some(bad) = rows.iter().find(|r| r.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: bad.len(),
            });
        }
        if rows
            .iter()
            .flatten()
            .any(|z| !crate::complex::is_finite(*z))
        {
            return Err(Error::InvalidArgument(
                "matrix entries must be finite".into(),
            ));
        }
        Ok(ComplexMatrix {
            dim,
            entries: rows.iter().flatten().copied().collect(),
        })
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let rows: Vec<Vec<C64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| C64::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    pub fn diagonal(values: &[C64]) -> Self {
        let mut m = Self::zeros(values.len());
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = v;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> Vec<Vec<C64>> {
        self.entries.chunks(self.dim).map(|r| r.to_vec()).collect()
    }

    pub fn row(&self, i: usize) -> &[C64] {
        &self.entries[i * self.dim..(i + 1) * self.dim]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn scale(&self, s: C64) -> Self {
        ComplexMatrix {
            dim: self.dim,
            entries: self.entries.iter().map(|&z| z * s).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::identity(self.dim);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    /// Maximum absolute column sum.
    pub fn norm1(&self) -> f64 {
        (0..self.dim)
            .map(|j| (0..self.dim).map(|i| self[(i, j)].norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// Maximum absolute row sum.
    pub fn norm_inf(&self) -> f64 {
        (0..self.dim)
            .map(|i| self.row(i).iter().map(|z| z.norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn mul_vec(&self, v: &[C64]) -> Vec<C64> {
        (0..self.dim)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Row vector times matrix: `v·M`.
    pub fn vec_mul(&self, v: &[C64]) -> Vec<C64> {
        (0..self.dim)
            .map(|j| (0..self.dim).map(|i| v[i] * self[(i, j)]).sum())
            .collect()
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.entries[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.entries[i * self.dim + j]
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in product");
        let n = self.dim;
        let mut out = ComplexMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        out
    }
}

pub fn vec_norm_inf(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// In-place LU with partial pivoting by modulus: `P·M = L·U`.
struct Lu {
    lu: ComplexMatrix,
    perm: Vec<usize>,
    swaps: usize,
}

impl Lu {
    /// `floor` replaces pivots smaller than itself (used for inverse iteration,
    /// where an exactly singular shift is expected).
    fn factor(m: &ComplexMatrix, floor: Option<f64>) -> std::result::Result<Lu, usize> {
        let n = m.dim;
        let mut lu = m.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut swaps = 0;
        for k in 0..n {
            let p = (k..n)
                .max_by(|&a, &b| lu[(a, k)].norm().total_cmp(&lu[(b, k)].norm()))
                .unwrap_or(k);
            if p != k {
                for j in 0..n {
                    lu.entries.swap(k * n + j, p * n + j);
                }
                perm.swap(k, p);
                swaps += 1;
            }
            let mut pivot = lu[(k, k)];
            if let Some(f) = floor {
                if pivot.norm() < f {
                    pivot = if pivot == ZERO {
                        C64::new(f, 0.0)
                    } else {
                        pivot / pivot.norm() * f
                    };
                    lu[(k, k)] = pivot;
                }
            } else if pivot == ZERO {
                return Err(k);
            }
            for i in k + 1..n {
                let factor = lu[(i, k)] / pivot;
                lu[(i, k)] = factor;
                if factor == ZERO {
                    continue;
                }
                for j in k + 1..n {
                    let u = lu[(k, j)];
                    lu[(i, j)] -= factor * u;
                }
            }
        }
        Ok(Lu { lu, perm, swaps })
    }

    fn min_pivot(&self) -> (usize, f64) {
        (0..self.lu.dim)
            .map(|k| (k, self.lu[(k, k)].norm()))
            .fold((0, f64::INFINITY), |a, b| if b.1 < a.1 { b } else { a })
    }

    fn solve(&self, b: &[C64]) -> Vec<C64> {
        let n = self.lu.dim;
        let mut x: Vec<C64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            for k in 0..i {
                let l = self.lu[(i, k)];
                let xk = x[k];
                x[i] -= l * xk;
            }
        }
        for i in (0..n).rev() {
            for k in i + 1..n {
                let u = self.lu[(i, k)];
                let xk = x[k];
                x[i] -= u * xk;
            }
            x[i] /= self.lu[(i, i)];
        }
        x
    }
}

pub fn determinant(m: &ComplexMatrix) -> C64 {
    match Lu::factor(m, None) {
        Err(_) => ZERO,
        Ok(lu) => {
            let d: C64 = (0..m.dim).map(|k| lu.lu[(k, k)]).product();
            if lu.swaps % 2 == 1 {
                -d
            } else {
                d
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Solution {
    #[serde(serialize_with = "crate::complex::serde_c64::vec")]
    pub x: Vec<C64>,
    /// `||M||_1 · ||M^{-1}||_1`.
    pub condition_estimate: f64,
}

fn factor_checked(m: &ComplexMatrix) -> Result<Lu> {
    let scale = m.norm1();
    let lu = Lu::factor(m, None).map_err(|pivot| Error::Singular { pivot })?;
    let (k, smallest) = lu.min_pivot();
    if smallest < SINGULAR_RTOL * scale || scale == 0.0 {
        return Err(Error::Singular { pivot: k });
    }
    Ok(lu)
}

fn inverse_norm1(lu: &Lu, n: usize) -> f64 {
    // Every column of the inverse is cheap at these sizes.
    (0..n)
        .map(|j| {
            let mut e = vec![ZERO; n];
            e[j] = ONE;
            lu.solve(&e).iter().map(|z| z.norm()).sum::<f64>()
        })
        .fold(0.0, f64::max)
}

pub fn solve(m: &ComplexMatrix, b: &[C64]) -> Result<Solution> {
    if b.len() != m.dim {
        return Err(Error::DimensionMismatch {
            expected: m.dim,
            found: b.len(),
        });
    }
    let lu = factor_checked(m)?;
    let x = lu.solve(b);
    Ok(Solution {
        x,
        condition_estimate: m.norm1() * inverse_norm1(&lu, m.dim),
    })
}

pub fn condition_estimate(m: &ComplexMatrix) -> Result<f64> {
    let lu = factor_checked(m)?;
    Ok(m.norm1() * inverse_norm1(&lu, m.dim))
}

/// Monic characteristic polynomial `det(tI - M)`, ascending coefficients,
/// by the Faddeev–LeVerrier trace recursion.
pub fn characteristic_polynomial(m: &ComplexMatrix) -> ComplexPolynomial {
    let n = m.dim;
    let mut c = vec![ZERO; n + 1];
    c[n] = ONE;
    let mut mk = ComplexMatrix::zeros(n);
    for k in 1..=n {
        // M_k = A·M_{k-1} + c_{n-k+1} I ;  c_{n-k} = -tr(A·M_k)/k
        let mut next = m * &mk;
        for i in 0..n {
            next[(i, i)] += c[n - k + 1];
        }
        mk = next;
        c[n - k] = -(m * &mk).trace() / k as f64;
    }
    ComplexPolynomial::new(c).expect("leading coefficient is one")
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EigenPair {
    #[serde(serialize_with = "crate::complex::serde_c64::one")]
    pub value: C64,
    /// Row vector `L` with `L·M ≈ value·L`, max-modulus entry equal to 1.
    #[serde(serialize_with = "crate::complex::serde_c64::vec")]
    pub left: Vec<C64>,
    /// `||L·M - value·L||_inf`.
    pub residual: f64,
}

/// Eigenvalues from the characteristic polynomial, then a left eigenvector for
/// each by inverse iteration on `M^T` with Rayleigh-quotient refinement of the
/// eigenvalue. Returned in the root finder's `(re, im)` order.
pub fn eigenpairs(m: &ComplexMatrix) -> Result<Vec<EigenPair>> {
    if m.dim > crate::poly::MAX_DEGREE {
        return Err(Error::InvalidArgument(format!(
            "eigenpairs supports dimension <= {}",
            crate::poly::MAX_DEGREE
        )));
    }
    let chi = characteristic_polynomial(m);
    let values = find_roots(&chi, DEFAULT_TOL, DEFAULT_MAX_ITER)?;
    let mt = m.transpose();
    Ok(values
        .roots()
        .iter()
        .map(|&lambda| left_eigenvector(m, &mt, lambda))
        .collect())
}

fn left_residual(m: &ComplexMatrix, v: &[C64], lambda: C64) -> f64 {
    let lm = m.vec_mul(v);
    lm.iter()
        .zip(v)
        .map(|(a, b)| (a - lambda * b).norm())
        .fold(0.0, f64::max)
}

fn left_eigenvector(m: &ComplexMatrix, mt: &ComplexMatrix, guess: C64) -> EigenPair {
    let n = m.dim;
    let scale = m.norm1().max(f64::MIN_POSITIVE);
    let floor = f64::EPSILON * scale;
    let mut v: Vec<C64> = (0..n)
        .map(|i| C64::new(1.0 + 0.1 * i as f64, 0.05 * i as f64))
        .collect();
    normalize(&mut v);
    let mut lambda = guess;
    let mut best = (left_residual(m, &v, lambda), v.clone(), lambda);
    for iter in 0..40 {
        let mut shifted = mt.clone();
        for i in 0..n {
            shifted[(i, i)] -= lambda;
        }
        let lu = Lu::factor(&shifted, Some(floor)).expect("floored factorisation cannot fail");
        let mut w = lu.solve(&v);
        if w.iter().any(|z| !crate::complex::is_finite(*z)) {
            break;
        }
        normalize(&mut w);
        v = w;
        if iter >= 2 {
            // Rayleigh quotient of the (column) eigenvector of M^T.
            let mv = mt.mul_vec(&v);
            let num: C64 = v.iter().zip(&mv).map(|(a, b)| a.conj() * b).sum();
            let den: f64 = v.iter().map(|a| a.norm_sqr()).sum();
            lambda = num / den;
        }
        let r = left_residual(m, &v, lambda);
        if r < best.0 {
            best = (r, v.clone(), lambda);
        }
        if r <= 4.0 * f64::EPSILON * scale {
            break;
        }
    }
    let (residual, left, value) = best;
    EigenPair {
        value,
        left,
        residual,
    }
}

/// Scales so the first entry of (numerically) maximal modulus becomes `1`.
pub(crate) fn normalize(v: &mut [C64]) {
    let max = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if max == 0.0 || !max.is_finite() {
        return;
    }
    let idx = v
        .iter()
        .position(|z| z.norm() >= max * (1.0 - 1e-12))
        .unwrap_or(0);
    let pivot = v[idx];
    for z in v.iter_mut() {
        *z /= pivot;
    }
    v[idx] = ONE;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::I;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn determinant_examples() {
        assert!((determinant(&ComplexMatrix::identity(3)) - 1.0).norm() < 1e-15);
        let cp = ComplexMatrix::from_real_rows(&[
            &[3.0, 2.0, 0.0],
            &[-1.0, 0.0, -3.0],
            &[0.0, 3.0, 2.0],
        ])
        .unwrap();
        assert!((determinant(&cp) - 31.0).norm() < 1e-12);
        // Vandermonde on {1, zeta} with zeta = -1.
        let v = ComplexMatrix::from_real_rows(&[&[1.0, 1.0], &[1.0, -1.0]]).unwrap();
        assert!((determinant(&v) + 2.0).norm() < 1e-15);
        let s = ComplexMatrix::from_real_rows(&[&[1.0, 1.0], &[1.0, 1.0]]).unwrap();
        assert!(determinant(&s).norm() < 1e-15);
    }

    #[test]
    fn solve_identity_and_singular() {
        let b = vec![c(1.0, 2.0), c(-3.0, 0.5), c(0.0, -1.0)];
        let sol = solve(&ComplexMatrix::identity(3), &b).unwrap();
        assert_eq!(sol.x, b);
        assert!((sol.condition_estimate - 1.0).abs() < 1e-15);

        let s = ComplexMatrix::from_real_rows(&[&[1.0, 1.0], &[1.0, 1.0]]).unwrap();
        assert_eq!(
            solve(&s, &[c(1.0, 0.0), c(1.0, 0.0)]),
            Err(Error::Singular { pivot: 1 })
        );
        assert!(matches!(
            solve(&s, &[c(1.0, 0.0)]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn eigenpairs_of_diagonal() {
        let d = ComplexMatrix::diagonal(&[c(2.0, 0.0), c(5.0, 0.0)]);
        let pairs = eigenpairs(&d).unwrap();
        assert!((pairs[0].value - 2.0).norm() < 1e-12);
        assert!((pairs[1].value - 5.0).norm() < 1e-12);
        assert!((pairs[0].left[0] - 1.0).norm() < 1e-12 && pairs[0].left[1].norm() < 1e-12);
        assert!((pairs[1].left[1] - 1.0).norm() < 1e-12 && pairs[1].left[0].norm() < 1e-12);
    }

    #[test]
    fn doubled_eigenvalue_of_involution() {
        // K for x^2+1 squares to the identity.
        let k = ComplexMatrix::from_rows(&[vec![c(0.0, 0.0), -I], vec![I, c(0.0, 0.0)]]).unwrap();
        let k2 = k.pow(2);
        assert_eq!(k2, ComplexMatrix::identity(2));
        for p in eigenpairs(&k2).unwrap() {
            assert!((p.value - 1.0).norm() < 1e-12);
            assert!(p.residual <= 1e-8 * k2.norm_inf());
        }
        // K itself has eigenvalues -i r_j = ±1.
        let pairs = eigenpairs(&k).unwrap();
        assert!((pairs[0].value + 1.0).norm() < 1e-12);
        assert!((pairs[1].value - 1.0).norm() < 1e-12);
    }

    #[test]
    fn characteristic_polynomial_of_companion() {
        let m = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[-6.0, 5.0]]).unwrap();
        let chi = characteristic_polynomial(&m);
        for (a, b) in chi.coeffs().iter().zip([6.0, -5.0, 1.0]) {
            assert!((a - b).norm() < 1e-14);
        }
    }

    fn matrix_of(n: usize) -> impl Strategy<Value = ComplexMatrix> {
        proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), n * n).prop_map(move |v| {
            let rows: Vec<Vec<C64>> = v
                .chunks(n)
                .map(|r| r.iter().map(|&(a, b)| C64::new(a, b)).collect())
                .collect();
            ComplexMatrix::from_rows(&rows).unwrap()
        })
    }

    fn arb_matrix(max_dim: usize) -> impl Strategy<Value = ComplexMatrix> {
        (1..=max_dim).prop_flat_map(matrix_of)
    }

    proptest! {
        #[test]
        fn determinant_is_multiplicative(
            (a, b) in (1..=6usize).prop_flat_map(|n| (matrix_of(n), matrix_of(n)))
        ) {
            let lhs = determinant(&(&a * &b));
            let rhs = determinant(&a) * determinant(&b);
            prop_assert!((lhs - rhs).norm() <= 1e-8 * (1.0 + rhs.norm()).max(lhs.norm()));
        }

        #[test]
        fn solve_residual_is_small(a in arb_matrix(6), bv in proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 6)) {
            let n = a.dim();
            let b: Vec<C64> = bv.iter().take(n).map(|&(x, y)| C64::new(x, y)).collect();
            if let Ok(sol) = solve(&a, &b) {
                let r: Vec<C64> = a.mul_vec(&sol.x).iter().zip(&b).map(|(p, q)| p - q).collect();
                let bound = 1e-10 * (a.norm_inf() * vec_norm_inf(&sol.x) + vec_norm_inf(&b));
                prop_assert!(vec_norm_inf(&r) <= bound, "residual {} > {}", vec_norm_inf(&r), bound);
            }
        }

        #[test]
        fn eigenpair_residual_contract(a in arb_matrix(5)) {
            let pairs = eigenpairs(&a).unwrap();
            prop_assert_eq!(pairs.len(), a.dim());
            for p in pairs {
                prop_assert!(p.residual <= 1e-8 * a.norm_inf().max(f64::MIN_POSITIVE),
                    "residual {} for value {}", p.residual, p.value);
                prop_assert!(p.left.iter().any(|z| *z == C64::new(1.0, 0.0)));
            }
        }
    }
}
