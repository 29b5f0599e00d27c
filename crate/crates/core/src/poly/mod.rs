//! Complex polynomials: representation, parsing, roots and symmetric functions.

mod parse;
mod roots;
mod symmetric;

pub use parse::{parse_complex_literal, parse_polynomial};
pub use roots::{find_roots, RootSet, DEFAULT_MAX_ITER, DEFAULT_TOL};
pub use symmetric::{elementary_symmetric, power_sums};

use crate::complex::{is_finite, ZERO};
use crate::{Error, Result, C64};
use std::fmt;

/// Polynomials above this degree are rejected at input time.
pub const MAX_DEGREE: usize = 24;

/// `sum_k coeffs[k] x^k`, ascending powers, nonzero leading coefficient.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexPolynomial {
    coeffs: Vec<C64>,
}

impl ComplexPolynomial {
    /// Trailing (highest-power) zeros are dropped.
    pub fn new(mut coeffs: Vec<C64>) -> Result<Self> {
        if let Some(k) = coeffs.iter().position(|z| !is_finite(*z)) {
            return Err(Error::InvalidArgument(format!(
                "coefficient of x^{k} is not finite"
            )));
        }
        while coeffs.last().is_some_and(|z| *z == ZERO) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(ComplexPolynomial { coeffs })
    }

    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| C64::new(c, 0.0)).collect())
    }

    /// Monic polynomial with the given roots.
    pub fn from_roots(roots: &[C64]) -> Self {
        let mut coeffs = vec![C64::new(1.0, 0.0)];
        for &r in roots {
            coeffs.push(ZERO);
            for k in (1..coeffs.len()).rev() {
                coeffs[k] = coeffs[k - 1] - r * coeffs[k];
            }
            coeffs[0] = -r * coeffs[0];
        }
        ComplexPolynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> C64 {
        self.coeffs[self.degree()]
    }

    /// Coefficient of `x^k`, zero above the degree.
    pub fn coeff(&self, k: usize) -> C64 {
        self.coeffs.get(k).copied().unwrap_or(ZERO)
    }

    pub fn eval(&self, x: C64) -> C64 {
        self.coeffs.iter().rev().fold(ZERO, |acc, &c| acc * x + c)
    }

    pub fn monic(&self) -> ComplexPolynomial {
        let lead = self.leading();
        ComplexPolynomial {
            coeffs: self.coeffs.iter().map(|&c| c / lead).collect(),
        }
    }

    pub fn derivative(&self) -> Option<ComplexPolynomial> {
        if self.degree() == 0 {
            return None;
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| c * k as f64)
            .collect();
        Some(ComplexPolynomial { coeffs })
    }

    /// Divides by `(x - r)`: returns the quotient and the remainder `P(r)`.
    pub fn synthetic_divide(&self, r: C64) -> Result<(ComplexPolynomial, C64)> {
        let m = self.degree();
        if m == 0 {
            return Err(Error::InvalidArgument(
                "synthetic division needs degree >= 1".into(),
            ));
        }
        let mut quotient = vec![ZERO; m];
        let mut carry = self.coeffs[m];
        for k in (0..m).rev() {
            quotient[k] = carry;
            carry = self.coeffs[k] + r * carry;
        }
        Ok((ComplexPolynomial { coeffs: quotient }, carry))
    }

    /// Largest coefficient modulus.
    pub fn max_coeff_norm(&self) -> f64 {
        self.coeffs.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

fn fmt_real(x: f64) -> String {
    // `{}` on f64 is the shortest string that round-trips.
    format!("{x}")
}

fn fmt_coefficient(c: C64) -> String {
    if c.im == 0.0 {
        fmt_real(c.re)
    } else if c.re == 0.0 {
        format!("{}i", fmt_real(c.im))
    } else {
        let op = if c.im.is_sign_negative() { '-' } else { '+' };
        format!("({}{}{}i)", fmt_real(c.re), op, fmt_real(c.im.abs()))
    }
}

/// Canonical text: descending powers, zero terms omitted, unit coefficients
/// elided; the output parses back to the same coefficients.
impl fmt::Display for ComplexPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for k in (0..self.coeffs.len()).rev() {
            let c = self.coeffs[k];
            if c == ZERO && !(k == 0 && first) {
                continue;
            }
            // Pure real or pure imaginary coefficients fold their sign into
            // the operator; mixed ones stay parenthesised.
            let negative_real = (c.im == 0.0 && c.re.is_sign_negative())
                || (c.re == 0.0 && c.im.is_sign_negative());
            let shown = if negative_real { -c } else { c };
            if first {
                if negative_real {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative_real { " - " } else { " + " })?;
            }
            first = false;
            let unit = shown == C64::new(1.0, 0.0);
            match (k, unit) {
                (0, _) => f.write_str(&fmt_coefficient(shown))?,
                (_, true) => {}
                (_, false) => write!(f, "{}*", fmt_coefficient(shown))?,
            }
            match k {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn synthetic_division_examples() {
        let p = ComplexPolynomial::from_real(&[1.0, 0.0]).err();
        assert!(p.is_none());

        let p = ComplexPolynomial::from_real(&[1.0, 0.0, 1.0]).unwrap();
        let (q, rem) = p.synthetic_divide(c(0.0, 0.0)).unwrap();
        assert_eq!(q.coeffs(), &[c(0.0, 0.0), c(1.0, 0.0)]);
        assert_eq!(rem, c(1.0, 0.0));

        let p = ComplexPolynomial::from_real(&[-1.0, 0.0, 1.0]).unwrap();
        let (q, rem) = p.synthetic_divide(c(1.0, 0.0)).unwrap();
        assert_eq!(q.coeffs(), &[c(1.0, 0.0), c(1.0, 0.0)]);
        assert_eq!(rem, c(0.0, 0.0));
    }

    #[test]
    fn synthetic_division_by_cubic_root() {
        let p = ComplexPolynomial::from_real(&[1.0, 0.0, 1.0, 1.0]).unwrap();
        let roots = find_roots(&p, DEFAULT_TOL, DEFAULT_MAX_ITER).unwrap();
        for &r in roots.roots() {
            let (q, rem) = p.synthetic_divide(r).unwrap();
            assert!(rem.norm() < 1e-14);
            let expected = [r + r * r, 1.0 + r, c(1.0, 0.0)];
            for (a, b) in q.coeffs().iter().zip(expected) {
                assert!((a - b).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn normalisation_and_trimming() {
        let p = ComplexPolynomial::new(vec![c(2.0, 0.0), c(0.0, 4.0), c(0.0, 0.0)]).unwrap();
        assert_eq!(p.degree(), 1);
        let q = p.monic();
        assert_eq!(q.leading(), c(1.0, 0.0));
        assert!((q.coeff(0) - c(0.0, -0.5)).norm() < 1e-15);
        assert_eq!(
            ComplexPolynomial::new(vec![c(0.0, 0.0)]),
            Err(Error::ZeroPolynomial)
        );
        assert!(ComplexPolynomial::new(vec![c(f64::NAN, 0.0)]).is_err());
    }

    #[test]
    fn canonical_display() {
        let p = ComplexPolynomial::from_real(&[1.0, 0.0, 1.0, 1.0]).unwrap();
        assert_eq!(p.to_string(), "x^3 + x^2 + 1");
        let p = ComplexPolynomial::new(vec![c(-3.0, 0.0), c(0.0, 0.0), c(1.0, 2.0)]).unwrap();
        assert_eq!(p.to_string(), "(1+2i)*x^2 - 3");
        let p = ComplexPolynomial::new(vec![c(0.0, -1.5), c(-1.0, 0.0)]).unwrap();
        assert_eq!(p.to_string(), "-x - 1.5i");
    }

    #[test]
    fn from_roots_expands() {
        let p = ComplexPolynomial::from_roots(&[c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0)]);
        let expect = [-6.0, 11.0, -6.0, 1.0];
        for (a, b) in p.coeffs().iter().zip(expect) {
            assert_eq!(*a, c(b, 0.0));
        }
    }
}
