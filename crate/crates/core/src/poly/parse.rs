//! Text grammar for polynomials:
//!
//! ```text
//! poly    := [sign] term (sign term)*
//! term    := coeff ['*'] 'x' ['^' int] | coeff | 'x' ['^' int]
//! coeff   := number ['i'] | 'i' | '(' complex ')'
//! complex := [sign] part [sign part]        part := number ['i'] | 'i'
//! ```
//!
//! Whitespace is ignored everywhere. Repeated powers are summed.

use super::{ComplexPolynomial, MAX_DEGREE};
use crate::complex::ZERO;
use crate::{Error, Result, C64};

pub fn parse_polynomial(text: &str) -> Result<ComplexPolynomial> {
    let mut p = Parser::new(text);
    let mut coeffs: Vec<C64> = Vec::new();
    let mut sign = p.sign().unwrap_or(1.0);
    loop {
        if p.peek().is_none() {
            return Err(p.error("expected a term"));
        }
        let (c, k) = p.term()?;
        if k > MAX_DEGREE {
            return Err(Error::DegreeTooHigh {
                degree: k,
                max: MAX_DEGREE,
            });
        }
        if coeffs.len() <= k {
            coeffs.resize(k + 1, ZERO);
        }
        coeffs[k] += c * sign;
        match p.sign() {
            Some(s) => sign = s,
            None if p.peek().is_none() => break,
            None => return Err(p.error("expected '+' or '-'")),
        }
    }
    ComplexPolynomial::new(coeffs)
}

/// A single complex number: `2`, `-1.5e3`, `3i`, `-i`, `1-2i`, `(1+2i)`.
pub fn parse_complex_literal(text: &str) -> Result<C64> {
    let mut p = Parser::new(text);
    let z = if p.eat('(') {
        let z = p.complex()?;
        p.expect(')')?;
        z
    } else {
        p.complex()?
    };
    if p.peek().is_some() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(z)
}

fn as_complex(v: f64, imaginary: bool) -> C64 {
    if imaginary {
        C64::new(0.0, v)
    } else {
        C64::new(v, 0.0)
    }
}

struct Parser<'a> {
    text: &'a str,
    chars: Vec<(usize, char)>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        let chars = text
            .char_indices()
            .filter(|(_, c)| !c.is_whitespace())
            .collect();
        Parser {
            text,
            chars,
            pos: 0,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn offset(&self) -> usize {
        self.chars
            .get(self.pos)
            .map(|&(o, _)| o)
            .unwrap_or(self.text.len())
    }

    fn error(&self, message: &str) -> Error {
        let found = match self.peek() {
            Some(c) => format!("found '{c}'"),
            None => "found end of input".to_string(),
        };
        Error::Syntax {
            offset: self.offset(),
            message: format!("{message}, {found}"),
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected '{c}'")))
        }
    }

    fn sign(&mut self) -> Option<f64> {
        if self.eat('+') {
            Some(1.0)
        } else if self.eat('-') {
            Some(-1.0)
        } else {
            None
        }
    }

    fn term(&mut self) -> Result<(C64, usize)> {
        if self.peek() == Some('x') {
            return Ok((C64::new(1.0, 0.0), self.power()?));
        }
        let c = self.coefficient()?;
        let star = self.eat('*');
        if self.peek() == Some('x') {
            Ok((c, self.power()?))
        } else if star {
            Err(self.error("expected 'x' after '*'"))
        } else {
            Ok((c, 0))
        }
    }

    fn power(&mut self) -> Result<usize> {
        self.expect('x')?;
        if !self.eat('^') {
            return Ok(1);
        }
        let start = self.pos;
        let offset = self.offset();
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("expected an integer exponent"));
        }
        let digits: String = self.chars[start..self.pos]
            .iter()
            .map(|&(_, c)| c)
            .collect();
        digits.parse().map_err(|_| Error::Syntax {
            offset,
            message: format!("exponent '{digits}' is out of range"),
        })
    }

    fn complex(&mut self) -> Result<C64> {
        let s = self.sign().unwrap_or(1.0);
        let (first, first_imag) = self.part()?;
        let z = as_complex(first * s, first_imag);
        let Some(s) = self.sign() else {
            return Ok(z);
        };
        let offset = self.offset();
        let (second, second_imag) = self.part()?;
        if first_imag || !second_imag {
            return Err(Error::Syntax {
                offset,
                message: "two-part literals must read real±imaginary".into(),
            });
        }
        Ok(z + as_complex(second * s, true))
    }

    fn coefficient(&mut self) -> Result<C64> {
        if self.eat('(') {
            let z = self.complex()?;
            self.expect(')')?;
            return Ok(z);
        }
        let (v, imag) = self.part()?;
        Ok(as_complex(v, imag))
    }

    /// `number`, `number i` or bare `i`; the flag marks an imaginary part.
    fn part(&mut self) -> Result<(f64, bool)> {
        if self.eat('i') {
            return Ok((1.0, true));
        }
        let x = self.number()?;
        Ok((x, self.eat('i')))
    }

    fn number(&mut self) -> Result<f64> {
        let start = self.pos;
        let offset = self.offset();
        let digits = |p: &mut Self| {
            let s = p.pos;
            while p.peek().is_some_and(|c| c.is_ascii_digit()) {
                p.pos += 1;
            }
            p.pos - s
        };
        let mut n = digits(self);
        if self.eat('.') {
            n += digits(self);
        }
        if n == 0 {
            self.pos = start;
            return Err(self.error("expected a number"));
        }
        if matches!(self.peek(), Some('e' | 'E')) {
            let save = self.pos;
            self.pos += 1;
            self.sign();
            if digits(self) == 0 {
                self.pos = save;
            }
        }
        let literal: String = self.chars[start..self.pos]
            .iter()
            .map(|&(_, c)| c)
            .collect();
        let value: f64 = literal.parse().map_err(|_| Error::Syntax {
            offset,
            message: format!("malformed number '{literal}'"),
        })?;
        if !value.is_finite() {
            return Err(Error::Syntax {
                offset,
                message: format!("number '{literal}' is not finite"),
            });
        }
        Ok(value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn coeffs(text: &str) -> Vec<C64> {
        parse_polynomial(text).unwrap().coeffs().to_vec()
    }

    #[test]
    fn grammar_examples() {
        assert_eq!(
            coeffs("x^3+x^2+1"),
            vec![c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0)]
        );
        assert_eq!(coeffs("x^2+1"), vec![c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
        assert_eq!(
            coeffs("(1+2i)x^2-3"),
            vec![c(-3.0, 0.0), c(0.0, 0.0), c(1.0, 2.0)]
        );
    }

    #[test]
    fn whitespace_signs_and_forms() {
        assert_eq!(
            coeffs("  - 2 * x ^ 2 + 3i x - i "),
            vec![c(0.0, -1.0), c(0.0, 3.0), c(-2.0, 0.0)]
        );
        assert_eq!(coeffs("x + x"), vec![c(0.0, 0.0), c(2.0, 0.0)]);
        assert_eq!(coeffs("1.5e1x"), vec![c(0.0, 0.0), c(15.0, 0.0)]);
        assert_eq!(
            coeffs("(-1-0.5i)*x + (2i)"),
            vec![c(0.0, 2.0), c(-1.0, -0.5)]
        );
        assert_eq!(coeffs("x^2 - x^2 + 4"), vec![c(4.0, 0.0)]);
    }

    #[test]
    fn syntax_errors_carry_offsets() {
        match parse_polynomial("x^2 + * 3") {
            Err(Error::Syntax { offset, .. }) => assert_eq!(offset, 6),
            other => panic!("unexpected {other:?}"),
        }
        match parse_polynomial("x^") {
            Err(Error::Syntax { offset, .. }) => assert_eq!(offset, 2),
            other => panic!("unexpected {other:?}"),
        }
        match parse_polynomial("(1+2i x") {
            Err(Error::Syntax { offset, .. }) => assert_eq!(offset, 6),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_polynomial(""), Err(Error::Syntax { .. })));
        assert!(matches!(parse_polynomial("x y"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_polynomial("3*"), Err(Error::Syntax { .. })));
    }

    #[test]
    fn degree_and_zero_guards() {
        assert!(parse_polynomial("x^24 + 1").is_ok());
        assert_eq!(
            parse_polynomial("x^25 + 1"),
            Err(Error::DegreeTooHigh {
                degree: 25,
                max: 24
            })
        );
        assert_eq!(parse_polynomial("0*x^3 + 0"), Err(Error::ZeroPolynomial));
        assert_eq!(parse_polynomial("x - x"), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn complex_literals() {
        assert_eq!(parse_complex_literal("2").unwrap(), c(2.0, 0.0));
        assert_eq!(parse_complex_literal("-i").unwrap(), c(0.0, -1.0));
        assert_eq!(parse_complex_literal("1-2i").unwrap(), c(1.0, -2.0));
        assert_eq!(parse_complex_literal("(0.3+0.1i)").unwrap(), c(0.3, 0.1));
        assert_eq!(parse_complex_literal("-2.5e-1i").unwrap(), c(0.0, -0.25));
        assert!(parse_complex_literal("1+2").is_err());
    }
}
