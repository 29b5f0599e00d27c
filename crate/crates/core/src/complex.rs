//! Scalar helpers on top of `num_complex::Complex64`.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

pub type C64 = num_complex::Complex64;

pub const I: C64 = C64::new(0.0, 1.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const ZERO: C64 = C64::new(0.0, 0.0);

pub fn is_finite(z: C64) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

/// `(-1)^k` as a real sign.
pub fn sign(k: usize) -> f64 {
    if k.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// `i^k`, exact.
pub fn i_pow(k: usize) -> C64 {
    match k % 4 {
        0 => ONE,
        1 => I,
        2 => -ONE,
        _ => -I,
    }
}

/// Serializes as `{"re": .., "im": ..}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JsonComplex(pub C64);

impl Serialize for JsonComplex {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("Complex", 2)?;
        s.serialize_field("re", &self.0.re)?;
        s.serialize_field("im", &self.0.im)?;
        s.end()
    }
}

/// serde `serialize_with` adaptors.
pub mod serde_c64 {
    use super::{JsonComplex, C64};
    use serde::ser::SerializeSeq;
    use serde::Serializer;

    pub fn one<S: Serializer>(z: &C64, s: S) -> Result<S::Ok, S::Error> {
        serde::Serialize::serialize(&JsonComplex(*z), s)
    }

    pub fn vec<S: Serializer>(v: &[C64], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for z in v {
            seq.serialize_element(&JsonComplex(*z))?;
        }
        seq.end()
    }

    pub fn grid<S: Serializer>(rows: &[Vec<C64>], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(rows.len()))?;
        for row in rows {
            let r: Vec<JsonComplex> = row.iter().map(|z| JsonComplex(*z)).collect();
            seq.serialize_element(&r)?;
        }
        seq.end()
    }
}

/// Formats a real with `digits` significant digits, trimming trailing zeros.
pub fn fmt_sig(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let exp = x.abs().log10().floor() as i32;
    if (-5..digits as i32).contains(&exp) {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        let s = format!("{x:.decimals$}");
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    } else {
        let s = format!("{:.*e}", digits - 1, x);
        match s.split_once('e') {
            Some((mant, e)) if mant.contains('.') => {
                format!("{}e{}", mant.trim_end_matches('0').trim_end_matches('.'), e)
            }
            _ => s,
        }
    }
}

/// `a+bi` text form with 12 significant digits per component.
pub fn fmt_complex(z: C64) -> String {
    let re = fmt_sig(z.re, 12);
    let im = fmt_sig(z.im.abs(), 12);
    let op = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{re}{op}{im}i")
}
