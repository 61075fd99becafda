//! Multiprecision [`Real`] backed by `astro-float`.
//!
//! Each value remembers its precision in bits; binary operations round to the
//! larger precision of the two operands.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign, WORD_BIT_SIZE};

use crate::real::Real;

const RM: RoundingMode = RoundingMode::ToEven;
const LOG2_10: f64 = std::f64::consts::LOG2_10;
const GUARD_BITS: usize = 32;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("astro-float constant cache"));
}

fn with_consts<R>(f: impl FnOnce(&mut Consts) -> R) -> R {
    CONSTS.with(|cc| f(&mut cc.borrow_mut()))
}

/// Bits of mantissa needed for `digits` significant decimal digits, plus guard bits.
pub fn bits_for_digits(digits: u32) -> usize {
    let raw = (digits as f64 * LOG2_10).ceil() as usize + GUARD_BITS;
    raw.div_ceil(WORD_BIT_SIZE) * WORD_BIT_SIZE
}

#[derive(Clone)]
pub struct MpFloat {
    v: BigFloat,
    p: usize,
}

impl MpFloat {
    pub fn with_bits(v: f64, p: usize) -> Self {
        Self { v: BigFloat::from_f64(v, p), p }
    }

    pub fn precision_bits(&self) -> usize {
        self.p
    }

    pub fn inner(&self) -> &BigFloat {
        &self.v
    }

    fn wrap(&self, v: BigFloat) -> Self {
        Self { v, p: self.p }
    }
}

impl fmt::Debug for MpFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MpFloat({}, {} bits)", self.to_decimal(), self.p)
    }
}

impl fmt::Display for MpFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal())
    }
}

impl PartialEq for MpFloat {
    fn eq(&self, other: &Self) -> bool {
        self.v.partial_cmp(&other.v) == Some(Ordering::Equal)
    }
}

impl PartialOrd for MpFloat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.v.partial_cmp(&other.v)
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident) => {
        impl $tr for MpFloat {
            type Output = MpFloat;
            fn $method(self, rhs: MpFloat) -> MpFloat {
                let p = self.p.max(rhs.p);
                MpFloat { v: self.v.$method(&rhs.v, p, RM), p }
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);
binop!(Div, div);

impl Neg for MpFloat {
    type Output = MpFloat;
    fn neg(self) -> MpFloat {
        MpFloat { v: -self.v, p: self.p }
    }
}

impl Real for MpFloat {
    fn from_f64(v: f64, digits: u32) -> Self {
        Self::with_bits(v, bits_for_digits(digits))
    }

    fn parse_decimal(s: &str, digits: u32) -> Option<Self> {
        let s = s.trim();
        // Reject anything astro-float would silently accept as NaN or garbage.
        if s.is_empty() || s.parse::<f64>().is_err() {
            return None;
        }
        let p = bits_for_digits(digits);
        let v = with_consts(|cc| BigFloat::parse(s, Radix::Dec, p, RM, cc));
        if v.is_nan() {
            None
        } else {
            Some(Self { v, p })
        }
    }

    fn lit(&self, v: f64) -> Self {
        Self::with_bits(v, self.p)
    }

    fn ratio(&self, num: i64, den: i64) -> Self {
        let n = BigFloat::from_i64(num, self.p);
        let d = BigFloat::from_i64(den, self.p);
        self.wrap(n.div(&d, self.p, RM))
    }

    fn abs(&self) -> Self {
        self.wrap(self.v.abs())
    }

    fn sqrt(&self) -> Self {
        self.wrap(self.v.sqrt(self.p, RM))
    }

    fn exp(&self) -> Self {
        self.wrap(with_consts(|cc| self.v.exp(self.p, RM, cc)))
    }

    fn ln(&self) -> Self {
        self.wrap(with_consts(|cc| self.v.ln(self.p, RM, cc)))
    }

    fn sin(&self) -> Self {
        self.wrap(with_consts(|cc| self.v.sin(self.p, RM, cc)))
    }

    fn cos(&self) -> Self {
        self.wrap(with_consts(|cc| self.v.cos(self.p, RM, cc)))
    }

    fn atan(&self) -> Self {
        self.wrap(with_consts(|cc| self.v.atan(self.p, RM, cc)))
    }

    fn pi(&self) -> Self {
        self.wrap(with_consts(|cc| cc.pi(self.p, RM)))
    }

    fn is_zero(&self) -> bool {
        self.v.is_zero()
    }

    fn is_finite(&self) -> bool {
        !self.v.is_nan() && !self.v.is_inf()
    }

    fn to_f64(&self) -> f64 {
        if self.v.is_nan() {
            return f64::NAN;
        }
        if self.v.is_inf_pos() {
            return f64::INFINITY;
        }
        if self.v.is_inf_neg() {
            return f64::NEG_INFINITY;
        }
        match self.v.as_raw_parts() {
            None => f64::NAN,
            Some((words, _, sign, exponent, _)) => {
                let top = match words.last() {
                    Some(&w) if w != 0 => w as f64,
                    _ => return 0.0,
                };
                // value = 0.m * 2^exponent with m normalised to the top word.
                let mant = top / 2f64.powi(WORD_BIT_SIZE as i32);
                let e = exponent as i64;
                let mag = if e > 1100 {
                    f64::INFINITY
                } else if e < -1200 {
                    0.0
                } else {
                    // Split the scaling so intermediate powers stay representable.
                    let half = (e / 2) as i32;
                    mant * 2f64.powi(half) * 2f64.powi(e as i32 - half)
                };
                if sign == Sign::Neg {
                    -mag
                } else {
                    mag
                }
            }
        }
    }

    fn digits(&self) -> u32 {
        (((self.p - GUARD_BITS.min(self.p)) as f64) / LOG2_10).floor() as u32
    }

    fn unit_roundoff(&self) -> Self {
        let one = BigFloat::from_i64(1, self.p);
        let two = BigFloat::from_i64(2, self.p);
        self.wrap(one.div(&two.powi(self.p, self.p, RM), self.p, RM))
    }

    fn to_decimal(&self) -> String {
        if self.v.is_zero() {
            return "0".to_string();
        }
        with_consts(|cc| self.v.format(Radix::Dec, RM, cc)).unwrap_or_else(|_| "NaN".to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precision_covers_requested_digits() {
        assert!(bits_for_digits(50) >= 167);
        let x = MpFloat::from_f64(1.0, 50);
        assert!(x.digits() >= 50);
    }

    #[test]
    fn arithmetic_matches_f64_at_low_order() {
        let a = MpFloat::from_f64(0.75, 40);
        let b = a.lit(0.5);
        assert_eq!((a.clone() * b.clone()).to_f64(), 0.375);
        assert_eq!((a.clone() / b.clone()).to_f64(), 1.5);
        assert_eq!((a.clone() - b.clone()).to_f64(), 0.25);
        assert!((a.ln().exp() - a.clone()).abs().to_f64() < 1e-40);
        let pi = a.pi();
        assert!((pi.to_f64() - std::f64::consts::PI).abs() < 1e-15);
        assert!((pi.clone() / a.lit(2.0)).sin().to_f64() == 1.0);
    }

    #[test]
    fn third_is_accurate_to_working_precision() {
        let one = MpFloat::from_f64(1.0, 60);
        let third = one.ratio(1, 3);
        let err = (third.clone() * one.lit(3.0) - one.clone()).abs();
        assert!(err < one.lit(1e-60));
    }

    #[test]
    fn parse_and_format() {
        let x = MpFloat::parse_decimal("0.1", 50).unwrap();
        let s = x.to_decimal();
        let back = MpFloat::parse_decimal(&s, 50).unwrap();
        assert!((back - x).abs().to_f64() < 1e-50);
        assert!(MpFloat::parse_decimal("nope", 50).is_none());
    }

    #[test]
    fn tiny_values_survive_beyond_f64_range() {
        let x = MpFloat::from_f64(1e-300, 30);
        let tiny = x.clone() * x.clone();
        assert!(!tiny.is_zero());
        assert_eq!(tiny.to_f64(), 0.0);
        assert!(tiny > x.zero_like());
    }
}
