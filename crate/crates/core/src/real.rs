//! Scalar abstraction shared by every numeric routine.
//!
//! All evaluators are generic over [`Real`], so the same code runs in plain
//! `f64` and in the multiprecision [`MpFloat`](crate::mp::MpFloat). Values
//! carry their own working precision; literals are created through
//! [`Real::lit`] on an existing value so they inherit it.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Real scalar with the transcendental operations the evaluators need.
pub trait Real:
    Clone
    + fmt::Debug
    + PartialOrd
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// Builds a value from `v` with `digits` significant decimal digits.
    fn from_f64(v: f64, digits: u32) -> Self;

    /// Parses a decimal literal (`0.5`, `-1.25e-3`) at `digits` precision.
    fn parse_decimal(s: &str, digits: u32) -> Option<Self>;

    /// A literal carrying the working precision of `self`.
    fn lit(&self, v: f64) -> Self;

    /// The quotient `num / den`, correctly rounded at the precision of `self`.
    fn ratio(&self, num: i64, den: i64) -> Self {
        self.lit(num as f64) / self.lit(den as f64)
    }

    fn abs(&self) -> Self;
    fn sqrt(&self) -> Self;
    fn exp(&self) -> Self;
    fn ln(&self) -> Self;
    fn sin(&self) -> Self;
    fn cos(&self) -> Self;
    fn atan(&self) -> Self;
    fn pi(&self) -> Self;

    /// Angle of the point `(x, self)` in `(-pi, pi]`.
    fn atan2(&self, x: &Self) -> Self {
        let zero = self.zero_like();
        if x.is_zero() {
            let half = self.pi() * self.ratio(1, 2);
            return if *self < zero {
                -half
            } else if self.is_zero() {
                zero
            } else {
                half
            };
        }
        let base = (self.clone() / x.clone()).atan();
        if *x > zero {
            base
        } else if *self < zero {
            base - self.pi()
        } else {
            base + self.pi()
        }
    }

    fn is_zero(&self) -> bool;
    fn is_finite(&self) -> bool;
    fn to_f64(&self) -> f64;

    /// Significant decimal digits of the working precision.
    fn digits(&self) -> u32;

    /// Relative spacing of representable numbers near 1.
    fn unit_roundoff(&self) -> Self;

    /// Decimal rendering at full working precision, locale-free.
    fn to_decimal(&self) -> String;

    fn zero_like(&self) -> Self {
        self.lit(0.0)
    }

    fn one_like(&self) -> Self {
        self.lit(1.0)
    }

    /// `self^e` for `self > 0`. A zero exponent yields exactly one.
    fn powf(&self, e: &Self) -> Self {
        if e.is_zero() {
            return self.one_like();
        }
        (e.clone() * self.ln()).exp()
    }

    fn powi(&self, n: u32) -> Self {
        let mut acc = self.one_like();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc * base.clone();
            }
            base = base.clone() * base;
            n >>= 1;
        }
        acc
    }

    fn max_of(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    fn min_of(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }
}

impl Real for f64 {
    fn from_f64(v: f64, _digits: u32) -> Self {
        v
    }

    fn parse_decimal(s: &str, _digits: u32) -> Option<Self> {
        s.trim().parse().ok().filter(|v: &f64| !v.is_nan())
    }

    fn lit(&self, v: f64) -> Self {
        v
    }

    fn abs(&self) -> Self {
        f64::abs(*self)
    }

    fn sqrt(&self) -> Self {
        f64::sqrt(*self)
    }

    fn exp(&self) -> Self {
        f64::exp(*self)
    }

    fn ln(&self) -> Self {
        f64::ln(*self)
    }

    fn sin(&self) -> Self {
        f64::sin(*self)
    }

    fn cos(&self) -> Self {
        f64::cos(*self)
    }

    fn atan(&self) -> Self {
        f64::atan(*self)
    }

    fn atan2(&self, x: &Self) -> Self {
        f64::atan2(*self, *x)
    }

    fn pi(&self) -> Self {
        std::f64::consts::PI
    }

    fn is_zero(&self) -> bool {
        *self == 0.0
    }

    fn is_finite(&self) -> bool {
        f64::is_finite(*self)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn digits(&self) -> u32 {
        16
    }

    fn unit_roundoff(&self) -> Self {
        f64::EPSILON / 2.0
    }

    fn to_decimal(&self) -> String {
        format!("{:e}", self)
    }

    fn powf(&self, e: &Self) -> Self {
        if *e == 0.0 {
            return 1.0;
        }
        f64::powf(*self, *e)
    }
}

/// Minimal complex number over a [`Real`].
#[derive(Clone, Debug, PartialEq)]
pub struct Complex<T> {
    pub re: T,
    pub im: T,
}

impl<T: Real> Complex<T> {
    pub fn new(re: T, im: T) -> Self {
        Self { re, im }
    }

    pub fn from_real(re: T) -> Self {
        let im = re.zero_like();
        Self { re, im }
    }

    /// `e^{i·phi}`.
    pub fn unit(phi: &T) -> Self {
        Self::new(phi.cos(), phi.sin())
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn norm(&self) -> T {
        if self.im.is_zero() {
            return self.re.abs();
        }
        if self.re.is_zero() {
            return self.im.abs();
        }
        (self.re.clone() * self.re.clone() + self.im.clone() * self.im.clone()).sqrt()
    }

    pub fn scale(&self, k: &T) -> Self {
        Self::new(self.re.clone() * k.clone(), self.im.clone() * k.clone())
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    pub fn recip(&self) -> Self {
        let one = Self::from_real(self.re.one_like());
        one / self.clone()
    }

    /// Principal logarithm.
    pub fn ln(&self) -> Self {
        Self::new(self.norm().ln(), self.im.atan2(&self.re))
    }

    /// Multiplication by `i`.
    pub fn mul_i(&self) -> Self {
        Self::new(-self.im.clone(), self.re.clone())
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }

    /// `re` alone when the imaginary part is zero, otherwise `re+imi` / `re-imi`.
    pub fn to_decimal(&self) -> String {
        if self.im.is_zero() {
            return self.re.to_decimal();
        }
        let im = self.im.to_decimal();
        match im.strip_prefix('-') {
            Some(mag) => format!("{}-{}i", self.re.to_decimal(), mag),
            None => format!("{}+{}i", self.re.to_decimal(), im),
        }
    }
}

impl<T: Real> Add for Complex<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl<T: Real> Sub for Complex<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl<T: Real> Neg for Complex<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.re, -self.im)
    }
}

impl<T: Real> Mul for Complex<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        if self.im.is_zero() && rhs.im.is_zero() {
            let im = self.re.zero_like();
            return Self::new(self.re * rhs.re, im);
        }
        let re = self.re.clone() * rhs.re.clone() - self.im.clone() * rhs.im.clone();
        let im = self.re * rhs.im + self.im * rhs.re;
        Self::new(re, im)
    }
}

impl<T: Real> Div for Complex<T> {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        if rhs.im.is_zero() {
            return Self::new(self.re / rhs.re.clone(), self.im / rhs.re);
        }
        let den = rhs.re.clone() * rhs.re.clone() + rhs.im.clone() * rhs.im.clone();
        let re = (self.re.clone() * rhs.re.clone() + self.im.clone() * rhs.im.clone()) / den.clone();
        let im = (self.im * rhs.re - self.re * rhs.im) / den;
        Self::new(re, im)
    }
}

/// Parses `a`, `a+bi`, `a-bi`, `bi` (scientific notation allowed).
pub fn parse_complex<T: Real>(s: &str, digits: u32) -> Option<Complex<T>> {
    let s = s.trim();
    if let Some(body) = s.strip_suffix('i') {
        // Split at the last sign that is not part of an exponent.
        let bytes = body.as_bytes();
        let mut split = None;
        for idx in (1..bytes.len()).rev() {
            let c = bytes[idx];
            if (c == b'+' || c == b'-') && !matches!(bytes[idx - 1], b'e' | b'E') {
                split = Some(idx);
                break;
            }
        }
        return match split {
            Some(idx) => {
                let re = T::parse_decimal(&body[..idx], digits)?;
                let im_str = &body[idx..];
                let im = match im_str {
                    "+" => T::from_f64(1.0, digits),
                    "-" => T::from_f64(-1.0, digits),
                    _ => T::parse_decimal(im_str.trim_start_matches('+'), digits)?,
                };
                Some(Complex::new(re, im))
            }
            None => {
                let im = match body {
                    "" | "+" => T::from_f64(1.0, digits),
                    "-" => T::from_f64(-1.0, digits),
                    _ => T::parse_decimal(body, digits)?,
                };
                Some(Complex::new(im.zero_like(), im))
            }
        };
    }
    T::parse_decimal(s, digits).map(Complex::from_real)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_parse_forms() {
        let c: Complex<f64> = parse_complex("0.5+0.25i", 16).unwrap();
        assert_eq!(c, Complex::new(0.5, 0.25));
        let c: Complex<f64> = parse_complex("1e-3-2e-2i", 16).unwrap();
        assert_eq!(c, Complex::new(1e-3, -2e-2));
        let c: Complex<f64> = parse_complex("-2i", 16).unwrap();
        assert_eq!(c, Complex::new(0.0, -2.0));
        let c: Complex<f64> = parse_complex("-4.5", 16).unwrap();
        assert_eq!(c, Complex::new(-4.5, 0.0));
        assert!(parse_complex::<f64>("abc", 16).is_none());
    }

    #[test]
    fn complex_decimal_round_trips() {
        let c = Complex::new(0.1f64, -0.3);
        let back: Complex<f64> = parse_complex(&c.to_decimal(), 16).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn powf_zero_exponent_is_exact() {
        assert_eq!(Real::powf(&0.37f64, &0.0), 1.0);
        assert_eq!(Real::powi(&0.5f64, 10), 0.5f64.powi(10i32));
    }

    #[test]
    fn complex_division_inverts_multiplication() {
        let a = Complex::new(0.3f64, 0.7);
        let b = Complex::new(-1.2f64, 0.4);
        let back = (a.clone() * b.clone()) / b;
        assert!((back - a).norm() < 1e-15);
    }
}
