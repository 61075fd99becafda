use crate::error::{Error, Result};
use crate::real::{Complex, Real};

/// A computed value together with an absolute bound on its truncation error.
///
/// The arithmetic helpers propagate bounds rigorously: if the exact operands
/// lie within `bound` of the stored values, the exact result lies within the
/// returned bound of the computed one (floating-point rounding excluded).
#[derive(Clone, Debug, PartialEq)]
pub struct CertifiedValue<T> {
    pub value: Complex<T>,
    pub bound: T,
    pub terms_used: usize,
}

impl<T: Real> CertifiedValue<T> {
    pub fn exact(value: Complex<T>) -> Self {
        let bound = value.re.zero_like();
        Self { value, bound, terms_used: 0 }
    }

    pub fn exact_real(value: T) -> Self {
        Self::exact(Complex::from_real(value))
    }

    pub fn re(&self) -> &T {
        &self.value.re
    }

    pub fn magnitude(&self) -> T {
        self.value.norm()
    }

    /// Relative bound `bound / |value|`; infinite for a zero value with a nonzero bound.
    pub fn relative_bound(&self) -> T {
        let mag = self.magnitude();
        if mag.is_zero() {
            if self.bound.is_zero() {
                return self.bound.clone();
            }
            return self.bound.lit(f64::INFINITY);
        }
        self.bound.clone() / mag
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            value: self.value.clone() + other.value.clone(),
            bound: self.bound.clone() + other.bound.clone(),
            terms_used: self.terms_used + other.terms_used,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self {
            value: self.value.clone() - other.value.clone(),
            bound: self.bound.clone() + other.bound.clone(),
            terms_used: self.terms_used + other.terms_used,
        }
    }

    /// `|ab - a'b'| <= |a'| db + |b'| da + da db`.
    pub fn mul(&self, other: &Self) -> Self {
        let bound = self.magnitude() * other.bound.clone()
            + other.magnitude() * self.bound.clone()
            + self.bound.clone() * other.bound.clone();
        Self { value: self.value.clone() * other.value.clone(), bound, terms_used: self.terms_used + other.terms_used }
    }

    /// `|a/b - a'/b'| <= (da + |a'/b'| db) / (|b'| - db)`, valid while `db < |b'|`.
    pub fn div(&self, other: &Self) -> Result<Self> {
        let den_mag = other.magnitude();
        if den_mag.is_zero() {
            return Err(Error::Domain("division by an exact zero".into()));
        }
        if other.bound >= den_mag {
            return Err(Error::Internal("divisor is not separated from zero by its error bound".into()));
        }
        let value = self.value.clone() / other.value.clone();
        let bound = (self.bound.clone() + value.norm() * other.bound.clone()) / (den_mag - other.bound.clone());
        Ok(Self { value, bound, terms_used: self.terms_used + other.terms_used })
    }

    pub fn square(&self) -> Self {
        self.mul(self)
    }

    pub fn powi(&self, n: u32) -> Self {
        let mut acc = Self::exact_real(self.bound.one_like());
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplication by a value known without truncation error.
    pub fn scale(&self, k: &Complex<T>) -> Self {
        Self {
            value: self.value.clone() * k.clone(),
            bound: self.bound.clone() * k.norm(),
            terms_used: self.terms_used,
        }
    }

    pub fn scale_real(&self, k: &T) -> Self {
        self.scale(&Complex::from_real(k.clone()))
    }

    /// Square root of a real, nonnegative value.
    ///
    /// Uses `|sqrt a - sqrt a'| <= min(da / sqrt a', sqrt da)`.
    pub fn sqrt(&self) -> Result<Self> {
        let x = self.value.re.clone();
        if !self.value.is_real() || x < x.zero_like() {
            return Err(Error::Domain(format!(
                "square root of {} which is not a nonnegative real",
                self.value.to_decimal()
            )));
        }
        let root = x.sqrt();
        let loose = self.bound.sqrt();
        let bound = if root.is_zero() { loose } else { (self.bound.clone() / root.clone()).min_of(loose) };
        Ok(Self { value: Complex::from_real(root), bound, terms_used: self.terms_used })
    }

    /// `i * self`.
    pub fn mul_i(&self) -> Self {
        Self { value: self.value.mul_i(), bound: self.bound.clone(), terms_used: self.terms_used }
    }

    /// True when the value is separated from zero by more than its bound and positive.
    pub fn certainly_positive(&self) -> bool {
        self.value.is_real() && self.value.re > self.bound
    }
}
