//! Gosper's q-sine and q-cosine, the duplication constant `S(q)`, and the
//! closed forms at `pi/4` and `pi/8`.
//!
//! Every function takes an angle `theta` and works internally with
//! `z = theta / pi`:
//!
//! ```text
//! sin_q(pi z) = q^{(z-1/2)^2} (q^{2z};q^2)(q^{2-2z};q^2) / (q;q^2)^2
//! cos_q(pi z) = q^{z^2}       (q^{1-2z};q^2)(q^{2z+1};q^2) / (q;q^2)^2
//! S(q)        = q^{-1/4} (q^2;q^4)^4 / (q;q^2)^2
//! ```

use crate::certified::CertifiedValue;
use crate::error::{Error, Result};
use crate::qpoch::{certify, qpoch_real_rel, QParam, TruncationBudget};
use crate::real::Real;

/// An angle stored as its multiple of `pi`, so rational multiples stay exact.
#[derive(Clone, Debug, PartialEq)]
pub struct Angle<T> {
    z: T,
}

impl<T: Real> Angle<T> {
    /// The angle `pi * z`.
    pub fn from_z(z: T) -> Self {
        Self { z }
    }

    pub fn from_radians(theta: T) -> Self {
        let pi = theta.pi();
        Self { z: theta / pi }
    }

    /// `z = theta / pi`.
    pub fn z(&self) -> &T {
        &self.z
    }

    pub fn radians(&self) -> T {
        self.z.pi() * self.z.clone()
    }

    pub fn doubled(&self) -> Self {
        Self { z: self.z.lit(2.0) * self.z.clone() }
    }

    /// `pi - theta`.
    pub fn supplement(&self) -> Self {
        Self { z: self.z.one_like() - self.z.clone() }
    }

    /// `pi/2 - theta`.
    pub fn complement(&self) -> Self {
        Self { z: self.z.ratio(1, 2) - self.z.clone() }
    }
}

fn exact<T: Real>(v: T) -> CertifiedValue<T> {
    CertifiedValue::exact_real(v)
}

/// `q^e` for `q > 0` with no truncation error.
pub(crate) fn qpow<T: Real>(q: &T, e: &T) -> T {
    q.powf(e)
}

pub(crate) fn sin_q_rel<T: Real>(z: &T, q: &T, rel: &T, max: usize) -> Result<CertifiedValue<T>> {
    let two = q.lit(2.0);
    let half = q.ratio(1, 2);
    let q2 = q.clone() * q.clone();
    let shift = z.clone() - half;
    let prefactor = qpow(q, &(shift.clone() * shift));
    let a = qpoch_real_rel(&qpow(q, &(two.clone() * z.clone())), &q2, rel, max)?;
    if a.value.is_zero() && a.bound.is_zero() {
        return Ok(exact(q.zero_like()));
    }
    let b = qpoch_real_rel(&qpow(q, &(two.clone() - two * z.clone())), &q2, rel, max)?;
    if b.value.is_zero() && b.bound.is_zero() {
        return Ok(exact(q.zero_like()));
    }
    let c = qpoch_real_rel(q, &q2, rel, max)?;
    Ok(a.mul(&b).div(&c.square())?.scale_real(&prefactor))
}

pub(crate) fn cos_q_rel<T: Real>(z: &T, q: &T, rel: &T, max: usize) -> Result<CertifiedValue<T>> {
    let one = q.one_like();
    let two = q.lit(2.0);
    let q2 = q.clone() * q.clone();
    let prefactor = qpow(q, &(z.clone() * z.clone()));
    let a = qpoch_real_rel(&qpow(q, &(one.clone() - two.clone() * z.clone())), &q2, rel, max)?;
    if a.value.is_zero() && a.bound.is_zero() {
        return Ok(exact(q.zero_like()));
    }
    let b = qpoch_real_rel(&qpow(q, &(two * z.clone() + one)), &q2, rel, max)?;
    if b.value.is_zero() && b.bound.is_zero() {
        return Ok(exact(q.zero_like()));
    }
    let c = qpoch_real_rel(q, &q2, rel, max)?;
    Ok(a.mul(&b).div(&c.square())?.scale_real(&prefactor))
}

pub(crate) fn s_of_q_rel<T: Real>(q: &T, rel: &T, max: usize) -> Result<CertifiedValue<T>> {
    let q2 = q.clone() * q.clone();
    let q4 = q2.clone() * q2.clone();
    let num = qpoch_real_rel(&q2, &q4, rel, max)?.powi(4);
    let den = qpoch_real_rel(q, &q2, rel, max)?.square();
    let prefactor = qpow(q, &q.ratio(-1, 4));
    Ok(num.div(&den)?.scale_real(&prefactor))
}

pub(crate) fn special_sin_quarter_rel<T: Real>(q: &T, rel: &T, max: usize) -> Result<CertifiedValue<T>> {
    let q2 = q.clone() * q.clone();
    let q4 = q2.clone() * q2.clone();
    let num = qpoch_real_rel(q, &q2, rel, max)?;
    let den = qpoch_real_rel(&q2, &q4, rel, max)?.square();
    Ok(num.div(&den)?.scale_real(&qpow(q, &q.ratio(1, 8))))
}

/// `(sqrt(S^2+4) - S) / (2S)` times `sin_q(pi/4)`, the radicand of the `pi/8` closed form.
pub(crate) fn eighth_radicand_rel<T: Real>(q: &T, rel: &T, max: usize) -> Result<CertifiedValue<T>> {
    let s = s_of_q_rel(q, rel, max)?;
    let four = exact(q.lit(4.0));
    let root = s.square().add(&four).sqrt()?;
    let frac = root.sub(&s).div(&s.scale_real(&q.lit(2.0)))?;
    let quarter = sin_q_rel(&q.ratio(1, 4), q, rel, max)?;
    Ok(quarter.mul(&frac))
}

pub(crate) fn special_sin_eighth_rel<T: Real>(q: &T, rel: &T, max: usize) -> Result<CertifiedValue<T>> {
    let radicand = eighth_radicand_rel(q, rel, max)?;
    if !radicand.certainly_positive() {
        return Err(Error::Internal(format!(
            "radicand {} is not positive beyond its bound {}",
            radicand.value.to_decimal(),
            radicand.bound.to_decimal()
        )));
    }
    radicand.sqrt()
}

/// `sin_q(theta)`.
pub fn sin_q<T: Real>(angle: &Angle<T>, qp: &QParam<T>, budget: &TruncationBudget<T>) -> Result<CertifiedValue<T>> {
    certify(budget, |rel, max| sin_q_rel(angle.z(), qp.q(), rel, max))
}

/// `cos_q(theta)`.
pub fn cos_q<T: Real>(angle: &Angle<T>, qp: &QParam<T>, budget: &TruncationBudget<T>) -> Result<CertifiedValue<T>> {
    certify(budget, |rel, max| cos_q_rel(angle.z(), qp.q(), rel, max))
}

/// Gosper's duplication constant `S(q)`.
pub fn s_of_q<T: Real>(qp: &QParam<T>, budget: &TruncationBudget<T>) -> Result<CertifiedValue<T>> {
    certify(budget, |rel, max| s_of_q_rel(qp.q(), rel, max))
}

/// `q^{1/8} (q;q^2) / (q^2;q^4)^2`, which equals `sin_{q^2}(pi/4)`.
pub fn special_sin_quarter<T: Real>(qp: &QParam<T>, budget: &TruncationBudget<T>) -> Result<CertifiedValue<T>> {
    certify(budget, |rel, max| special_sin_quarter_rel(qp.q(), rel, max))
}

/// `sqrt(sin_q(pi/4) (sqrt(S^2+4) - S) / (2S))`, which equals `sin_{q^2}(pi/8)`.
pub fn special_sin_eighth<T: Real>(qp: &QParam<T>, budget: &TruncationBudget<T>) -> Result<CertifiedValue<T>> {
    certify(budget, |rel, max| special_sin_eighth_rel(qp.q(), rel, max))
}

/// The radicand of [`special_sin_eighth`], exposed so callers can check its sign.
pub fn special_sin_eighth_radicand<T: Real>(qp: &QParam<T>, budget: &TruncationBudget<T>) -> Result<CertifiedValue<T>> {
    certify(budget, |rel, max| eighth_radicand_rel(qp.q(), rel, max))
}

/// Both sides of `sin_q(2 theta) = S(q) sin_{q^2}(theta) cos_{q^2}(theta)`.
pub fn dup_sin_check<T: Real>(
    angle: &Angle<T>,
    qp: &QParam<T>,
    budget: &TruncationBudget<T>,
) -> Result<(CertifiedValue<T>, CertifiedValue<T>)> {
    let lhs = sin_q(&angle.doubled(), qp, budget)?;
    let rhs = certify(budget, |rel, max| {
        let q = qp.q();
        let q2 = q.clone() * q.clone();
        let s = s_of_q_rel(q, rel, max)?;
        let sin2 = sin_q_rel(angle.z(), &q2, rel, max)?;
        let cos2 = cos_q_rel(angle.z(), &q2, rel, max)?;
        Ok(s.mul(&sin2).mul(&cos2))
    })?;
    Ok((lhs, rhs))
}

/// Both sides of the cosine duplication formula at base change `q -> q^2`.
///
/// With `squared` the right side is `cos_{q^2}(theta)^2 - sin_{q^2}(theta)^2`;
/// without it the unsquared difference `cos_{q^2}(theta) - sin_{q^2}(theta)`,
/// which does not hold and is kept as a falsifiable variant.
pub fn dup_cos_check<T: Real>(
    angle: &Angle<T>,
    qp: &QParam<T>,
    budget: &TruncationBudget<T>,
    squared: bool,
) -> Result<(CertifiedValue<T>, CertifiedValue<T>)> {
    let lhs = cos_q(&angle.doubled(), qp, budget)?;
    let rhs = certify(budget, |rel, max| {
        let q = qp.q();
        let q2 = q.clone() * q.clone();
        let sin2 = sin_q_rel(angle.z(), &q2, rel, max)?;
        let cos2 = cos_q_rel(angle.z(), &q2, rel, max)?;
        Ok(if squared { cos2.square().sub(&sin2.square()) } else { cos2.sub(&sin2) })
    })?;
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn qp(q: f64) -> QParam<f64> {
        QParam::new(q).unwrap()
    }

    fn budget(eps: f64) -> TruncationBudget<f64> {
        TruncationBudget::with_eps(eps).unwrap()
    }

    fn z(v: f64) -> Angle<f64> {
        Angle::from_z(v)
    }

    #[test]
    fn sine_at_half_pi_is_one() {
        let v = sin_q(&z(0.5), &qp(0.5), &budget(1e-14)).unwrap();
        assert!((v.value.re - 1.0).abs() <= v.bound + 1e-15);
        let r = sin_q(&Angle::from_radians(PI / 2.0), &qp(0.5), &budget(1e-14)).unwrap();
        assert_eq!(r.value, v.value);
    }

    #[test]
    fn zeros_are_exact() {
        let s0 = sin_q(&z(0.0), &qp(0.5), &budget(1e-14)).unwrap();
        assert_eq!((s0.value.re, s0.bound), (0.0, 0.0));
        let c = cos_q(&z(0.5), &qp(0.5), &budget(1e-14)).unwrap();
        assert_eq!((c.value.re, c.bound), (0.0, 0.0));
    }

    #[test]
    fn cosine_at_zero_is_one_and_quarter_coincides() {
        let c0 = cos_q(&z(0.0), &qp(0.5), &budget(1e-14)).unwrap();
        assert!((c0.value.re - 1.0).abs() <= c0.bound + 1e-15);
        let s = sin_q(&z(0.25), &qp(0.5), &budget(1e-14)).unwrap();
        let c = cos_q(&z(0.25), &qp(0.5), &budget(1e-14)).unwrap();
        assert!((s.value.re - c.value.re).abs() < 1e-15);
    }

    #[test]
    fn s_at_half_matches_golden() {
        // q^{-1/4}(q^2;q^4)^4/(q;q^2)^2 at q = 1/2, 40 digits.
        let golden = 2.000_005_238_965_653_077_064_809_748_316_278_950_901;
        let s = s_of_q(&qp(0.5), &budget(1e-14)).unwrap();
        assert!((s.value.re - golden).abs() <= s.bound + 1e-15);
    }

    #[test]
    fn quarter_closed_form() {
        let q = 0.5;
        let closed = special_sin_quarter(&qp(q), &budget(1e-14)).unwrap();
        let direct = sin_q(&z(0.25), &qp(q * q), &budget(1e-14)).unwrap();
        assert!((closed.value.re - direct.value.re).abs() <= closed.bound + direct.bound + 1e-15);
        let s = s_of_q(&qp(q), &budget(1e-14)).unwrap();
        assert!((closed.value.re - 1.0 / s.value.re.sqrt()).abs() < 1e-14);
        assert!((s.value.re * closed.value.re.powi(2) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn eighth_closed_form() {
        let q = 0.5;
        let closed = special_sin_eighth(&qp(q), &budget(1e-14)).unwrap();
        let direct = sin_q(&z(0.125), &qp(q * q), &budget(1e-14)).unwrap();
        assert!(((closed.value.re - direct.value.re) / direct.value.re).abs() <= 1e-10);
    }

    #[test]
    fn duplication_holds_and_printed_cosine_fails() {
        let b = budget(1e-14);
        let (l, r) = dup_sin_check(&z(0.25), &qp(0.5), &b).unwrap();
        assert!((l.value.re - 1.0).abs() < 1e-14 && (r.value.re - 1.0).abs() < 1e-13);
        let (l, r) = dup_sin_check(&z(0.125), &qp(0.5), &b).unwrap();
        assert!((l.value.re - r.value.re).abs() <= 1e-10);
        let (l, r) = dup_sin_check(&z(0.0), &qp(0.5), &b).unwrap();
        assert_eq!((l.value.re, r.value.re), (0.0, 0.0));

        let (l, r) = dup_cos_check(&z(0.25), &qp(0.5), &b, true).unwrap();
        assert_eq!(l.value.re, 0.0);
        assert!(r.value.re.abs() < 1e-15);
        let (l, r) = dup_cos_check(&z(0.125), &qp(0.5), &b, true).unwrap();
        assert!((l.value.re - r.value.re).abs() <= 1e-10);
        let (l, r) = dup_cos_check(&z(0.125), &qp(0.5), &b, false).unwrap();
        assert!((l.value.re - r.value.re).abs() > 1e-3);
    }

    #[test]
    fn radicand_is_positive() {
        for q in [0.05, 0.3, 0.6, 0.9, 0.99] {
            let r = special_sin_eighth_radicand(&qp(q), &budget(1e-14)).unwrap();
            assert!(r.certainly_positive(), "q = {q}");
        }
    }
}
