//! The q-Gamma function `Gamma_q(z) = (q;q)/(q^z;q) (1-q)^{1-z}` and the
//! special values built from it.

use crate::certified::CertifiedValue;
use crate::error::{Error, Result};
use crate::qpoch::{certify, qpoch_real_rel, QParam, TruncationBudget};
use crate::qtrig::{qpow, Angle};
use crate::real::Real;

/// Argument of `Gamma_q`; restricted to `z > 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct GammaArg<T> {
    z: T,
}

impl<T: Real> GammaArg<T> {
    pub fn new(z: T) -> Result<Self> {
        if !(z > z.zero_like()) {
            return Err(Error::Domain(format!("Gamma_q needs z > 0, got {}", z.to_decimal())));
        }
        Ok(Self { z })
    }

    pub fn z(&self) -> &T {
        &self.z
    }
}

pub(crate) fn gamma_q_rel<T: Real>(z: &T, q: &T, rel: &T, max: usize) -> Result<CertifiedValue<T>> {
    if !(*z > z.zero_like()) {
        return Err(Error::Domain(format!("Gamma_q needs z > 0, got {}", z.to_decimal())));
    }
    let one = q.one_like();
    let num = qpoch_real_rel(q, q, rel, max)?;
    let den = qpoch_real_rel(&qpow(q, z), q, rel, max)?;
    let power = qpow(&(one.clone() - q.clone()), &(one - z.clone()));
    Ok(num.div(&den)?.scale_real(&power))
}

pub(crate) fn gamma_half_special_rel<T: Real>(q: &T, rel: &T, max: usize) -> Result<CertifiedValue<T>> {
    let q2 = q.clone() * q.clone();
    let num = qpoch_real_rel(&q2, &q2, rel, max)?.square();
    let den = qpoch_real_rel(q, q, rel, max)?;
    let root = (q.one_like() - q2).sqrt();
    Ok(num.div(&den)?.scale_real(&root))
}

pub(crate) fn sin_via_gamma_rel<T: Real>(z: &T, q: &T, rel: &T, max: usize) -> Result<CertifiedValue<T>> {
    let zero = z.zero_like();
    let one = z.one_like();
    if !(*z > zero && *z < one) {
        return Err(Error::Domain(format!("the Gamma form of sin_q needs 0 < z < 1, got {}", z.to_decimal())));
    }
    let q2 = q.clone() * q.clone();
    let half = gamma_q_rel(&q.ratio(1, 2), &q2, rel, max)?;
    let left = gamma_q_rel(z, &q2, rel, max)?;
    let right = gamma_q_rel(&(one - z.clone()), &q2, rel, max)?;
    // q^{1/4} (q^2)^{z(z-1)/2} = q^{1/4 + z(z-1)}
    let exponent = q.ratio(1, 4) + z.clone() * (z.clone() - z.one_like());
    Ok(half.square().div(&left.mul(&right))?.scale_real(&qpow(q, &exponent)))
}

pub(crate) fn quarter_product_lhs_rel<T: Real>(q: &T, rel: &T, max: usize) -> Result<CertifiedValue<T>> {
    let q2 = q.clone() * q.clone();
    let a = gamma_q_rel(&q.ratio(1, 4), &q2, rel, max)?;
    let b = gamma_q_rel(&q.ratio(3, 4), &q2, rel, max)?;
    Ok(a.mul(&b))
}

pub(crate) fn quarter_product_rhs_rel<T: Real>(q: &T, rel: &T, max: usize) -> Result<CertifiedValue<T>> {
    let q2 = q.clone() * q.clone();
    let even = qpoch_real_rel(&q2, &q2, rel, max)?.powi(4);
    let odd = qpoch_real_rel(q, &q2, rel, max)?.square();
    let full = qpoch_real_rel(q, q, rel, max)?.square();
    let root = qpoch_real_rel(&q.sqrt(), q, rel, max)?;
    let value = even.mul(&odd).div(&full.mul(&root))?;
    Ok(value.scale_real(&(q.one_like() - q2)))
}

/// `Gamma_q(z)` for `z > 0`.
pub fn gamma_q<T: Real>(arg: &GammaArg<T>, qp: &QParam<T>, budget: &TruncationBudget<T>) -> Result<CertifiedValue<T>> {
    certify(budget, |rel, max| gamma_q_rel(arg.z(), qp.q(), rel, max))
}

/// `(q^2;q^2)^2 / (q;q) * sqrt(1 - q^2)`, which equals `Gamma_{q^2}(1/2)`.
pub fn gamma_half_special<T: Real>(qp: &QParam<T>, budget: &TruncationBudget<T>) -> Result<CertifiedValue<T>> {
    certify(budget, |rel, max| gamma_half_special_rel(qp.q(), rel, max))
}

/// `q^{1/4} Gamma_{q^2}(1/2)^2 (q^2)^{z(z-1)/2} / (Gamma_{q^2}(z) Gamma_{q^2}(1-z))`,
/// the reflection-type form of `sin_q(pi z)`, for `0 < z < 1`.
pub fn sin_via_gamma<T: Real>(
    angle: &Angle<T>,
    qp: &QParam<T>,
    budget: &TruncationBudget<T>,
) -> Result<CertifiedValue<T>> {
    certify(budget, |rel, max| sin_via_gamma_rel(angle.z(), qp.q(), rel, max))
}

/// Both sides of the product formula for `Gamma_{q^2}(1/4) Gamma_{q^2}(3/4)`.
pub fn quarter_product<T: Real>(
    qp: &QParam<T>,
    budget: &TruncationBudget<T>,
) -> Result<(CertifiedValue<T>, CertifiedValue<T>)> {
    let lhs = certify(budget, |rel, max| quarter_product_lhs_rel(qp.q(), rel, max))?;
    let rhs = certify(budget, |rel, max| quarter_product_rhs_rel(qp.q(), rel, max))?;
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qtrig::sin_q;

    fn qp(q: f64) -> QParam<f64> {
        QParam::new(q).unwrap()
    }

    fn budget(eps: f64) -> TruncationBudget<f64> {
        TruncationBudget::with_eps(eps).unwrap()
    }

    fn gamma(z: f64, q: f64) -> CertifiedValue<f64> {
        gamma_q(&GammaArg::new(z).unwrap(), &qp(q), &budget(1e-14)).unwrap()
    }

    #[test]
    fn gamma_at_one_and_two() {
        let g1 = gamma(1.0, 0.5);
        assert!((g1.value.re - 1.0).abs() <= g1.bound + 1e-15);
        let g2 = gamma(2.0, 0.5);
        assert!((g2.value.re - 1.0).abs() <= g2.bound + 1e-15);
    }

    #[test]
    fn nonpositive_argument_is_rejected() {
        assert!(GammaArg::new(0.0).is_err());
        assert!(GammaArg::new(-1.5).is_err());
    }

    #[test]
    fn functional_equation() {
        for q in [0.3, 0.5, 0.7] {
            for z in [0.25, 0.5, 1.5] {
                let lhs = gamma(z + 1.0, q);
                let rhs = gamma(z, q).value.re * (1.0 - q.powf(z)) / (1.0 - q);
                assert!((lhs.value.re - rhs).abs() < 1e-12, "q={q} z={z}");
            }
        }
    }

    #[test]
    fn half_special_value_two_routes() {
        let q = 0.5;
        let special = gamma_half_special(&qp(q), &budget(1e-14)).unwrap();
        let direct = gamma(0.5, q * q);
        assert!((special.value.re - direct.value.re).abs() <= special.bound + direct.bound + 1e-15);
        // (q^2;q^2)/(q;q^2) sqrt(1-q^2) through the even/odd split of (q;q).
        let b = 1e-16;
        let even = qpoch_real_rel(&(q * q), &(q * q), &b, 10_000).unwrap().value.re;
        let odd = qpoch_real_rel(&q, &(q * q), &b, 10_000).unwrap().value.re;
        assert!((special.value.re - even / odd * (1.0 - q * q).sqrt()).abs() < 1e-14);
    }

    #[test]
    fn half_special_value_positive_on_grid() {
        let mut q = 0.05;
        while q < 0.951 {
            let v = gamma_half_special(&qp(q), &budget(1e-14)).unwrap();
            assert!(v.certainly_positive());
            q += 0.05;
        }
    }

    #[test]
    fn gamma_form_of_sine() {
        let b = budget(1e-14);
        let v = sin_via_gamma(&Angle::from_z(0.5), &qp(0.5), &b).unwrap();
        assert!((v.value.re - 1.0).abs() < 1e-14);
        let g = sin_via_gamma(&Angle::from_z(1.0 / 3.0), &qp(0.5), &b).unwrap();
        let s = sin_q(&Angle::from_z(1.0 / 3.0), &qp(0.5), &b).unwrap();
        assert!(((g.value.re - s.value.re) / s.value.re).abs() <= 1e-10);
        let vals: Vec<f64> = [0.3, 0.2, 0.1]
            .iter()
            .map(|&t| sin_via_gamma(&Angle::from_radians(t), &qp(0.5), &b).unwrap().value.re)
            .collect();
        assert!(vals[0] > vals[1] && vals[1] > vals[2]);
        assert!(sin_via_gamma(&Angle::from_z(1.0), &qp(0.5), &b).is_err());
    }

    #[test]
    fn quarter_product_sides_agree() {
        let (l, r) = quarter_product(&qp(0.5), &budget(1e-14)).unwrap();
        assert!(((l.value.re - r.value.re) / r.value.re).abs() <= 1e-10);
        let mut q = 0.05;
        while q < 0.951 {
            let (l, r) = quarter_product(&qp(q), &budget(1e-14)).unwrap();
            assert!(l.certainly_positive() && r.certainly_positive());
            q += 0.1;
        }
    }

    #[test]
    fn quarter_product_trends_to_pi_sqrt2() {
        let target = std::f64::consts::PI * std::f64::consts::SQRT_2;
        let d: Vec<f64> = [0.5, 0.9, 0.99]
            .iter()
            .map(|&q| (quarter_product(&qp(q), &budget(1e-13)).unwrap().0.value.re - target).abs())
            .collect();
        assert!(d[0] > d[1] && d[1] > d[2]);
    }
}
