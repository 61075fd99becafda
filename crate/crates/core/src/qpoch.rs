//! Infinite q-Pochhammer products `(x;q)_inf = (1-x)(1-xq)(1-xq^2)...`
//! with certified truncation bounds.

use crate::certified::CertifiedValue;
use crate::error::{Error, Result};
use crate::real::{Complex, Real};

/// Hard cap on factors or series terms unless the caller asks otherwise.
pub const DEFAULT_MAX_TERMS: usize = 2_000_000;

/// The base `q` of every evaluation, `0 < q < 1`.
///
/// The working precision travels with the scalar type: `f64` for double
/// precision, [`MpFloat`](crate::mp::MpFloat) for extended precision.
#[derive(Clone, Debug, PartialEq)]
pub struct QParam<T> {
    q: T,
}

impl<T: Real> QParam<T> {
    pub fn new(q: T) -> Result<Self> {
        let zero = q.zero_like();
        let one = q.one_like();
        if !(q > zero && q < one) {
            return Err(Error::QOutOfRange(q.to_decimal()));
        }
        Ok(Self { q })
    }

    pub fn q(&self) -> &T {
        &self.q
    }

    /// Significant decimal digits of the working arithmetic.
    pub fn precision(&self) -> u32 {
        self.q.digits()
    }

    /// The base `q^2`, used by the duplication formulas.
    pub fn squared(&self) -> Self {
        Self { q: self.q.clone() * self.q.clone() }
    }

    pub fn pow(&self, n: u32) -> Self {
        Self { q: self.q.powi(n) }
    }
}

/// Target absolute error and a hard cap on the number of factors or terms.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncationBudget<T> {
    pub eps: T,
    pub max_terms: usize,
}

impl<T: Real> TruncationBudget<T> {
    pub fn new(eps: T, max_terms: usize) -> Result<Self> {
        if !(eps > eps.zero_like()) || !eps.is_finite() {
            return Err(Error::InvalidBudget(format!("eps must be positive, got {}", eps.to_decimal())));
        }
        if max_terms == 0 {
            return Err(Error::InvalidBudget("max_terms must be at least 1".into()));
        }
        Ok(Self { eps, max_terms })
    }

    pub fn with_eps(eps: T) -> Result<Self> {
        Self::new(eps, DEFAULT_MAX_TERMS)
    }

    pub fn with_max_terms(&self, max_terms: usize) -> Self {
        Self { eps: self.eps.clone(), max_terms }
    }
}

/// Relative tail bound `B` with `|(x;q)_inf - P_N| <= B |P_N|`, where `P_N`
/// keeps the first `n` factors.
///
/// Uses `|log prod_{k>=n}(1 - x q^k)| <= L = |x| q^n / ((1-q)(1 - |x| q^n))`
/// and `e^L - 1 <= (e-1) L` for `L <= 1`, `L e^L` otherwise.
pub fn qpoch_tail_bound<T: Real>(x_abs: &T, q: &T, n: usize) -> Result<T> {
    let zero = q.zero_like();
    let one = q.one_like();
    if !(*q > zero && *q < one) {
        return Err(Error::QOutOfRange(q.to_decimal()));
    }
    let head = x_abs.clone() * q.powi(n as u32);
    tail_from_head(&head, q).ok_or_else(|| Error::Domain(format!("|x| q^N = {} is not below 1", head.to_decimal())))
}

fn tail_from_head<T: Real>(head: &T, q: &T) -> Option<T> {
    let one = q.one_like();
    if *head >= one {
        return None;
    }
    if head.is_zero() {
        return Some(q.zero_like());
    }
    let log_bound = head.clone() / ((one.clone() - q.clone()) * (one.clone() - head.clone()));
    if log_bound <= one {
        // e - 1 < 1.7183
        Some(log_bound * q.lit(1.718_281_828_459_046))
    } else {
        Some(log_bound.clone() * log_bound.exp())
    }
}

enum Stop<'a, T> {
    Absolute(&'a T),
    Relative(&'a T),
}

fn product_until<T: Real>(x: &Complex<T>, q: &T, stop: Stop<'_, T>, max_terms: usize) -> Result<CertifiedValue<T>> {
    let zero = q.zero_like();
    let one = q.one_like();
    if !(*q > zero && *q < one) {
        return Err(Error::QOutOfRange(q.to_decimal()));
    }
    let unit = Complex::from_real(one.clone());
    let q_c = Complex::from_real(q.clone());
    let mut prod = unit.clone();
    let mut power = x.clone();
    let mut head = x.norm();
    let mut last_bound = None;

    for n in 0..=max_terms {
        if let Some(rel) = tail_from_head(&head, q) {
            let done = match &stop {
                Stop::Absolute(eps) => prod.norm() * rel.clone() <= **eps,
                Stop::Relative(target) => rel <= **target,
            };
            if done {
                let bound = prod.norm() * rel;
                return Ok(CertifiedValue { value: prod, bound, terms_used: n });
            }
            last_bound = Some(prod.norm() * rel);
        }
        if n == max_terms {
            break;
        }
        let factor = unit.clone() - power.clone();
        if factor.is_zero() {
            return Ok(CertifiedValue { value: Complex::from_real(zero), bound: q.zero_like(), terms_used: n + 1 });
        }
        prod = prod * factor;
        power = power * q_c.clone();
        head = head * q.clone();
    }

    let eps = match stop {
        Stop::Absolute(eps) => eps.to_decimal(),
        Stop::Relative(rel) => format!("{} (relative)", rel.to_decimal()),
    };
    Err(Error::BudgetExhausted {
        terms: max_terms,
        bound: last_bound.map(|b| b.to_decimal()).unwrap_or_else(|| "inf".into()),
        eps,
    })
}

/// `(x;q)_inf` truncated so that the certified absolute error is at most `budget.eps`.
///
/// A factor that vanishes exactly (`x = q^{-n}`) short-circuits to an exact zero.
pub fn qpoch<T: Real>(x: &Complex<T>, qp: &QParam<T>, budget: &TruncationBudget<T>) -> Result<CertifiedValue<T>> {
    product_until(x, qp.q(), Stop::Absolute(&budget.eps), budget.max_terms)
}

/// `(x;q)_inf` truncated once the relative tail bound drops to `rel`.
pub fn qpoch_rel<T: Real>(x: &Complex<T>, q: &T, rel: &T, max_terms: usize) -> Result<CertifiedValue<T>> {
    product_until(x, q, Stop::Relative(rel), max_terms)
}

/// Real-argument convenience for [`qpoch_rel`].
pub fn qpoch_real_rel<T: Real>(x: &T, q: &T, rel: &T, max_terms: usize) -> Result<CertifiedValue<T>> {
    qpoch_rel(&Complex::from_real(x.clone()), q, rel, max_terms)
}

/// Runs a composite evaluator with a per-factor relative target, tightening
/// the target until the combined absolute bound fits inside `budget.eps`.
pub(crate) fn certify<T: Real>(
    budget: &TruncationBudget<T>,
    mut eval: impl FnMut(&T, usize) -> Result<CertifiedValue<T>>,
) -> Result<CertifiedValue<T>> {
    let eps = budget.eps.clone();
    let sixteenth = eps.ratio(1, 16);
    let mut rel = (eps.clone() * sixteenth.clone()).min_of(sixteenth);
    let mut last = None;
    for _ in 0..16 {
        let v = eval(&rel, budget.max_terms)?;
        if v.bound <= eps {
            return Ok(v);
        }
        let shrink = (eps.clone() / v.bound.clone()) * eps.ratio(1, 4);
        rel = rel * shrink;
        last = Some(v);
        if rel.is_zero() {
            break;
        }
    }
    let last = last.expect("at least one evaluation ran");
    Err(Error::BudgetExhausted { terms: last.terms_used, bound: last.bound.to_decimal(), eps: eps.to_decimal() })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn budget(eps: f64) -> TruncationBudget<f64> {
        TruncationBudget::with_eps(eps).unwrap()
    }

    fn real(x: f64) -> Complex<f64> {
        Complex::from_real(x)
    }

    #[test]
    fn zero_argument_is_exactly_one() {
        let qp = QParam::new(0.5).unwrap();
        let v = qpoch(&real(0.0), &qp, &budget(1e-12)).unwrap();
        assert_eq!(v.value, real(1.0));
        assert_eq!(v.bound, 0.0);
        assert_eq!(v.terms_used, 0);
    }

    #[test]
    fn unit_argument_vanishes_exactly() {
        let qp = QParam::new(0.5).unwrap();
        let v = qpoch(&real(1.0), &qp, &budget(1e-12)).unwrap();
        assert_eq!(v.value, real(0.0));
        assert_eq!(v.bound, 0.0);
    }

    #[test]
    fn half_at_half_matches_direct_product() {
        // Direct product of the first 60 factors, computed at 40 digits.
        let golden = 0.288_788_095_086_602_421_278_899_721_929_230_780_088_9;
        let qp = QParam::new(0.5).unwrap();
        let v = qpoch(&real(0.5), &qp, &budget(1e-12)).unwrap();
        assert!(v.bound <= 1e-12);
        assert!((v.value.re - golden).abs() <= v.bound + 1e-15);
    }

    #[test]
    fn tail_bound_examples() {
        assert_eq!(qpoch_tail_bound(&0.0, &0.5, 7).unwrap(), 0.0);
        let b40 = qpoch_tail_bound(&0.5, &0.5, 40).unwrap();
        assert!(b40 <= 3.64e-12);
        // Brute-force tail: prod_{n=40}^{239} (1 - 0.5^{n+1}).
        let mut tail = 1.0f64;
        for n in 40..240 {
            tail *= 1.0 - 0.5 * 0.5f64.powi(n);
        }
        assert!((tail - 1.0).abs() <= b40);
        let b50 = qpoch_tail_bound(&0.5, &0.5, 50).unwrap();
        assert!(b50 < b40);
        assert!(qpoch_tail_bound(&4.0, &0.5, 1).is_err());
        assert!(qpoch_tail_bound(&0.5, &1.0, 1).is_err());
    }

    #[test]
    fn domain_and_budget_errors() {
        assert!(QParam::new(1.0).is_err());
        assert!(QParam::new(0.0).is_err());
        assert!(QParam::new(-0.2).is_err());
        assert!(TruncationBudget::new(0.0, 10).is_err());
        assert!(TruncationBudget::new(1e-3, 0).is_err());
        let qp = QParam::new(0.99).unwrap();
        let tight = TruncationBudget::new(1e-15, 10).unwrap();
        assert!(matches!(qpoch(&real(0.9), &qp, &tight), Err(Error::BudgetExhausted { .. })));
    }

    #[test]
    fn large_argument_waits_for_head_below_one() {
        // (2;0.5)_inf = (1-2)(1-1)... vanishes at the second factor.
        let qp = QParam::new(0.5).unwrap();
        let v = qpoch(&real(2.0), &qp, &budget(1e-12)).unwrap();
        assert_eq!(v.value.re, 0.0);
        // (3;0.5)_inf has no zero factor and a head above one for two steps.
        let v = qpoch(&real(3.0), &qp, &budget(1e-12)).unwrap();
        let mut direct = 1.0;
        for n in 0..80 {
            direct *= 1.0 - 3.0 * 0.5f64.powi(n);
        }
        assert!((v.value.re - direct).abs() <= v.bound + 1e-14);
    }

    #[test]
    fn complex_argument_conjugate_symmetry() {
        let qp = QParam::new(0.6).unwrap();
        let x = Complex::new(0.3, 0.4);
        let a = qpoch(&x, &qp, &budget(1e-13)).unwrap();
        let b = qpoch(&x.conj(), &qp, &budget(1e-13)).unwrap();
        assert!((a.value.conj() - b.value).norm() < 1e-15);
    }
}
