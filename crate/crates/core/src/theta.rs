//! Jacobi's first theta function and the bilateral sum of the triple product.
//!
//! The bilateral series is
//! `theta1(z, q) = sum_n (-1)^{n-1/2} q^{(n+1/2)^2} e^{(2n+1)iz}`
//! with `(-1)^{n-1/2} = e^{i pi (n-1/2)} = -i (-1)^n`, which folds into the
//! familiar `2 sum_{n>=0} (-1)^n q^{(n+1/2)^2} sin((2n+1)z)`.
//!
//! Near `q = 1` the bilateral sums cancel heavily (values of order `1e-10`
//! built from terms of order one at `q = 0.9`). With `a = -ln q < pi` both
//! sums are instead evaluated through their Poisson-transformed Gaussian
//! form with nome `exp(-pi^2/a)`, which has no such cancellation:
//!
//! * `theta1(z, q) = -sqrt(pi/a) sum_n (-1)^n exp(-(pi^2/a)(n + 1/2 + z/pi)^2)`
//! * `sum_n (-1)^n q^{n^2} y^n = sqrt(pi/a) sum_k exp(-(pi^2/a)(k - 1/2 + i ln(y)/(2 pi))^2)`

use crate::certified::CertifiedValue;
use crate::error::{Error, Result};
use crate::qpoch::{QParam, TruncationBudget};
use crate::real::{Complex, Real};

/// Argument of the theta function. For the q-sine connection it is purely
/// imaginary, `i t ln q`.
#[derive(Clone, Debug, PartialEq)]
pub struct ThetaArg<T> {
    pub z: Complex<T>,
}

impl<T: Real> ThetaArg<T> {
    pub fn new(z: Complex<T>) -> Self {
        Self { z }
    }

    pub fn real(z: T) -> Self {
        Self { z: Complex::from_real(z) }
    }

    /// `i t ln q`, the argument appearing in the q-sine identity.
    pub fn imaginary_log(t: &T, q: &T) -> Self {
        Self { z: Complex::new(t.zero_like(), t.clone() * q.ln()) }
    }
}

/// Tail of `sum_{|m| >= start} q^{m^2} e^{2|m| growth}` over half-integers or
/// integers spaced by one, both signs. `None` until the term ratio drops below one.
fn two_sided_tail<T: Real>(ln_q: &T, start: &T, growth: &T) -> Option<T> {
    let one = ln_q.one_like();
    let two = ln_q.lit(2.0);
    let log_ratio = (two.clone() * start.clone() + one.clone()) * ln_q.clone() + two.clone() * growth.clone();
    if log_ratio >= ln_q.zero_like() {
        return None;
    }
    let log_term = start.clone() * start.clone() * ln_q.clone() + two.clone() * start.clone() * growth.clone();
    Some(two * log_term.exp() / (one - log_ratio.exp()))
}

/// `theta1(z, q)` summed over the window `n in [-N-1, N]`, symmetric in `n + 1/2`.
pub fn theta1_direct<T: Real>(
    arg: &ThetaArg<T>,
    qp: &QParam<T>,
    budget: &TruncationBudget<T>,
) -> Result<CertifiedValue<T>> {
    let q = qp.q();
    let ln_q = q.ln();
    let a = arg.z.re.clone();
    let b = arg.z.im.clone();
    let growth = b.abs();
    let half = q.ratio(1, 2);
    let mut sum = Complex::from_real(q.zero_like());
    let mut terms = 0usize;

    let mut n: i64 = 0;
    loop {
        for k in [n, -n - 1] {
            let m = q.lit(k as f64) + half.clone();
            let odd = q.lit((2 * k + 1) as f64);
            // |term| = q^{m^2} e^{-(2k+1) b}; phase (2k+1) a.
            let mag = (m.clone() * m * ln_q.clone() - odd.clone() * b.clone()).exp();
            let phase = odd * a.clone();
            let sign = if k.rem_euclid(2) == 0 { mag } else { -mag };
            // -i e^{i phase} = sin(phase) - i cos(phase)
            let term = Complex::new(phase.sin() * sign.clone(), -(phase.cos() * sign));
            sum = sum + term;
            terms += 1;
        }
        let start = q.lit(n as f64 + 1.5);
        if let Some(tail) = two_sided_tail(&ln_q, &start, &growth) {
            if tail <= budget.eps {
                return Ok(CertifiedValue { value: sum, bound: tail, terms_used: terms });
            }
        }
        if terms >= budget.max_terms {
            return Err(Error::BudgetExhausted { terms, bound: "unbounded".into(), eps: budget.eps.to_decimal() });
        }
        n += 1;
    }
}

/// Real-argument form `2 sum_{n>=0} (-1)^n q^{(n+1/2)^2} sin((2n+1)z)`.
pub fn theta1_folded<T: Real>(z: &T, qp: &QParam<T>, budget: &TruncationBudget<T>) -> Result<CertifiedValue<T>> {
    let q = qp.q();
    let ln_q = q.ln();
    let two = q.lit(2.0);
    let half = q.ratio(1, 2);
    let zero = q.zero_like();
    let mut sum = q.zero_like();
    let mut n: i64 = 0;
    loop {
        let m = q.lit(n as f64) + half.clone();
        let term = two.clone() * (m.clone() * m * ln_q.clone()).exp() * (q.lit((2 * n + 1) as f64) * z.clone()).sin();
        sum = if n % 2 == 0 { sum + term } else { sum - term };
        let terms = (n + 1) as usize;
        // One-sided tail: half of the two-sided majorant.
        let start = q.lit(n as f64 + 1.5);
        if let Some(tail) = two_sided_tail(&ln_q, &start, &zero) {
            let tail = tail * half.clone();
            if tail <= budget.eps {
                return Ok(CertifiedValue { value: Complex::from_real(sum), bound: tail, terms_used: terms });
            }
        }
        if terms >= budget.max_terms {
            return Err(Error::BudgetExhausted { terms, bound: "unbounded".into(), eps: budget.eps.to_decimal() });
        }
        n += 1;
    }
}

/// Certified partial sum of `sum_n (-1)^n q^{n^2} y^n` over `n in [-N, N]`.
pub fn triple_product_sum_direct<T: Real>(
    y: &Complex<T>,
    qp: &QParam<T>,
    budget: &TruncationBudget<T>,
) -> Result<CertifiedValue<T>> {
    if y.is_zero() {
        return Err(Error::Domain("triple product sum needs y != 0".into()));
    }
    let q = qp.q();
    let ln_q = q.ln();
    let y_inv = y.recip();
    let ln_up = y.norm().ln();
    let ln_down = -ln_up.clone();
    let mut sum = Complex::from_real(q.one_like());
    let mut y_pos = Complex::from_real(q.one_like());
    let mut y_neg = y_pos.clone();
    // q^{n^2} built from q^{(n-1)^2} * q^{2n-1}.
    let mut q_square = q.one_like();
    let mut q_step = q.clone();
    let q_sq = q.clone() * q.clone();
    let mut terms = 1usize;
    let mut n: i64 = 0;
    loop {
        if let Some(tail) =
            one_sided_tail(&ln_q, n + 1, &ln_up).zip(one_sided_tail(&ln_q, n + 1, &ln_down)).map(|(u, d)| u + d)
        {
            if tail <= budget.eps {
                return Ok(CertifiedValue { value: sum, bound: tail, terms_used: terms });
            }
        }
        if terms >= budget.max_terms {
            return Err(Error::BudgetExhausted { terms, bound: "unbounded".into(), eps: budget.eps.to_decimal() });
        }
        n += 1;
        q_square = q_square * q_step.clone();
        q_step = q_step * q_sq.clone();
        y_pos = y_pos * y.clone();
        y_neg = y_neg * y_inv.clone();
        let pair = (y_pos.clone() + y_neg.clone()).scale(&q_square);
        sum = if n % 2 == 0 { sum + pair } else { sum - pair };
        terms += 2;
    }
}

/// Which series evaluates a theta-type sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SumMethod {
    Direct,
    Transformed,
}

/// The transformed series converges faster once `-ln q < pi`.
pub fn preferred_method<T: Real>(q: &T) -> SumMethod {
    if -q.ln() < q.pi() {
        SumMethod::Transformed
    } else {
        SumMethod::Direct
    }
}

/// `sum_n sigma^n exp(-b (n + s)^2)` with `sigma = -1` when `alternating`.
///
/// The window `[lo, hi]` grows symmetrically about the peak `c = -Re s`: it
/// starts as `{c}` for integer `c` and as `{floor c, floor c + 1}` otherwise,
/// so pairs that cancel exactly at the peak are always summed together.
fn gaussian_sum<T: Real>(
    b: &T,
    s: &Complex<T>,
    alternating: bool,
    budget: &TruncationBudget<T>,
) -> Result<CertifiedValue<T>> {
    let sr = s.re.clone();
    let si = s.im.clone();
    let c = -sr.clone();
    let mut lo = c.to_f64().floor() as i64;
    let mut hi = if c == b.lit(lo as f64) { lo } else { lo + 1 };
    let lift = b.clone() * si.clone() * si.clone();
    let two = b.lit(2.0);
    let term = |n: i64| {
        let x = b.lit(n as f64) + sr.clone();
        let mag = (lift.clone() - b.clone() * x.clone() * x.clone()).exp();
        let phase = -(two.clone() * b.clone() * x * si.clone());
        let mag = if alternating && n.rem_euclid(2) == 1 { -mag } else { mag };
        Complex::new(phase.cos() * mag.clone(), phase.sin() * mag)
    };
    let mut sum = term(lo);
    if hi != lo {
        sum = sum + term(hi);
    }
    let mut terms = (hi - lo + 1) as usize;
    loop {
        let left = c.clone() - b.lit((lo - 1) as f64);
        let right = b.lit((hi + 1) as f64) - c.clone();
        let r = left.min_of(right);
        let log_head = lift.clone() - b.clone() * r.clone() * r.clone();
        let ratio = (-(b.clone() * (two.clone() * r + b.one_like()))).exp();
        let tail = two.clone() * log_head.exp() / (b.one_like() - ratio);
        if tail <= budget.eps {
            return Ok(CertifiedValue { value: sum, bound: tail, terms_used: terms });
        }
        if terms >= budget.max_terms {
            return Err(Error::BudgetExhausted { terms, bound: tail.to_decimal(), eps: budget.eps.to_decimal() });
        }
        lo -= 1;
        hi += 1;
        sum = sum + term(hi) + term(lo);
        terms += 2;
    }
}

/// `theta1(z, q)` through the transformed Gaussian series.
pub fn theta1_transformed<T: Real>(
    arg: &ThetaArg<T>,
    qp: &QParam<T>,
    budget: &TruncationBudget<T>,
) -> Result<CertifiedValue<T>> {
    let q = qp.q();
    let a = -q.ln();
    let pi = q.pi();
    let pre = (pi.clone() / a.clone()).sqrt();
    let b = pi.clone() * pi.clone() / a;
    let s = Complex::new(q.ratio(1, 2) + arg.z.re.clone() / pi.clone(), arg.z.im.clone() / pi);
    let inner = TruncationBudget { eps: budget.eps.clone() / pre.clone(), max_terms: budget.max_terms };
    let g = gaussian_sum(&b, &s, true, &inner)?;
    Ok(g.scale_real(&(-pre)))
}

/// `theta1(z, q)`, choosing the series by [`preferred_method`].
pub fn theta1<T: Real>(arg: &ThetaArg<T>, qp: &QParam<T>, budget: &TruncationBudget<T>) -> Result<CertifiedValue<T>> {
    match preferred_method(qp.q()) {
        SumMethod::Direct => theta1_direct(arg, qp, budget),
        SumMethod::Transformed => theta1_transformed(arg, qp, budget),
    }
}

/// `sum_n (-1)^n q^{n^2} y^n` through the transformed Gaussian series.
pub fn triple_product_sum_transformed<T: Real>(
    y: &Complex<T>,
    qp: &QParam<T>,
    budget: &TruncationBudget<T>,
) -> Result<CertifiedValue<T>> {
    if y.is_zero() {
        return Err(Error::Domain("triple product sum needs y != 0".into()));
    }
    let q = qp.q();
    let a = -q.ln();
    let pi = q.pi();
    let two_pi = pi.clone() * q.lit(2.0);
    let pre = (pi.clone() / a.clone()).sqrt();
    let b = pi.clone() * pi / a;
    let u = y.ln();
    // -1/2 + i u / (2 pi)
    let s = Complex::new(-q.ratio(1, 2) - u.im.clone() / two_pi.clone(), u.re.clone() / two_pi);
    let inner = TruncationBudget { eps: budget.eps.clone() / pre.clone(), max_terms: budget.max_terms };
    let g = gaussian_sum(&b, &s, false, &inner)?;
    Ok(g.scale_real(&pre))
}

/// `sum_n (-1)^n q^{n^2} y^n`, choosing the series by [`preferred_method`].
pub fn triple_product_sum<T: Real>(
    y: &Complex<T>,
    qp: &QParam<T>,
    budget: &TruncationBudget<T>,
) -> Result<CertifiedValue<T>> {
    match preferred_method(qp.q()) {
        SumMethod::Direct => triple_product_sum_direct(y, qp, budget),
        SumMethod::Transformed => triple_product_sum_transformed(y, qp, budget),
    }
}

/// `sum_{n >= start} q^{n^2} e^{n ln_y}`; the term ratio `q^{2n+1} |y|` decreases in `n`.
fn one_sided_tail<T: Real>(ln_q: &T, start: i64, ln_y: &T) -> Option<T> {
    let one = ln_q.one_like();
    let s = ln_q.lit(start as f64);
    let log_ratio = (ln_q.lit(2.0) * s.clone() + one.clone()) * ln_q.clone() + ln_y.clone();
    if log_ratio >= ln_q.zero_like() {
        return None;
    }
    let log_term = s.clone() * s.clone() * ln_q.clone() + s * ln_y.clone();
    Some(log_term.exp() / (one - log_ratio.exp()))
}
