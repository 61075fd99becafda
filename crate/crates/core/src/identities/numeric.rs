//! Numeric evaluation of both sides of every identity with certified bounds.

use crate::certified::CertifiedValue;
use crate::error::{Error, Result};
use crate::mp::MpFloat;
use crate::qgamma::{
    gamma_half_special_rel, gamma_q_rel, quarter_product_lhs_rel, quarter_product_rhs_rel, sin_via_gamma_rel,
};
use crate::qpoch::{qpoch_real_rel, qpoch_rel, QParam, TruncationBudget, DEFAULT_MAX_TERMS};
use crate::qtrig::{cos_q_rel, qpow, s_of_q_rel, sin_q_rel, special_sin_eighth_rel, special_sin_quarter_rel};
use crate::real::{parse_complex, Complex, Real};
use crate::theta::{theta1, triple_product_sum, ThetaArg};

use super::registry::{lookup, IdentityId, IdentitySpec, Mode};
use super::{IdentityResult, Params, Verdict};

/// Magnitude below which both sides are compared absolutely.
pub const ABSOLUTE_FLOOR: f64 = 1e-30;

/// Up to this many digits the checks run in `f64`.
pub const F64_DIGITS: u32 = 16;

#[derive(Clone, Debug, PartialEq)]
pub struct CheckOptions {
    pub tol: f64,
    /// Working precision in significant decimal digits.
    pub digits: u32,
    /// Relative truncation target per side; `tol / 10` when absent.
    pub eps: Option<f64>,
    pub max_terms: usize,
}

impl Default for CheckOptions {
    fn default() -> Self {
        Self { tol: 1e-10, digits: F64_DIGITS, eps: None, max_terms: DEFAULT_MAX_TERMS }
    }
}

impl CheckOptions {
    pub fn side_eps(&self) -> f64 {
        self.eps.unwrap_or(self.tol / 10.0)
    }
}

/// Differences and verdict for one pair of sides.
#[derive(Clone, Debug, PartialEq)]
pub struct Judgement<T> {
    pub abs_diff: T,
    pub rel_diff: T,
    /// `bound` divided by the same scale as `rel_diff`.
    pub bound_rel: T,
    pub verdict: Verdict,
}

/// Compares two values given their combined truncation bound.
///
/// Differences are relative to `max(|lhs|, |rhs|)`, or absolute when either
/// side is exactly zero or both lie below [`ABSOLUTE_FLOOR`]. The check fails
/// when the difference exceeds both `tol` and the bound, is inconclusive when
/// the bound alone exceeds `tol`, and passes otherwise.
pub fn judge<T: Real>(lhs: &Complex<T>, rhs: &Complex<T>, bound: &T, tol: &T) -> Judgement<T> {
    let abs_diff = (lhs.clone() - rhs.clone()).norm();
    let mag = lhs.norm().max_of(rhs.norm());
    let absolute = lhs.is_zero() || rhs.is_zero() || mag < tol.lit(ABSOLUTE_FLOOR);
    let scale = if absolute { tol.one_like() } else { mag };
    let rel_diff = abs_diff.clone() / scale.clone();
    let bound_rel = bound.clone() / scale;
    let verdict = if rel_diff > tol.clone().max_of(bound_rel.clone()) {
        Verdict::Fail
    } else if bound_rel > *tol {
        Verdict::Inconclusive
    } else {
        Verdict::Pass
    };
    Judgement { abs_diff, rel_diff, bound_rel, verdict }
}

/// Parses `a`, `a/b` or a decimal literal at `digits` precision.
pub fn parse_real<T: Real>(s: &str, digits: u32) -> Option<T> {
    match s.split_once('/') {
        Some((n, d)) => {
            let n = T::parse_decimal(n, digits)?;
            let d = T::parse_decimal(d, digits)?;
            (!d.is_zero()).then(|| n / d)
        }
        None => T::parse_decimal(s, digits),
    }
}

/// Parses a complex `y`: `a`, `a+bi`, or polar `r@t` meaning `r e^{i pi t}`.
pub fn parse_y<T: Real>(s: &str, digits: u32) -> Option<Complex<T>> {
    match s.split_once('@') {
        Some((r, t)) => {
            let r: T = parse_real(r, digits)?;
            let t: T = parse_real(t, digits)?;
            let phi = t.pi() * t;
            Some(Complex::unit(&phi).scale(&r))
        }
        None => parse_complex(s, digits),
    }
}

#[derive(Clone, Debug)]
pub struct Point<T> {
    pub q: T,
    pub z: Option<T>,
    pub y: Option<Complex<T>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Side {
    Lhs,
    Rhs,
}

fn missing(name: &str, what: &str) -> Error {
    Error::Domain(format!("identity `{name}` needs {what}"))
}

/// Sums take an absolute target; rerun until it is `rel` relative to the value.
fn summed<T: Real>(
    rel: &T,
    max: usize,
    f: impl Fn(&TruncationBudget<T>) -> Result<CertifiedValue<T>>,
) -> Result<CertifiedValue<T>> {
    let mut v = f(&TruncationBudget { eps: rel.clone(), max_terms: max })?;
    for _ in 0..4 {
        let want = rel.clone() * v.magnitude();
        if v.bound <= want || want.is_zero() {
            break;
        }
        v = f(&TruncationBudget { eps: want * rel.ratio(1, 4), max_terms: max })?;
    }
    Ok(v)
}

fn theta_i_log<T: Real>(t: &T, q: &T, rel: &T, max: usize) -> Result<CertifiedValue<T>> {
    let qp = QParam::new(q.clone())?;
    let arg = ThetaArg::imaginary_log(t, q);
    Ok(summed(rel, max, |b| theta1(&arg, &qp, b))?.mul_i())
}

fn bilateral<T: Real>(y: &Complex<T>, q: &T, rel: &T, max: usize) -> Result<CertifiedValue<T>> {
    let qp = QParam::new(q.clone())?;
    summed(rel, max, |b| triple_product_sum(y, &qp, b))
}

fn poch<T: Real>(x: &T, q: &T, rel: &T, max: usize) -> Result<CertifiedValue<T>> {
    qpoch_real_rel(x, q, rel, max)
}

fn eval_side<T: Real>(spec: &IdentitySpec, side: Side, p: &Point<T>, rel: &T, max: usize) -> Result<CertifiedValue<T>> {
    use IdentityId::*;
    let q = &p.q;
    let q2 = q.clone() * q.clone();
    let z = || p.z.clone().ok_or_else(|| missing(spec.name, "z"));
    let r = |n: i64, d: i64| q.ratio(n, d);
    let lhs = side == Side::Lhs;
    match spec.id {
        Mid => {
            let z = z()?;
            if lhs {
                theta_i_log(&z, q, rel, max)
            } else {
                let full = poch(q, q, rel, max)?.square();
                let even = poch(&q2, &q2, rel, max)?;
                let s = sin_q_rel(&z, q, rel, max)?;
                Ok(full.div(&even)?.mul(&s).scale_real(&qpow(q, &(-(z.clone() * z)))))
            }
        }
        Spec => {
            if lhs {
                theta_i_log(&r(1, 4), q, rel, max)
            } else {
                let root = poch(&q.sqrt(), q, rel, max)?;
                let full = poch(q, q, rel, max)?.square();
                let odd = poch(q, &q2, rel, max)?.square();
                let even = poch(&q2, &q2, rel, max)?;
                root.mul(&full).div(&odd.mul(&even))
            }
        }
        DupSin => {
            let z = z()?;
            if lhs {
                sin_q_rel(&(r(2, 1) * z), q, rel, max)
            } else {
                let s = s_of_q_rel(q, rel, max)?;
                Ok(s.mul(&sin_q_rel(&z, &q2, rel, max)?).mul(&cos_q_rel(&z, &q2, rel, max)?))
            }
        }
        DupCosSquared | DupCosAsPrinted => {
            let z = z()?;
            if lhs {
                cos_q_rel(&(r(2, 1) * z), q, rel, max)
            } else {
                let c = cos_q_rel(&z, &q2, rel, max)?;
                let s = sin_q_rel(&z, &q2, rel, max)?;
                Ok(if spec.id == DupCosSquared { c.square().sub(&s.square()) } else { c.sub(&s) })
            }
        }
        TripleProduct => {
            let y = match (&p.y, &p.z) {
                (Some(y), _) => y.clone(),
                (None, Some(z)) => Complex::from_real(qpow(q, &(r(2, 1) * z.clone() - q.one_like()))),
                (None, None) => return Err(missing(spec.name, "y or z")),
            };
            if y.is_zero() {
                return Err(Error::Domain("triple product needs y != 0".into()));
            }
            if lhs {
                let even = poch(&q2, &q2, rel, max)?;
                let a = qpoch_rel(&y.scale(q), &q2, rel, max)?;
                let b = qpoch_rel(&(Complex::from_real(q.clone()) / y), &q2, rel, max)?;
                Ok(even.mul(&a).mul(&b))
            } else {
                bilateral(&y, q, rel, max)
            }
        }
        SinGamma => {
            let z = z()?;
            if lhs {
                sin_q_rel(&z, q, rel, max)
            } else {
                sin_via_gamma_rel(&z, q, rel, max)
            }
        }
        GammaHalf => {
            if lhs {
                gamma_q_rel(&r(1, 2), &q2, rel, max)
            } else {
                gamma_half_special_rel(q, rel, max)
            }
        }
        SumFormula => {
            let z = z()?;
            if lhs {
                sin_q_rel(&z, q, rel, max)
            } else {
                let shift = z.clone() - r(1, 2);
                let even = poch(&q2, &q2, rel, max)?;
                let full = poch(q, q, rel, max)?.square();
                let y = Complex::from_real(qpow(q, &(r(2, 1) * z - q.one_like())));
                let sum = bilateral(&y, q, rel, max)?;
                Ok(even.div(&full)?.mul(&sum).scale_real(&qpow(q, &(shift.clone() * shift))))
            }
        }
        IndexShift => {
            let z = z()?;
            if lhs {
                let y = Complex::from_real(qpow(q, &(r(2, 1) * z - q.one_like())));
                bilateral(&y, q, rel, max)
            } else {
                // sum (-1)^n q^{(n+1/2)^2} q^{2n(z-1)} = q^{1-z} i theta1(i (1-z) ln q)
                let w = q.one_like() - z;
                let t = theta_i_log(&w, q, rel, max)?;
                Ok(t.scale_real(&qpow(q, &(w - r(1, 4)))))
            }
        }
        SinQuarter => {
            if lhs {
                sin_q_rel(&r(1, 4), &q2, rel, max)
            } else {
                special_sin_quarter_rel(q, rel, max)
            }
        }
        SinEighth => {
            if lhs {
                sin_q_rel(&r(1, 8), &q2, rel, max)
            } else {
                special_sin_eighth_rel(q, rel, max)
            }
        }
        ThreeEighths => {
            let s1 = sin_q_rel(&r(1, 8), &q2, rel, max)?;
            let s3 = sin_q_rel(&r(3, 8), &q2, rel, max)?;
            if lhs {
                Ok(s_of_q_rel(q, rel, max)?.mul(&s1).mul(&s3))
            } else {
                Ok(s3.square().sub(&s1.square()))
            }
        }
        ThreeEighthsHalf => {
            if lhs {
                sin_q_rel(&r(3, 8), &q2, rel, max)
            } else {
                let s1 = sin_q_rel(&r(1, 8), &q2, rel, max)?;
                let quarter = sin_q_rel(&r(1, 4), q, rel, max)?;
                quarter.div(&s_of_q_rel(q, rel, max)?.mul(&s1))
            }
        }
        SymSin => {
            let z = z()?;
            let arg = if lhs { z } else { q.one_like() - z };
            sin_q_rel(&arg, q, rel, max)
        }
        SymCosComplement => {
            let z = z()?;
            if lhs {
                cos_q_rel(&z, q, rel, max)
            } else {
                sin_q_rel(&(r(1, 2) - z), q, rel, max)
            }
        }
        QuarterGammaProduct => {
            if lhs {
                quarter_product_lhs_rel(q, rel, max)
            } else {
                quarter_product_rhs_rel(q, rel, max)
            }
        }
        QuadraticClosure => {
            let s = sin_q_rel(&r(1, 4), q, rel, max)?;
            if lhs {
                let x = sin_q_rel(&r(1, 8), &q2, rel, max)?.square();
                Ok(x.square().add(&s.mul(&x)))
            } else {
                s.square().div(&s_of_q_rel(q, rel, max)?.square())
            }
        }
    }
}

/// Tightens the per-factor target until the side's relative bound is at
/// most `target` (absolute when the value is exactly zero).
fn certify_side<T: Real>(
    spec: &IdentitySpec,
    side: Side,
    p: &Point<T>,
    target: &T,
    max: usize,
) -> Result<CertifiedValue<T>> {
    let quarter = target.ratio(1, 4);
    let mut rel = target.clone() * target.ratio(1, 16);
    let mut last = None;
    for _ in 0..8 {
        let v = eval_side(spec, side, p, &rel, max)?;
        let rb = v.relative_bound();
        let done = if v.value.is_zero() { v.bound <= *target } else { rb <= *target };
        if done {
            return Ok(v);
        }
        let shrink = if rb.is_finite() { target.clone() / rb * quarter.clone() } else { target.clone() };
        rel = rel * shrink.min_of(quarter.clone());
        last = Some(v);
        if rel.is_zero() {
            break;
        }
    }
    let last = last.expect("at least one evaluation ran");
    Err(Error::BudgetExhausted {
        terms: last.terms_used,
        bound: last.bound.to_decimal(),
        eps: format!("{} (relative)", target.to_decimal()),
    })
}

/// Both sides of an identity at a typed point.
pub fn numeric_sides<T: Real>(
    spec: &IdentitySpec,
    p: &Point<T>,
    target: &T,
    max_terms: usize,
) -> Result<(CertifiedValue<T>, CertifiedValue<T>)> {
    let lhs = certify_side(spec, Side::Lhs, p, target, max_terms)?;
    let rhs = certify_side(spec, Side::Rhs, p, target, max_terms)?;
    Ok((lhs, rhs))
}

/// Raw numeric outcome, kept typed for callers that inspect the sides.
#[derive(Clone, Debug)]
pub struct NumericOutcome<T> {
    pub lhs: CertifiedValue<T>,
    pub rhs: CertifiedValue<T>,
    pub judgement: Judgement<T>,
}

fn parse_point<T: Real>(
    spec: &IdentitySpec,
    q: &str,
    z: Option<&str>,
    y: Option<&str>,
    digits: u32,
) -> Result<Point<T>> {
    let qv: T = parse_real(q, digits).ok_or_else(|| Error::QOutOfRange(q.to_string()))?;
    QParam::new(qv.clone())?;
    let zv = match (spec.z.takes_z(), z) {
        (true, Some(s)) => {
            let v: T = parse_real(s, digits).ok_or_else(|| Error::Domain(format!("cannot parse z `{s}`")))?;
            if !spec.z.contains(v.to_f64()) {
                return Err(Error::Domain(format!("z = {s} is outside the domain of `{}`", spec.name)));
            }
            Some(v)
        }
        _ => None,
    };
    let yv = match (spec.takes_y, y) {
        (true, Some(s)) => Some(parse_y(s, digits).ok_or_else(|| Error::Domain(format!("cannot parse y `{s}`")))?),
        _ => None,
    };
    if spec.z.takes_z() && zv.is_none() && yv.is_none() {
        return Err(missing(spec.name, if spec.takes_y { "y or z" } else { "z" }));
    }
    Ok(Point { q: qv, z: zv, y: yv })
}

/// Typed numeric check; `q`, `z` and `y` are parsed at the precision of `T`.
pub fn check_numeric_with<T: Real>(
    spec: &IdentitySpec,
    q: &str,
    z: Option<&str>,
    y: Option<&str>,
    opts: &CheckOptions,
) -> Result<NumericOutcome<T>> {
    let digits = opts.digits;
    let point: Point<T> = parse_point(spec, q, z, y, digits)?;
    let target = T::from_f64(opts.side_eps(), digits);
    let tol = T::from_f64(opts.tol, digits);
    let (lhs, rhs) = numeric_sides(spec, &point, &target, opts.max_terms)?;
    let bound = lhs.bound.clone() + rhs.bound.clone();
    let judgement = judge(&lhs.value, &rhs.value, &bound, &tol);
    Ok(NumericOutcome { lhs, rhs, judgement })
}

fn params_for(spec: &IdentitySpec, q: &str, z: Option<&str>, y: Option<&str>, digits: u32) -> Params {
    Params {
        q: Some(q.to_string()),
        z: z.filter(|_| spec.z.takes_z()).map(str::to_string),
        y: y.filter(|_| spec.takes_y).map(str::to_string),
        digits: Some(digits),
        ..Params::default()
    }
}

fn to_result<T: Real>(
    spec: &IdentitySpec,
    params: Params,
    opts: &CheckOptions,
    out: &NumericOutcome<T>,
) -> IdentityResult {
    IdentityResult {
        identity: spec.name.to_string(),
        mode: Mode::Numeric,
        params,
        lhs: out.lhs.value.to_decimal(),
        rhs: out.rhs.value.to_decimal(),
        abs_diff: out.judgement.abs_diff.to_decimal(),
        rel_diff: out.judgement.rel_diff.to_decimal(),
        bound: (out.lhs.bound.clone() + out.rhs.bound.clone()).to_decimal(),
        verdict: out.judgement.verdict,
        lhs_terms: out.lhs.terms_used,
        rhs_terms: out.rhs.terms_used,
        expected: spec.expected,
        tol: opts.tol,
        mismatches: None,
        note: IdentityResult::expectation_note(spec),
    }
}

fn run<T: Real>(
    spec: &IdentitySpec,
    q: &str,
    z: Option<&str>,
    y: Option<&str>,
    opts: &CheckOptions,
) -> Result<IdentityResult> {
    let params = params_for(spec, q, z, y, opts.digits);
    match check_numeric_with::<T>(spec, q, z, y, opts) {
        Ok(out) => Ok(to_result(spec, params, opts, &out)),
        Err(Error::BudgetExhausted { terms, bound, eps }) => {
            let mut r = IdentityResult::empty(spec, Mode::Numeric, params, opts.tol);
            r.verdict = Verdict::Inconclusive;
            r.note = Some(format!("budget exhausted after {terms} terms: bound {bound}, target {eps}"));
            Ok(r)
        }
        Err(e) => Err(e),
    }
}

/// Checks one identity numerically. Up to [`F64_DIGITS`] digits the work is
/// done in `f64`, beyond that in [`MpFloat`].
///
/// A truncation budget that runs out yields an inconclusive result; parse
/// and domain problems are errors.
pub fn check_numeric(
    name: &str,
    q: &str,
    z: Option<&str>,
    y: Option<&str>,
    opts: &CheckOptions,
) -> Result<IdentityResult> {
    let spec = lookup(name)?;
    if !(opts.tol > 0.0) {
        return Err(Error::InvalidBudget(format!("tolerance must be positive, got {}", opts.tol)));
    }
    if opts.digits <= F64_DIGITS {
        run::<f64>(spec, q, z, y, opts)
    } else {
        run::<MpFloat>(spec, q, z, y, opts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::identities::registry::registry;
    use crate::identities::Expected;

    fn opts() -> CheckOptions {
        CheckOptions { eps: Some(1e-14), ..CheckOptions::default() }
    }

    fn check(name: &str, q: &str, z: Option<&str>) -> IdentityResult {
        check_numeric(name, q, z, None, &opts()).unwrap()
    }

    #[test]
    fn mid_at_quarter_equals_spec() {
        let mid = check("mid", "0.5", Some("0.25"));
        let spec = check("spec", "0.5", None);
        assert_eq!(mid.verdict, Verdict::Pass);
        assert_eq!(spec.verdict, Verdict::Pass);
        let a: f64 = mid.lhs.parse().unwrap();
        let b: f64 = spec.rhs.parse().unwrap();
        assert!(((a - b) / b).abs() < 1e-13);
    }

    #[test]
    fn mid_at_half_reduces_to_products() {
        let r = check("mid", "0.5", Some("0.5"));
        assert_eq!(r.verdict, Verdict::Pass);
        let q: f64 = 0.5;
        let b = 1e-17;
        let full = qpoch_real_rel(&q, &q, &b, 10_000).unwrap().value.re;
        let even = qpoch_real_rel(&(q * q), &(q * q), &b, 10_000).unwrap().value.re;
        let expect = q.powf(-0.25) * full * full / even;
        let got: f64 = r.rhs.parse().unwrap();
        assert!(((got - expect) / expect).abs() < 1e-14);
    }

    #[test]
    fn printed_cosine_duplication_fails() {
        let r = check("dup-cos-as-printed", "0.5", Some("0.125"));
        assert_eq!(r.verdict, Verdict::Fail);
        assert_eq!(r.expected, Expected::DocumentedFail);
        assert!(r.rel_diff.parse::<f64>().unwrap() > 1e-3);
    }

    #[test]
    fn every_pass_identity_passes_at_half() {
        for spec in registry().iter().filter(|s| s.expected == Expected::Pass) {
            let r = check(spec.name, "0.5", Some("0.3"));
            assert_eq!(r.verdict, Verdict::Pass, "{}: {:?}", spec.name, r);
        }
    }

    #[test]
    fn triple_product_y_forms() {
        for y in ["0.25", "0.5", "1", "2", "1@1/3", "0.3-0.2i"] {
            for q in ["0.1", "0.5", "0.9"] {
                let r = check_numeric("triple-product", q, None, Some(y), &opts()).unwrap();
                assert_eq!(r.verdict, Verdict::Pass, "y={y} q={q}: {r:?}");
            }
        }
    }

    #[test]
    fn polar_y_is_on_unit_circle() {
        let y: Complex<f64> = parse_y("1@1/3", 16).unwrap();
        assert!((y.re - 0.5).abs() < 1e-15);
        assert!((y.im - 3f64.sqrt() / 2.0).abs() < 1e-15);
    }

    #[test]
    fn domain_errors() {
        assert!(matches!(check_numeric("mid", "1.5", Some("0.2"), None, &opts()), Err(Error::QOutOfRange(_))));
        assert!(matches!(check_numeric("sin-gamma", "0.5", Some("1"), None, &opts()), Err(Error::Domain(_))));
        assert!(matches!(check_numeric("mid", "0.5", None, None, &opts()), Err(Error::Domain(_))));
        assert!(matches!(check_numeric("nope", "0.5", None, None, &opts()), Err(Error::UnknownIdentity(_))));
    }

    #[test]
    fn tiny_budget_is_inconclusive() {
        let o = CheckOptions { max_terms: 3, ..opts() };
        let r = check_numeric("gamma-half", "0.9", None, None, &o).unwrap();
        assert_eq!(r.verdict, Verdict::Inconclusive);
        assert!(r.note.is_some());
    }

    #[test]
    fn judge_rules() {
        let c = |x: f64| Complex::from_real(x);
        assert_eq!(judge(&c(1.0), &c(1.0 + 1e-12), &0.0, &1e-10).verdict, Verdict::Pass);
        assert_eq!(judge(&c(1.0), &c(1.1), &0.0, &1e-10).verdict, Verdict::Fail);
        assert_eq!(judge(&c(1.0), &c(1.0), &1e-8, &1e-10).verdict, Verdict::Inconclusive);
        assert_eq!(judge(&c(1.0), &c(1.0 + 1e-9), &1e-8, &1e-10).verdict, Verdict::Inconclusive);
        assert_eq!(judge(&c(0.0), &c(1e-16), &0.0, &1e-10).verdict, Verdict::Pass);
        assert_eq!(judge(&c(1e-40), &c(3e-40), &0.0, &1e-10).verdict, Verdict::Pass);
    }

    #[test]
    fn fifty_digits_reach_tight_tolerance() {
        let o = CheckOptions { tol: 1e-40, digits: 50, eps: None, max_terms: DEFAULT_MAX_TERMS };
        for name in ["dup-sin", "dup-cos-squared"] {
            let r = check_numeric(name, "0.7", Some("0.3"), None, &o).unwrap();
            assert_eq!(r.verdict, Verdict::Pass, "{r:?}");
        }
    }
}
