//! Exact-series evaluation of both sides of an identity.
//!
//! Each side is first built as an expression over Pochhammer products, theta
//! sums, binomial powers and monomials. The lattice denominator is the lcm of
//! every exponent denominator in both trees, so it never has to be guessed.

use num_integer::Integer;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::formal::{
    format_exponent, fs_binomial_pow, fs_equal, fs_pochhammer, fs_theta_sum, rational_string, EqualityReport,
    FormalSeries, SignRule,
};

use super::registry::{lookup, IdentityId, IdentitySpec, Mode};
use super::{IdentityResult, Params, Verdict};

/// Largest window, in lattice keys, a formal check will build.
pub const MAX_KEYS: i64 = 1 << 14;

type R = Rational64;

fn r(n: i64, d: i64) -> R {
    R::new(n, d)
}

fn int(n: i64) -> R {
    R::from_integer(n)
}

#[derive(Clone, Debug)]
enum Fx {
    /// `(q^a; q^s)_inf`
    Poch(R, R),
    /// `sum_n sign^n q^{c2 n^2 + c1 n + c0}`
    Theta(R, R, R, SignRule),
    /// `(1 - q^r)^e`
    Binom(R, R),
    /// `c q^e`
    Mono(R, R),
    Mul(Vec<Fx>),
    Div(Box<Fx>, Box<Fx>),
    Add(Box<Fx>, Box<Fx>),
    Sub(Box<Fx>, Box<Fx>),
    Pow(Box<Fx>, u32),
}

fn poch(a: R, s: R) -> Fx {
    Fx::Poch(a, s)
}

fn qpow(e: R) -> Fx {
    Fx::Mono(R::one(), e)
}

fn prod(v: Vec<Fx>) -> Fx {
    Fx::Mul(v)
}

fn div(a: Fx, b: Fx) -> Fx {
    Fx::Div(Box::new(a), Box::new(b))
}

fn add(a: Fx, b: Fx) -> Fx {
    Fx::Add(Box::new(a), Box::new(b))
}

fn sub(a: Fx, b: Fx) -> Fx {
    Fx::Sub(Box::new(a), Box::new(b))
}

fn pow(a: Fx, n: u32) -> Fx {
    Fx::Pow(Box::new(a), n)
}

fn alt_theta(c2: R, c1: R, c0: R) -> Fx {
    Fx::Theta(c2, c1, c0, SignRule::Alternating)
}

/// `sin_{q^k}(pi z)`
fn sinq(z: R, k: i64) -> Fx {
    let k = int(k);
    let half = r(1, 2);
    prod(vec![
        qpow(k * (z - half) * (z - half)),
        poch(int(2) * k * z, int(2) * k),
        poch(k * (int(2) - int(2) * z), int(2) * k),
        pow(poch(k, int(2) * k), 2).inverted(),
    ])
}

/// `cos_{q^k}(pi z)`
fn cosq(z: R, k: i64) -> Fx {
    let k = int(k);
    prod(vec![
        qpow(k * z * z),
        poch(k * (int(1) - int(2) * z), int(2) * k),
        poch(k * (int(2) * z + int(1)), int(2) * k),
        pow(poch(k, int(2) * k), 2).inverted(),
    ])
}

/// `S(q)`
fn s_of_q() -> Fx {
    div(prod(vec![qpow(r(-1, 4)), pow(poch(int(2), int(4)), 4)]), pow(poch(int(1), int(2)), 2))
}

/// `Gamma_{q^k}(z)`
fn gamma(z: R, k: i64) -> Fx {
    let k = int(k);
    prod(vec![div(poch(k, k), poch(k * z, k)), Fx::Binom(k, int(1) - z)])
}

impl Fx {
    fn inverted(self) -> Fx {
        div(qpow(R::zero()), self)
    }

    fn denominators(&self, out: &mut Vec<i64>) {
        match self {
            Fx::Poch(a, s) => out.extend([*a.denom(), *s.denom()]),
            Fx::Theta(c2, c1, c0, _) => out.extend([*c2.denom(), *c1.denom(), *c0.denom()]),
            Fx::Binom(base, _) => out.push(*base.denom()),
            Fx::Mono(_, e) => out.push(*e.denom()),
            Fx::Mul(v) => v.iter().for_each(|f| f.denominators(out)),
            Fx::Div(a, b) | Fx::Add(a, b) | Fx::Sub(a, b) => {
                a.denominators(out);
                b.denominators(out);
            }
            Fx::Pow(a, _) => a.denominators(out),
        }
    }

    fn eval(&self, d: u32, window: i64) -> Result<FormalSeries> {
        match self {
            Fx::Poch(a, s) => fs_pochhammer(*a, *s, d, window),
            Fx::Theta(c2, c1, c0, sign) => fs_theta_sum(*c2, *c1, *c0, *sign, d, window),
            Fx::Binom(base, e) => fs_binomial_pow(*base, *e, d, window),
            Fx::Mono(c, e) => {
                let key = crate::formal::lattice_key(e, d)?;
                let c = BigRational::new((*c.numer()).into(), (*c.denom()).into());
                Ok(FormalSeries::monomial(key, c, d))
            }
            Fx::Mul(v) => {
                let mut acc = FormalSeries::one(d);
                for f in v {
                    acc = acc.mul(&f.eval(d, window)?)?;
                }
                Ok(acc)
            }
            Fx::Div(a, b) => {
                let num = a.eval(d, window)?;
                let den = b.eval(d, window)?;
                if num.is_exact() {
                    // An exact numerator only needs the known part of 1/den.
                    num.truncate(window).div(&den)
                } else {
                    num.div(&den)
                }
            }
            Fx::Add(a, b) => a.eval(d, window)?.add(&b.eval(d, window)?),
            Fx::Sub(a, b) => a.eval(d, window)?.sub(&b.eval(d, window)?),
            Fx::Pow(a, n) => a.eval(d, window)?.pow(*n),
        }
    }
}

/// Parameters of a formal check.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct FormalParams {
    pub z: Option<R>,
    /// Exponent `m` of `y = q^m` for the triple product.
    pub m: Option<R>,
}

fn need_z(spec: &IdentitySpec, p: &FormalParams) -> Result<R> {
    let z = p.z.ok_or_else(|| Error::Domain(format!("identity `{}` needs z", spec.name)))?;
    let zf = *z.numer() as f64 / *z.denom() as f64;
    if !spec.z.contains(zf) {
        return Err(Error::Domain(format!("z = {z} is outside the domain of `{}`", spec.name)));
    }
    Ok(z)
}

fn sides(spec: &IdentitySpec, p: &FormalParams) -> Result<(Fx, Fx)> {
    use IdentityId::*;
    let half = r(1, 2);
    let quarter = r(1, 4);
    Ok(match spec.id {
        Mid => {
            let z = need_z(spec, p)?;
            let lhs = alt_theta(int(1), int(1) - int(2) * z, quarter - z);
            let rhs =
                prod(vec![qpow(-(z * z)), pow(poch(int(1), int(1)), 2), poch(int(2), int(2)).inverted(), sinq(z, 1)]);
            (lhs, rhs)
        }
        Spec => {
            let lhs = alt_theta(int(1), half, R::zero());
            let rhs = div(
                prod(vec![poch(half, int(1)), pow(poch(int(1), int(1)), 2)]),
                prod(vec![pow(poch(int(1), int(2)), 2), poch(int(2), int(2))]),
            );
            (lhs, rhs)
        }
        DupSin => {
            let z = need_z(spec, p)?;
            (sinq(int(2) * z, 1), prod(vec![s_of_q(), sinq(z, 2), cosq(z, 2)]))
        }
        DupCosSquared => {
            let z = need_z(spec, p)?;
            (cosq(int(2) * z, 1), sub(pow(cosq(z, 2), 2), pow(sinq(z, 2), 2)))
        }
        DupCosAsPrinted => {
            let z = need_z(spec, p)?;
            (cosq(int(2) * z, 1), sub(cosq(z, 2), sinq(z, 2)))
        }
        TripleProduct => {
            let m = match (p.m, p.z) {
                (Some(m), _) => m,
                (None, Some(_)) => int(2) * need_z(spec, p)? - int(1),
                (None, None) => return Err(Error::Domain("triple product needs m or z".into())),
            };
            let lhs = prod(vec![poch(int(2), int(2)), poch(int(1) + m, int(2)), poch(int(1) - m, int(2))]);
            (lhs, alt_theta(int(1), m, R::zero()))
        }
        SinGamma => {
            let z = need_z(spec, p)?;
            let rhs = div(
                prod(vec![qpow(quarter + z * (z - int(1))), pow(gamma(half, 2), 2)]),
                prod(vec![gamma(z, 2), gamma(int(1) - z, 2)]),
            );
            (sinq(z, 1), rhs)
        }
        GammaHalf => {
            let rhs = prod(vec![div(pow(poch(int(2), int(2)), 2), poch(int(1), int(1))), Fx::Binom(int(2), half)]);
            (gamma(half, 2), rhs)
        }
        SumFormula => {
            let z = need_z(spec, p)?;
            let rhs = prod(vec![
                qpow((z - half) * (z - half)),
                div(poch(int(2), int(2)), pow(poch(int(1), int(1)), 2)),
                alt_theta(int(1), int(2) * z - int(1), R::zero()),
            ]);
            (sinq(z, 1), rhs)
        }
        IndexShift => {
            let z = need_z(spec, p)?;
            let lhs = alt_theta(int(1), int(2) * z - int(1), R::zero());
            // (n + 1/2)^2 + 2n(z - 1) = n^2 + (2z - 1) n + 1/4
            let rhs = prod(vec![qpow(-quarter), alt_theta(int(1), int(2) * z - int(1), quarter)]);
            (lhs, rhs)
        }
        SinQuarter => {
            let rhs = div(prod(vec![qpow(r(1, 8)), poch(int(1), int(2))]), pow(poch(int(2), int(4)), 2));
            (sinq(quarter, 2), rhs)
        }
        SinEighth => return Err(Error::NotFormal(spec.name.to_string())),
        ThreeEighths => {
            let (s1, s3) = (sinq(r(1, 8), 2), sinq(r(3, 8), 2));
            (prod(vec![s_of_q(), s1.clone(), s3.clone()]), sub(pow(s3, 2), pow(s1, 2)))
        }
        ThreeEighthsHalf => {
            let rhs = div(sinq(quarter, 1), prod(vec![s_of_q(), sinq(r(1, 8), 2)]));
            (sinq(r(3, 8), 2), rhs)
        }
        SymSin => {
            let z = need_z(spec, p)?;
            (sinq(z, 1), sinq(int(1) - z, 1))
        }
        SymCosComplement => {
            let z = need_z(spec, p)?;
            (cosq(z, 1), sinq(half - z, 1))
        }
        QuarterGammaProduct => {
            let lhs = prod(vec![gamma(quarter, 2), gamma(r(3, 4), 2)]);
            let rhs = div(
                prod(vec![Fx::Binom(int(2), int(1)), pow(poch(int(2), int(2)), 4), pow(poch(int(1), int(2)), 2)]),
                prod(vec![pow(poch(int(1), int(1)), 2), poch(half, int(1))]),
            );
            (lhs, rhs)
        }
        QuadraticClosure => {
            let x = pow(sinq(r(1, 8), 2), 2);
            let s = sinq(quarter, 1);
            let lhs = add(pow(x.clone(), 2), prod(vec![s.clone(), x]));
            (lhs, div(pow(s, 2), pow(s_of_q(), 2)))
        }
    })
}

/// Outcome of a formal comparison.
#[derive(Clone, Debug)]
pub struct FormalOutcome {
    pub denom: u32,
    /// Compared up to `q^{order}`.
    pub order: i64,
    pub lhs: FormalSeries,
    pub rhs: FormalSeries,
    pub report: EqualityReport,
}

/// Smallest lattice holding every exponent of both sides.
fn lattice_for(lhs: &Fx, rhs: &Fx) -> u32 {
    let mut dens = Vec::new();
    lhs.denominators(&mut dens);
    rhs.denominators(&mut dens);
    dens.into_iter().fold(1i64, |acc, d| acc.lcm(&d)) as u32
}

/// Builds both sides of `name` and compares them exactly through `q^{order}`.
///
/// The lattice is chosen automatically unless `denom` is given, which must
/// then be a multiple of the automatic one.
pub fn check_formal_series(name: &str, params: &FormalParams, order: i64, denom: Option<u32>) -> Result<FormalOutcome> {
    let spec = lookup(name)?;
    if !spec.supports(Mode::Formal) {
        return Err(Error::NotFormal(name.to_string()));
    }
    if order < 0 {
        return Err(Error::Domain(format!("order must be nonnegative, got {order}")));
    }
    let (lhs, rhs) = sides(spec, params)?;
    let auto = lattice_for(&lhs, &rhs);
    let d = match denom {
        Some(d) if d == 0 || d % auto != 0 => return Err(Error::LatticeMismatch(auto, d)),
        Some(d) => d,
        None => auto,
    };
    let n = order * d as i64;
    if n > MAX_KEYS {
        return Err(Error::Domain(format!("window q^{order} on lattice 1/{d} needs {n} keys, more than {MAX_KEYS}")));
    }
    let mut window = n;
    for _ in 0..6 {
        let a = lhs.eval(d, window)?;
        let b = rhs.eval(d, window)?;
        let known = a.order().min(b.order());
        if known >= n {
            let report = fs_equal(&a, &b, n)?;
            return Ok(FormalOutcome { denom: d, order, lhs: a, rhs: b, report });
        }
        window += (n - known) + d as i64;
    }
    Err(Error::Internal(format!("could not extend the windows of `{name}` to q^{order}")))
}

fn rational_text(v: &R) -> String {
    if v.is_integer() {
        v.to_integer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

/// Formal check reported in the same shape as a numeric one.
pub fn check_formal(name: &str, params: &FormalParams, order: i64, denom: Option<u32>) -> Result<IdentityResult> {
    let spec = lookup(name)?;
    let out = check_formal_series(name, params, order, denom)?;
    let (lhs, rhs, diff) = match &out.report.first_diff {
        Some((k, a, b)) => {
            let e = format_exponent(*k, out.denom);
            (
                format!("q^{e}: {}", rational_string(a)),
                format!("q^{e}: {}", rational_string(b)),
                rational_string(&(a - b).abs()),
            )
        }
        None => ("equal".to_string(), "equal".to_string(), "0".to_string()),
    };
    let m = params.m.filter(|_| spec.takes_y);
    Ok(IdentityResult {
        identity: spec.name.to_string(),
        mode: Mode::Formal,
        params: Params {
            z: params.z.filter(|_| spec.z.takes_z() && m.is_none()).map(|z| rational_text(&z)),
            m: m.map(|m| rational_text(&m)),
            order: Some(order),
            denom: Some(out.denom),
            ..Params::default()
        },
        lhs,
        rhs,
        abs_diff: diff,
        rel_diff: if out.report.equal { "0".into() } else { "1".into() },
        bound: "0".into(),
        verdict: if out.report.equal { Verdict::Pass } else { Verdict::Fail },
        lhs_terms: out.lhs.coeffs().range(..=out.report.compared_up_to).count(),
        rhs_terms: out.rhs.coeffs().range(..=out.report.compared_up_to).count(),
        expected: spec.expected,
        tol: 0.0,
        mismatches: Some(out.report.mismatches),
        note: IdentityResult::expectation_note(spec),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::identities::registry::registry;
    use crate::identities::Expected;

    fn z(v: R) -> FormalParams {
        FormalParams { z: Some(v), m: None }
    }

    #[test]
    fn spec_holds_on_half_lattice() {
        let out = check_formal_series("spec", &FormalParams::default(), 25, None).unwrap();
        assert_eq!(out.denom, 2);
        assert!(out.report.equal, "{:?}", out.report);
        assert_eq!(out.report.mismatches, 0);
        assert!(!out.lhs.coeffs().is_empty());
    }

    #[test]
    fn triple_product_for_integer_m() {
        for m in 0..=2 {
            let p = FormalParams { z: None, m: Some(int(m)) };
            let out = check_formal_series("triple-product", &p, 40, None).unwrap();
            assert!(out.report.equal, "m={m}");
        }
    }

    #[test]
    fn sum_formula_at_quarter() {
        let out = check_formal_series("sum-formula", &z(r(1, 4)), 40, None).unwrap();
        assert_eq!(out.denom, 16);
        assert!(out.report.equal);
    }

    #[test]
    fn printed_cosine_fails_formally() {
        let r = check_formal("dup-cos-as-printed", &z(r(1, 8)), 10, None).unwrap();
        assert_eq!(r.verdict, Verdict::Fail);
        assert!(r.mismatches.unwrap() > 0);
    }

    #[test]
    fn pass_identities_hold_formally() {
        for spec in registry().iter().filter(|s| s.supports(Mode::Formal) && s.expected == Expected::Pass) {
            let p = z(r(1, 4));
            let r = check_formal(spec.name, &p, 8, None).unwrap();
            assert_eq!(r.verdict, Verdict::Pass, "{}: {r:?}", spec.name);
        }
    }

    #[test]
    fn lattice_override_must_be_a_multiple() {
        assert!(check_formal_series("spec", &FormalParams::default(), 5, Some(4)).unwrap().report.equal);
        assert!(matches!(
            check_formal_series("spec", &FormalParams::default(), 5, Some(3)),
            Err(Error::LatticeMismatch(2, 3))
        ));
    }

    #[test]
    fn numeric_only_identity_is_rejected() {
        assert!(matches!(check_formal("sin-eighth", &FormalParams::default(), 5, None), Err(Error::NotFormal(_))));
    }
}
