//! Truncated formal q-series over the exponent lattice `(1/D) Z` with exact
//! rational coefficients.
//!
//! A series stores key `k` for the monomial `q^{k/D}`. Every coefficient with
//! key in `[low, order]` equals the coefficient of the untruncated object;
//! keys below `low` are zero and keys above `order` are unknown. All
//! operations preserve this window-closure property.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Rational64};
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Order used for exact (finite) objects; large enough to never be the
/// binding window, small enough that sums of orders and lows cannot overflow.
const EXACT: i64 = i64::MAX / 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalSeries {
    denom: u32,
    low: i64,
    order: i64,
    coeffs: BTreeMap<i64, BigRational>,
}

/// Sign of the `n`-th term of a bilateral theta-type sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SignRule {
    /// `(-1)^n`
    Alternating,
    /// `+1`
    Plus,
}

/// Outcome of a coefficient-by-coefficient comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EqualityReport {
    pub equal: bool,
    /// First differing key with the two coefficients.
    pub first_diff: Option<(i64, BigRational, BigRational)>,
    pub mismatches: usize,
    pub compared_up_to: i64,
}

/// Key of exponent `e` on lattice `d`.
pub fn lattice_key(e: &Rational64, d: u32) -> Result<i64> {
    let scaled = *e * Rational64::from_integer(d as i64);
    if !scaled.is_integer() {
        return Err(Error::OffLattice { exponent: e.to_string(), denom: d });
    }
    Ok(scaled.to_integer())
}

fn big(r: &Rational64) -> BigRational {
    BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

/// `a/b` in lowest terms as `a` or `a/b`.
pub fn format_exponent(key: i64, d: u32) -> String {
    let r = Rational64::new(key, d as i64);
    if r.is_integer() {
        r.to_integer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl FormalSeries {
    fn check_denom(d: u32) -> Result<()> {
        if d == 0 {
            return Err(Error::InvalidBudget("lattice denominator must be positive".into()));
        }
        Ok(())
    }

    pub fn zero(d: u32, order: i64) -> Self {
        Self { denom: d, low: 0, order, coeffs: BTreeMap::new() }
    }

    /// The exact polynomial `1`.
    pub fn one(d: u32) -> Self {
        Self::monomial(0, BigRational::one(), d)
    }

    /// The exact monomial `c q^{key/D}`.
    pub fn monomial(key: i64, c: BigRational, d: u32) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(key, c);
        }
        Self { denom: d, low: key, order: EXACT, coeffs }
    }

    /// An exact polynomial from `(key, coefficient)` pairs.
    pub fn polynomial(terms: impl IntoIterator<Item = (i64, BigRational)>, d: u32) -> Self {
        let mut coeffs = BTreeMap::new();
        for (k, c) in terms {
            accumulate(&mut coeffs, k, c);
        }
        let low = coeffs.keys().next().copied().unwrap_or(0);
        Self { denom: d, low, order: EXACT, coeffs }
    }

    pub fn denom(&self) -> u32 {
        self.denom
    }

    /// Highest key whose coefficient is known.
    pub fn order(&self) -> i64 {
        self.order
    }

    /// Lower bound on the stored keys.
    pub fn low(&self) -> i64 {
        self.low
    }

    pub fn is_exact(&self) -> bool {
        self.order >= EXACT / 2
    }

    /// Nonzero coefficients with key at most `order`.
    pub fn coeffs(&self) -> &BTreeMap<i64, BigRational> {
        &self.coeffs
    }

    pub fn coeff(&self, key: i64) -> BigRational {
        self.coeffs.get(&key).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Drops knowledge above `order`.
    pub fn truncate(&self, order: i64) -> Self {
        let order = order.min(self.order);
        let coeffs = self.coeffs.range(..=order).map(|(k, c)| (*k, c.clone())).collect();
        Self { denom: self.denom, low: self.low, order, coeffs }
    }

    fn same_lattice(&self, other: &Self) -> Result<()> {
        if self.denom != other.denom {
            return Err(Error::LatticeMismatch(self.denom, other.denom));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_lattice(other)?;
        let order = self.order.min(other.order);
        let mut coeffs: BTreeMap<i64, BigRational> =
            self.coeffs.range(..=order).map(|(k, c)| (*k, c.clone())).collect();
        for (k, c) in other.coeffs.range(..=order) {
            accumulate(&mut coeffs, *k, c.clone());
        }
        Ok(Self { denom: self.denom, low: self.low.min(other.low), order, coeffs })
    }

    pub fn neg(&self) -> Self {
        self.scale(&-BigRational::one())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self { denom: self.denom, low: self.low, order: self.order, coeffs: BTreeMap::new() };
        }
        let coeffs = self.coeffs.iter().map(|(k, v)| (*k, v * c)).collect();
        Self { denom: self.denom, low: self.low, order: self.order, coeffs }
    }

    /// Multiplication by `q^{key/D}`.
    pub fn shift(&self, key: i64) -> Self {
        let coeffs = self.coeffs.iter().map(|(k, v)| (k + key, v.clone())).collect();
        let order = if self.is_exact() { self.order } else { self.order + key };
        Self { denom: self.denom, low: self.low + key, order, coeffs }
    }

    /// Truncated Cauchy product. The result is known up to
    /// `min(a.order + b.low, b.order + a.low)`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_lattice(other)?;
        let order = match (self.is_exact(), other.is_exact()) {
            (true, true) => EXACT,
            (true, false) => other.order + self.low,
            (false, true) => self.order + other.low,
            (false, false) => (self.order + other.low).min(other.order + self.low),
        };
        let mut coeffs = BTreeMap::new();
        for (i, a) in &self.coeffs {
            for (j, b) in other.coeffs.range(..=order.saturating_sub(*i)) {
                accumulate(&mut coeffs, i + j, a * b);
            }
        }
        Ok(Self { denom: self.denom, low: self.low + other.low, order, coeffs })
    }

    pub fn pow(&self, n: u32) -> Result<Self> {
        let mut acc = Self::one(self.denom);
        for _ in 0..n {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Multiplicative inverse. The leading coefficient must lie inside the
    /// known window.
    pub fn inverse(&self) -> Result<Self> {
        let (&lead_key, lead) = self.coeffs.iter().next().ok_or(Error::NotInvertible)?;
        if lead_key > self.order {
            return Err(Error::NotInvertible);
        }
        let lead_inv = lead.recip();
        // self = lead q^l (1 + v); v known for relative keys up to order - l.
        let span = if self.is_exact() { None } else { Some(self.order - lead_key) };
        let v: Vec<(i64, BigRational)> = self
            .coeffs
            .iter()
            .skip(1)
            .map(|(k, c)| (k - lead_key, c * &lead_inv))
            .filter(|(k, _)| span.is_none_or(|s| *k <= s))
            .collect();
        let span = match span {
            Some(s) => s,
            None if v.is_empty() => {
                return Ok(Self::monomial(-lead_key, lead_inv, self.denom));
            }
            // 1/(1+v) for a polynomial v is an infinite series; callers bound
            // the window through `truncate` before inverting.
            None => return Err(Error::NotFormal("inverse of an exact polynomial needs a finite window".into())),
        };
        let mut w: Vec<BigRational> = Vec::with_capacity(span as usize + 1);
        w.push(BigRational::one());
        for k in 1..=span {
            let mut acc = BigRational::zero();
            for (j, vj) in &v {
                if *j > k {
                    break;
                }
                let prev = &w[(k - j) as usize];
                if !prev.is_zero() {
                    acc -= vj * prev;
                }
            }
            w.push(acc);
        }
        let coeffs = w
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k as i64 - lead_key, c * &lead_inv))
            .collect();
        Ok(Self { denom: self.denom, low: -lead_key, order: span - lead_key, coeffs })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.same_lattice(other)?;
        let other = if other.is_exact() {
            // Enough of 1/other to cover the window of self.
            let lead = other.coeffs.keys().next().copied().ok_or(Error::NotInvertible)?;
            let need = if self.is_exact() {
                return Err(Error::NotFormal("quotient of exact polynomials needs a finite window".into()));
            } else {
                self.order - self.low + lead
            };
            other.truncate(need)
        } else {
            other.clone()
        };
        self.mul(&other.inverse()?)
    }

    /// Moves the series to lattice `new_denom`, a multiple of the current one.
    pub fn relattice(&self, new_denom: u32) -> Result<Self> {
        Self::check_denom(new_denom)?;
        if !new_denom.is_multiple_of(self.denom) {
            return Err(Error::LatticeMismatch(self.denom, new_denom));
        }
        let m = (new_denom / self.denom) as i64;
        let coeffs = self.coeffs.iter().map(|(k, c)| (k * m, c.clone())).collect();
        let order = if self.is_exact() { EXACT } else { self.order * m };
        Ok(Self { denom: new_denom, low: self.low * m, order, coeffs })
    }

    /// Partial sum `sum c_k q^{k/D}` with a crude tail estimate
    /// `max|c| q^{(order+1)/D} / (1 - q^{1/D})`.
    pub fn eval_f64(&self, q: f64) -> (f64, f64) {
        let step = q.powf(1.0 / self.denom as f64);
        let mut sum = 0.0;
        let mut max_c: f64 = 0.0;
        for (k, c) in &self.coeffs {
            let cf = c.to_f64().unwrap_or(f64::NAN);
            max_c = max_c.max(cf.abs());
            sum += cf * q.powf(*k as f64 / self.denom as f64);
        }
        let tail = if self.is_exact() {
            0.0
        } else {
            max_c * q.powf((self.order + 1) as f64 / self.denom as f64) / (1.0 - step)
        };
        (sum, tail)
    }

    /// One line per nonzero coefficient, `exponent<TAB>numerator/denominator`,
    /// ascending exponent.
    pub fn to_listing(&self) -> String {
        let mut out = String::new();
        for (k, c) in &self.coeffs {
            let _ = writeln!(out, "{}\t{}/{}", format_exponent(*k, self.denom), c.numer(), c.denom());
        }
        out
    }
}

fn accumulate(map: &mut BTreeMap<i64, BigRational>, k: i64, c: BigRational) {
    if c.is_zero() {
        return;
    }
    match map.entry(k) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

/// Compares coefficients with key at most `up_to`. Both windows must reach `up_to`.
pub fn fs_equal(a: &FormalSeries, b: &FormalSeries, up_to: i64) -> Result<EqualityReport> {
    a.same_lattice(b)?;
    let known = a.order.min(b.order);
    if known < up_to {
        return Err(Error::NotFormal(format!(
            "series are known only up to q^{}, comparison asks for q^{}",
            format_exponent(known, a.denom),
            format_exponent(up_to, a.denom)
        )));
    }
    let mut keys: Vec<i64> = a.coeffs.range(..=up_to).map(|(k, _)| *k).collect();
    keys.extend(b.coeffs.range(..=up_to).map(|(k, _)| *k));
    keys.sort_unstable();
    keys.dedup();
    let mut first_diff = None;
    let mut mismatches = 0;
    for k in keys {
        let (x, y) = (a.coeff(k), b.coeff(k));
        if x != y {
            mismatches += 1;
            if first_diff.is_none() {
                first_diff = Some((k, x, y));
            }
        }
    }
    Ok(EqualityReport { equal: mismatches == 0, first_diff, mismatches, compared_up_to: up_to })
}

/// `(q^a; q^s)_inf` on lattice `d`, known up to key `order`.
///
/// Factors with nonpositive exponent are kept exactly; a factor `1 - q^0`
/// makes the whole product zero.
pub fn fs_pochhammer(a: Rational64, s: Rational64, d: u32, order: i64) -> Result<FormalSeries> {
    FormalSeries::check_denom(d)?;
    if s <= Rational64::zero() {
        return Err(Error::Domain(format!("pochhammer step must be positive, got {s}")));
    }
    let a_key = lattice_key(&a, d)?;
    let s_key = lattice_key(&s, d)?;
    let one = BigRational::one();
    let mut head = FormalSeries::one(d);
    let mut deficit = 0i64;
    let mut key = a_key;
    while key <= 0 {
        if key == 0 {
            return Ok(FormalSeries::zero(d, order));
        }
        head = head.mul(&FormalSeries::polynomial([(0, one.clone()), (key, -one.clone())], d))?;
        deficit -= key;
        key += s_key;
    }
    // The exact head lowers the window by `deficit`; extend the tail to match.
    let window = order + deficit;
    let mut tail = FormalSeries::one(d).truncate(window);
    while key <= window {
        let factor = FormalSeries::polynomial([(0, one.clone()), (key, -one.clone())], d);
        tail = tail.mul(&factor)?;
        key += s_key;
    }
    head.mul(&tail).map(|p| p.truncate(order))
}

/// `sum_n sign(n) q^{c2 n^2 + c1 n + c0}` over every `n` whose exponent key
/// is at most `order`.
pub fn fs_theta_sum(
    c2: Rational64,
    c1: Rational64,
    c0: Rational64,
    sign: SignRule,
    d: u32,
    order: i64,
) -> Result<FormalSeries> {
    FormalSeries::check_denom(d)?;
    if c2 <= Rational64::zero() {
        return Err(Error::Domain(format!("theta sum needs a positive quadratic coefficient, got {c2}")));
    }
    let key_at = |n: i64| -> Result<i64> {
        let n = Rational64::from_integer(n);
        lattice_key(&(c2 * n * n + c1 * n + c0), d)
    };
    let vertex = (-c1 / (c2 * Rational64::from_integer(2))).floor().to_integer();
    let low = key_at(vertex)?.min(key_at(vertex + 1)?);
    let mut coeffs = BTreeMap::new();
    let term = |n: i64| match sign {
        SignRule::Alternating if n.is_odd() => -BigRational::one(),
        _ => BigRational::one(),
    };
    let mut n = vertex + 1;
    loop {
        let k = key_at(n)?;
        if k > order {
            break;
        }
        accumulate(&mut coeffs, k, term(n));
        n += 1;
    }
    let mut n = vertex;
    loop {
        let k = key_at(n)?;
        if k > order {
            break;
        }
        accumulate(&mut coeffs, k, term(n));
        n -= 1;
    }
    Ok(FormalSeries { denom: d, low, order, coeffs })
}

/// Generalized binomial coefficient `C(e, k)` in exact rationals.
pub fn binomial(e: &BigRational, k: u64) -> BigRational {
    let mut acc = BigRational::one();
    for j in 0..k {
        let j = BigRational::from_integer(BigInt::from(j));
        acc = acc * (e - &j) / (&j + BigRational::one());
    }
    acc
}

/// `(1 - q^r)^e = sum_k C(e, k) (-1)^k q^{r k}` for `r > 0`.
pub fn fs_binomial_pow(r: Rational64, e: Rational64, d: u32, order: i64) -> Result<FormalSeries> {
    FormalSeries::check_denom(d)?;
    if r <= Rational64::zero() {
        return Err(Error::Domain(format!("binomial base exponent must be positive, got {r}")));
    }
    let r_key = lattice_key(&r, d)?;
    let e_big = big(&e);
    let mut coeffs = BTreeMap::new();
    let mut c = BigRational::one();
    let mut k: u64 = 0;
    while (k as i64) * r_key <= order {
        let signed = if k.is_odd() { -c.clone() } else { c.clone() };
        accumulate(&mut coeffs, k as i64 * r_key, signed);
        let kk = BigRational::from_integer(BigInt::from(k));
        c = c * (&e_big - &kk) / (kk + BigRational::one());
        k += 1;
        if c.is_zero() {
            // Nonnegative integer exponent: the series is a polynomial.
            return Ok(FormalSeries { denom: d, low: 0, order: EXACT, coeffs });
        }
    }
    Ok(FormalSeries { denom: d, low: 0, order, coeffs })
}

/// Rational from a decimal literal such as `0.125`, `-3`, `1/8` or `2.5e-1`.
pub fn parse_rational(s: &str) -> Option<Rational64> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: i64 = n.trim().parse().ok()?;
        let d: i64 = d.trim().parse().ok()?;
        return (d != 0).then(|| Rational64::new(n, d));
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let all = format!("{int}{frac}");
    let num: i64 = if all.is_empty() { 0 } else { all.parse().ok()? };
    let scale = exp - frac.len() as i32;
    let ten = Rational64::from_integer(10);
    let mut r = Rational64::from_integer(if neg { -num } else { num });
    for _ in 0..scale.unsigned_abs() {
        r = if scale > 0 { r * ten } else { r / ten };
    }
    Some(r)
}

/// A rational coefficient as `numerator/denominator`.
pub fn rational_string(c: &BigRational) -> String {
    format!("{}/{}", c.numer(), c.denom())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    fn ri(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn listing_pairs(s: &FormalSeries) -> Vec<(i64, i64)> {
        s.coeffs().iter().map(|(k, c)| (*k, c.to_integer().to_i64().unwrap())).collect()
    }

    /// Product of `(1 - q^k)` for `k = 1..=n` as a plain integer polynomial.
    fn euler_oracle(n: usize) -> Vec<i64> {
        let mut p = vec![0i64; n + 1];
        p[0] = 1;
        for k in 1..=n {
            for e in (k..=n).rev() {
                p[e] -= p[e - k];
            }
        }
        p
    }

    #[test]
    fn euler_product_to_order_five() {
        let s = fs_pochhammer(r(1, 1), r(1, 1), 1, 5).unwrap();
        assert_eq!(listing_pairs(&s), vec![(0, 1), (1, -1), (2, -1), (5, 1)]);
        assert_eq!(s.to_listing(), "0\t1/1\n1\t-1/1\n2\t-1/1\n5\t1/1\n");
    }

    #[test]
    fn pentagonal_pattern_to_thirty() {
        let s = fs_pochhammer(r(1, 1), r(1, 1), 1, 30).unwrap();
        let oracle = euler_oracle(30);
        let mut pentagonal = std::collections::BTreeMap::new();
        for k in -5i64..=5 {
            let e = k * (3 * k - 1) / 2;
            if e <= 30 {
                pentagonal.insert(e, if k % 2 == 0 { 1 } else { -1 });
            }
        }
        for e in 0..=30i64 {
            let c = s.coeff(e).to_integer().to_i64().unwrap();
            assert_eq!(c, oracle[e as usize], "exponent {e}");
            assert_eq!(c, pentagonal.get(&e).copied().unwrap_or(0), "exponent {e}");
        }
    }

    #[test]
    fn half_offset_pochhammer() {
        // (q^{1/2}; q) on D = 2 to q^3, against multiplying six factors by hand.
        let s = fs_pochhammer(r(1, 2), r(1, 1), 2, 6).unwrap();
        let mut direct = FormalSeries::one(2);
        for m in 0..6 {
            let f = FormalSeries::polynomial([(0, ri(1)), (1 + 2 * m, ri(-1))], 2);
            direct = direct.mul(&f).unwrap();
        }
        let direct = direct.truncate(6);
        assert!(fs_equal(&s, &direct, 6).unwrap().equal);
        assert_eq!(s.coeff(1), ri(-1));
        assert_eq!(s.coeff(3), ri(-1));
        assert!(fs_pochhammer(r(7, 1), r(1, 1), 1, 5).unwrap() == FormalSeries::one(1).truncate(5));
    }

    #[test]
    fn pochhammer_with_nonpositive_offset() {
        let zero = fs_pochhammer(r(0, 1), r(2, 1), 1, 10).unwrap();
        assert!(zero.coeffs().is_empty());
        // (q^{-1}; q^2) = (1 - q^{-1}) (q; q^2)
        let s = fs_pochhammer(r(-1, 1), r(2, 1), 1, 12).unwrap();
        let head = FormalSeries::polynomial([(0, ri(1)), (-1, ri(-1))], 1);
        let expect = head.mul(&fs_pochhammer(r(1, 1), r(2, 1), 1, 13).unwrap()).unwrap();
        assert!(fs_equal(&s, &expect, 12).unwrap().equal);
        assert_eq!(s.low(), -1);
    }

    #[test]
    fn geometric_inverse_cancels() {
        let one_minus = FormalSeries::polynomial([(0, ri(1)), (1, ri(-1))], 1);
        let geom = fs_binomial_pow(r(1, 1), r(-1, 1), 1, 5).unwrap();
        assert_eq!(listing_pairs(&geom), (0..=5).map(|k| (k, 1)).collect::<Vec<_>>());
        let prod = one_minus.mul(&geom).unwrap();
        assert_eq!(prod.order(), 5);
        assert_eq!(listing_pairs(&prod), vec![(0, 1)]);
    }

    #[test]
    fn square_root_binomial() {
        let s = fs_binomial_pow(r(1, 1), r(1, 2), 1, 3).unwrap();
        let expect = [
            (0, ri(1)),
            (1, BigRational::new(BigInt::from(-1), BigInt::from(2))),
            (2, BigRational::new(BigInt::from(-1), BigInt::from(8))),
            (3, BigRational::new(BigInt::from(-1), BigInt::from(16))),
        ];
        for (k, c) in expect {
            assert_eq!(s.coeff(k), c);
        }
        let lin = fs_binomial_pow(r(3, 2), r(1, 1), 2, 40).unwrap();
        assert!(lin.is_exact());
        assert_eq!(lin.to_listing(), "0\t1/1\n3/2\t-1/1\n");
    }

    #[test]
    fn theta_sum_examples() {
        let s = fs_theta_sum(r(1, 1), r(0, 1), r(0, 1), SignRule::Alternating, 1, 9).unwrap();
        assert_eq!(listing_pairs(&s), vec![(0, 1), (1, -2), (4, 2), (9, -2)]);
        let empty = fs_theta_sum(r(1, 1), r(0, 1), r(5, 1), SignRule::Alternating, 1, 4).unwrap();
        assert!(empty.coeffs().is_empty());
        assert!(fs_theta_sum(r(1, 1), r(1, 3), r(0, 1), SignRule::Plus, 2, 10).is_err());
    }

    #[test]
    fn index_shift_formally() {
        // sum (-1)^n q^{n^2 + n(2z-1)} = q^{-1/4} sum (-1)^n q^{(n+1/2)^2 + 2n(z-1)} at z = 1/4
        let d = 4;
        let z = r(1, 4);
        let lhs = fs_theta_sum(r(1, 1), z * 2 - 1, r(0, 1), SignRule::Alternating, d, 160).unwrap();
        let rhs =
            fs_theta_sum(r(1, 1), r(1, 1) + (z - 1) * 2, r(1, 4), SignRule::Alternating, d, 161).unwrap().shift(-1);
        assert!(fs_equal(&lhs, &rhs, 160).unwrap().equal);
    }

    #[test]
    fn unequal_series_report() {
        let a = FormalSeries::polynomial([(0, ri(1)), (1, ri(-1))], 1);
        let b = FormalSeries::polynomial([(0, ri(1)), (1, ri(1))], 1);
        let rep = fs_equal(&a, &b, 5).unwrap();
        assert!(!rep.equal);
        assert_eq!(rep.first_diff, Some((1, ri(-1), ri(1))));
        assert_eq!(rep.mismatches, 1);
        assert!(fs_equal(&a, &a, 5).unwrap().equal);
        let c = a.relattice(2).unwrap();
        assert!(matches!(fs_equal(&a, &c, 5), Err(Error::LatticeMismatch(1, 2))));
        assert!(matches!(a.add(&c), Err(Error::LatticeMismatch(1, 2))));
    }

    #[test]
    fn addition_identities() {
        let a = fs_pochhammer(r(1, 1), r(1, 1), 1, 8).unwrap();
        assert_eq!(a.add(&FormalSeries::zero(1, 8)).unwrap(), a);
        let x = FormalSeries::polynomial([(0, ri(1)), (1, ri(-1))], 1);
        let y = FormalSeries::monomial(1, ri(1), 1);
        assert_eq!(x.add(&y).unwrap(), FormalSeries::one(1));
    }

    #[test]
    fn monomial_shift() {
        let a = fs_pochhammer(r(1, 1), r(1, 1), 2, 10).unwrap();
        let half = FormalSeries::monomial(1, ri(1), 2);
        let shifted = half.mul(&a).unwrap();
        assert_eq!(shifted, a.shift(1));
        assert_eq!(shifted.coeff(3), ri(-1));
    }

    #[test]
    fn inverse_and_division() {
        let p = fs_pochhammer(r(1, 1), r(1, 1), 1, 20).unwrap();
        let inv = p.inverse().unwrap();
        // 1/(q;q) counts partitions.
        let partitions = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42];
        for (k, c) in partitions.iter().enumerate() {
            assert_eq!(inv.coeff(k as i64), ri(*c));
        }
        let back = p.mul(&inv).unwrap();
        assert!(fs_equal(&back, &FormalSeries::one(1), 20).unwrap().equal);
        let shifted = p.shift(-3);
        let q = shifted.inverse().unwrap();
        assert_eq!(q.low(), 3);
        assert!(fs_equal(&shifted.mul(&q).unwrap(), &FormalSeries::one(1), 20).unwrap().equal);
        assert!(FormalSeries::zero(1, 5).inverse().is_err());
    }

    #[test]
    fn float_agreement_for_euler_product() {
        let s = fs_pochhammer(r(1, 1), r(1, 1), 1, 40).unwrap();
        for q in [0.1f64, 0.3] {
            let direct: f64 = (1..400).map(|k| 1.0 - q.powi(k)).product();
            let (v, tail) = s.eval_f64(q);
            assert!((v - direct).abs() < 1e-8);
            assert!(tail < 1e-8);
        }
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("0.125"), Some(r(1, 8)));
        assert_eq!(parse_rational("-3"), Some(r(-3, 1)));
        assert_eq!(parse_rational("3/8"), Some(r(3, 8)));
        assert_eq!(parse_rational("2.5e-1"), Some(r(1, 4)));
        assert_eq!(parse_rational("0"), Some(r(0, 1)));
        assert_eq!(parse_rational("x"), None);
        assert_eq!(parse_rational("1/0"), None);
    }

    fn small_series() -> impl Strategy<Value = FormalSeries> {
        proptest::collection::vec(-4i64..=4, 1..8).prop_map(|cs| {
            let terms: Vec<(i64, BigRational)> = cs.into_iter().enumerate().map(|(k, c)| (k as i64, ri(c))).collect();
            FormalSeries::polynomial(terms, 1).truncate(10)
        })
    }

    proptest! {
        #[test]
        fn multiplication_commutes(a in small_series(), b in small_series()) {
            prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        }

        #[test]
        fn multiplication_associates(a in small_series(), b in small_series(), c in small_series()) {
            let l = a.mul(&b).unwrap().mul(&c).unwrap();
            let r = a.mul(&b.mul(&c).unwrap()).unwrap();
            prop_assert_eq!(l, r);
        }

        #[test]
        fn multiplication_distributes(a in small_series(), b in small_series(), c in small_series()) {
            let l = a.mul(&b.add(&c).unwrap()).unwrap();
            let r = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
            prop_assert!(fs_equal(&l, &r, 10).unwrap().equal);
        }
    }
}
