//! Exact p-adic valuations and the multiplicative value group `∏ p^q ∪ {0}`.
//!
//! Every norm value produced by this crate is a [`Magnitude`]: either zero or a
//! finite product of primes raised to rational exponents. Because the logs of
//! distinct primes are linearly independent over the rationals, the canonical
//! factor map determines the real value uniquely, so structural equality is
//! value equality.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always stored in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// Largest integer exponent [`Magnitude::compare`] will expand after clearing denominators.
pub const DEFAULT_COMPARE_BOUND: u64 = 1_000_000;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

pub(crate) fn ensure_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::input(format!("{p} is not prime")))
    }
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Formats as `n` or `n/d`.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `n` or `n/d` (optional sign, surrounding whitespace ignored).
///
/// `offset` is added to reported error positions so callers parsing a larger
/// string can point at the right byte.
pub fn parse_rational_at(text: &str, offset: usize) -> Result<Rational> {
    let lead = text.len() - text.trim_start().len();
    let body = text.trim();
    let base = offset + lead;
    if body.is_empty() {
        return Err(Error::Parse {
            position: base,
            message: "expected a rational number".into(),
        });
    }
    // U+2212 shows up in hand-written descriptors.
    let body = body.replace('\u{2212}', "-");
    let (num, den, den_pos) = match body.find('/') {
        Some(i) => (&body[..i], Some(&body[i + 1..]), base + i + 1),
        None => (body.as_str(), None, base),
    };
    let parse_int = |s: &str, pos: usize| -> Result<BigInt> {
        let t = s.trim();
        let valid = !t.is_empty()
            && t.strip_prefix(['-', '+'])
                .unwrap_or(t)
                .chars()
                .all(|c| c.is_ascii_digit())
            && t.chars().any(|c| c.is_ascii_digit());
        if !valid {
            return Err(Error::Parse {
                position: pos,
                message: format!("malformed integer {s:?}"),
            });
        }
        t.trim_start_matches('+').parse::<BigInt>().map_err(|e| Error::Parse {
            position: pos,
            message: e.to_string(),
        })
    };
    let n = parse_int(num, base)?;
    let d = match den {
        Some(s) => parse_int(s, den_pos)?,
        None => BigInt::one(),
    };
    if d.is_zero() {
        return Err(Error::Parse {
            position: den_pos,
            message: "zero denominator".into(),
        });
    }
    Ok(Rational::new(n, d))
}

pub fn parse_rational(text: &str) -> Result<Rational> {
    parse_rational_at(text, 0)
}

fn vp_int(n: &BigInt, p: u64) -> u64 {
    let mut n = n.abs();
    // Squares p, p^2, p^4, ... that divide n, then strips them largest first.
    let mut powers = vec![BigInt::from(p)];
    loop {
        let last = powers.last().expect("nonempty");
        if !n.is_multiple_of(last) {
            break;
        }
        let (q, _) = n.div_rem(last);
        n = q;
        let next = last * last;
        powers.push(next);
    }
    let mut v: u64 = (1u64 << (powers.len() - 1)) - 1;
    for (i, pk) in powers.iter().enumerate().rev() {
        if n.is_multiple_of(pk) {
            n /= pk;
            v += 1 << i;
        }
    }
    v
}

/// A p-adic valuation: a rational exponent or `+∞` (the valuation of zero).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ValExp {
    Finite(Rational),
    Infinity,
}

impl ValExp {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            ValExp::Finite(q) => Some(q),
            ValExp::Infinity => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ValExp::Infinity)
    }
}

impl Ord for ValExp {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ValExp::Infinity, ValExp::Infinity) => Ordering::Equal,
            (ValExp::Infinity, _) => Ordering::Greater,
            (_, ValExp::Infinity) => Ordering::Less,
            (ValExp::Finite(a), ValExp::Finite(b)) => a.cmp(b),
        }
    }
}

impl PartialOrd for ValExp {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl std::ops::Add for &ValExp {
    type Output = ValExp;
    fn add(self, rhs: &ValExp) -> ValExp {
        match (self, rhs) {
            (ValExp::Finite(a), ValExp::Finite(b)) => ValExp::Finite(a + b),
            _ => ValExp::Infinity,
        }
    }
}

impl fmt::Display for ValExp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValExp::Finite(q) => f.write_str(&format_rational(q)),
            ValExp::Infinity => f.write_str("inf"),
        }
    }
}

impl std::str::FromStr for ValExp {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        if s.trim() == "inf" {
            Ok(ValExp::Infinity)
        } else {
            parse_rational(s).map(ValExp::Finite)
        }
    }
}

impl Serialize for ValExp {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ValExp {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(de::Error::custom)
    }
}

/// Exact p-adic valuation of a rational; `Infinity` iff `x == 0`.
pub fn vp(x: &Rational, p: u64) -> Result<ValExp> {
    ensure_prime(p)?;
    Ok(vp_unchecked(x, p))
}

pub(crate) fn vp_unchecked(x: &Rational, p: u64) -> ValExp {
    if x.is_zero() {
        return ValExp::Infinity;
    }
    let v = vp_int(x.numer(), p) as i64 - vp_int(x.denom(), p) as i64;
    ValExp::Finite(int(v))
}

/// An element of `∏ p^q ∪ {0}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Magnitude {
    // None is zero; Some(empty) is one. Keys are primes, exponents nonzero.
    factors: Option<BTreeMap<u64, Rational>>,
}

impl Magnitude {
    pub fn zero() -> Self {
        Magnitude { factors: None }
    }

    pub fn one() -> Self {
        Magnitude {
            factors: Some(BTreeMap::new()),
        }
    }

    /// `p^e` for a prime `p`.
    pub fn prime_power(p: u64, e: Rational) -> Result<Self> {
        ensure_prime(p)?;
        Ok(Self::prime_power_unchecked(p, e))
    }

    pub(crate) fn prime_power_unchecked(p: u64, e: Rational) -> Self {
        let mut map = BTreeMap::new();
        if !e.is_zero() {
            map.insert(p, e);
        }
        Magnitude { factors: Some(map) }
    }

    /// Builds a magnitude from an explicit factor map, validating primality and
    /// dropping zero exponents.
    pub fn from_factors<I>(factors: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u64, Rational)>,
    {
        let mut map: BTreeMap<u64, Rational> = BTreeMap::new();
        for (p, e) in factors {
            ensure_prime(p)?;
            *map.entry(p).or_insert_with(Rational::zero) += e;
        }
        map.retain(|_, e| !e.is_zero());
        Ok(Magnitude { factors: Some(map) })
    }

    /// Factors a nonnegative rational into the value group.
    ///
    /// Trial division runs up to 10^6; a cofactor below 10^12 left over after that
    /// is necessarily prime, anything larger is rejected as a resource error.
    pub fn from_rational(q: &Rational) -> Result<Self> {
        if q.is_negative() {
            return Err(Error::domain(format!(
                "{} is negative and not a magnitude",
                format_rational(q)
            )));
        }
        if q.is_zero() {
            return Ok(Self::zero());
        }
        let mut map = BTreeMap::new();
        for (part, sign) in [(q.numer(), 1i64), (q.denom(), -1i64)] {
            for (p, k) in factor_integer(part)? {
                *map.entry(p).or_insert_with(Rational::zero) += int(sign * k as i64);
            }
        }
        map.retain(|_, e: &mut Rational| !e.is_zero());
        Ok(Magnitude { factors: Some(map) })
    }

    pub fn is_zero(&self) -> bool {
        self.factors.is_none()
    }

    pub fn is_one(&self) -> bool {
        matches!(&self.factors, Some(m) if m.is_empty())
    }

    /// Prime → exponent map, `None` for zero.
    pub fn factors(&self) -> Option<&BTreeMap<u64, Rational>> {
        self.factors.as_ref()
    }

    /// Exponent of `p` (zero when absent); `None` for the zero magnitude.
    pub fn exponent(&self, p: u64) -> Option<Rational> {
        self.factors
            .as_ref()
            .map(|m| m.get(&p).cloned().unwrap_or_else(Rational::zero))
    }

    pub fn mul(&self, other: &Magnitude) -> Magnitude {
        let (Some(a), Some(b)) = (&self.factors, &other.factors) else {
            return Magnitude::zero();
        };
        let mut out = a.clone();
        for (p, e) in b {
            let slot = out.entry(*p).or_insert_with(Rational::zero);
            *slot += e;
            if slot.is_zero() {
                out.remove(p);
            }
        }
        Magnitude { factors: Some(out) }
    }

    /// Raises to a rational power. `ZERO^q` is only defined for `q > 0`.
    pub fn pow(&self, q: &Rational) -> Result<Magnitude> {
        match &self.factors {
            None if q.is_positive() => Ok(Magnitude::zero()),
            None => Err(Error::domain(format!(
                "ZERO raised to non-positive power {}",
                format_rational(q)
            ))),
            Some(_) if q.is_zero() => Ok(Magnitude::one()),
            Some(m) => Ok(Magnitude {
                factors: Some(m.iter().map(|(p, e)| (*p, e * q)).collect()),
            }),
        }
    }

    pub fn pow_int(&self, n: i64) -> Result<Magnitude> {
        self.pow(&int(n))
    }

    pub fn inv(&self) -> Result<Magnitude> {
        self.pow(&int(-1))
    }

    /// `self / other`; errors when `other` is zero.
    pub fn div(&self, other: &Magnitude) -> Result<Magnitude> {
        Ok(self.mul(&other.inv()?))
    }

    /// Exact comparison with the default cross-power bound.
    pub fn compare(&self, other: &Magnitude) -> Result<Ordering> {
        self.compare_bounded(other, DEFAULT_COMPARE_BOUND)
    }

    /// Exact comparison. Exponent differences are brought to a common
    /// denominator `N`; when they have mixed signs the two integer products
    /// `∏ p^k` are expanded and compared. Any `|k|` above `bound` is reported as
    /// a resource error.
    pub fn compare_bounded(&self, other: &Magnitude, bound: u64) -> Result<Ordering> {
        let (a, b) = match (&self.factors, &other.factors) {
            (None, None) => return Ok(Ordering::Equal),
            (None, Some(_)) => return Ok(Ordering::Less),
            (Some(_), None) => return Ok(Ordering::Greater),
            (Some(a), Some(b)) => (a, b),
        };
        let mut diff: BTreeMap<u64, Rational> = a.clone();
        for (p, e) in b {
            let slot = diff.entry(*p).or_insert_with(Rational::zero);
            *slot -= e;
        }
        diff.retain(|_, e| !e.is_zero());
        if diff.is_empty() {
            return Ok(Ordering::Equal);
        }
        if diff.values().all(|e| e.is_positive()) {
            return Ok(Ordering::Greater);
        }
        if diff.values().all(|e| e.is_negative()) {
            return Ok(Ordering::Less);
        }
        let common = diff
            .values()
            .fold(BigInt::one(), |acc, e| acc.lcm(e.denom()));
        let mut lhs = BigInt::one();
        let mut rhs = BigInt::one();
        for (p, e) in &diff {
            let k = (e * Rational::from_integer(common.clone())).to_integer();
            let mag = k.abs().to_u64().filter(|m| *m <= bound).ok_or_else(|| {
                Error::Resource(format!(
                    "comparison needs {p}^{k}, above the exponent bound {bound}"
                ))
            })?;
            let power = num_traits::pow(BigInt::from(*p), mag as usize);
            if k.is_positive() {
                lhs *= power;
            } else {
                rhs *= power;
            }
        }
        Ok(lhs.cmp(&rhs))
    }

    /// The larger of two magnitudes (exact).
    pub fn max(&self, other: &Magnitude) -> Result<Magnitude> {
        Ok(match self.compare(other)? {
            Ordering::Less => other.clone(),
            _ => self.clone(),
        })
    }

    pub fn min(&self, other: &Magnitude) -> Result<Magnitude> {
        Ok(match self.compare(other)? {
            Ordering::Greater => other.clone(),
            _ => self.clone(),
        })
    }

    pub fn le(&self, other: &Magnitude) -> Result<bool> {
        Ok(self.compare(other)? != Ordering::Greater)
    }

    /// Maximum of an iterator, `ZERO` when empty.
    pub fn max_of<'a, I>(items: I) -> Result<Magnitude>
    where
        I: IntoIterator<Item = &'a Magnitude>,
    {
        items
            .into_iter()
            .try_fold(Magnitude::zero(), |acc, m| acc.max(m))
    }

    /// Double-precision value. Overflows to `+∞` or underflows to `0.0` for
    /// extreme exponents.
    pub fn to_f64(&self) -> f64 {
        let Some(m) = &self.factors else { return 0.0 };
        let mut out = 1.0;
        for (p, e) in m {
            let base = *p as f64;
            out *= match e.to_integer().to_i32().filter(|_| e.is_integer()) {
                Some(k) => base.powi(k),
                None => base.powf(e.to_f64().unwrap_or(f64::NAN)),
            };
        }
        if out.is_finite() && out > 0.0 {
            out
        } else {
            self.ln().exp()
        }
    }

    /// `ln` of the value, `-∞` for zero.
    pub fn ln(&self) -> f64 {
        match &self.factors {
            None => f64::NEG_INFINITY,
            Some(m) => m
                .iter()
                .map(|(p, e)| e.to_f64().unwrap_or(f64::NAN) * (*p as f64).ln())
                .sum(),
        }
    }
}

impl Mul for &Magnitude {
    type Output = Magnitude;
    fn mul(self, rhs: &Magnitude) -> Magnitude {
        Magnitude::mul(self, rhs)
    }
}

impl fmt::Display for Magnitude {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.factors {
            None => f.write_str("0"),
            Some(m) if m.is_empty() => f.write_str("1"),
            Some(m) => {
                let parts: Vec<String> = m
                    .iter()
                    .map(|(p, e)| {
                        if e.is_one() {
                            p.to_string()
                        } else {
                            format!("{p}^({})", format_rational(e))
                        }
                    })
                    .collect();
                f.write_str(&parts.join("*"))
            }
        }
    }
}

impl fmt::Debug for Magnitude {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Magnitude({self})")
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum MagnitudeRepr {
    Zero { zero: bool },
    Factors { factors: BTreeMap<String, String> },
}

impl Serialize for Magnitude {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let repr = match &self.factors {
            None => MagnitudeRepr::Zero { zero: true },
            Some(m) => MagnitudeRepr::Factors {
                factors: m
                    .iter()
                    .map(|(p, e)| (p.to_string(), format_rational(e)))
                    .collect(),
            },
        };
        repr.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Magnitude {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match MagnitudeRepr::deserialize(d)? {
            MagnitudeRepr::Zero { zero: true } => Ok(Magnitude::zero()),
            MagnitudeRepr::Zero { zero: false } => {
                Err(de::Error::custom("use {\"factors\": {}} for one"))
            }
            MagnitudeRepr::Factors { factors } => {
                let mut items = Vec::with_capacity(factors.len());
                for (p, e) in factors {
                    let p: u64 = p.trim().parse().map_err(de::Error::custom)?;
                    let e = parse_rational(&e).map_err(de::Error::custom)?;
                    items.push((p, e));
                }
                Magnitude::from_factors(items).map_err(de::Error::custom)
            }
        }
    }
}

fn factor_integer(n: &BigInt) -> Result<Vec<(u64, u64)>> {
    const TRIAL_LIMIT: u64 = 1_000_000;
    const PRIME_CERTAIN_BELOW: u64 = TRIAL_LIMIT * TRIAL_LIMIT;
    let mut n = n.abs();
    let mut out = Vec::new();
    let mut d = 2u64;
    while d <= TRIAL_LIMIT {
        let bd = BigInt::from(d);
        if &bd * &bd > n {
            break;
        }
        let mut k = 0;
        loop {
            let (q, r) = n.div_rem(&bd);
            if !r.is_zero() {
                break;
            }
            n = q;
            k += 1;
        }
        if k > 0 {
            out.push((d, k));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if !n.is_one() {
        match n.to_u64() {
            Some(m) if m < PRIME_CERTAIN_BELOW || BigInt::from(d).pow(2) > n => out.push((m, 1)),
            _ => {
                return Err(Error::Resource(format!(
                    "cannot factor cofactor {n} by trial division"
                )))
            }
        }
    }
    Ok(out)
}

/// `|x|_p = p^{-v_p(x)}`, or `ZERO` at zero.
pub fn padic_magnitude(x: &Rational, p: u64) -> Result<Magnitude> {
    ensure_prime(p)?;
    Ok(padic_unchecked(x, p))
}

pub(crate) fn padic_unchecked(x: &Rational, p: u64) -> Magnitude {
    magnitude_of_valuation_unchecked(&vp_unchecked(x, p), p)
}

/// Valuation → norm direction of the dictionary: `v ↦ p^{-v}`, `∞ ↦ ZERO`.
pub fn magnitude_of_valuation(v: &ValExp, p: u64) -> Result<Magnitude> {
    ensure_prime(p)?;
    Ok(magnitude_of_valuation_unchecked(v, p))
}

fn magnitude_of_valuation_unchecked(v: &ValExp, p: u64) -> Magnitude {
    match v {
        ValExp::Infinity => Magnitude::zero(),
        ValExp::Finite(q) => Magnitude::prime_power_unchecked(p, -q),
    }
}

/// Norm → valuation direction. `m` must be `ZERO` or supported on `p` alone.
pub fn valuation_of_magnitude(m: &Magnitude, p: u64) -> Result<ValExp> {
    ensure_prime(p)?;
    match m.factors() {
        None => Ok(ValExp::Infinity),
        Some(f) => {
            if let Some(q) = f.keys().find(|q| **q != p) {
                return Err(Error::domain(format!(
                    "{m} is supported on prime {q}, not only on {p}"
                )));
            }
            Ok(ValExp::Finite(
                f.get(&p).map(|e| -e).unwrap_or_else(Rational::zero),
            ))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pp(p: u64, n: i64, d: i64) -> Magnitude {
        Magnitude::prime_power(p, rat(n, d)).unwrap()
    }

    #[test]
    fn valuations() {
        assert_eq!(vp(&int(50), 5).unwrap(), ValExp::Finite(int(2)));
        assert_eq!(vp(&int(1), 5).unwrap(), ValExp::Finite(int(0)));
        assert_eq!(vp(&int(0), 5).unwrap(), ValExp::Infinity);
        assert_eq!(vp(&rat(75, 8), 5).unwrap(), ValExp::Finite(int(2)));
        assert_eq!(vp(&rat(3, 250), 5).unwrap(), ValExp::Finite(int(-3)));
        assert!(matches!(vp(&int(10), 4), Err(Error::Input(_))));
        assert!(matches!(vp(&int(10), 1), Err(Error::Input(_))));
        for k in [1u32, 2, 3, 7, 8, 63, 64, 1000, 4097] {
            let n = BigInt::from(5).pow(k) * 3;
            assert_eq!(vp_int(&n, 5), k as u64);
            assert_eq!(vp_int(&(n * 5 + 1), 5), 0);
        }
    }

    #[test]
    fn padic_norms() {
        assert_eq!(padic_magnitude(&int(5), 5).unwrap(), pp(5, -1, 1));
        assert!(padic_magnitude(&int(0), 5).unwrap().is_zero());
        assert_eq!(padic_magnitude(&rat(75, 8), 5).unwrap(), pp(5, -2, 1));
        assert!(padic_magnitude(&int(3), 6).is_err());
    }

    #[test]
    fn products_and_powers() {
        assert_eq!(pp(5, -1, 2).mul(&pp(5, -1, 2)), pp(5, -1, 1));
        assert!(Magnitude::zero().mul(&pp(2, 1, 4)).is_zero());
        let a = pp(2, 1, 4).mul(&pp(5, -1, 1));
        let b = pp(2, -1, 4).mul(&pp(5, -1, 1));
        assert_eq!(a.mul(&b), pp(5, -2, 1));
        assert_eq!(pp(5, -1, 1).pow(&rat(1, 2)).unwrap(), pp(5, -1, 2));
        assert!(Magnitude::zero().pow(&rat(1, 2)).unwrap().is_zero());
        assert!(matches!(
            Magnitude::zero().pow(&int(-1)),
            Err(Error::Domain(_))
        ));
        assert!(matches!(Magnitude::zero().pow(&int(0)), Err(Error::Domain(_))));
    }

    #[test]
    fn comparisons() {
        assert_eq!(pp(5, -1, 2).compare(&Magnitude::one()).unwrap(), Ordering::Less);
        assert_eq!(pp(2, 1, 2).compare(&pp(5, 1, 5)).unwrap(), Ordering::Greater);
        assert_eq!(
            Magnitude::zero().compare(&Magnitude::zero()).unwrap(),
            Ordering::Equal
        );
        assert_eq!(Magnitude::zero().compare(&pp(7, -9, 1)).unwrap(), Ordering::Less);
        // 2^3 = 8 < 9 = 3^2
        assert_eq!(pp(2, 3, 1).compare(&pp(3, 2, 1)).unwrap(), Ordering::Less);
    }

    #[test]
    fn compare_bound_is_loud() {
        let a = pp(2, 1, 1_000_003);
        let b = pp(3, 1, 1_000_033);
        assert!(matches!(a.compare(&b), Err(Error::Resource(_))));
        // same-sign differences never need the expansion
        assert_eq!(
            pp(2, 1, 1_000_003).compare(&Magnitude::one()).unwrap(),
            Ordering::Greater
        );
    }

    #[test]
    fn dictionary() {
        assert_eq!(
            magnitude_of_valuation(&ValExp::Finite(rat(3, 2)), 5).unwrap(),
            pp(5, -3, 2)
        );
        assert!(magnitude_of_valuation(&ValExp::Infinity, 5).unwrap().is_zero());
        assert_eq!(
            magnitude_of_valuation(&ValExp::Finite(int(-2)), 5).unwrap(),
            pp(5, 2, 1)
        );
        assert_eq!(
            valuation_of_magnitude(&pp(5, -2, 1), 5).unwrap(),
            ValExp::Finite(int(2))
        );
        assert_eq!(
            valuation_of_magnitude(&Magnitude::zero(), 5).unwrap(),
            ValExp::Infinity
        );
        let mixed = pp(2, 1, 1).mul(&pp(5, -1, 1));
        assert!(matches!(
            valuation_of_magnitude(&mixed, 5),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn floats() {
        assert!((pp(5, -1, 1).to_f64() - 0.2).abs() < 1e-15);
        assert_eq!(Magnitude::zero().to_f64(), 0.0);
        assert!((pp(5, -1, 2).to_f64() - 0.4472135954999579).abs() < 1e-12);
    }

    #[test]
    fn rational_text() {
        assert_eq!(parse_rational(" -7/14 ").unwrap(), rat(-1, 2));
        assert_eq!(parse_rational("+3").unwrap(), int(3));
        assert!(matches!(
            parse_rational("1/0"),
            Err(Error::Parse { position: 2, .. })
        ));
        assert!(parse_rational("1.5").is_err());
        assert!(parse_rational("").is_err());
        assert!(parse_rational("-").is_err());
        assert_eq!(format_rational(&rat(6, -4)), "-3/2");
    }

    #[test]
    fn factoring_rationals() {
        let m = Magnitude::from_rational(&rat(12, 5)).unwrap();
        assert_eq!(m, pp(2, 2, 1).mul(&pp(3, 1, 1)).mul(&pp(5, -1, 1)));
        assert!(Magnitude::from_rational(&int(1)).unwrap().is_one());
        assert!(Magnitude::from_rational(&int(-1)).is_err());
        let big_prime = int(1_000_000_007);
        assert_eq!(
            Magnitude::from_rational(&big_prime).unwrap(),
            pp(1_000_000_007, 1, 1)
        );
    }

    #[test]
    fn json_shapes() {
        let m = pp(5, -1, 2).mul(&pp(2, 1, 4));
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, r#"{"factors":{"2":"1/4","5":"-1/2"}}"#);
        assert_eq!(serde_json::from_str::<Magnitude>(&s).unwrap(), m);
        assert_eq!(
            serde_json::to_string(&Magnitude::zero()).unwrap(),
            r#"{"zero":true}"#
        );
        assert!(serde_json::from_str::<Magnitude>(r#"{"factors":{"4":"1"}}"#).is_err());
        assert_eq!(serde_json::to_string(&ValExp::Infinity).unwrap(), r#""inf""#);
        assert_eq!(
            serde_json::from_str::<ValExp>(r#""-3/2""#).unwrap(),
            ValExp::Finite(rat(-3, 2))
        );
    }
}
