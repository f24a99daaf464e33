//! Evaluatable seminorms, the smoothing constructions built on them, and an
//! axiom checker that reports counterexamples with exact values.
//!
//! Seminorms are plain values ([`SeminormSpec`]) that are evaluated on an
//! element of their carrier ([`Elem`]): the rationals, an extension field, or a
//! finite ring `Z/n`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extension::{ExtensionDescriptor, ExtensionExt, ExtensionField, FieldElement};
use crate::magnitude::{
    ensure_prime, format_rational, padic_unchecked, parse_rational, Magnitude, Rational,
};

mod axioms;
mod constructions;

pub use axioms::{check_axioms, Axiom, AxiomReport, Verdict};
pub use constructions::{
    seminorm_from_bounded, seminorm_from_bounded_table, seminorm_from_const_estimate,
    seminorm_from_const_term, smoothing_estimate, smoothing_term, LimitEstimate, DEFAULT_WINDOW,
};

/// The set a seminorm is defined on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Carrier {
    Rationals,
    Extension(Arc<ExtensionField>),
    Residues(u64),
}

impl Carrier {
    /// Parses one element: a rational, a coordinate list, or a residue.
    pub fn parse_elem(&self, text: &str) -> Result<Elem> {
        match self {
            Carrier::Rationals => parse_rational(text).map(Elem::Rational),
            Carrier::Extension(ext) => crate::extension::parse_element(ext, text).map(Elem::Field),
            Carrier::Residues(n) => {
                let r = parse_rational(text)?;
                if !r.is_integer() {
                    return Err(Error::Parse {
                        position: 0,
                        message: format!("residue {text:?} must be an integer"),
                    });
                }
                Ok(Elem::residue(&r.to_integer(), *n))
            }
        }
    }

    pub fn zero(&self) -> Elem {
        match self {
            Carrier::Rationals => Elem::Rational(Rational::zero()),
            Carrier::Extension(ext) => Elem::Field(ext.zero()),
            Carrier::Residues(n) => Elem::Residue { n: *n, r: 0 },
        }
    }

    pub fn one(&self) -> Elem {
        match self {
            Carrier::Rationals => Elem::Rational(Rational::one()),
            Carrier::Extension(ext) => Elem::Field(ext.one()),
            Carrier::Residues(n) => Elem::Residue { n: *n, r: 1 % n },
        }
    }

    /// Every element, for finite carriers.
    pub fn enumerate(&self) -> Option<Vec<Elem>> {
        match self {
            Carrier::Residues(n) => Some((0..*n).map(|r| Elem::Residue { n: *n, r }).collect()),
            _ => None,
        }
    }

    pub(crate) fn admits(&self, x: &Elem) -> bool {
        match (self, x) {
            (Carrier::Rationals, Elem::Rational(_)) => true,
            (Carrier::Extension(ext), Elem::Field(y)) => {
                Arc::ptr_eq(ext, y.parent()) || **ext == **y.parent()
            }
            (Carrier::Residues(n), Elem::Residue { n: m, .. }) => n == m,
            _ => false,
        }
    }
}

/// An element of some carrier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Elem {
    Rational(Rational),
    Field(FieldElement),
    Residue { n: u64, r: u64 },
}

impl Elem {
    pub fn residue(value: &BigInt, n: u64) -> Elem {
        let m = BigInt::from(n);
        let r = ((value % &m) + &m) % &m;
        Elem::Residue {
            n,
            r: r.try_into().expect("residue below n"),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Elem::Rational(q) => q.is_zero(),
            Elem::Field(x) => x.is_zero(),
            Elem::Residue { r, .. } => *r == 0,
        }
    }

    fn mismatch(&self, other: &Elem) -> Error {
        Error::input(format!("cannot combine {self} with {other}: different carriers"))
    }

    pub fn add(&self, other: &Elem) -> Result<Elem> {
        match (self, other) {
            (Elem::Rational(a), Elem::Rational(b)) => Ok(Elem::Rational(a + b)),
            (Elem::Field(a), Elem::Field(b)) => a.add(b).map(Elem::Field),
            (Elem::Residue { n, r }, Elem::Residue { n: m, r: s }) if n == m => Ok(Elem::Residue {
                n: *n,
                r: (r + s) % n,
            }),
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn mul(&self, other: &Elem) -> Result<Elem> {
        match (self, other) {
            (Elem::Rational(a), Elem::Rational(b)) => Ok(Elem::Rational(a * b)),
            (Elem::Field(a), Elem::Field(b)) => a.mul(b).map(Elem::Field),
            (Elem::Residue { n, r }, Elem::Residue { n: m, r: s }) if n == m => Ok(Elem::Residue {
                n: *n,
                r: ((*r as u128 * *s as u128) % *n as u128) as u64,
            }),
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn neg(&self) -> Elem {
        match self {
            Elem::Rational(a) => Elem::Rational(-a),
            Elem::Field(a) => Elem::Field(a.neg()),
            Elem::Residue { n, r } => Elem::Residue {
                n: *n,
                r: (n - r) % n,
            },
        }
    }

    pub fn pow(&self, e: u64) -> Result<Elem> {
        Ok(match self {
            Elem::Rational(a) => {
                let e = u32::try_from(e).map_err(|_| Error::Resource(format!("exponent {e} too large")))?;
                // Powers of a reduced fraction stay reduced.
                Elem::Rational(Rational::new_raw(a.numer().pow(e), a.denom().pow(e)))
            }
            Elem::Field(a) => Elem::Field(a.pow(e as i64)?),
            Elem::Residue { n, r } => {
                let (n128, mut base, mut acc, mut k) = (*n as u128, *r as u128, 1u128 % *n as u128, e);
                while k > 0 {
                    if k & 1 == 1 {
                        acc = acc * base % n128;
                    }
                    base = base * base % n128;
                    k >>= 1;
                }
                Elem::Residue { n: *n, r: acc as u64 }
            }
        })
    }

    /// Rationals contained in this element: the value itself, or each coordinate.
    pub(crate) fn rational_parts(&self) -> Vec<Rational> {
        match self {
            Elem::Rational(q) => vec![q.clone()],
            Elem::Field(x) => x.coords().to_vec(),
            Elem::Residue { .. } => Vec::new(),
        }
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Elem::Rational(q) => f.write_str(&format_rational(q)),
            Elem::Field(x) => write!(f, "[{x}]"),
            Elem::Residue { n, r } => write!(f, "{r} mod {n}"),
        }
    }
}

/// A named seminorm that can be evaluated exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeminormSpec {
    /// `|x|_p` on the rationals.
    Padic { p: u64 },
    /// `c |x|_p` on the rationals, `c > 0`.
    Scaled { c: Rational, p: u64 },
    /// `max(|x|_p, |x|_p^k)` on the rationals: power-multiplicative, not multiplicative.
    MaxPow { p: u64, k: u32 },
    /// Max of the p-adic norms of power-basis coordinates.
    Basis(Arc<ExtensionField>),
    /// Spectral norm.
    Spectral(Arc<ExtensionField>),
    /// Explicit values on `Z/n`, indexed by residue.
    Table { n: u64, values: Vec<Magnitude> },
}

impl SeminormSpec {
    pub fn padic(p: u64) -> Result<Self> {
        ensure_prime(p)?;
        Ok(SeminormSpec::Padic { p })
    }

    pub fn scaled(c: Rational, p: u64) -> Result<Self> {
        let s = SeminormSpec::Scaled { c, p };
        s.validate()?;
        Ok(s)
    }

    pub fn max_pow(p: u64, k: u32) -> Result<Self> {
        let s = SeminormSpec::MaxPow { p, k };
        s.validate()?;
        Ok(s)
    }

    pub fn table(values: Vec<Magnitude>) -> Result<Self> {
        let s = SeminormSpec::Table {
            n: values.len() as u64,
            values,
        };
        s.validate()?;
        Ok(s)
    }

    /// Checks the structural invariants of each variant.
    pub fn validate(&self) -> Result<()> {
        match self {
            SeminormSpec::Padic { p } => ensure_prime(*p),
            SeminormSpec::Scaled { c, p } => {
                ensure_prime(*p)?;
                if !c.is_positive() {
                    return Err(Error::input(format!(
                        "scale {} must be positive",
                        format_rational(c)
                    )));
                }
                Magnitude::from_rational(c).map(|_| ())
            }
            SeminormSpec::MaxPow { p, k } => {
                ensure_prime(*p)?;
                if *k < 2 {
                    return Err(Error::input(format!("max_pow exponent {k} must be >= 2")));
                }
                Ok(())
            }
            SeminormSpec::Basis(_) | SeminormSpec::Spectral(_) => Ok(()),
            SeminormSpec::Table { n, values } => {
                if *n < 2 || values.len() as u64 != *n {
                    return Err(Error::input(format!(
                        "table needs n >= 2 and exactly n values (n = {n}, {} values)",
                        values.len()
                    )));
                }
                if !values[0].is_zero() {
                    return Err(Error::input(format!("table value at 0 is {}, not 0", values[0])));
                }
                for r in 1..*n {
                    let s = n - r;
                    if values[r as usize] != values[s as usize] {
                        return Err(Error::input(format!(
                            "table is not symmetric: f({r}) = {} but f({s}) = {}",
                            values[r as usize], values[s as usize]
                        )));
                    }
                }
                Ok(())
            }
        }
    }

    pub fn carrier(&self) -> Carrier {
        match self {
            SeminormSpec::Padic { .. } | SeminormSpec::Scaled { .. } | SeminormSpec::MaxPow { .. } => {
                Carrier::Rationals
            }
            SeminormSpec::Basis(ext) | SeminormSpec::Spectral(ext) => Carrier::Extension(ext.clone()),
            SeminormSpec::Table { n, .. } => Carrier::Residues(*n),
        }
    }

    /// Prime of the underlying p-adic norm, if any.
    pub fn prime(&self) -> Option<u64> {
        match self {
            SeminormSpec::Padic { p } | SeminormSpec::Scaled { p, .. } | SeminormSpec::MaxPow { p, .. } => {
                Some(*p)
            }
            SeminormSpec::Basis(ext) | SeminormSpec::Spectral(ext) => Some(ext.p()),
            SeminormSpec::Table { .. } => None,
        }
    }

    /// Variants known to be multiplicative, where the bounded construction is a fixed point.
    pub fn is_known_multiplicative(&self) -> bool {
        match self {
            SeminormSpec::Padic { .. } | SeminormSpec::Spectral(_) => true,
            SeminormSpec::Scaled { c, .. } => c.is_one(),
            _ => false,
        }
    }

    pub fn eval(&self, x: &Elem) -> Result<Magnitude> {
        if !self.carrier().admits(x) {
            return Err(Error::input(format!("{x} is not in the carrier of {self}")));
        }
        match (self, x) {
            (SeminormSpec::Padic { p }, Elem::Rational(q)) => Ok(padic_unchecked(q, *p)),
            (SeminormSpec::Scaled { c, p }, Elem::Rational(q)) => {
                Ok(Magnitude::from_rational(c)?.mul(&padic_unchecked(q, *p)))
            }
            (SeminormSpec::MaxPow { p, k }, Elem::Rational(q)) => {
                let m = padic_unchecked(q, *p);
                if m.le(&Magnitude::one())? {
                    Ok(m)
                } else {
                    m.pow_int(*k as i64)
                }
            }
            (SeminormSpec::Basis(_), Elem::Field(y)) => y.basis_norm(),
            (SeminormSpec::Spectral(_), Elem::Field(y)) => y.spectral_norm(),
            (SeminormSpec::Table { values, .. }, Elem::Residue { r, .. }) => Ok(values[*r as usize].clone()),
            _ => unreachable!("carrier admitted the element"),
        }
    }

    /// `max_σ f(σ(x))` over explicit automorphisms of an extension carrier.
    pub fn galois_norm(
        &self,
        auts: &[crate::extension::Automorphism],
        x: &FieldElement,
    ) -> Result<Magnitude> {
        crate::extension::alg_norm_of_galois(|y| self.eval(&Elem::Field(y.clone())), auts, x)
    }
}

impl fmt::Display for SeminormSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeminormSpec::Padic { p } => write!(f, "padic({p})"),
            SeminormSpec::Scaled { c, p } => write!(f, "scaled({}, {p})", format_rational(c)),
            SeminormSpec::MaxPow { p, k } => write!(f, "max_pow({p}, {k})"),
            SeminormSpec::Basis(ext) => write!(f, "basis(Q[X]/({}), p = {})", ext.modulus(), ext.p()),
            SeminormSpec::Spectral(ext) => {
                write!(f, "spectral(Q[X]/({}), p = {})", ext.modulus(), ext.p())
            }
            SeminormSpec::Table { n, .. } => write!(f, "table(Z/{n})"),
        }
    }
}

/// Table entries may be a magnitude object or a nonnegative rational string.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum TableValue {
    Text(String),
    Exact(Magnitude),
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum SeminormRepr {
    Padic {
        p: u64,
    },
    Scaled {
        #[serde(with = "crate::serde_util::rational_str")]
        c: Rational,
        p: u64,
    },
    MaxPow {
        p: u64,
        k: u32,
    },
    Basis {
        ext: ExtensionDescriptor,
    },
    Spectral {
        ext: ExtensionDescriptor,
    },
    Table {
        n: u64,
        values: BTreeMap<String, TableValue>,
    },
}

impl TryFrom<SeminormRepr> for SeminormSpec {
    type Error = Error;
    fn try_from(r: SeminormRepr) -> Result<Self> {
        let spec = match r {
            SeminormRepr::Padic { p } => SeminormSpec::Padic { p },
            SeminormRepr::Scaled { c, p } => SeminormSpec::Scaled { c, p },
            SeminormRepr::MaxPow { p, k } => SeminormSpec::MaxPow { p, k },
            SeminormRepr::Basis { ext } => SeminormSpec::Basis(ExtensionField::from_descriptor(&ext)?),
            SeminormRepr::Spectral { ext } => {
                SeminormSpec::Spectral(ExtensionField::from_descriptor(&ext)?)
            }
            SeminormRepr::Table { n, values } => {
                let mut table = vec![None; n as usize];
                for (key, v) in values {
                    let r: u64 = key
                        .trim()
                        .parse()
                        .map_err(|_| Error::input(format!("table key {key:?} is not a residue")))?;
                    if r >= n {
                        return Err(Error::input(format!("table key {r} is not below n = {n}")));
                    }
                    let m = match v {
                        TableValue::Exact(m) => m,
                        TableValue::Text(s) => Magnitude::from_rational(&parse_rational(&s)?)?,
                    };
                    table[r as usize] = Some(m);
                }
                let values = table
                    .into_iter()
                    .enumerate()
                    .map(|(r, v)| v.ok_or_else(|| Error::input(format!("table has no value for {r}"))))
                    .collect::<Result<Vec<_>>>()?;
                SeminormSpec::Table { n, values }
            }
        };
        spec.validate()?;
        Ok(spec)
    }
}

impl From<&SeminormSpec> for SeminormRepr {
    fn from(s: &SeminormSpec) -> Self {
        match s {
            SeminormSpec::Padic { p } => SeminormRepr::Padic { p: *p },
            SeminormSpec::Scaled { c, p } => SeminormRepr::Scaled { c: c.clone(), p: *p },
            SeminormSpec::MaxPow { p, k } => SeminormRepr::MaxPow { p: *p, k: *k },
            SeminormSpec::Basis(ext) => SeminormRepr::Basis { ext: ext.descriptor() },
            SeminormSpec::Spectral(ext) => SeminormRepr::Spectral { ext: ext.descriptor() },
            SeminormSpec::Table { n, values } => SeminormRepr::Table {
                n: *n,
                values: values
                    .iter()
                    .enumerate()
                    .map(|(r, m)| (r.to_string(), TableValue::Exact(m.clone())))
                    .collect(),
            },
        }
    }
}

impl Serialize for SeminormSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SeminormRepr::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for SeminormSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = SeminormRepr::deserialize(d)?;
        SeminormSpec::try_from(repr).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
pub(crate) fn int_elem(n: i64) -> Elem {
    Elem::Rational(crate::magnitude::int(n))
}
