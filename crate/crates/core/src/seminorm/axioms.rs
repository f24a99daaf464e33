use std::fmt;

use serde::Serialize;

use super::{Carrier, Elem, SeminormSpec};
use crate::error::{Error, Result};
use crate::extension::Automorphism;
use crate::magnitude::{padic_unchecked, Magnitude};

/// Relative slack for the float fallback of [`le_sum`].
const SUM_SLACK: f64 = 1e-12;

/// `u <= v + w` for magnitudes.
///
/// Decided exactly when `u <= max(v, w)` or `u > 2 max(v, w)`; the band in
/// between falls back to doubles with a relative slack of 1e-12, since sums
/// leave the value group.
pub(crate) fn le_sum(u: &Magnitude, v: &Magnitude, w: &Magnitude) -> Result<bool> {
    let m = v.max(w)?;
    if u.le(&m)? {
        return Ok(true);
    }
    let twice = m.mul(&Magnitude::prime_power_unchecked(2, crate::magnitude::int(1)));
    if !u.le(&twice)? {
        return Ok(false);
    }
    let (uf, sf) = (u.to_f64(), v.to_f64() + w.to_f64());
    Ok(uf <= sf * (1.0 + SUM_SLACK))
}

/// A property to check on sample elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Axiom {
    /// `f(0) = 0`, `f(1) <= 1`, `f(-x) = f(x)`, subadditive, submultiplicative.
    Seminorm,
    /// Seminorm axioms plus `f(x) = 0 => x = 0`.
    Norm,
    /// Strong triangle inequality.
    Nonarch,
    /// `f(x^n) = f(x)^n` for `n` in 2, 3, 5.
    PowMul,
    /// `f(1) = 1` and `f(xy) = f(x) f(y)`.
    Mult,
    /// Agrees with `|.|_p` on rationals.
    Extends,
    /// Reports the least sampled `c` with `f(xy) <= c f(x) f(y)`.
    BoundedMult,
    /// `f(σ(x)) = f(x)`.
    Isometry(Automorphism),
}

impl Axiom {
    pub fn name(&self) -> &'static str {
        match self {
            Axiom::Seminorm => "seminorm",
            Axiom::Norm => "norm",
            Axiom::Nonarch => "nonarch",
            Axiom::PowMul => "pow_mul",
            Axiom::Mult => "mult",
            Axiom::Extends => "extends",
            Axiom::BoundedMult => "bounded_mult",
            Axiom::Isometry(_) => "isometry",
        }
    }

    /// Parses a profile name; `isometry` needs an automorphism and is handled by callers.
    pub fn parse(name: &str) -> Result<Axiom> {
        Ok(match name.trim().to_ascii_lowercase().as_str() {
            "seminorm" => Axiom::Seminorm,
            "norm" => Axiom::Norm,
            "nonarch" => Axiom::Nonarch,
            "pow_mul" | "powmul" => Axiom::PowMul,
            "mult" => Axiom::Mult,
            "extends" => Axiom::Extends,
            "bounded_mult" => Axiom::BoundedMult,
            other => return Err(Error::input(format!("unknown axiom {other:?}"))),
        })
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verdict {
    pub axiom: String,
    pub passed: bool,
    /// Counterexample with exact values, when the axiom failed.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    /// Least sampled constant, for `bounded_mult`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<Magnitude>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AxiomReport {
    pub seminorm: String,
    pub samples: usize,
    pub verdicts: Vec<Verdict>,
}

impl AxiomReport {
    pub fn all_passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.passed)
    }

    pub fn verdict(&self, axiom: &str) -> Option<&Verdict> {
        self.verdicts.iter().find(|v| v.axiom == axiom)
    }
}

struct Checker<'a> {
    f: &'a SeminormSpec,
    samples: &'a [Elem],
    values: Vec<Magnitude>,
}

type Outcome = Result<Option<String>>;

impl Checker<'_> {
    fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.samples.len();
        (0..n).flat_map(move |i| (i..n).map(move |j| (i, j)))
    }

    fn seminorm(&self, carrier: &Carrier) -> Outcome {
        let f0 = self.f.eval(&carrier.zero())?;
        if !f0.is_zero() {
            return Ok(Some(format!("f(0) = {f0}")));
        }
        let f1 = self.f.eval(&carrier.one())?;
        if !f1.le(&Magnitude::one())? {
            return Ok(Some(format!("f(1) = {f1} > 1")));
        }
        for (x, fx) in self.samples.iter().zip(&self.values) {
            let fnx = self.f.eval(&x.neg())?;
            if &fnx != fx {
                return Ok(Some(format!("x = {x}: f(-x) = {fnx} but f(x) = {fx}")));
            }
        }
        for (i, j) in self.pairs() {
            let (x, y) = (&self.samples[i], &self.samples[j]);
            let (fx, fy) = (&self.values[i], &self.values[j]);
            let fsum = self.f.eval(&x.add(y)?)?;
            if !le_sum(&fsum, fx, fy)? {
                return Ok(Some(format!(
                    "x = {x}, y = {y}: f(x+y) = {fsum} > f(x) + f(y) with f(x) = {fx}, f(y) = {fy}"
                )));
            }
            let fxy = self.f.eval(&x.mul(y)?)?;
            let prod = fx.mul(fy);
            if !fxy.le(&prod)? {
                return Ok(Some(format!(
                    "x = {x}, y = {y}: f(xy) = {fxy} > f(x) f(y) = {prod}"
                )));
            }
        }
        Ok(None)
    }

    fn definite(&self) -> Outcome {
        for (x, fx) in self.samples.iter().zip(&self.values) {
            if fx.is_zero() && !x.is_zero() {
                return Ok(Some(format!("x = {x} is nonzero but f(x) = 0")));
            }
        }
        Ok(None)
    }

    fn nonarch(&self) -> Outcome {
        for (i, j) in self.pairs() {
            let (x, y) = (&self.samples[i], &self.samples[j]);
            let m = self.values[i].max(&self.values[j])?;
            let fsum = self.f.eval(&x.add(y)?)?;
            if !fsum.le(&m)? {
                return Ok(Some(format!(
                    "x = {x}, y = {y}: f(x+y) = {fsum} > max(f(x), f(y)) = {m}"
                )));
            }
        }
        Ok(None)
    }

    fn pow_mul(&self) -> Outcome {
        for (x, fx) in self.samples.iter().zip(&self.values) {
            for n in [2u64, 3, 5] {
                let lhs = self.f.eval(&x.pow(n)?)?;
                let rhs = if fx.is_zero() { Magnitude::zero() } else { fx.pow_int(n as i64)? };
                if lhs != rhs {
                    return Ok(Some(format!(
                        "(x, n) = ({x}, {n}): f(x^n) = {lhs} but f(x)^n = {rhs}"
                    )));
                }
            }
        }
        Ok(None)
    }

    fn mult(&self, carrier: &Carrier) -> Outcome {
        let f1 = self.f.eval(&carrier.one())?;
        if !f1.is_one() {
            return Ok(Some(format!("f(1) = {f1}, not 1")));
        }
        for (i, j) in self.pairs() {
            let (x, y) = (&self.samples[i], &self.samples[j]);
            let fxy = self.f.eval(&x.mul(y)?)?;
            let prod = self.values[i].mul(&self.values[j]);
            if fxy != prod {
                return Ok(Some(format!(
                    "(x, y) = ({x}, {y}): f(xy) = {fxy} but f(x) f(y) = {prod}"
                )));
            }
        }
        Ok(None)
    }

    fn extends(&self, carrier: &Carrier) -> Outcome {
        let p = self
            .f
            .prime()
            .ok_or_else(|| Error::input(format!("{} has no base p-adic norm to extend", self.f)))?;
        for x in self.samples {
            for q in x.rational_parts() {
                let embedded = match carrier {
                    Carrier::Rationals => Elem::Rational(q.clone()),
                    Carrier::Extension(ext) => {
                        Elem::Field(crate::extension::ExtensionExt::embed(ext, q.clone()))
                    }
                    Carrier::Residues(_) => unreachable!("residues have no prime"),
                };
                let fq = self.f.eval(&embedded)?;
                let base = padic_unchecked(&q, p);
                if fq != base {
                    return Ok(Some(format!(
                        "q = {}: f(q) = {fq} but |q|_{p} = {base}",
                        crate::magnitude::format_rational(&q)
                    )));
                }
            }
        }
        Ok(None)
    }

    fn bounded_mult(&self) -> Result<(Option<String>, Option<Magnitude>)> {
        let mut c = Magnitude::zero();
        for (i, j) in self.pairs() {
            let (x, y) = (&self.samples[i], &self.samples[j]);
            let fxy = self.f.eval(&x.mul(y)?)?;
            let prod = self.values[i].mul(&self.values[j]);
            if prod.is_zero() {
                if !fxy.is_zero() {
                    return Ok((
                        Some(format!("x = {x}, y = {y}: f(xy) = {fxy} but f(x) f(y) = 0")),
                        None,
                    ));
                }
                continue;
            }
            c = c.max(&fxy.div(&prod)?)?;
        }
        Ok((None, Some(c)))
    }

    fn isometry(&self, sigma: &Automorphism) -> Outcome {
        for (x, fx) in self.samples.iter().zip(&self.values) {
            let Elem::Field(y) = x else {
                return Err(Error::input("isometry needs extension-field samples"));
            };
            let image = sigma.apply(y)?;
            let fi = self.f.eval(&Elem::Field(image.clone()))?;
            if &fi != fx {
                return Ok(Some(format!(
                    "x = {x}: f(σx) = {fi} with σx = [{image}] but f(x) = {fx}"
                )));
            }
        }
        Ok(None)
    }
}

/// Checks each axiom of `profile` over all samples (pairs for binary axioms)
/// and reports pass or a counterexample with exact values.
pub fn check_axioms(f: &SeminormSpec, samples: &[Elem], profile: &[Axiom]) -> Result<AxiomReport> {
    if samples.is_empty() {
        return Err(Error::input("no samples given"));
    }
    let carrier = f.carrier();
    for a in profile {
        match (a, &carrier) {
            (Axiom::Extends, Carrier::Residues(_)) => {
                return Err(Error::input(format!("{f} on Z/n extends no p-adic norm")))
            }
            (Axiom::Isometry(sigma), Carrier::Extension(ext)) => {
                if **sigma.parent() != **ext {
                    return Err(Error::input("automorphism belongs to another extension"));
                }
            }
            (Axiom::Isometry(_), _) => {
                return Err(Error::input(format!("{f} is not defined on an extension field")))
            }
            _ => {}
        }
    }
    let values = samples.iter().map(|x| f.eval(x)).collect::<Result<Vec<_>>>()?;
    let checker = Checker { f, samples, values };
    let mut verdicts = Vec::with_capacity(profile.len());
    for a in profile {
        let mut bound = None;
        let witness = match a {
            Axiom::Seminorm => checker.seminorm(&carrier)?,
            Axiom::Norm => match checker.seminorm(&carrier)? {
                Some(w) => Some(w),
                None => checker.definite()?,
            },
            Axiom::Nonarch => checker.nonarch()?,
            Axiom::PowMul => checker.pow_mul()?,
            Axiom::Mult => checker.mult(&carrier)?,
            Axiom::Extends => checker.extends(&carrier)?,
            Axiom::BoundedMult => {
                let (w, c) = checker.bounded_mult()?;
                bound = c;
                w
            }
            Axiom::Isometry(sigma) => checker.isometry(sigma)?,
        };
        verdicts.push(Verdict {
            axiom: a.name().to_string(),
            passed: witness.is_none(),
            witness,
            bound,
        });
    }
    Ok(AxiomReport {
        seminorm: f.to_string(),
        samples: samples.len(),
        verdicts,
    })
}
