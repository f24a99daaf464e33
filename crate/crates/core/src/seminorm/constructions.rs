//! The three seminorm-improvement constructions.
//!
//! * bounded → seminorm: `x ↦ sup_y f(xy)/f(y)`, exhaustive on finite rings;
//! * smoothing: `x ↦ inf_n f(x^n)^{1/n}`, sampled at `n = 1, 2, 4, …`;
//! * constant-sequence: `x ↦ lim_n f(x y^n) / f(y)^n` for a fixed `y`.
//!
//! Limits are only reported as exact when the sampled sequence has been
//! constant over a window of terms; otherwise a float bracket is given.

use serde::Serialize;

use super::axioms::le_sum;
use super::{Carrier, Elem, SeminormSpec};
use crate::error::{Error, Result};
use crate::magnitude::{Magnitude, Rational};

/// Number of trailing equal terms required before a limit is called exact.
pub const DEFAULT_WINDOW: usize = 4;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LimitEstimate {
    pub terms_evaluated: usize,
    pub last_term: Magnitude,
    /// Smallest term seen.
    pub infimum: Magnitude,
    /// The trailing `window` terms are exactly equal; `last_term` is then the limit.
    pub stabilized: bool,
    pub float_bracket: (f64, f64),
}

impl LimitEstimate {
    /// The exact limit, when stabilized.
    pub fn limit(&self) -> Option<&Magnitude> {
        self.stabilized.then_some(&self.last_term)
    }

    fn window_equal(terms: &[Magnitude], window: usize) -> bool {
        window >= 1
            && terms.len() >= window
            && terms[terms.len() - window..].windows(2).all(|w| w[0] == w[1])
    }
}

fn precondition(hypothesis: &str, witness: String) -> Error {
    Error::Precondition {
        hypothesis: hypothesis.into(),
        witness,
    }
}

/// Exhaustively verifies the hypotheses of the bounded construction on a finite carrier.
fn check_bounded_hypotheses(f: &SeminormSpec, all: &[Elem]) -> Result<()> {
    let zero = &all[0];
    let f0 = f.eval(zero)?;
    if !f0.is_zero() {
        return Err(precondition("f(0) = 0", format!("f(0) = {f0}")));
    }
    for x in all {
        let fx = f.eval(x)?;
        let fnx = f.eval(&x.neg())?;
        if fx != fnx {
            return Err(precondition(
                "f(-x) = f(x)",
                format!("x = {x}: f(x) = {fx}, f(-x) = {fnx}"),
            ));
        }
        for y in all {
            let fy = f.eval(y)?;
            let fxy = f.eval(&x.mul(y)?)?;
            if !fxy.is_zero() && (fx.is_zero() || fy.is_zero()) {
                return Err(precondition(
                    "f(xy) <= c f(x) f(y) for some c > 0",
                    format!("x = {x}, y = {y}: f(xy) = {fxy} but f(x) f(y) = 0"),
                ));
            }
            let fsum = f.eval(&x.add(y)?)?;
            if !le_sum(&fsum, &fx, &fy)? {
                return Err(precondition(
                    "f(x + y) <= f(x) + f(y)",
                    format!("x = {x}, y = {y}: f(x+y) = {fsum}, f(x) = {fx}, f(y) = {fy}"),
                ));
            }
        }
    }
    Ok(())
}

fn bounded_sup(f: &SeminormSpec, all: &[Elem], x: &Elem) -> Result<Magnitude> {
    let mut best = Magnitude::zero();
    for y in all {
        let fy = f.eval(y)?;
        // the ratio counts as zero where f(y) = 0
        if fy.is_zero() {
            continue;
        }
        best = best.max(&f.eval(&x.mul(y)?)?.div(&fy)?)?;
    }
    Ok(best)
}

/// `sup_y f(xy)/f(y)`.
///
/// Exhaustive over finite carriers after checking every hypothesis; for
/// multiplicative `f` on any carrier the value is `f(x)`. Other infinite
/// carriers are rejected since the supremum is not finitely computable.
pub fn seminorm_from_bounded(f: &SeminormSpec, x: &Elem) -> Result<Magnitude> {
    if f.is_known_multiplicative() {
        return f.eval(x);
    }
    let all = f.carrier().enumerate().ok_or_else(|| {
        Error::domain(format!(
            "sup over the infinite carrier of {f} is only available for multiplicative seminorms"
        ))
    })?;
    check_bounded_hypotheses(f, &all)?;
    if !f.carrier().admits(x) {
        return Err(Error::input(format!("{x} is not in the carrier of {f}")));
    }
    bounded_sup(f, &all, x)
}

/// The bounded construction applied to every residue of a table seminorm.
pub fn seminorm_from_bounded_table(f: &SeminormSpec) -> Result<SeminormSpec> {
    let all = f
        .carrier()
        .enumerate()
        .ok_or_else(|| Error::input(format!("{f} is not defined on a finite ring")))?;
    check_bounded_hypotheses(f, &all)?;
    let values = all
        .iter()
        .map(|x| bounded_sup(f, &all, x))
        .collect::<Result<Vec<_>>>()?;
    SeminormSpec::table(values)
}

fn check_unit_bound(f: &SeminormSpec, carrier: &Carrier) -> Result<()> {
    let f1 = f.eval(&carrier.one())?;
    if !f1.le(&Magnitude::one())? {
        return Err(precondition("f(1) <= 1", format!("f(1) = {f1}")));
    }
    Ok(())
}

fn root(m: &Magnitude, n: u64) -> Result<Magnitude> {
    m.pow(&Rational::new(1.into(), n.into()))
}

/// `f(x^n)^{1/n}`.
pub fn smoothing_term(f: &SeminormSpec, x: &Elem, n: u64) -> Result<Magnitude> {
    if n == 0 {
        return Err(Error::input("smoothing index must be positive"));
    }
    let fx = f.eval(&x.pow(n)?)?;
    if fx.is_zero() {
        return Ok(fx);
    }
    root(&fx, n)
}

/// Evaluates smoothing terms at `n = 1, 2, 4, …` up to `max_n`.
///
/// The bracket's upper end is the smallest term seen. Its lower end is the
/// ratio `t_{2n}^2 / t_n` of the last two terms, which is exact for sequences of
/// the form `L · C^{1/n}`; a stabilized sequence collapses the bracket.
pub fn smoothing_estimate(
    f: &SeminormSpec,
    x: &Elem,
    max_n: u64,
    window: usize,
) -> Result<LimitEstimate> {
    if max_n == 0 {
        return Err(Error::input("max_n must be positive"));
    }
    let mut terms = Vec::new();
    let mut power = x.clone();
    let mut n = 1u64;
    loop {
        let v = f.eval(&power)?;
        terms.push(if v.is_zero() { v } else { root(&v, n)? });
        match n.checked_mul(2) {
            Some(next) if next <= max_n => {
                power = power.mul(&power)?;
                n = next;
            }
            _ => break,
        }
    }
    let infimum = terms
        .iter()
        .try_fold(terms[0].clone(), |acc, t| acc.min(t))?;
    let stabilized = LimitEstimate::window_equal(&terms, window);
    let last = terms.last().expect("at least one term").clone();
    let float_bracket = if stabilized {
        (last.to_f64(), last.to_f64())
    } else {
        let high = infimum.to_f64();
        let low = match terms.len().checked_sub(2).map(|i| &terms[i]) {
            Some(prev) if !prev.is_zero() => last.pow_int(2)?.div(prev)?.to_f64().clamp(0.0, high),
            _ => 0.0,
        };
        (low, high)
    };
    Ok(LimitEstimate {
        terms_evaluated: terms.len(),
        last_term: last,
        infimum,
        stabilized,
        float_bracket,
    })
}

/// Samples power-multiplicativity of `f` at the given elements.
fn check_pow_mul_samples(f: &SeminormSpec, xs: &[&Elem]) -> Result<()> {
    for x in xs {
        let fx = f.eval(x)?;
        for n in [2u64, 3] {
            let lhs = f.eval(&x.pow(n)?)?;
            let rhs = fx.pow_int(n as i64).unwrap_or_else(|_| Magnitude::zero());
            if lhs != rhs {
                return Err(precondition(
                    "f power-multiplicative",
                    format!("x = {x}, n = {n}: f(x^n) = {lhs}, f(x)^n = {rhs}"),
                ));
            }
        }
    }
    Ok(())
}

/// `f(x y^n) / f(y)^n`.
pub fn seminorm_from_const_term(f: &SeminormSpec, y: &Elem, x: &Elem, n: u64) -> Result<Magnitude> {
    if n == 0 {
        return Err(Error::input("sequence index must be positive"));
    }
    let fy = f.eval(y)?;
    if fy.is_zero() {
        return Err(Error::domain(format!("f(y) = 0 at y = {y}")));
    }
    check_pow_mul_samples(f, &[x, y])?;
    f.eval(&x.mul(&y.pow(n)?)?)?.div(&fy.pow_int(n as i64)?)
}

/// Terms `n = 1..=max_n` of the constant-sequence construction, asserting
/// that the sequence is antitone at every step.
pub fn seminorm_from_const_estimate(
    f: &SeminormSpec,
    y: &Elem,
    x: &Elem,
    max_n: u64,
    window: usize,
) -> Result<LimitEstimate> {
    if max_n == 0 {
        return Err(Error::input("max_n must be positive"));
    }
    let fy = f.eval(y)?;
    if fy.is_zero() {
        return Err(Error::domain(format!("f(y) = 0 at y = {y}")));
    }
    check_unit_bound(f, &f.carrier())?;
    check_pow_mul_samples(f, &[x, y])?;
    let mut terms: Vec<Magnitude> = Vec::with_capacity(max_n as usize);
    let mut xy = x.clone();
    let mut fy_n = Magnitude::one();
    for n in 1..=max_n {
        xy = xy.mul(y)?;
        fy_n = fy_n.mul(&fy);
        let t = f.eval(&xy)?.div(&fy_n)?;
        if let Some(prev) = terms.last() {
            if !t.le(prev)? {
                return Err(precondition(
                    "sequence antitone",
                    format!("term {n} = {t} exceeds term {} = {prev}", n - 1),
                ));
            }
        }
        terms.push(t);
    }
    let last = terms.last().expect("max_n >= 1").clone();
    let stabilized = LimitEstimate::window_equal(&terms, window);
    let high = last.to_f64();
    let low = if stabilized { high } else { 0.0 };
    Ok(LimitEstimate {
        terms_evaluated: terms.len(),
        infimum: last.clone(),
        last_term: last,
        stabilized,
        float_bracket: (low, high),
    })
}
