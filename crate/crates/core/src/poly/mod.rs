//! Dense univariate polynomials over the rationals and their spectral value.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::magnitude::{
    ensure_prime, format_rational, int, padic_unchecked, parse_rational_at, Magnitude, Rational,
};

mod irreducible;
mod newton;

pub use irreducible::{
    eisenstein_check, irreducible_mod_p, irreducible_mod_p_rabin, IrredCertificate,
};
pub use newton::{newton_polygon, root_magnitudes, NewtonPolygon, Segment};

/// Polynomial with rational coefficients stored low degree first.
///
/// The coefficient vector never ends in a zero; the zero polynomial is empty.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|c| int(*c)).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Poly::new(vec![c])
    }

    /// `X - r`
    pub fn linear_root(r: &Rational) -> Self {
        Poly::new(vec![-r, Rational::one()])
    }

    /// `c X^k`
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.push(c);
        Poly::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Divides through by the leading coefficient. The zero polynomial is returned unchanged.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * int(i as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// `P(X + shift)`, by Horner's scheme on polynomials.
    pub fn shift(&self, shift: &Rational) -> Poly {
        let lin = Poly::new(vec![shift.clone(), Rational::one()]);
        self.coeffs
            .iter()
            .rev()
            .fold(Poly::zero(), |acc, c| &(&acc * &lin) + &Poly::constant(c.clone()))
    }

    /// Euclidean division: `self = q * d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &Poly) -> Result<(Poly, Poly)> {
        let dd = d
            .degree()
            .ok_or_else(|| Error::domain("polynomial division by zero"))?;
        let lc_inv = d.coeffs[dd].recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &lc_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[k + j] -= &c * dc;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Poly::new(quot), Poly::new(rem)))
    }

    pub fn rem(&self, d: &Poly) -> Result<Poly> {
        Ok(self.div_rem(d)?.1)
    }

    /// Monic gcd by the Euclidean algorithm, normalizing each remainder to be
    /// monic to keep coefficient growth in check. `gcd(0, 0) = 0`.
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        let mut a = a.monic();
        let mut b = b.monic();
        while !b.is_zero() {
            let r = a.rem(&b).expect("b is nonzero").monic();
            a = b;
            b = r;
        }
        a
    }

    /// Extended Euclid: returns `(g, s, t)` with `s*a + t*b = g` and `g` monic.
    pub fn ext_gcd(a: &Poly, b: &Poly) -> (Poly, Poly, Poly) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (Poly::one(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1).expect("r1 is nonzero");
            let s = &s0 - &(&q * &s1);
            let t = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.leading().cloned() {
            None => (r0, s0, t0),
            Some(lc) => {
                let inv = lc.recip();
                (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
            }
        }
    }

    /// `P / gcd(P, P')`, made monic: the same roots, each with multiplicity one.
    pub fn squarefree_part(&self) -> Result<Poly> {
        if self.is_zero() {
            return Err(Error::domain("squarefree part of the zero polynomial"));
        }
        let g = Poly::gcd(self, &self.derivative());
        Ok(self.div_rem(&g)?.0.monic())
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

/// Comma-separated coefficient text, low degree first: `5,-7,1` is `X^2 - 7X + 5`.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.coeffs.iter().map(format_rational).collect();
        f.write_str(&parts.join(","))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{self}]")
    }
}

impl std::str::FromStr for Poly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_polynomial(s)
    }
}

/// Parses comma-separated rationals, low degree first. Trailing zeros are stripped.
pub fn parse_polynomial(text: &str) -> Result<Poly> {
    if text.trim().is_empty() {
        return Err(Error::Parse {
            position: 0,
            message: "empty polynomial".into(),
        });
    }
    let mut coeffs = Vec::new();
    let mut offset = 0;
    for piece in text.split(',') {
        coeffs.push(parse_rational_at(piece, offset)?);
        offset += piece.len() + 1;
    }
    Ok(Poly::new(coeffs))
}

/// The `n`-th term of the spectral value: `|a_n|_p^{1/(deg P - n)}` for
/// `n < deg P`, `ZERO` otherwise.
pub fn spectral_value_terms(poly: &Poly, p: u64, n: usize) -> Result<Magnitude> {
    ensure_prime(p)?;
    Ok(term_unchecked(poly, p, n))
}

fn term_unchecked(poly: &Poly, p: u64, n: usize) -> Magnitude {
    match poly.degree() {
        Some(m) if n < m => padic_unchecked(&poly.coeff(n), p)
            .pow(&Rational::new(1.into(), ((m - n) as i64).into()))
            .expect("exponent is positive"),
        _ => Magnitude::zero(),
    }
}

/// Spectral value `max_{i < deg P} |a_i|^{1/(deg P - i)}`; constants give `ZERO`.
///
/// Non-monic input is evaluated by the same formula, but the value is only
/// meaningful for monic polynomials.
pub fn spectral_value(poly: &Poly, p: u64) -> Result<Magnitude> {
    ensure_prime(p)?;
    let m = poly
        .degree()
        .ok_or_else(|| Error::domain("spectral value of the zero polynomial"))?;
    let mut best = Magnitude::zero();
    for n in 0..m {
        best = best.max(&term_unchecked(poly, p, n))?;
    }
    Ok(best)
}
