//! Certificates that a rational polynomial stays irreducible over `Q_p`.
//!
//! Irreducibility over the p-adic field is never decided here, only certified:
//! Eisenstein (optionally after a shift `X -> X + a`), or irreducibility of the
//! reduction mod p for a monic p-integral polynomial. Anything else has to be
//! asserted by the caller.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::Poly;
use crate::error::{Error, Result};
use crate::magnitude::{ensure_prime, format_rational, int, vp_unchecked, Rational, ValExp};
use crate::serde_util::rational_str;

const MAX_MOD_P_DEGREE: usize = 8;
const MAX_MOD_P_PRIME: u64 = 997;
/// Above this many candidate divisors the exhaustive search hands over to Rabin's test.
const EXHAUSTIVE_BUDGET: u64 = 2_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum IrredCertificate {
    Eisenstein,
    EisensteinShift {
        #[serde(with = "rational_str")]
        shift: Rational,
    },
    #[serde(rename = "mod_p")]
    ModPIrreducible,
    /// Irreducibility taken on trust; the note is echoed in outputs.
    Asserted { note: String },
}

impl IrredCertificate {
    /// Checks the certificate against `(f, p)`.
    pub fn validate(&self, f: &Poly, p: u64) -> Result<()> {
        let fail = |why: String| Err(Error::Certificate(why));
        match self {
            IrredCertificate::Eisenstein => {
                if !eisenstein_check(f, p, None)? {
                    return fail(format!("{f} is not Eisenstein at p = {p}"));
                }
            }
            IrredCertificate::EisensteinShift { shift } => {
                if !eisenstein_check(f, p, Some(shift))? {
                    return fail(format!(
                        "{f} shifted by {} is not Eisenstein at p = {p}",
                        format_rational(shift)
                    ));
                }
            }
            IrredCertificate::ModPIrreducible => {
                if !irreducible_mod_p(f, p)? {
                    return fail(format!("{f} is reducible mod {p}"));
                }
            }
            IrredCertificate::Asserted { .. } => {}
        }
        Ok(())
    }
}

/// Eisenstein's criterion at `p` for `P(X + shift)` (or `P` itself).
pub fn eisenstein_check(poly: &Poly, p: u64, shift: Option<&Rational>) -> Result<bool> {
    ensure_prime(p)?;
    let m = match poly.degree() {
        Some(m) if m >= 1 && poly.is_monic() => m,
        _ => {
            return Err(Error::domain(format!(
                "Eisenstein check needs a monic polynomial of degree >= 1, got {poly}"
            )))
        }
    };
    let shifted;
    let target = match shift {
        Some(a) => {
            shifted = poly.shift(a);
            &shifted
        }
        None => poly,
    };
    let one = ValExp::Finite(int(1));
    let lower_divisible = (0..m).all(|i| vp_unchecked(&target.coeff(i), p) >= one);
    Ok(lower_divisible && vp_unchecked(&target.coeff(0), p) == one)
}

fn reduce_mod_p(poly: &Poly, p: u64) -> Result<Vec<u64>> {
    let bp = BigInt::from(p);
    poly.coeffs()
        .iter()
        .map(|c| {
            let den = c.denom().mod_floor(&bp);
            if den.is_zero() {
                return Err(Error::domain(format!(
                    "coefficient {} is not {p}-integral",
                    format_rational(c)
                )));
            }
            let num = c.numer().mod_floor(&bp).to_u64().expect("residue < p");
            let den = den.to_u64().expect("residue < p");
            Ok(num * inv_mod(den, p) % p)
        })
        .collect()
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    acc
}

fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn fp_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let b = trim(b.to_vec());
    let db = b.len() - 1;
    let lc_inv = inv_mod(b[db], p);
    let mut r = trim(a.to_vec());
    while r.len() > db {
        let k = r.len() - 1 - db;
        let c = r[r.len() - 1] * lc_inv % p;
        for (j, bc) in b.iter().enumerate() {
            r[k + j] = (r[k + j] + p - c * bc % p) % p;
        }
        r = trim(r);
    }
    r
}

fn fp_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(out)
}

fn fp_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !b.is_empty() {
        let r = fp_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// `base^(p^k) mod f`
fn frobenius_power(base: &[u64], k: usize, f: &[u64], p: u64) -> Vec<u64> {
    let mut cur = fp_rem(base, f, p);
    for _ in 0..k {
        // raise to the p-th power by square-and-multiply
        let mut acc = vec![1u64];
        let mut sq = cur.clone();
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                acc = fp_rem(&fp_mul(&acc, &sq, p), f, p);
            }
            sq = fp_rem(&fp_mul(&sq, &sq, p), f, p);
            e >>= 1;
        }
        cur = acc;
    }
    cur
}

fn envelope(poly: &Poly, p: u64) -> Result<(Vec<u64>, usize)> {
    ensure_prime(p)?;
    let m = match poly.degree() {
        Some(m) if m >= 1 && poly.is_monic() => m,
        _ => return Err(Error::domain(format!("{poly} must be monic of degree >= 1"))),
    };
    if m > MAX_MOD_P_DEGREE || p > MAX_MOD_P_PRIME {
        return Err(Error::domain(format!(
            "mod-p irreducibility is limited to degree <= {MAX_MOD_P_DEGREE} and p <= {MAX_MOD_P_PRIME}"
        )));
    }
    Ok((reduce_mod_p(poly, p)?, m))
}

/// Irreducibility of the reduction mod `p` of a monic p-integral polynomial.
///
/// Searches every monic divisor candidate of degree `1..=deg/2` when there are
/// at most two million of them, otherwise runs Rabin's test.
pub fn irreducible_mod_p(poly: &Poly, p: u64) -> Result<bool> {
    let (f, m) = envelope(poly, p)?;
    let candidates: u64 = (1..=m / 2).map(|d| p.pow(d as u32)).sum();
    if candidates <= EXHAUSTIVE_BUDGET {
        Ok(exhaustive(&f, m, p))
    } else {
        Ok(rabin(&f, m, p))
    }
}

/// Rabin's irreducibility test on the reduction mod `p`, same envelope as
/// [`irreducible_mod_p`].
pub fn irreducible_mod_p_rabin(poly: &Poly, p: u64) -> Result<bool> {
    let (f, m) = envelope(poly, p)?;
    Ok(rabin(&f, m, p))
}

fn exhaustive(f: &[u64], m: usize, p: u64) -> bool {
    for d in 1..=m / 2 {
        let mut cand = vec![0u64; d + 1];
        cand[d] = 1;
        loop {
            if fp_rem(f, &cand, p).is_empty() {
                return false;
            }
            // odometer over the d lower coefficients
            let mut i = 0;
            while i < d {
                cand[i] += 1;
                if cand[i] < p {
                    break;
                }
                cand[i] = 0;
                i += 1;
            }
            if i == d {
                break;
            }
        }
    }
    true
}

fn rabin(f: &[u64], m: usize, p: u64) -> bool {
    let x = vec![0, 1];
    if fp_rem(&frobenius_power(&x, m, f, p), f, p) != fp_rem(&x, f, p) {
        return false;
    }
    let mut n = m;
    let mut q = 2;
    let mut prime_divisors = Vec::new();
    while n > 1 {
        if n.is_multiple_of(q) {
            prime_divisors.push(q);
            while n.is_multiple_of(q) {
                n /= q;
            }
        }
        q += 1;
    }
    prime_divisors.into_iter().all(|q| {
        let h = frobenius_power(&x, m / q, f, p);
        // h - X
        let mut diff = h;
        diff.resize(diff.len().max(2), 0);
        diff[1] = (diff[1] + p - 1) % p;
        fp_gcd(&diff, f, p).len() == 1
    })
}
