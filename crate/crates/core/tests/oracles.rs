//! Independent cross-checks: determinant-based characteristic polynomials,
//! counts of irreducible polynomials over F_p, and Newton polygons of
//! products with known roots.

mod common;

use common::*;
use normext::magnitude::{int, rat};
use normext::poly::irreducible_mod_p_rabin;
use normext::{
    eisenstein_check, irreducible_mod_p, newton_polygon, padic_magnitude, root_magnitudes, spectral_value,
    ExtensionField, IrredCertificate, Magnitude, Poly, Rational,
};
use num_traits::Zero;
use rand::Rng;

/// Fraction-free (Bareiss) determinant.
fn bareiss_det(mut a: Vec<Vec<Rational>>) -> Rational {
    let n = a.len();
    let mut sign = int(1);
    let mut prev = int(1);
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return int(0),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// `det(tI - M)` sampled at `t = 0..=n` and interpolated.
fn char_poly_by_interpolation(m: &[Vec<Rational>]) -> Poly {
    let n = m.len();
    let points: Vec<(Rational, Rational)> = (0..=n as i64)
        .map(|t| {
            let t = int(t);
            let shifted = m
                .iter()
                .enumerate()
                .map(|(i, row)| {
                    row.iter()
                        .enumerate()
                        .map(|(j, v)| if i == j { &t - v } else { -v.clone() })
                        .collect()
                })
                .collect();
            (t, bareiss_det(shifted))
        })
        .collect();
    let mut out = Poly::zero();
    for (i, (xi, yi)) in points.iter().enumerate() {
        let mut basis = Poly::constant(yi.clone());
        for (j, (xj, _)) in points.iter().enumerate() {
            if i != j {
                basis = &basis * &Poly::linear_root(xj);
                basis = basis.scale(&(int(1) / (xi - xj)));
            }
        }
        out = &out + &basis;
    }
    out
}

#[test]
fn char_poly_matches_determinant_oracle() {
    let mut rng = seeded(11);
    let quintic = ExtensionField::new(
        3,
        Poly::from_ints(&[3, 0, 6, 0, 0, 1]),
        IrredCertificate::Eisenstein,
    )
    .unwrap();
    let mut exts = certified_extensions();
    exts.push(quintic);
    for ext in &exts {
        for _ in 0..25 {
            let x = random_element(&mut rng, ext);
            let expected = char_poly_by_interpolation(&x.multiplication_matrix());
            assert_eq!(x.char_poly(), expected, "x = {x:?}");
            assert_eq!(x.char_poly().degree(), Some(ext.degree()));
        }
    }
}

#[test]
fn bareiss_small_cases() {
    let m = vec![vec![int(2), int(1)], vec![int(7), int(4)]];
    assert_eq!(bareiss_det(m), int(1));
    let m = vec![vec![int(0), int(1)], vec![int(1), int(0)]];
    assert_eq!(bareiss_det(m), int(-1));
    let m = vec![
        vec![rat(1, 2), int(0), int(3)],
        vec![int(1), int(1), int(1)],
        vec![int(2), int(2), int(2)],
    ];
    assert_eq!(bareiss_det(m), int(0));
}

fn mobius(n: u32) -> i64 {
    let (mut n, mut k, mut out) = (n, 2, 1);
    while k * k <= n {
        if n % k == 0 {
            n /= k;
            if n % k == 0 {
                return 0;
            }
            out = -out;
        }
        k += 1;
    }
    if n > 1 {
        out = -out;
    }
    out
}

/// Number of monic irreducible polynomials of degree `n` over `F_p`.
fn necklace_count(p: u64, n: u32) -> u64 {
    let total: i64 = (1..=n)
        .filter(|d| n.is_multiple_of(*d))
        .map(|d| mobius(n / d) * (p as i64).pow(d))
        .sum();
    (total / n as i64) as u64
}

fn all_monic(p: u64, n: u32) -> impl Iterator<Item = Poly> {
    (0..p.pow(n)).map(move |mut k| {
        let mut c = Vec::with_capacity(n as usize + 1);
        for _ in 0..n {
            c.push((k % p) as i64);
            k /= p;
        }
        c.push(1);
        Poly::from_ints(&c)
    })
}

#[test]
fn irreducible_counts_match_necklace_formula() {
    for (p, max_deg) in [(2u64, 8u32), (3, 5), (5, 3), (7, 3)] {
        for n in 1..=max_deg {
            let (mut exhaustive, mut rabin) = (0, 0);
            for f in all_monic(p, n) {
                let a = irreducible_mod_p(&f, p).unwrap();
                let b = irreducible_mod_p_rabin(&f, p).unwrap();
                assert_eq!(a, b, "{f:?} mod {p}");
                exhaustive += a as u64;
                rabin += b as u64;
            }
            assert_eq!(exhaustive, necklace_count(p, n), "p = {p}, n = {n}");
            assert_eq!(rabin, exhaustive);
        }
    }
}

#[test]
fn rabin_agrees_on_random_envelope_polys() {
    let mut rng = seeded(5);
    for _ in 0..60 {
        let p = *[11u64, 101, 997].get(rng.gen_range(0..3)).unwrap();
        let n = rng.gen_range(2..=8);
        let mut c: Vec<i64> = (0..n).map(|_| rng.gen_range(0..p as i64)).collect();
        c.push(1);
        let f = Poly::from_ints(&c);
        assert_eq!(irreducible_mod_p(&f, p).unwrap(), irreducible_mod_p_rabin(&f, p).unwrap());
    }
    // X^2 + 1 splits mod 5 and is irreducible mod 7.
    assert!(!irreducible_mod_p(&Poly::from_ints(&[1, 0, 1]), 5).unwrap());
    assert!(irreducible_mod_p(&Poly::from_ints(&[1, 0, 1]), 7).unwrap());
}

#[test]
fn eisenstein_shift_certifies_cyclotomic() {
    let f = Poly::from_ints(&[1, 1, 1, 1, 1]);
    assert!(!eisenstein_check(&f, 5, None).unwrap());
    assert!(eisenstein_check(&f, 5, Some(&int(1))).unwrap());
}

#[test]
fn newton_polygon_oracle_on_products() {
    let mut rng = seeded(3);
    for _ in 0..100 {
        let p = PRIMES[rng.gen_range(0..4)];
        let deg = rng.gen_range(1..=6);
        let mut roots: Vec<Rational> = (0..deg).map(|_| random_rational(&mut rng, 500, 500)).collect();
        if rng.gen_bool(0.2) {
            roots[0] = int(0);
        }
        let poly = roots.iter().fold(Poly::one(), |acc, r| &acc * &Poly::linear_root(r));
        let mut expected: Vec<Magnitude> = roots.iter().map(|r| padic_magnitude(r, p).unwrap()).collect();
        let mut got = root_magnitudes(&poly, p).unwrap();
        let key = |m: &Magnitude| if m.is_zero() { f64::NEG_INFINITY } else { m.ln() };
        expected.sort_by(|a, b| key(a).partial_cmp(&key(b)).unwrap());
        got.sort_by(|a, b| key(a).partial_cmp(&key(b)).unwrap());
        assert_eq!(got, expected, "roots {roots:?}, p = {p}");
        let top = Magnitude::max_of(expected.iter()).unwrap();
        assert_eq!(spectral_value(&poly, p).unwrap(), top);
        let np = newton_polygon(&poly, p).unwrap();
        let zeros = roots.iter().filter(|r| r.is_zero()).count();
        assert_eq!(np.zero_roots, zeros);
        assert_eq!(np.segments.iter().map(|s| s.length).sum::<usize>() + zeros, deg);
    }
}
