#![allow(dead_code)]

use std::sync::Arc;

use normext::magnitude::{int, rat};
use normext::{ExtensionExt, ExtensionField, FieldElement, IrredCertificate, Magnitude, Poly, Rational};
use proptest::prelude::*;
use rand::Rng;

pub const PRIMES: [u64; 4] = [2, 3, 5, 7];

pub fn sqrt5() -> Arc<ExtensionField> {
    ExtensionField::new(5, Poly::from_ints(&[-5, 0, 1]), IrredCertificate::Eisenstein).unwrap()
}

pub fn cbrt5() -> Arc<ExtensionField> {
    ExtensionField::new(5, Poly::from_ints(&[-5, 0, 0, 1]), IrredCertificate::Eisenstein).unwrap()
}

pub fn cyclotomic5() -> Arc<ExtensionField> {
    ExtensionField::new(
        5,
        Poly::from_ints(&[1, 1, 1, 1, 1]),
        IrredCertificate::EisensteinShift { shift: int(1) },
    )
    .unwrap()
}

pub fn certified_extensions() -> Vec<Arc<ExtensionField>> {
    vec![sqrt5(), cbrt5(), cyclotomic5()]
}

pub fn pp(p: u64, n: i64, d: i64) -> Magnitude {
    Magnitude::prime_power(p, rat(n, d)).unwrap()
}

pub fn rational() -> impl Strategy<Value = Rational> {
    (-1_000_000i64..=1_000_000, 1i64..=1_000_000).prop_map(|(n, d)| rat(n, d))
}

pub fn nonzero_rational() -> impl Strategy<Value = Rational> {
    rational().prop_filter("nonzero", |q| *q != int(0))
}

pub fn small_rational() -> impl Strategy<Value = Rational> {
    (-60i64..=60, 1i64..=30).prop_map(|(n, d)| rat(n, d))
}

pub fn prime() -> impl Strategy<Value = u64> {
    prop::sample::select(PRIMES.to_vec())
}

pub fn nonzero_magnitude() -> impl Strategy<Value = Magnitude> {
    prop::collection::btree_map(prime(), (-12i64..=12, 1i64..=6).prop_map(|(n, d)| rat(n, d)), 0..4)
        .prop_map(|m| Magnitude::from_factors(m).unwrap())
}

pub fn magnitude() -> impl Strategy<Value = Magnitude> {
    prop_oneof![1 => Just(Magnitude::zero()), 9 => nonzero_magnitude()]
}

pub fn element_of(ext: Arc<ExtensionField>) -> impl Strategy<Value = FieldElement> {
    let n = ext.degree();
    prop::collection::vec(small_rational(), n).prop_map(move |c| ext.element(c).unwrap())
}

/// Random rational with numerator in `[-num, num]` and denominator in `[1, den]`.
pub fn random_rational<R: Rng>(rng: &mut R, num: i64, den: i64) -> Rational {
    rat(rng.gen_range(-num..=num), rng.gen_range(1..=den))
}

pub fn random_element<R: Rng>(rng: &mut R, ext: &Arc<ExtensionField>) -> FieldElement {
    let coords = (0..ext.degree()).map(|_| random_rational(rng, 60, 30)).collect();
    ext.element(coords).unwrap()
}

pub fn random_nonzero_element<R: Rng>(rng: &mut R, ext: &Arc<ExtensionField>) -> FieldElement {
    loop {
        let x = random_element(rng, ext);
        if !x.is_zero() {
            return x;
        }
    }
}

pub fn seeded(seed: u64) -> rand_chacha::ChaCha8Rng {
    use rand::SeedableRng;
    rand_chacha::ChaCha8Rng::seed_from_u64(seed)
}
