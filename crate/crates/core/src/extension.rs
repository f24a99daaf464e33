//! Finite extensions `L = Q[X]/(f)` seen inside an algebraic closure of `Q_p`.
//!
//! The modulus carries a certificate that it stays irreducible over `Q_p`, so
//! the characteristic polynomial of multiplication by `x` is a power of the
//! `Q_p`-minimal polynomial of `x` and its squarefree part recovers that
//! minimal polynomial with rational coefficients.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::magnitude::{ensure_prime, format_rational, padic_unchecked, Magnitude, Rational};
use crate::poly::{spectral_value, IrredCertificate, Poly};
use crate::serde_util::poly_str;

/// JSON form of an extension: `{"p": 5, "modulus": "-5,0,1", "certificate": {...}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionDescriptor {
    pub p: u64,
    #[serde(with = "poly_str")]
    pub modulus: Poly,
    pub certificate: IrredCertificate,
}

/// `Q[X]/(f)` with its power basis `1, α, …, α^{n-1}` and cached structure
/// constants `e_i e_j = Σ_k c[i][j][k] e_k`.
#[derive(Debug, PartialEq, Eq)]
pub struct ExtensionField {
    p: u64,
    modulus: Poly,
    certificate: IrredCertificate,
    structure: Vec<Vec<Vec<Rational>>>,
}

impl ExtensionField {
    /// Validates the certificate and precomputes structure constants.
    pub fn new(p: u64, modulus: Poly, certificate: IrredCertificate) -> Result<Arc<Self>> {
        ensure_prime(p)?;
        let n = match modulus.degree() {
            Some(n) if n >= 1 && modulus.is_monic() => n,
            _ => {
                return Err(Error::input(format!(
                    "modulus {modulus} must be monic of degree >= 1"
                )))
            }
        };
        certificate.validate(&modulus, p)?;
        let mut structure = vec![vec![vec![Rational::zero(); n]; n]; n];
        for i in 0..n {
            for j in i..n {
                let r = Poly::monomial(Rational::one(), i + j).rem(&modulus)?;
                for k in 0..n {
                    structure[i][j][k] = r.coeff(k);
                    structure[j][i][k] = r.coeff(k);
                }
            }
        }
        Ok(Arc::new(ExtensionField {
            p,
            modulus,
            certificate,
            structure,
        }))
    }

    pub fn from_descriptor(d: &ExtensionDescriptor) -> Result<Arc<Self>> {
        Self::new(d.p, d.modulus.clone(), d.certificate.clone())
    }

    pub fn descriptor(&self) -> ExtensionDescriptor {
        ExtensionDescriptor {
            p: self.p,
            modulus: self.modulus.clone(),
            certificate: self.certificate.clone(),
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    pub fn certificate(&self) -> &IrredCertificate {
        &self.certificate
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree().expect("modulus has degree >= 1")
    }

    /// `c[i][j][k]` with `α^i α^j = Σ_k c[i][j][k] α^k`.
    pub fn structure_constants(&self) -> &[Vec<Vec<Rational>>] {
        &self.structure
    }

    /// Bound `c = max(1, max |c_ijk|_p)` with
    /// `‖xy‖ ≤ c ‖x‖ ‖y‖` for the power-basis norm.
    pub fn basis_norm_bound(&self) -> Result<Magnitude> {
        let mut c = Magnitude::one();
        for row in &self.structure {
            for col in row {
                for k in col {
                    c = c.max(&padic_unchecked(k, self.p))?;
                }
            }
        }
        Ok(c)
    }

    fn same(self: &Arc<Self>, other: &Arc<Self>) -> bool {
        Arc::ptr_eq(self, other) || **self == **other
    }
}

/// Element of an [`ExtensionField`], as coordinates in the power basis.
#[derive(Clone)]
pub struct FieldElement {
    parent: Arc<ExtensionField>,
    coords: Vec<Rational>,
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.parent.same(&other.parent) && self.coords == other.coords
    }
}

impl Eq for FieldElement {}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldElement[{self}]")
    }
}

/// Coordinates, comma-separated.
impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(format_rational).collect();
        f.write_str(&parts.join(","))
    }
}

/// Constructors live on `Arc<ExtensionField>` so elements can share the parent.
pub trait ExtensionExt {
    fn element(&self, coords: Vec<Rational>) -> Result<FieldElement>;
    fn element_from_poly(&self, poly: &Poly) -> Result<FieldElement>;
    fn embed(&self, q: Rational) -> FieldElement;
    fn generator(&self) -> FieldElement;
    fn zero(&self) -> FieldElement;
    fn one(&self) -> FieldElement;
}

impl ExtensionExt for Arc<ExtensionField> {
    /// Short coordinate vectors are padded with zeros; longer ones are rejected.
    fn element(&self, mut coords: Vec<Rational>) -> Result<FieldElement> {
        let n = self.degree();
        if coords.len() > n {
            return Err(Error::input(format!(
                "{} coordinates given for a degree-{n} extension",
                coords.len()
            )));
        }
        coords.resize(n, Rational::zero());
        Ok(FieldElement {
            parent: Arc::clone(self),
            coords,
        })
    }

    /// The class of `poly(α)`.
    fn element_from_poly(&self, poly: &Poly) -> Result<FieldElement> {
        let r = poly.rem(&self.modulus)?;
        self.element(r.into_coeffs())
    }

    fn embed(&self, q: Rational) -> FieldElement {
        self.element(vec![q]).expect("degree >= 1")
    }

    fn generator(&self) -> FieldElement {
        self.element_from_poly(&Poly::monomial(Rational::one(), 1))
            .expect("modulus is nonzero")
    }

    fn zero(&self) -> FieldElement {
        self.element(Vec::new()).expect("empty coordinates")
    }

    fn one(&self) -> FieldElement {
        self.embed(Rational::one())
    }
}

impl FieldElement {
    pub fn parent(&self) -> &Arc<ExtensionField> {
        &self.parent
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// `Some(q)` when the element lies in the base field.
    pub fn as_rational(&self) -> Option<Rational> {
        self.coords[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| self.coords[0].clone())
    }

    /// Representative polynomial of degree `< n`.
    pub fn to_poly(&self) -> Poly {
        Poly::new(self.coords.clone())
    }

    fn check_parent(&self, other: &FieldElement) -> Result<()> {
        if self.parent.same(&other.parent) {
            Ok(())
        } else {
            Err(Error::input(format!(
                "elements belong to different extensions ({} vs {})",
                self.parent.modulus, other.parent.modulus
            )))
        }
    }

    fn with_coords(&self, coords: Vec<Rational>) -> FieldElement {
        FieldElement {
            parent: Arc::clone(&self.parent),
            coords,
        }
    }

    pub fn add(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check_parent(other)?;
        Ok(self.with_coords(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        ))
    }

    pub fn sub(&self, other: &FieldElement) -> Result<FieldElement> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> FieldElement {
        self.with_coords(self.coords.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, q: &Rational) -> FieldElement {
        self.with_coords(self.coords.iter().map(|a| a * q).collect())
    }

    /// Product through the cached structure constants.
    pub fn mul(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check_parent(other)?;
        let n = self.coords.len();
        let c = &self.parent.structure;
        let mut out = vec![Rational::zero(); n];
        for (i, xi) in self.coords.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in other.coords.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let xy = xi * yj;
                for (k, slot) in out.iter_mut().enumerate() {
                    if !c[i][j][k].is_zero() {
                        *slot += &xy * &c[i][j][k];
                    }
                }
            }
        }
        Ok(self.with_coords(out))
    }

    /// Inverse by the extended Euclidean algorithm on `(rep(x), f)`.
    pub fn inv(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::domain("inverse of zero"));
        }
        let (g, s, _) = Poly::ext_gcd(&self.to_poly(), &self.parent.modulus);
        if g.degree() != Some(0) {
            return Err(Error::domain(format!(
                "{self} shares the factor {g} with the modulus"
            )));
        }
        self.parent.element_from_poly(&s)
    }

    /// Integer power; negative exponents go through [`FieldElement::inv`].
    pub fn pow(&self, n: i64) -> Result<FieldElement> {
        let mut base = if n < 0 { self.inv()? } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = self.parent.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Matrix of `y ↦ x y` in the power basis; column `j` holds `x α^j`.
    pub fn multiplication_matrix(&self) -> Vec<Vec<Rational>> {
        let n = self.coords.len();
        let c = &self.parent.structure;
        let mut m = vec![vec![Rational::zero(); n]; n];
        for (i, xi) in self.coords.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, cij) in c[i].iter().enumerate() {
                for (k, cijk) in cij.iter().enumerate() {
                    if !cijk.is_zero() {
                        m[k][j] += xi * cijk;
                    }
                }
            }
        }
        m
    }

    /// Characteristic polynomial of the multiplication map, by Berkowitz's
    /// division-free recurrence over the leading principal submatrices.
    pub fn char_poly(&self) -> Poly {
        berkowitz(&self.multiplication_matrix())
    }

    /// Minimal polynomial over `Q_p`: the squarefree part of the characteristic polynomial.
    pub fn min_poly(&self) -> Poly {
        self.char_poly()
            .squarefree_part()
            .expect("characteristic polynomial is monic")
    }

    /// Spectral norm: the spectral value of the minimal polynomial.
    pub fn spectral_norm(&self) -> Result<Magnitude> {
        spectral_value(&self.min_poly(), self.parent.p)
    }

    /// `|a_0|_p^{1/m}` for the minimal polynomial `X^m + … + a_0`. All conjugates
    /// share one absolute value, so this must agree with the spectral norm.
    pub fn norm_const_coeff_oracle(&self) -> Result<Magnitude> {
        if self.is_zero() {
            return Err(Error::domain("constant-coefficient oracle at zero"));
        }
        let mp = self.min_poly();
        let m = mp.degree().expect("nonzero") as i64;
        padic_unchecked(&mp.coeff(0), self.parent.p).pow(&Rational::new(1.into(), m.into()))
    }

    /// `max_i |a_i|_p` over power-basis coordinates.
    pub fn basis_norm(&self) -> Result<Magnitude> {
        let p = self.parent.p;
        Magnitude::max_of(
            self.coords
                .iter()
                .map(|c| padic_unchecked(c, p))
                .collect::<Vec<_>>()
                .iter(),
        )
    }

    /// `poly(x)` by Horner's scheme in the extension.
    pub fn eval_poly(&self, poly: &Poly) -> Result<FieldElement> {
        let mut acc = self.parent.zero();
        for c in poly.coeffs().iter().rev() {
            acc = acc.mul(self)?.add(&self.parent.embed(c.clone()))?;
        }
        Ok(acc)
    }
}

fn berkowitz(a: &[Vec<Rational>]) -> Poly {
    let n = a.len();
    // coefficients, highest degree first
    let mut q = vec![Rational::one()];
    for r in 0..n {
        let mut col = Vec::with_capacity(r + 2);
        col.push(Rational::one());
        col.push(-a[r][r].clone());
        // v = A_r^k C, starting from C = a[0..r][r]
        let mut v: Vec<Rational> = (0..r).map(|i| a[i][r].clone()).collect();
        for _ in 0..r {
            let rc: Rational = (0..r).map(|j| &a[r][j] * &v[j]).sum();
            col.push(-rc);
            v = (0..r)
                .map(|i| (0..r).map(|j| &a[i][j] * &v[j]).sum())
                .collect();
        }
        let next: Vec<Rational> = (0..r + 2)
            .map(|i| {
                (0..q.len())
                    .filter(|j| *j <= i)
                    .map(|j| &col[i - j] * &q[j])
                    .sum()
            })
            .collect();
        q = next;
    }
    q.reverse();
    Poly::new(q)
}

/// A `Q`-algebra automorphism determined by the image of the generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automorphism {
    gen_image: FieldElement,
}

impl Automorphism {
    /// Validates that `gen_image` is a root of the modulus.
    pub fn new(gen_image: FieldElement) -> Result<Self> {
        let f = gen_image.parent.modulus.clone();
        let value = gen_image.eval_poly(&f)?;
        if !value.is_zero() {
            return Err(Error::Certificate(format!(
                "generator image {gen_image} is not a root of {f}: f(image) = {value}"
            )));
        }
        Ok(Automorphism { gen_image })
    }

    pub fn identity(ext: &Arc<ExtensionField>) -> Self {
        Automorphism {
            gen_image: ext.generator(),
        }
    }

    pub fn gen_image(&self) -> &FieldElement {
        &self.gen_image
    }

    pub fn parent(&self) -> &Arc<ExtensionField> {
        &self.gen_image.parent
    }

    /// `σ(x)`: substitute the generator image into the representative of `x`.
    pub fn apply(&self, x: &FieldElement) -> Result<FieldElement> {
        self.gen_image.check_parent(x)?;
        self.gen_image.eval_poly(&x.to_poly())
    }
}

/// `max_σ norm(σ(x))` over an explicit, nonempty list of automorphisms.
pub fn alg_norm_of_galois<F>(norm: F, auts: &[Automorphism], x: &FieldElement) -> Result<Magnitude>
where
    F: Fn(&FieldElement) -> Result<Magnitude>,
{
    if auts.is_empty() {
        return Err(Error::input("automorphism list is empty"));
    }
    let mut best = Magnitude::zero();
    for sigma in auts {
        best = best.max(&norm(&sigma.apply(x)?)?)?;
    }
    Ok(best)
}

/// Parses comma-separated coordinates into an element of `ext`.
pub fn parse_element(ext: &Arc<ExtensionField>, text: &str) -> Result<FieldElement> {
    let poly = crate::poly::parse_polynomial(text)?;
    ext.element(poly.into_coeffs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::magnitude::{int, rat};

    fn sqrt5() -> Arc<ExtensionField> {
        ExtensionField::new(5, Poly::from_ints(&[-5, 0, 1]), IrredCertificate::Eisenstein).unwrap()
    }

    fn el(ext: &Arc<ExtensionField>, c: &[i64]) -> FieldElement {
        ext.element(c.iter().map(|v| int(*v)).collect()).unwrap()
    }

    fn pp(p: u64, n: i64, d: i64) -> Magnitude {
        Magnitude::prime_power(p, rat(n, d)).unwrap()
    }

    #[test]
    fn construction() {
        let k = sqrt5();
        assert_eq!(k.degree(), 2);
        assert!(matches!(
            ExtensionField::new(5, Poly::from_ints(&[-6, 0, 1]), IrredCertificate::Eisenstein),
            Err(Error::Certificate(_))
        ));
        assert!(matches!(
            ExtensionField::new(5, Poly::from_ints(&[5, -7, 1]), IrredCertificate::ModPIrreducible),
            Err(Error::Certificate(_))
        ));
        assert!(ExtensionField::new(6, Poly::from_ints(&[-5, 0, 1]), IrredCertificate::Eisenstein).is_err());
        let c = k.structure_constants();
        assert_eq!(c[1][1], vec![int(5), int(0)]);
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(c[i][j], c[j][i]);
            }
        }
    }

    #[test]
    fn arithmetic() {
        let k = sqrt5();
        let a = el(&k, &[1, 1]);
        let b = el(&k, &[1, -1]);
        assert_eq!(a.mul(&b).unwrap(), el(&k, &[-4]));
        let alpha = k.generator();
        assert_eq!(alpha.inv().unwrap(), k.element(vec![int(0), rat(1, 5)]).unwrap());
        assert!(matches!(k.zero().inv(), Err(Error::Domain(_))));
        let other = ExtensionField::new(5, Poly::from_ints(&[-5, 0, 0, 1]), IrredCertificate::Eisenstein).unwrap();
        assert!(matches!(alpha.mul(&other.generator()), Err(Error::Input(_))));
        assert_eq!(alpha.pow(2).unwrap(), el(&k, &[5]));
        assert_eq!(alpha.pow(-2).unwrap(), k.embed(rat(1, 5)));
        assert!(k.element(vec![int(1); 3]).is_err());
    }

    #[test]
    fn characteristic_and_minimal() {
        let k = sqrt5();
        assert_eq!(k.generator().char_poly(), Poly::from_ints(&[-5, 0, 1]));
        assert_eq!(el(&k, &[1, 1]).char_poly(), Poly::from_ints(&[-4, -2, 1]));
        assert_eq!(el(&k, &[2]).char_poly(), Poly::from_ints(&[4, -4, 1]));
        assert_eq!(el(&k, &[2]).min_poly(), Poly::from_ints(&[-2, 1]));
        assert_eq!(el(&k, &[1, 1]).min_poly(), Poly::from_ints(&[-4, -2, 1]));
        assert_eq!(k.zero().min_poly(), Poly::from_ints(&[0, 1]));
    }

    #[test]
    fn spectral_norms() {
        let k = sqrt5();
        assert_eq!(el(&k, &[10]).spectral_norm().unwrap(), pp(5, -1, 1));
        assert_eq!(k.generator().spectral_norm().unwrap(), pp(5, -1, 2));
        assert_eq!(el(&k, &[1, 1]).spectral_norm().unwrap(), Magnitude::one());
        assert!(k.zero().spectral_norm().unwrap().is_zero());

        assert_eq!(k.generator().norm_const_coeff_oracle().unwrap(), pp(5, -1, 2));
        assert_eq!(el(&k, &[1, 1]).norm_const_coeff_oracle().unwrap(), Magnitude::one());
        assert_eq!(el(&k, &[10]).norm_const_coeff_oracle().unwrap(), pp(5, -1, 1));
        assert!(matches!(k.zero().norm_const_coeff_oracle(), Err(Error::Domain(_))));
    }

    #[test]
    fn basis_norms() {
        let k = sqrt5();
        assert_eq!(el(&k, &[3, 5]).basis_norm().unwrap(), Magnitude::one());
        assert!(k.zero().basis_norm().unwrap().is_zero());
        assert_eq!(
            k.element(vec![rat(1, 5), int(1)]).unwrap().basis_norm().unwrap(),
            pp(5, 1, 1)
        );
        assert_eq!(k.basis_norm_bound().unwrap(), Magnitude::one());
        let fifth = ExtensionField::new(
            5,
            Poly::new(vec![rat(-1, 5), int(0), int(1)]),
            IrredCertificate::Asserted { note: "X^2 - 1/5".into() },
        )
        .unwrap();
        assert_eq!(fifth.basis_norm_bound().unwrap(), pp(5, 1, 1));
        let linear = ExtensionField::new(5, Poly::from_ints(&[-3, 1]), IrredCertificate::ModPIrreducible).unwrap();
        assert_eq!(linear.basis_norm_bound().unwrap(), Magnitude::one());
    }

    #[test]
    fn automorphisms() {
        let k = sqrt5();
        let sigma = Automorphism::new(el(&k, &[0, -1])).unwrap();
        assert_eq!(sigma.apply(&el(&k, &[3, 5])).unwrap(), el(&k, &[3, -5]));
        assert!(matches!(
            Automorphism::new(el(&k, &[1, 1])),
            Err(Error::Certificate(_))
        ));
        let id = Automorphism::identity(&k);
        assert_eq!(id.apply(&el(&k, &[3, 5])).unwrap(), el(&k, &[3, 5]));

        let auts = [id, sigma];
        let spectral = |x: &FieldElement| x.spectral_norm();
        assert_eq!(
            alg_norm_of_galois(spectral, &auts, &k.generator()).unwrap(),
            pp(5, -1, 2)
        );
        let basis = |x: &FieldElement| x.basis_norm();
        assert_eq!(
            alg_norm_of_galois(basis, &auts, &el(&k, &[3, 5])).unwrap(),
            Magnitude::one()
        );
        assert!(matches!(
            alg_norm_of_galois(spectral, &[], &k.generator()),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn descriptor_json() {
        let d: ExtensionDescriptor = serde_json::from_str(
            r#"{"p": 5, "modulus": "−5,0,1", "certificate": {"kind": "eisenstein"}}"#,
        )
        .unwrap();
        let k = ExtensionField::from_descriptor(&d).unwrap();
        assert_eq!(*k, *sqrt5());
        assert_eq!(
            serde_json::to_string(&k.descriptor()).unwrap(),
            r#"{"p":5,"modulus":"-5,0,1","certificate":{"kind":"eisenstein"}}"#
        );
    }
}
