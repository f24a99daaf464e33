use num_traits::Zero;
use serde::Serialize;

use super::Poly;
use crate::error::{Error, Result};
use crate::magnitude::{ensure_prime, int, vp_unchecked, Magnitude, Rational, ValExp};
use crate::serde_util::rational_str;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Segment {
    #[serde(with = "rational_str")]
    pub slope: Rational,
    pub length: usize,
}

/// Lower convex hull of `{(i, v_p(a_i)) : a_i != 0}` for a monic polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NewtonPolygon {
    pub p: u64,
    /// Hull corners, strictly increasing in index. Valuations are always finite.
    pub vertices: Vec<(usize, ValExp)>,
    /// Segments by strictly increasing slope.
    pub segments: Vec<Segment>,
    /// Multiplicity of the root zero (index of the first nonzero coefficient).
    pub zero_roots: usize,
}

fn check_monic(poly: &Poly) -> Result<usize> {
    match poly.degree() {
        Some(m) if m >= 1 && poly.is_monic() => Ok(m),
        Some(m) if m >= 1 => Err(Error::domain(format!("{poly:?} is not monic"))),
        _ => Err(Error::domain(format!(
            "{poly:?} must have degree at least 1"
        ))),
    }
}

// z-component of (a - o) x (b - o)
fn cross(o: &(Rational, Rational), a: &(Rational, Rational), b: &(Rational, Rational)) -> Rational {
    (&a.0 - &o.0) * (&b.1 - &o.1) - (&a.1 - &o.1) * (&b.0 - &o.0)
}

pub fn newton_polygon(poly: &Poly, p: u64) -> Result<NewtonPolygon> {
    ensure_prime(p)?;
    check_monic(poly)?;
    let points: Vec<(Rational, Rational)> = poly
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| {
            let v = vp_unchecked(c, p);
            (int(i as i64), v.finite().cloned().expect("nonzero coefficient"))
        })
        .collect();
    let zero_roots = poly
        .coeffs()
        .iter()
        .position(|c| !c.is_zero())
        .expect("monic polynomial is nonzero");

    let mut hull: Vec<(Rational, Rational)> = Vec::new();
    for pt in points {
        while hull.len() >= 2 && cross(&hull[hull.len() - 2], &hull[hull.len() - 1], &pt) <= Rational::zero() {
            hull.pop();
        }
        hull.push(pt);
    }

    let segments = hull
        .windows(2)
        .map(|w| {
            let dx = &w[1].0 - &w[0].0;
            Segment {
                slope: (&w[1].1 - &w[0].1) / &dx,
                length: dx.to_integer().try_into().expect("index fits usize"),
            }
        })
        .collect();
    let vertices = hull
        .into_iter()
        .map(|(x, y)| (x.to_integer().try_into().expect("index fits usize"), ValExp::Finite(y)))
        .collect();
    Ok(NewtonPolygon {
        p,
        vertices,
        segments,
        zero_roots,
    })
}

/// Magnitudes of the roots in an algebraic closure, read off the Newton
/// polygon: `length` copies of `p^slope` per segment plus one `ZERO` per zero root.
pub fn root_magnitudes(poly: &Poly, p: u64) -> Result<Vec<Magnitude>> {
    let np = newton_polygon(poly, p)?;
    let mut out = vec![Magnitude::zero(); np.zero_roots];
    for seg in &np.segments {
        let m = Magnitude::prime_power_unchecked(p, seg.slope.clone());
        out.extend(std::iter::repeat_n(m, seg.length));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::magnitude::rat;

    #[test]
    fn two_slopes() {
        let np = newton_polygon(&Poly::from_ints(&[5, -7, 1]), 5).unwrap();
        assert_eq!(
            np.vertices,
            vec![
                (0, ValExp::Finite(int(1))),
                (1, ValExp::Finite(int(0))),
                (2, ValExp::Finite(int(0)))
            ]
        );
        assert_eq!(
            np.segments,
            vec![
                Segment { slope: int(-1), length: 1 },
                Segment { slope: int(0), length: 1 }
            ]
        );
        let roots = root_magnitudes(&Poly::from_ints(&[5, -7, 1]), 5).unwrap();
        assert_eq!(
            roots,
            vec![Magnitude::prime_power(5, int(-1)).unwrap(), Magnitude::one()]
        );
    }

    #[test]
    fn single_ramified_slope() {
        let poly = Poly::from_ints(&[-5, 0, 1]);
        let np = newton_polygon(&poly, 5).unwrap();
        assert_eq!(
            np.vertices,
            vec![(0, ValExp::Finite(int(1))), (2, ValExp::Finite(int(0)))]
        );
        assert_eq!(np.segments, vec![Segment { slope: rat(-1, 2), length: 2 }]);
        let half = Magnitude::prime_power(5, rat(-1, 2)).unwrap();
        assert_eq!(root_magnitudes(&poly, 5).unwrap(), vec![half.clone(), half]);
    }

    #[test]
    fn pure_power() {
        let poly = Poly::monomial(int(1), 3);
        let np = newton_polygon(&poly, 5).unwrap();
        assert_eq!(np.vertices, vec![(3, ValExp::Finite(int(0)))]);
        assert!(np.segments.is_empty());
        assert_eq!(np.zero_roots, 3);
        assert_eq!(root_magnitudes(&poly, 5).unwrap(), vec![Magnitude::zero(); 3]);
    }

    #[test]
    fn collinear_points_merge() {
        // X^2 + 5X + 25 at p = 5: points (0,2),(1,1),(2,0) lie on one line
        let np = newton_polygon(&Poly::from_ints(&[25, 5, 1]), 5).unwrap();
        assert_eq!(np.segments, vec![Segment { slope: int(-1), length: 2 }]);
        assert_eq!(np.vertices.len(), 2);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            newton_polygon(&Poly::from_ints(&[1, 2]), 5),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            newton_polygon(&Poly::one(), 5),
            Err(Error::Domain(_))
        ));
    }
}
