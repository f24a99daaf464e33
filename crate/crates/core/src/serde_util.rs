//! Wire helpers: rationals travel as `"n"` / `"n/d"` strings, polynomials as
//! comma-separated coefficient strings.

pub mod rational_str {
    use serde::{de, Deserialize, Deserializer, Serializer};

    use crate::magnitude::{format_rational, parse_rational, Rational};

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).map_err(de::Error::custom)
    }
}

pub mod poly_str {
    use serde::{de, Deserialize, Deserializer, Serializer};

    use crate::poly::{parse_polynomial, Poly};

    pub fn serialize<S: Serializer>(p: &Poly, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&p.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Poly, D::Error> {
        let text = String::deserialize(d)?;
        parse_polynomial(&text).map_err(de::Error::custom)
    }
}
