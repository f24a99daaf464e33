//! Exact computation of nonarchimedean norm extensions.
//!
//! Norm values live in the value group `∏ p^q ∪ {0}` ([`Magnitude`]), so the
//! spectral norm on a finite extension `Q[X]/(f)` (certified irreducible over
//! `Q_p`) and the seminorm smoothing constructions can be compared by exact
//! equality instead of floating tolerances.

pub mod cli;
pub mod error;
pub mod extension;
pub mod magnitude;
pub mod poly;
pub mod seminorm;
mod serde_util;

pub use error::{Error, Result};
pub use magnitude::{
    magnitude_of_valuation, padic_magnitude, valuation_of_magnitude, vp, Magnitude, Rational,
    ValExp,
};
pub use poly::{
    eisenstein_check, irreducible_mod_p, newton_polygon, parse_polynomial, root_magnitudes,
    spectral_value, spectral_value_terms, IrredCertificate, NewtonPolygon, Poly,
};
pub use extension::{
    alg_norm_of_galois, Automorphism, ExtensionDescriptor, ExtensionExt, ExtensionField,
    FieldElement,
};
pub use seminorm::{
    check_axioms, seminorm_from_bounded, seminorm_from_bounded_table, seminorm_from_const_estimate,
    seminorm_from_const_term, smoothing_estimate, smoothing_term, Axiom, AxiomReport, Carrier,
    Elem, LimitEstimate, SeminormSpec, Verdict,
};
