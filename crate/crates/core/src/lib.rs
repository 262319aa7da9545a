//! Exact arithmetic and certificates for rational plane sextics with
//! maximal total Milnor number.

pub mod error;
pub mod numberfield;
pub mod polynomial;
pub mod series;
pub mod curve;
pub mod singularity;
pub mod conic;
pub mod database;

pub use error::{Error, Result};
pub use numberfield::{FieldElement, LayerKind, NumberField, Rational};
pub use polynomial::{TriPoly, UniPoly};
pub use series::TruncatedSeries;
pub use curve::{Mobius, Parameter, ParameterLocation, ProjectiveMap, ProjectivePoint, RationalPlaneCurve};
pub use singularity::{certify, Certificate, CertifyOptions, SingularityClaim, SingularityType, DEFAULT_TRUNCATION};
pub use conic::{
    conic_solvable_over_q, hilbert_symbol, pencil_reduce, verify_case24_solution, verify_case34_obstruction, ConicVerdict, CubicPencil,
    Place,
};
pub use database::{bundled_corpus, cross_check_record, load_corpus, CrossCheck, CurveRecord};
