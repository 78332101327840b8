//! Exact center-manifold reduction of Swift–Hohenberg near `λ = 9`.
//!
//! The homological equation is solved in the eigenbasis of `L_λ`, where it
//! is diagonal; comparisons with the mixed `{sin2x cos4x, cos2x cos4x}`
//! ansatz go through [`CenterManifoldMap::mixed_alphas`].

mod field;
mod json;
mod manifold;
mod vector_field;

pub use field::{CenterMonomial, FieldPoly, ScalarPoly};
pub use json::{CenterManifoldRecord, ManifoldTermRecord};
pub use manifold::{
    homological_residual, solve_center_manifold, CenterManifoldMap, ReductionSetup,
};
pub use vector_field::{
    parameterized_reduction, reduced_vector_field, FloatField, MonomialRecord, RadialPolynomial,
    ReducedFieldRecord, ReducedVectorField,
};

use crate::spectral::SpectralError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ReductionError {
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error("invalid order {0}: expected an odd integer >= 3")]
    InvalidOrder(u32),
    #[error("resonance: stable mode k = {k} has zero eigenvalue at lambda = {lambda}")]
    Resonance { k: u32, lambda: String },
    #[error("center-manifold map valid through order {have}, need {need}")]
    InsufficientOrder { have: u32, need: u32 },
    #[error("invalid center-manifold map: {0}")]
    InvalidMap(String),
    #[error("invalid reduced field: {0}")]
    InvalidField(String),
    #[error("field is not O(2)-equivariant: {0}")]
    NotEquivariant(String),
    #[error("not expressible in the mixed ansatz basis: {0}")]
    NotMixedBasis(String),
    #[error("format error: {0}")]
    Format(String),
}
