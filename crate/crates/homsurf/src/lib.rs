//! Exact symmetry analysis of two-dimensional homogeneous affine
//! connections with torsion.
//!
//! The crate computes, for connection specs with coefficients of the form
//! a + b/x¹:
//!
//! - the torsion tensor and the torsion-free/antisymmetric decomposition
//!   ([`connection`]),
//! - the space of affine Killing vector fields — its dimension by exact
//!   jet prolongation and an explicit basis by a function-dictionary
//!   ansatz ([`killing`]),
//! - the Lie algebra of that space with an isomorphism-type classifier
//!   ([`liealg`]),
//! - a machine-readable catalog of the known families with dim > 2,
//!   verified end to end ([`catalog`]).
//!
//! Start with the `examples/` directory: each file exercises one of the
//! capabilities above. The `homsurf` binary exposes the same operations
//! as JSON-emitting subcommands.

pub mod catalog;
pub mod cli;
pub mod connection;
pub mod expr;
pub mod killing;
pub mod liealg;
pub mod rat;

mod laurent;
mod linalg;

pub use connection::{
    christoffel_at, curvature_at, perturb, symmetrize, tensor_at, torsion, ChristoffelSpec,
    Coeff, ConnectionError, Kind, TorsionVector,
};
pub use expr::{
    evaluate, is_identically_zero, parse_expr, to_text, EvalPoint, Expr, ExprError,
    SamplePoints, ZeroTest, DEFAULT_SEED, DEFAULT_TOL,
};
pub use killing::{
    is_killing, killing_basis, killing_dimension, killing_dimension_at, killing_residuals,
    standard_dictionary, JetSystem, KillingError, VectorField,
};
pub use liealg::{
    bracket, classify, structure_constants, AlgebraType, ClassifyDetails, LieAlgError,
    LieAlgebra,
};
pub use rat::Rat;
