//! Point symmetries of second-order systems: prolongation, verification,
//! brackets and the structure of the spanned algebra.

pub mod examples;
mod field;
mod prolong;
mod span;

pub use field::{base_context, lie_bracket, VectorField3, BASE};
pub use prolong::{jet_context, prolong, symmetry_check, symmetry_residuals, ProlongedField, JET};
pub use span::{is_closed_and_solvable, span_dimension, Structure};
