//! Path geometries given as pairs of second-order ODEs
//! Y'' = F(X, Y, Z, Y', Z'), Z'' = G(X, Y, Z, Y', Z').

mod beta;
mod conformal;
mod error;
pub mod examples;
mod invariants;
mod potential;
mod system;

pub use beta::{beta_symmetry_dimension, BetaFamily};
pub use conformal::{
    conformal_evolution_holds, conformal_evolution_residual, correspondence_metric, correspondence_quadric, CorrespondenceMetric,
};
pub use error::PathError;
pub use invariants::{fels, is_torsion_free, wilczynski, FelsTensor, WilczynskiTensor};
pub use potential::{
    antiderivative, heavenly_residual, is_heavenly, lambda_potential, system_from_theta, theta_context,
    THETA_VARS,
};
pub use system::{canonical_context, total_derivative, SecondOrderSystem, CANONICAL, POS, VEL};
