//! Finsler functions on three-space, their geodesic sprays and curvature,
//! Randers metrics from navigation data, and reduction to path geometries.

mod error;
pub mod examples;
mod flag;
mod function;
mod paths;
mod spray;
mod zermelo;

pub use error::FinslerError;
pub use flag::{flag_curvature, isotropy_check, FlagCurvature, IsotropyReport};
pub use function::{fiber_context, metric_tensor, FinslerFunction, BASE, FIBER};
pub use paths::{euler_lagrange, unparametrized_geodesics, unparametrized_system, Traversal};
pub use spray::{geodesic_spray, spray_curvature, Spray, SprayCurvature, SprayFormula};
pub use zermelo::{randers_from_zermelo, RandersData, ZermeloData};
