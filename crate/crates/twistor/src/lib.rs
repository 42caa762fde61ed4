//! Twistor curves of path geometries: the series expansion from a heavenly
//! potential, numeric recovery of the ODE system from a curve family, and the
//! conformal structure from the intersection condition of nearby curves.

mod cone;
mod error;
pub mod examples;
mod family;
mod series;

pub use cone::{null_cone, proportional, QuadraticForm4, DEFAULT_MAX_DEGREE};
pub use error::TwistorError;
pub use family::{extract_system, CurveFamily, NewtonOptions, SeedRule};
pub use series::{twistor_series, TwistorSeries};
