//! Curvature of metrics in split signature, self-duality of the Weyl tensor,
//! and the heavenly and Gibbons–Hawking constructions.

mod error;
pub mod examples;
mod heavenly;
mod metric;
mod tensors;
mod weyl;

pub use error::CurvatureError;
pub use heavenly::{
    gh_metric, gh_wave_residual, heavenly_metric, lax_frobenius, lax_residuals, monopole_residual, weyl_spinor,
    GhData, GH_VARS, THETA_VARS,
};
pub use metric::Metric;
pub use tensors::{curvature, einstein_constant, is_ricci_flat, CurvaturePack};
pub use weyl::{asd_residuals, sd_weyl, Orientation, SelfDuality};
