//! Sample counts and tolerances used by the fixture corpus.

/// Points and tolerance for the Wilczynski vanishing tests.
pub const TORSION_POINTS: usize = 20;
pub const TORSION_TOL: f64 = 1e-8;

/// Component zero-tests for Ricci flatness, self-duality and proportionality.
pub const CURVATURE_TOL: f64 = 1e-8;

/// Numeric ODE extraction from curve families.
pub const EXTRACTION_POINTS: usize = 10;
pub const EXTRACTION_TOL: f64 = 1e-6;

/// Random polynomial heavenly potentials checked against the low-order series.
pub const SERIES_POTENTIALS: usize = 5;

/// Random small-support families for the dimension gap.
pub const BETA_FAMILIES: usize = 1000;

/// Randers geodesics against the rotating-plane system.
pub const GEODESIC_POINTS: usize = 10;
pub const GEODESIC_TOL: f64 = 1e-6;

/// Flags per point and points for constant flag curvature.
pub const FLAG_COUNT: usize = 10;
pub const FLAG_SPREAD: f64 = 1e-5;
/// Bound on |K| for the flat Finsler function.
pub const FLAT_FLAG_TOL: f64 = 1e-7;

/// Finite-difference cross-checks of symbolic derivatives.
pub const HYGIENE_POINTS: usize = 5;
pub const HYGIENE_REL_TOL: f64 = 1e-5;
