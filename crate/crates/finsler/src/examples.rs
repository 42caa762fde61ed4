use exprcore::{parse, Expr};

use crate::function::{fiber_context, FinslerFunction};
use crate::spray::Spray;
use crate::zermelo::ZermeloData;

fn fiber(src: &str) -> Expr {
    parse(src, &fiber_context()).expect("built-in expression parses")
}

pub fn euclidean() -> FinslerFunction {
    FinslerFunction::from_square(fiber("v0^2 + v1^2 + v2^2"))
}

/// dX² + dY² + Y²dZ².
pub fn polar() -> FinslerFunction {
    FinslerFunction::from_square(fiber("v0^2 + v1^2 + Y^2*v2^2")).with_box("Y", 0.5, 1.5)
}

/// Unit three-sphere dX² + sin²X(dY² + sin²Y dZ²).
pub fn round_sphere() -> FinslerFunction {
    FinslerFunction::from_square(fiber("v0^2 + sin(X)^2*(v1^2 + sin(Y)^2*v2^2)")).with_box("X", 0.5, 1.2).with_box("Y", 0.5, 1.2)
}

/// Flat polar metric with the rotational wind ∂_Z, sampled inside the unit cylinder.
pub fn rotating_wind() -> ZermeloData {
    ZermeloData::parse(["1", "0", "0", "1", "0", "Y^2"], ["0", "0", "1"]).expect("built-in data parses").with_box("Y", 0.2, 0.8)
}

/// v0 · √(a·b) with a = v1/v0 and b = 2v2/v0 − 2X v1³/v0³ + 6Y v1²/v0², held through its square.
pub fn submax_finsler() -> FinslerFunction {
    FinslerFunction::from_square(fiber("2*v1*v2 - 2*X*v1^4/v0^2 + 6*Y*v1^3/v0"))
        .with_box("X", 0.0, 0.3)
        .with_box("Y", 0.0, 0.3)
        .with_box("v0", 0.5, 1.5)
        .with_box("v1", 0.5, 1.0)
        .with_box("v2", 0.5, 1.0)
}

/// ℱ² of the previous function in the chart v0 = 1.
pub fn submax_lagrangian() -> Expr {
    parse("2*p0*p1 - 2*X*p0^4 + 6*Y*p0^3", &pathsys::canonical_context()).expect("built-in expression parses")
}

/// Γ = (0, v0²v1/|v|, 0), a 2-homogeneous spray that is not isotropic.
pub fn skewed_spray() -> Spray {
    let g = fiber("v0^2*v1/sqrt(v0^2 + v1^2 + v2^2)");
    Spray::new([Expr::zero(), g, Expr::zero()], fiber_context())
}
