use crate::family::{CurveFamily, SeedRule};

const HEAVENLY_PARAMS: [&str; 4] = ["w", "z", "x", "y"];

fn family(params: [&str; 4], y: &str, z: &str, seed: SeedRule) -> CurveFamily {
    CurveFamily::parse(params, y, z, seed).expect("built-in family parses")
}

/// Straight lines of flat space.
pub fn straight_lines() -> CurveFamily {
    family(HEAVENLY_PARAMS, "w + X*y", "z - X*x", SeedRule::Heavenly)
}

/// Curves of Y'' = 0, Z'' = −2(Y')³.
pub fn submax() -> CurveFamily {
    family(HEAVENLY_PARAMS, "w + X*y", "z - X*x - X^2*y^3", SeedRule::Heavenly)
}

/// Curves of Y'' = 0, Z'' = 2(Z')²Y'/(ZY' − 1); Newton needs a seed near the true parameters.
pub fn boris() -> CurveFamily {
    family(HEAVENLY_PARAMS, "w + y*X", "1/y + 1/(y^2*(z - x*X))", SeedRule::Fixed([0.0, 2.0, 1.0, 1.0]))
}

/// Curves of Y'' = 0, Z'' = −(Z' + √((Y')² − 1))², defined for X > x and |y| > 1.
pub fn ode_sym_4() -> CurveFamily {
    family(HEAVENLY_PARAMS, "w + X*y", "log(X - x) - sqrt(y^2 - 1)*X + z", SeedRule::Heavenly)
}

/// Gibbons–Hawking curves for the potential y t², parameters (w, y, t, z).
pub fn gh_quadratic() -> CurveFamily {
    family(["w", "y", "t", "z"], "w + X*y - X^2*t", "z - 2*y*t*X + t^2*X^2", SeedRule::GibbonsHawking)
}
