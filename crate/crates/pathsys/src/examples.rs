//! Named systems used as fixtures.

use crate::system::{canonical_context, SecondOrderSystem};

fn sys(f: &str, g: &str) -> SecondOrderSystem {
    SecondOrderSystem::parse(f, g).expect("fixture parses")
}

/// Y'' = 0, Z'' = −2(Y')³.
pub fn submax() -> SecondOrderSystem {
    sys("0", "-2*p0^3")
}

/// Y'' = 0, Z'' = 2(Z')²Y'/(ZY' − 1), sampled where ZY' < 1.
pub fn boris() -> SecondOrderSystem {
    sys("0", "2*p1^2*p0/(Z*p0 - 1)").with_box("Z", 0.5, 0.8).with_box("p0", 0.5, 1.0)
}

/// Y'' = Y'/X − √((Y'/X)² − 2Z'/X), Z'' = (Y'')²/2.
pub fn fourdexam() -> SecondOrderSystem {
    let root = "(p0/X - sqrt((p0/X)^2 - 2*p1/X))";
    sys(root, &format!("{root}^2/2")).with_box("p0", 1.0, 2.0).with_box("p1", -1.0, -0.2)
}

/// Y'' = 2Y/(Y'Z − YZ')², Z'' = 2Z/(Y'Z − YZ')².
pub fn ode_tod() -> SecondOrderSystem {
    sys("2*Y/(p0*Z - Y*p1)^2", "2*Z/(p0*Z - Y*p1)^2").with_box("p1", -1.5, -0.5)
}

/// Y'' = 0, Z'' = −(Z' + √((Y')² − 1))², sampled for Y' ∈ [1.1, 2].
pub fn ode_sym_4() -> SecondOrderSystem {
    sys("0", "-(p1 + sqrt(p0^2 - 1))^2").with_box("p0", 1.1, 2.0)
}

const TWO_D_SYM_Q: &str = "(1 + p0^2 + Y^2*(p1^2 - p0^2 - 1))";

fn two_d_sym_box(s: SecondOrderSystem) -> SecondOrderSystem {
    s.with_box("Y", 0.2, 0.8).with_box("p0", -0.5, 0.5).with_box("p1", -0.5, 0.5)
}

/// Unparametrized geodesics of the rotating-plane Zermelo metric in polar coordinates (Y, Z).
pub fn two_d_sym() -> SecondOrderSystem {
    let w = format!("(p1 + sqrt{TWO_D_SYM_Q})");
    two_d_sym_box(sys(&format!("Y*{w}^2/(Y^2 - 1)^2"), &format!("2*p0*{w}/(Y*(Y^2 - 1))")))
}

/// The same system as commonly printed, with a misplaced denominator and a dropped sum.
pub fn two_d_sym_as_printed() -> SecondOrderSystem {
    let f = format!(
        "2*Y*p1*sqrt{TWO_D_SYM_Q}/(Y*(Y^2 - 1)) + Y*(1 + p0^2 + p1^2*Y^2*(p1^2 - p0^2 - 1))/(Y^2 - 1)^2"
    );
    let g = format!("2*p0*(p1 + sqrt{TWO_D_SYM_Q})/(Y*(Y^2 - 1))");
    two_d_sym_box(sys(&f, &g))
}

/// Y'' = 0, Z'' = β(Y') for β = Σ ξ_k (Y')^k given as text.
pub fn beta_system(beta: &str) -> SecondOrderSystem {
    sys("0", &beta.replace("Yp", "p0"))
}

/// Sampling context shared by the fixtures above, before per-fixture boxes.
pub fn default_context() -> exprcore::Context {
    canonical_context()
}
