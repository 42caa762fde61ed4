//! Named metrics used as fixtures.

use exprcore::{parse, Context, Expr};

use crate::heavenly::{gh_metric, heavenly_metric, GhData, GH_VARS, THETA_VARS};
use crate::metric::Metric;

pub fn theta_context() -> Context {
    Context::new(&THETA_VARS)
}

pub fn theta(src: &str) -> Expr {
    parse(src, &theta_context()).expect("fixture parses")
}

fn metric(entries: &[(&str, &str, &str)]) -> Metric {
    Metric::parse(theta_context(), entries).expect("fixture parses")
}

/// dw dx + dz dy.
pub fn flat() -> Metric {
    heavenly_metric(&Expr::zero(), theta_context()).unwrap()
}

/// dw dx + dz dy − 3y² dw².
pub fn submax_metric() -> Metric {
    heavenly_metric(&theta("y^4/4"), theta_context()).unwrap()
}

/// dw dx + dz dy − 2(xw + yz)⁻³ (w dz − z dw)².
pub fn sparling_tod() -> Metric {
    metric(&[
        ("w", "x", "1/2"),
        ("z", "y", "1/2"),
        ("z", "z", "-2*w^2/(x*w + y*z)^3"),
        ("w", "w", "-2*z^2/(x*w + y*z)^3"),
        ("w", "z", "2*w*z/(x*w + y*z)^3"),
    ])
}

/// dw dx + dz dy + x² dw² + (z² + 2z/y) dy² + 2(zx + x/y) dw dy.
pub fn boris_metric() -> Metric {
    metric(&[
        ("w", "x", "1/2"),
        ("z", "y", "1/2"),
        ("w", "w", "x^2"),
        ("y", "y", "z^2 + 2*z/y"),
        ("w", "y", "z*x + x/y"),
    ])
}

/// dx dy + (dw + x dy)(dz + y(y² − 1)^(−1/2) dw), sampled for y ∈ [1.1, 2].
pub fn ode_sym_4_metric() -> Metric {
    let s = "y/sqrt(y^2 - 1)";
    metric(&[
        ("x", "y", "1/2"),
        ("w", "z", "1/2"),
        ("w", "w", s),
        ("y", "z", "x/2"),
        ("w", "y", &format!("x*{s}/2")),
    ])
    .with_box("y", 1.1, 2.0)
}

/// dw dx + dz dy + x² dy² + w² dz², anti-self-dual in neither orientation.
pub fn perturbed_flat() -> Metric {
    metric(&[("w", "x", "1/2"), ("z", "y", "1/2"), ("y", "y", "x^2"), ("z", "z", "w^2")])
}

pub fn gh_context() -> Context {
    Context::new(&GH_VARS)
}

pub fn gh_potential(src: &str) -> GhData {
    GhData::new(parse(src, &gh_context()).expect("fixture parses"))
}

/// Gibbons–Hawking metric for H = y t².
pub fn gh_example() -> Metric {
    gh_metric(&gh_potential("y*t^2"), gh_context()).unwrap()
}
