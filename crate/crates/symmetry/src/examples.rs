//! Named symmetry algebras.

use exprcore::{parse, Expr};

use crate::field::{base_context, VectorField3};

fn field(x: &str, y: &str, z: &str) -> VectorField3 {
    VectorField3::parse(x, y, z).expect("fixture parses")
}

fn exprs(src: [&str; 3]) -> [Expr; 3] {
    let ctx = base_context();
    src.map(|s| parse(s, &ctx).expect("fixture parses"))
}

/// Generators of Y'' = β(Z'), Z'' = 0 for any β.
pub fn l6_native() -> Vec<VectorField3> {
    vec![
        field("1", "0", "0"),
        field("0", "1", "0"),
        field("0", "0", "1"),
        field("0", "X", "0"),
        field("0", "Z", "0"),
        field("X", "2*Y", "Z"),
    ]
}

/// L₆ extended by the three extra generators for Y'' = (Z')³, Z'' = 0.
pub fn l9_native() -> Vec<VectorField3> {
    let mut v = l6_native();
    v.push(field("0", "3*Y", "Z"));
    v.push(field("0", "3*Z^2/2", "X"));
    v.push(field("X^2/2", "X*Y/2 + Z^3/4", "X*Z/2"));
    v
}

/// L₆ plus kY∂_Y + Z∂_Z, for Y'' = (Z')^k, Z'' = 0.
pub fn l7_native(k: i64) -> Vec<VectorField3> {
    let mut v = l6_native();
    v.push(field("0", &format!("{k}*Y"), "Z"));
    v
}

/// Moves fields from the orientation Ŷ'' = c(Ẑ')^k, Ẑ'' = 0 to Y'' = 0, Z'' = c'(Y')^k via Ŷ = sZ, Ẑ = Y.
fn swap_roles(fields: Vec<VectorField3>, s: (i64, i64)) -> Vec<VectorField3> {
    let (n, d) = s;
    let [x, y, z] = exprs(["X", "Y", "Z"]);
    let forward = [x.clone(), Expr::rat(n, d) * &z, y];
    let inverse = [x, z, Expr::rat(d, n) * Expr::var("Y")];
    fields.iter().map(|f| f.pull_back(&forward, &inverse)).collect()
}

/// L₆ acting on Y'' = 0, Z'' = β(Y').
pub fn l6() -> Vec<VectorField3> {
    swap_roles(l6_native(), (1, 1))
}

/// L₉ acting on Y'' = 0, Z'' = −2(Y')³.
pub fn l9() -> Vec<VectorField3> {
    swap_roles(l9_native(), (-1, 2))
}

/// L₇ acting on Y'' = 0, Z'' = (Y')^k.
pub fn l7(k: i64) -> Vec<VectorField3> {
    swap_roles(l7_native(k), (1, 1))
}

/// Symmetries of the Gibbons–Hawking example system.
pub fn l5() -> Vec<VectorField3> {
    vec![
        field("0", "1", "0"),
        field("0", "0", "1"),
        field("X", "Y", "0"),
        field("-X/2", "0", "Z"),
        field("0", "X^2", "2*Y"),
    ]
}

/// Symmetries of Y'' = 0, Z'' = −(Z' + √((Y')² − 1))².
pub fn l4() -> Vec<VectorField3> {
    vec![field("1", "0", "0"), field("0", "1", "0"), field("0", "0", "1"), field("Y", "X", "0")]
}

/// A second realization of the same abstract algebra.
pub fn l4a() -> Vec<VectorField3> {
    vec![field("0", "1", "0"), field("0", "-X", "0"), field("0", "0", "1"), field("1", "-X*Z", "0")]
}

/// A third realization, admitting no torsion-free system.
pub fn l4b() -> Vec<VectorField3> {
    vec![field("2", "0", "0"), field("0", "0", "1"), field("-Y^2", "0", "-Y"), field("2*Z", "1", "0")]
}
