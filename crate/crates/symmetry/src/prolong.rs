use exprcore::{differentiate, substitute, Context, Error, Expr, ZeroTest};
use pathsys::SecondOrderSystem;

use crate::field::VectorField3;

/// Second-jet coordinates.
pub const JET: [&str; 7] = ["X", "Y", "Z", "p0", "p1", "q0", "q1"];

pub fn jet_context() -> Context {
    Context::new(&JET)
}

/// pr⁽²⁾χ = χ + η⁽¹⁾_A ∂_{p_A} + η⁽²⁾_A ∂_{q_A}.
#[derive(Clone, Debug)]
pub struct ProlongedField {
    pub base: VectorField3,
    pub eta1: [Expr; 2],
    pub eta2: [Expr; 2],
}

impl ProlongedField {
    /// Components along all seven jet coordinates.
    pub fn components(&self) -> [Expr; 7] {
        let [a, b, c] = self.base.c.clone();
        let [d, e] = self.eta1.clone();
        let [f, g] = self.eta2.clone();
        [a, b, c, d, e, f, g]
    }

    pub fn apply(&self, f: &Expr) -> Expr {
        let comps = self.components();
        Expr::add((0..7).map(|i| &comps[i] * differentiate(f, JET[i])))
    }
}

/// Total derivative on the second jet, truncated before third derivatives.
fn jet_total(e: &Expr) -> Expr {
    Expr::add([
        differentiate(e, "X"),
        Expr::var("p0") * differentiate(e, "Y"),
        Expr::var("p1") * differentiate(e, "Z"),
        Expr::var("q0") * differentiate(e, "p0"),
        Expr::var("q1") * differentiate(e, "p1"),
    ])
}

pub fn prolong(chi: &VectorField3) -> ProlongedField {
    let dt = jet_total(&chi.c[0]);
    let p = [Expr::var("p0"), Expr::var("p1")];
    let q = [Expr::var("q0"), Expr::var("q1")];
    let eta1: [Expr; 2] = std::array::from_fn(|a| jet_total(&chi.c[a + 1]) - &p[a] * &dt);
    let eta2 = std::array::from_fn(|a| jet_total(&eta1[a]) - &q[a] * &dt);
    ProlongedField { base: chi.clone(), eta1, eta2 }
}

/// pr⁽²⁾χ(q_A − F^A) restricted to q = F.
pub fn symmetry_residuals(chi: &VectorField3, sys: &SecondOrderSystem) -> [Expr; 2] {
    let pr = prolong(chi);
    let on_shell = [("q0", sys.f.clone()), ("q1", sys.g.clone())];
    std::array::from_fn(|a| {
        let delta = Expr::var(["q0", "q1"][a]) - sys.rhs(a);
        substitute(&pr.apply(&delta), &on_shell)
    })
}

pub fn symmetry_check(chi: &VectorField3, sys: &SecondOrderSystem, zt: &ZeroTest) -> Result<bool, Error> {
    zt.all_zero(&symmetry_residuals(chi, sys), sys.context())
}
