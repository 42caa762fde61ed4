use exprcore::{differentiate, substitute, Expr, Poly, Tape, ZeroTest};
use pathsys::{SecondOrderSystem, CANONICAL, POS, VEL};

use crate::error::FinslerError;
use crate::function::FIBER;
use crate::spray::Spray;

/// Orientation of the chart v = ±(1, Y', Z') for non-reversible sprays.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Traversal {
    #[default]
    Forward,
    Reversed,
}

impl Traversal {
    fn sign(self) -> i64 {
        match self {
            Traversal::Forward => 1,
            Traversal::Reversed => -1,
        }
    }
}

/// Y'' = −2Γ¹ + 2Y'Γ⁰, Z'' = −2Γ² + 2Z'Γ⁰ with v = ±(1, Y', Z').
pub fn unparametrized_system(s: &Spray, t: Traversal) -> Result<SecondOrderSystem, FinslerError> {
    let c = Expr::int(t.sign());
    let (p0, p1) = (Expr::var(VEL[0]), Expr::var(VEL[1]));
    let bind = [(FIBER[0], c.clone()), (FIBER[1], &c * &p0), (FIBER[2], &c * &p1)];
    let g: Vec<Expr> = s.gamma.iter().map(|e| substitute(e, &bind)).collect();
    let f = Expr::int(-2) * &g[1] + Expr::int(2) * &p0 * &g[0];
    let h = Expr::int(-2) * &g[2] + Expr::int(2) * &p1 * &g[0];
    Ok(SecondOrderSystem::new(f, h)?)
}

/// Numeric (Y'', Z'') of the geodesic through base point `x` with direction `v`.
pub fn unparametrized_geodesics(s: &Spray, x: [f64; 3], v: [f64; 3]) -> Result<[f64; 2], FinslerError> {
    if v[0].abs() <= f64::EPSILON * (v[1].abs() + v[2].abs()).max(1.0) {
        return Err(FinslerError::Chart);
    }
    let tape = Tape::compile(&s.gamma, s.context())?;
    let g = tape.eval(&[x[0], x[1], x[2], v[0], v[1], v[2]]).map_err(|f| tape.fault_error(f))?;
    let c3 = v[0].powi(3);
    Ok([(-2.0 * g[1] * v[0] + 2.0 * v[1] * g[0]) / c3, (-2.0 * g[2] * v[0] + 2.0 * v[2] * g[0]) / c3])
}

/// Solves d/dX(∂L/∂p_A) = ∂L/∂Y^A for the second derivatives.
pub fn euler_lagrange(l: &Expr, zt: &ZeroTest) -> Result<SecondOrderSystem, FinslerError> {
    let ctx = pathsys::canonical_context();
    let lp: Vec<Expr> = VEL.iter().map(|p| differentiate(l, p)).collect();
    let hess: Vec<Vec<Expr>> = lp.iter().map(|e| VEL.iter().map(|p| differentiate(e, p)).collect()).collect();
    let rhs: Vec<Expr> = (0..2)
        .map(|a| {
            let mut r = differentiate(l, POS[a]) - differentiate(&lp[a], "X");
            for b in 0..2 {
                r = r - differentiate(&lp[a], POS[b]) * Expr::var(VEL[b]);
            }
            r
        })
        .collect();
    let det = &hess[0][0] * &hess[1][1] - &hess[0][1] * &hess[1][0];
    if zt.is_zero(&det, &ctx)? {
        return Err(FinslerError::DegenerateLagrangian);
    }
    let inv = tidy(&det).recip();
    let q0 = (&rhs[0] * &hess[1][1] - &hess[0][1] * &rhs[1]) * &inv;
    let q1 = (&hess[0][0] * &rhs[1] - &hess[1][0] * &rhs[0]) * &inv;
    Ok(SecondOrderSystem::new(tidy(&q0), tidy(&q1))?)
}

/// Canonical polynomial form when the expression is polynomial.
fn tidy(e: &Expr) -> Expr {
    let vars: Vec<Expr> = CANONICAL.iter().map(|n| Expr::var(n)).collect();
    match Poly::from_expr(e, &CANONICAL) {
        Ok(p) => p.to_expr(&vars),
        Err(_) => e.clone(),
    }
}
