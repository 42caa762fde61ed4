use exprcore::{differentiate, substitute, Context, Expr, Func, Node, ZeroTest};
use num::{BigRational, One, Zero};

use crate::error::PathError;
use crate::system::SecondOrderSystem;

/// Coordinates of the heavenly potential Θ(w, z, x, y).
pub const THETA_VARS: [&str; 4] = ["w", "z", "x", "y"];

pub fn theta_context() -> Context {
    Context::new(&THETA_VARS)
}

/// Θ_xw + Θ_yz + Θ_xx Θ_yy − Θ_xy².
pub fn heavenly_residual(theta: &Expr) -> Expr {
    let d = |a: &str, b: &str| differentiate(&differentiate(theta, a), b);
    d("x", "w") + d("y", "z") + d("x", "x") * d("y", "y") - d("x", "y").powi(2)
}

pub fn is_heavenly(theta: &Expr, ctx: &Context, zt: &ZeroTest) -> Result<bool, PathError> {
    Ok(zt.is_zero(&heavenly_residual(theta), ctx)?)
}

/// Λ = Θ(Y, −Z, −p1, −p0), Y'' = 2∂Λ/∂p1, Z'' = −2∂Λ/∂p0.
pub fn system_from_theta(theta: &Expr) -> SecondOrderSystem {
    let lam = substitute(
        theta,
        &[
            ("w", Expr::var("Y")),
            ("z", -Expr::var("Z")),
            ("x", -Expr::var("p1")),
            ("y", -Expr::var("p0")),
        ],
    );
    let f = Expr::int(2) * differentiate(&lam, "p1");
    let g = Expr::int(-2) * differentiate(&lam, "p0");
    SecondOrderSystem::new(f, g).expect("theta must depend on w, z, x, y only")
}

fn linear_slope(b: &Expr, v: &str) -> Option<Expr> {
    let s = differentiate(b, v);
    (!s.depends_on(v) && !s.is_zero()).then_some(s)
}

/// Antiderivative in `v` for sums of products of powers and exponentials of linear forms.
pub fn antiderivative(e: &Expr, v: &str) -> Option<Expr> {
    if !e.depends_on(v) {
        return Some(e * Expr::var(v));
    }
    let expanded = || {
        let x = e.expand();
        (x != *e).then(|| antiderivative(&x, v)).flatten()
    };
    match e.node() {
        Node::Var(_) => Some(Expr::rat(1, 2) * Expr::var(v).powi(2)),
        Node::Add(ts) => ts.iter().map(|t| antiderivative(t, v)).collect::<Option<Vec<_>>>().map(Expr::add),
        Node::Mul(fs) => {
            let (dep, free): (Vec<&Expr>, Vec<&Expr>) = fs.iter().partition(|f| f.depends_on(v));
            if dep.len() == 1 {
                let c = Expr::mul(free.into_iter().cloned());
                antiderivative(dep[0], v).map(|a| c * a)
            } else {
                expanded()
            }
        }
        Node::Pow(b, n) => {
            let Some(s) = linear_slope(b, v) else {
                return expanded();
            };
            if *n == -BigRational::one() {
                Some(b.log() / s)
            } else {
                let m = n + BigRational::one();
                Some(Expr::pow(b, m.clone()) / (Expr::num(m) * s))
            }
        }
        Node::Func(f, a) => {
            let s = linear_slope(a, v)?;
            match f {
                Func::Exp => Some(e / s),
                Func::Sin => Some(-a.cos() / s),
                Func::Cos => Some(a.sin() / s),
                Func::Log => None,
            }
        }
        Node::Num(_) => unreachable!(),
    }
}

/// Λ with F = 2∂Λ/∂p1 and G = −2∂Λ/∂p0; `None` when ∂F/∂p0 + ∂G/∂p1 ≠ 0.
pub fn lambda_potential(sys: &SecondOrderSystem, zt: &ZeroTest) -> Result<Option<Expr>, PathError> {
    let ctx = sys.context();
    if !zt.is_zero(&sys.divergence(), ctx)? {
        return Ok(None);
    }
    let fail = |what: &str| PathError::NotIntegrable(what.to_string());
    let first = antiderivative(&(Expr::rat(1, 2) * &sys.f), "p1").ok_or_else(|| fail("no antiderivative of F in p1"))?;
    let rest = Expr::rat(-1, 2) * &sys.g - differentiate(&first, "p0");
    if !zt.is_zero(&differentiate(&rest, "p1"), ctx)? {
        return Err(fail("cross-derivative check failed"));
    }
    let mut rest0 = None;
    for p in [Expr::zero(), Expr::one(), Expr::int(-1)] {
        let r0 = substitute(&rest, &[("p1", p)]);
        if matches!(zt.is_zero(&(&rest - &r0), ctx), Ok(true)) {
            rest0 = Some(r0);
            break;
        }
    }
    let rest0 = rest0.ok_or_else(|| fail("remainder is singular on every probe slice"))?;
    let second = antiderivative(&rest0, "p0").ok_or_else(|| fail("no antiderivative of G in p0"))?;
    let lam = first + second;
    let check = [
        Expr::int(2) * differentiate(&lam, "p1") - &sys.f,
        Expr::int(-2) * differentiate(&lam, "p0") - &sys.g,
    ];
    if !zt.all_zero(&check, ctx)? {
        return Err(fail("potential does not reproduce the system"));
    }
    Ok(Some(drop_velocity_free(&lam)))
}

/// Removes summands independent of both velocities.
fn drop_velocity_free(e: &Expr) -> Expr {
    let keep = |t: &Expr| t.depends_on("p0") || t.depends_on("p1");
    match e.node() {
        Node::Add(ts) => Expr::add(ts.iter().filter(|t| keep(t)).cloned()),
        _ if keep(e) => e.clone(),
        _ => Expr::num(BigRational::zero()),
    }
}
