use exprcore::{Expr, Poly};

use crate::error::TwistorError;
use crate::family::{CurveFamily, SeedRule};

const W: usize = 0;
const Z: usize = 1;
const XV: usize = 2;
const YV: usize = 3;
const VARS: [&str; 4] = ["w", "z", "x", "y"];

/// 𝒴 = Σ a_k λ^k, 𝒵 = Σ b_k λ^k up to the computed order.
#[derive(Clone, Debug)]
pub struct TwistorSeries {
    pub order: usize,
    pub a: Vec<Expr>,
    pub b: Vec<Expr>,
    /// Highest nonzero order, when the recursion is seen to terminate.
    pub exact_degree: Option<usize>,
}

impl TwistorSeries {
    pub fn is_exact(&self) -> bool {
        self.exact_degree.is_some()
    }

    /// The curves λ ↦ (𝒴, 𝒵) with λ renamed X.
    pub fn to_family(&self) -> CurveFamily {
        let x = Expr::var("X");
        let sum = |cs: &[Expr]| Expr::add(cs.iter().enumerate().map(|(k, c)| c * x.powi(k as i64)));
        CurveFamily::new(VARS, sum(&self.a), sum(&self.b), SeedRule::Heavenly).expect("series uses w, z, x, y")
    }
}

struct Ops {
    txx: Poly,
    txy: Poly,
    tyy: Poly,
}

impl Ops {
    /// ∂_w − Θ_xy ∂_y + Θ_yy ∂_x.
    fn d0(&self, p: &Poly) -> Poly {
        &(&p.derivative(W) - &(&self.txy * &p.derivative(YV))) + &(&self.tyy * &p.derivative(XV))
    }

    /// ∂_z + Θ_xx ∂_y − Θ_xy ∂_x.
    fn d1(&self, p: &Poly) -> Poly {
        &(&p.derivative(Z) + &(&self.txx * &p.derivative(YV))) - &(&self.txy * &p.derivative(XV))
    }

    /// Solves ∂_y c = D0 prev, ∂_x c = −D1 prev with zero integration constant.
    fn step(&self, prev: &Poly, order: usize) -> Result<Poly, TwistorError> {
        let gy = self.d0(prev);
        let gx = -&self.d1(prev);
        let part = gy.integrate(YV);
        let rest = &gx - &part.derivative(XV);
        if !rest.derivative(YV).is_zero() {
            return Err(TwistorError::InconsistentRecursion(order));
        }
        Ok(&part + &rest.integrate(XV))
    }
}

fn only_wz(p: &Poly) -> bool {
    p.derivative(XV).is_zero() && p.derivative(YV).is_zero()
}

/// Expansion of the twistor curves of a polynomial heavenly potential up to order `n`.
pub fn twistor_series(theta: &Expr, n: usize) -> Result<TwistorSeries, TwistorError> {
    let th = Poly::from_expr(theta, &VARS).map_err(|_| TwistorError::NonPolynomialTheta(theta.to_string()))?;
    let ops = Ops { txx: th.derivative(XV).derivative(XV), txy: th.derivative(XV).derivative(YV), tyy: th.derivative(YV).derivative(YV) };
    let nv = 4;
    let mut a = vec![Poly::var(nv, W), Poly::var(nv, YV)];
    let mut b = vec![Poly::var(nv, Z), -&Poly::var(nv, XV)];
    let fixed = |k: usize| -> Option<(Poly, Poly)> {
        match k {
            2 => Some((-&th.derivative(XV), -&th.derivative(YV))),
            3 => Some((th.derivative(Z), -&th.derivative(W))),
            _ => None,
        }
    };
    for k in 2..=n.max(1) {
        let na = ops.step(&a[k - 1], k)?;
        let nb = ops.step(&b[k - 1], k)?;
        match fixed(k) {
            Some((fa, fb)) => {
                if !only_wz(&(&na - &fa)) || !only_wz(&(&nb - &fb)) {
                    return Err(TwistorError::GaugeMismatch(k));
                }
                a.push(fa);
                b.push(fb);
            }
            None => {
                a.push(na);
                b.push(nb);
            }
        }
    }
    a.truncate(n + 1);
    b.truncate(n + 1);
    let zero_at = |k: usize| a.get(k).map_or(false, Poly::is_zero) && b.get(k).map_or(false, Poly::is_zero);
    // Two consecutive vanishing orders past the gauge-fixed ones force every later order to vanish.
    let exact_degree = (2..n)
        .find(|&k| zero_at(k) && zero_at(k + 1))
        .map(|k| (0..k).rev().find(|&j| !a[j].is_zero() || !b[j].is_zero()).unwrap_or(0));
    let vars: Vec<Expr> = VARS.iter().map(|v| Expr::var(v)).collect();
    Ok(TwistorSeries {
        order: n,
        a: a.iter().map(|p| p.to_expr(&vars)).collect(),
        b: b.iter().map(|p| p.to_expr(&vars)).collect(),
        exact_degree,
    })
}
