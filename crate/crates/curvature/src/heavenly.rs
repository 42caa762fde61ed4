use exprcore::{differentiate, differentiate_many, Context, Expr, ZeroTest};

use crate::error::CurvatureError;
use crate::metric::{determinant, Metric};

/// Coordinates of the heavenly potential.
pub const THETA_VARS: [&str; 4] = ["w", "z", "x", "y"];
/// Coordinates of the Gibbons–Hawking metric; H depends on the first three.
pub const GH_VARS: [&str; 4] = ["w", "y", "t", "z"];

fn d2(f: &Expr, a: &str, b: &str) -> Expr {
    differentiate(&differentiate(f, a), b)
}

/// dw dx + dz dy − Θ_xx dz² − Θ_yy dw² + 2Θ_xy dw dz.
pub fn heavenly_metric(theta: &Expr, ctx: Context) -> Result<Metric, CurvatureError> {
    let h = Expr::rat(1, 2);
    Metric::from_entries(
        ctx,
        &[
            (0, 2, h.clone()),
            (1, 3, h),
            (1, 1, -d2(theta, "x", "x")),
            (0, 0, -d2(theta, "y", "y")),
            (0, 1, d2(theta, "x", "y")),
        ],
    )
}

/// ψ_k = (−1)^k ∂_x^k ∂_y^(4−k) Θ for k = 0..4.
pub fn weyl_spinor(theta: &Expr) -> [Expr; 5] {
    std::array::from_fn(|k| {
        let mut vars = vec!["x"; k];
        vars.extend(std::iter::repeat("y").take(4 - k));
        let d = differentiate_many(theta, &vars);
        if k % 2 == 0 {
            d
        } else {
            -d
        }
    })
}

/// Potential H(w, y, t) with V = H_tt and A = H_ty dw − (V/2) dy.
#[derive(Clone, Debug)]
pub struct GhData {
    pub h: Expr,
}

impl GhData {
    pub fn new(h: Expr) -> Self {
        GhData { h }
    }

    pub fn v(&self) -> Expr {
        d2(&self.h, "t", "t")
    }

    /// (A_w, A_y, A_t).
    pub fn a(&self) -> [Expr; 3] {
        [d2(&self.h, "t", "y"), Expr::rat(-1, 2) * self.v(), Expr::zero()]
    }
}

/// V(¼dy² + dw dt) − V⁻¹(dz + A)² in coordinates (w, y, t, z).
pub fn gh_metric(d: &GhData, ctx: Context) -> Result<Metric, CurvatureError> {
    let v = d.v();
    if v.is_zero() {
        return Err(CurvatureError::Degenerate);
    }
    let iv = v.recip();
    let [aw, ay, _] = d.a();
    Metric::from_entries(
        ctx,
        &[
            (1, 1, Expr::rat(1, 4) * &v - &ay * &ay * &iv),
            (0, 2, Expr::rat(1, 2) * &v),
            (3, 3, -iv.clone()),
            (0, 3, -&aw * &iv),
            (1, 3, -&ay * &iv),
            (0, 0, -&aw * &aw * &iv),
            (0, 1, -&aw * &ay * &iv),
        ],
    )
}

/// H_tw + H_yy.
pub fn gh_wave_residual(d: &GhData) -> Expr {
    d2(&d.h, "t", "w") + d2(&d.h, "y", "y")
}

/// ⋆dV − dA on (w, y, t) for ¼dy² + dw dt with orientation dw∧dy∧dt, as (wy, wt, yt) components.
pub fn monopole_residual(d: &GhData) -> [Expr; 3] {
    let vars = ["w", "y", "t"];
    let h: Vec<Vec<Expr>> = vec![
        vec![Expr::zero(), Expr::zero(), Expr::rat(1, 2)],
        vec![Expr::zero(), Expr::rat(1, 4), Expr::zero()],
        vec![Expr::rat(1, 2), Expr::zero(), Expr::zero()],
    ];
    let hinv = [[0, 0, 2], [0, 4, 0], [2, 0, 0]];
    let vol = (-determinant(&h)).sqrt();
    let v = d.v();
    let dv: Vec<Expr> = vars.iter().map(|s| differentiate(&v, s)).collect();
    let up: Vec<Expr> = (0..3).map(|i| Expr::add((0..3).map(|l| Expr::int(hinv[i][l]) * &dv[l]))).collect();
    let a = d.a();
    let pairs = [(0, 1, 2), (0, 2, 1), (1, 2, 0)];
    pairs.map(|(j, k, i)| {
        let eps = if (i, j, k) == (1, 0, 2) { -1 } else { 1 };
        let star = Expr::int(eps) * &vol * &up[i];
        let da = differentiate(&a[k], vars[j]) - differentiate(&a[j], vars[k]);
        star - da
    })
}

/// Parts of [L₀, L₁] outside span{L₀, L₁}, in the (x, y) directions, over (w, z, x, y, lam).
pub fn lax_residuals(theta: &Expr) -> [Expr; 2] {
    let lam = Expr::var("lam");
    let (txx, txy, tyy) = (d2(theta, "x", "x"), d2(theta, "x", "y"), d2(theta, "y", "y"));
    let l0 = [-lam.clone(), Expr::zero(), -&lam * &tyy, Expr::one() + &lam * &txy];
    let l1 = [Expr::zero(), lam.clone(), Expr::one() - &lam * &txy, &lam * &txx];
    let apply = |l: &[Expr; 4], f: &Expr| Expr::add((0..4).map(|i| &l[i] * differentiate(f, THETA_VARS[i])));
    let comm: Vec<Expr> = (0..4).map(|i| apply(&l0, &l1[i]) - apply(&l1, &l0[i])).collect();
    // Solve the w and z rows for the span coefficients, scaled by λ to stay polynomial.
    let alpha_l = -comm[0].clone();
    let beta_l = comm[1].clone();
    std::array::from_fn(|k| {
        let i = k + 2;
        &lam * &comm[i] - &alpha_l * &l0[i] - &beta_l * &l1[i]
    })
}

/// The Lax pair for Θ closes under brackets.
pub fn lax_frobenius(theta: &Expr, zt: &ZeroTest) -> Result<bool, CurvatureError> {
    let ctx = Context::new(&["w", "z", "x", "y", "lam"]).with_box("lam", -2.0, 2.0);
    Ok(zt.all_zero(&lax_residuals(theta), &ctx)?)
}
