use exprcore::{differentiate, Context, Differentiator, Expr, ZeroTest};

use crate::error::FinslerError;
use crate::function::{homogeneous, inverse3, metric_tensor, FinslerFunction, BASE, FIBER};

/// How geodesic spray coefficients are obtained from ℱ.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SprayFormula {
    /// Γ^i = ¼ f^il (∂²ℱ²/∂v_l∂X^m v^m − ∂ℱ²/∂X^l).
    #[default]
    Energy,
    /// Γ^i = ½ γ^i_jk v^j v^k with γ the Christoffel formula applied to the fiber-dependent f.
    Christoffel,
}

/// S = v^i ∂/∂X^i − 2Γ^i ∂/∂v^i.
#[derive(Clone, Debug)]
pub struct Spray {
    pub gamma: [Expr; 3],
    ctx: Context,
}

impl Spray {
    pub fn new(gamma: [Expr; 3], ctx: Context) -> Self {
        Spray { gamma, ctx }
    }

    pub fn context(&self) -> &Context {
        &self.ctx
    }

    /// Γ^i_j = ∂Γ^i/∂v_j.
    pub fn first(&self, i: usize, j: usize) -> Expr {
        differentiate(&self.gamma[i], FIBER[j])
    }

    /// Γ^i_jk = ∂²Γ^i/∂v_j∂v_k.
    pub fn second(&self, i: usize, j: usize, k: usize) -> Expr {
        differentiate(&self.first(i, j), FIBER[k])
    }

    /// Every coefficient is 2-homogeneous in the fiber.
    pub fn is_homogeneous(&self, zt: &ZeroTest) -> Result<bool, FinslerError> {
        let euler: Vec<Expr> = (0..3)
            .map(|i| Expr::add((0..3).map(|j| Expr::var(FIBER[j]) * self.first(i, j))) - Expr::int(2) * &self.gamma[i])
            .collect();
        if !zt.all_zero(&euler, &self.ctx)? {
            return Ok(false);
        }
        for g in &self.gamma {
            if !homogeneous(g, 2, &self.ctx, zt)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Geodesic spray of ℱ.
pub fn geodesic_spray(f: &FinslerFunction, formula: SprayFormula) -> Result<Spray, FinslerError> {
    let g = metric_tensor(f);
    let inv = inverse3(&g)?;
    let v: Vec<Expr> = FIBER.iter().map(|n| Expr::var(n)).collect();
    let gamma: [Expr; 3] = match formula {
        SprayFormula::Energy => {
            let e = &f.square;
            let a: Vec<Expr> = (0..3)
                .map(|l| {
                    let dv = differentiate(e, FIBER[l]);
                    Expr::add((0..3).map(|m| differentiate(&dv, BASE[m]) * &v[m])) - differentiate(e, BASE[l])
                })
                .collect();
            std::array::from_fn(|i| Expr::rat(1, 4) * Expr::add((0..3).map(|l| &inv[i][l] * &a[l])))
        }
        SprayFormula::Christoffel => {
            let dg: Vec<Vec<Vec<Expr>>> =
                (0..3).map(|m| (0..3).map(|i| (0..3).map(|j| differentiate(&g[i][j], BASE[m])).collect()).collect()).collect();
            // Lowered symbols contracted with v^j v^k: Σ_jk ½(f_lk,j + f_jl,k − f_jk,l) v^j v^k.
            let lowered: Vec<Expr> = (0..3)
                .map(|l| {
                    Expr::add((0..3).flat_map(|j| (0..3).map(move |k| (j, k))).map(|(j, k)| {
                        Expr::rat(1, 2) * (&dg[j][l][k] + &dg[k][j][l] - &dg[l][j][k]) * &v[j] * &v[k]
                    }))
                })
                .collect();
            std::array::from_fn(|i| Expr::rat(1, 2) * Expr::add((0..3).map(|l| &inv[i][l] * &lowered[l])))
        }
    };
    Ok(Spray::new(gamma, f.context().clone()))
}

/// Riemann curvature R^l_kij of a spray, stored as r[l][k][i][j], and its Jacobi endomorphism.
#[derive(Clone, Debug)]
pub struct SprayCurvature {
    pub r: Vec<Vec<Vec<Vec<Expr>>>>,
    pub jacobi: [[Expr; 3]; 3],
    ctx: Context,
}

impl SprayCurvature {
    pub fn context(&self) -> &Context {
        &self.ctx
    }

    /// R^l_kij + R^l_kji for all indices.
    pub fn antisymmetry_residuals(&self) -> Vec<Expr> {
        let mut out = Vec::new();
        for l in 0..3 {
            for k in 0..3 {
                for i in 0..3 {
                    for j in i..3 {
                        out.push(&self.r[l][k][i][j] + &self.r[l][k][j][i]);
                    }
                }
            }
        }
        out
    }
}

/// R^l_kij = H_i(Γ^l_jk) − H_j(Γ^l_ik) + Γ^l_im Γ^m_jk − Γ^l_jm Γ^m_ik with H_i = ∂_{X^i} − Γ^j_i ∂_{v^j}.
pub fn spray_curvature(s: &Spray) -> SprayCurvature {
    let mut dx: Vec<Differentiator> = BASE.iter().map(|n| Differentiator::new(n)).collect();
    let mut dv: Vec<Differentiator> = FIBER.iter().map(|n| Differentiator::new(n)).collect();
    let g1: Vec<Vec<Expr>> = (0..3).map(|i| (0..3).map(|j| dv[j].run(&s.gamma[i])).collect()).collect();
    let g2: Vec<Vec<Vec<Expr>>> =
        (0..3).map(|l| (0..3).map(|j| (0..3).map(|k| dv[k].run(&g1[l][j])).collect()).collect()).collect();
    let mut h = |i: usize, e: &Expr| -> Expr {
        let mut out = dx[i].run(e);
        for j in 0..3 {
            out = out - &g1[j][i] * dv[j].run(e);
        }
        out
    };
    let mut r = vec![vec![vec![vec![Expr::zero(); 3]; 3]; 3]; 3];
    for l in 0..3 {
        for k in 0..3 {
            for i in 0..3 {
                for j in 0..3 {
                    let quad = Expr::add((0..3).map(|m| &g2[l][i][m] * &g2[m][j][k] - &g2[l][j][m] * &g2[m][i][k]));
                    r[l][k][i][j] = h(i, &g2[l][j][k]) - h(j, &g2[l][i][k]) + quad;
                }
            }
        }
    }
    let v: Vec<Expr> = FIBER.iter().map(|n| Expr::var(n)).collect();
    let jacobi = std::array::from_fn(|i| {
        std::array::from_fn(|j| Expr::add((0..3).flat_map(|k| (0..3).map(move |l| (k, l))).map(|(k, l)| &r[i][k][j][l] * &v[k] * &v[l])))
    });
    SprayCurvature { r, jacobi, ctx: s.context().clone() }
}
