use exprcore::{Context, Expr, Tape, Verdict, ZeroTest};
use nalgebra::{DMatrix, DVector};

use crate::error::FinslerError;
use crate::function::{metric_tensor, FinslerFunction};
use crate::spray::SprayCurvature;

/// Compiled data for evaluating flag curvature at points of the slit tangent bundle.
pub struct FlagCurvature {
    tape: Tape,
}

impl FlagCurvature {
    pub fn new(f: &FinslerFunction, curv: &SprayCurvature) -> Result<Self, FinslerError> {
        let g = metric_tensor(f);
        let mut exprs: Vec<Expr> = g.iter().flatten().cloned().collect();
        for m in 0..3 {
            for i in 0..3 {
                for k in 0..3 {
                    for l in 0..3 {
                        exprs.push(curv.r[m][i][k][l].clone());
                    }
                }
            }
        }
        Ok(FlagCurvature { tape: Tape::compile(&exprs, f.context())? })
    }

    /// K(x, v, V) from V^i (v^j R_jikl v^l) V^k over the area of the flag, with the sign fixed so that round spheres are positive.
    pub fn eval(&self, x: [f64; 3], v: [f64; 3], w: [f64; 3]) -> Result<f64, FinslerError> {
        let pt = [x[0], x[1], x[2], v[0], v[1], v[2]];
        let vals = self.tape.eval(&pt).map_err(|f| self.tape.fault_error(f))?;
        let g = |i: usize, j: usize| vals[3 * i + j];
        let r = |m: usize, i: usize, k: usize, l: usize| vals[9 + 27 * m + 9 * i + 3 * k + l];
        let dot = |a: &[f64; 3], b: &[f64; 3]| (0..3).flat_map(|i| (0..3).map(move |j| (i, j))).map(|(i, j)| g(i, j) * a[i] * b[j]).sum::<f64>();
        let area = dot(&v, &v) * dot(&w, &w) - dot(&v, &w).powi(2);
        let scale = dot(&v, &v).abs() * dot(&w, &w).abs();
        if area.abs() <= 1e-12 * scale.max(1e-300) {
            return Err(FinslerError::DegenerateFlag);
        }
        let mut num = 0.0;
        for j in 0..3 {
            for m in 0..3 {
                for i in 0..3 {
                    for k in 0..3 {
                        for l in 0..3 {
                            num += w[i] * v[j] * g(j, m) * r(m, i, k, l) * v[l] * w[k];
                        }
                    }
                }
            }
        }
        Ok(-num / area)
    }
}

/// One-shot flag curvature.
pub fn flag_curvature(f: &FinslerFunction, curv: &SprayCurvature, x: [f64; 3], v: [f64; 3], w: [f64; 3]) -> Result<f64, FinslerError> {
    FlagCurvature::new(f, curv)?.eval(x, v, w)
}

#[derive(Clone, Debug)]
pub struct IsotropyReport {
    pub isotropic: bool,
    pub max_residual: f64,
    /// Fitted (ρ, τ) at each sample.
    pub fits: Vec<(f64, [f64; 3])>,
}

/// Least-squares fit of R^i_j ≈ ρ δ^i_j + τ_j v^i at sampled points.
pub fn isotropy_check(curv: &SprayCurvature, zt: &ZeroTest, tol: f64) -> Result<IsotropyReport, FinslerError> {
    let ctx: &Context = curv.context();
    let exprs: Vec<Expr> = curv.jacobi.iter().flatten().cloned().collect();
    let mut worst = 0.0f64;
    let mut fits = Vec::new();
    zt.sample(ctx, &exprs, |x, vals| {
        let v = [x[3], x[4], x[5]];
        let mut a = DMatrix::<f64>::zeros(9, 4);
        let mut b = DVector::<f64>::zeros(9);
        let mut size = 0.0f64;
        for i in 0..3 {
            for j in 0..3 {
                let row = 3 * i + j;
                if i == j {
                    a[(row, 0)] = 1.0;
                }
                a[(row, 1 + j)] = v[i];
                b[row] = vals[row].0;
                size = size.max(vals[row].0.abs()).max(vals[row].1.abs());
            }
        }
        let sol = match a.clone().svd(true, true).solve(&b, 1e-14) {
            Ok(s) => s,
            Err(_) => return Verdict::Redraw,
        };
        let res = (&a * &sol - &b).amax() / (1.0 + size);
        worst = worst.max(res);
        fits.push((sol[0], [sol[1], sol[2], sol[3]]));
        Verdict::Pass
    })?;
    Ok(IsotropyReport { isotropic: worst <= tol, max_residual: worst, fits })
}
