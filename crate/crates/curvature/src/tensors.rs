use exprcore::{differentiate, Expr, Verdict, ZeroTest};

use crate::error::CurvatureError;
use crate::metric::Metric;

type T3 = Vec<Vec<Vec<Expr>>>;
type T4 = Vec<Vec<Vec<Vec<Expr>>>>;

/// Levi-Civita curvature of a metric.
///
/// `riemann[a][b][c][d]` is R^a_bcd = ∂_d Γ^a_cb − ∂_c Γ^a_db + Γ^a_de Γ^e_cb − Γ^a_ce Γ^e_db,
/// Ricci R_bd = R^a_bad and R = g^bd R_bd. With this sign a round sphere has negative R.
#[derive(Clone, Debug)]
pub struct CurvaturePack {
    pub christoffel: T3,
    pub riemann: T4,
    pub riemann_lower: T4,
    pub ricci: Vec<Vec<Expr>>,
    pub scalar: Expr,
    pub weyl: T4,
}

fn t3(n: usize) -> T3 {
    vec![vec![vec![Expr::zero(); n]; n]; n]
}

fn t4(n: usize) -> T4 {
    vec![t3(n); n]
}

pub fn curvature(m: &Metric) -> CurvaturePack {
    let n = m.dim();
    let name = |i: usize| m.name(i).to_string();
    let dg: Vec<Vec<Vec<Expr>>> = (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|k| differentiate(m.g(i, j), &name(k))).collect()).collect())
        .collect();
    let mut gam = t3(n);
    for a in 0..n {
        for b in 0..n {
            for c in b..n {
                let e = Expr::rat(1, 2)
                    * Expr::add((0..n).filter(|&d| !m.inv(a, d).is_zero()).map(|d| {
                        m.inv(a, d) * (&dg[d][c][b] + &dg[d][b][c] - &dg[b][c][d])
                    }));
                gam[a][b][c] = e.clone();
                gam[a][c][b] = e;
            }
        }
    }
    let dgam: Vec<T3> = (0..n)
        .map(|k| {
            (0..n)
                .map(|a| (0..n).map(|b| (0..n).map(|c| differentiate(&gam[a][b][c], &name(k))).collect()).collect())
                .collect()
        })
        .collect();
    let mut riem = t4(n);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in c + 1..n {
                    let quad = Expr::add((0..n).map(|e| {
                        &gam[a][d][e] * &gam[e][c][b] - &gam[a][c][e] * &gam[e][d][b]
                    }));
                    let v = &dgam[d][a][c][b] - &dgam[c][a][d][b] + quad;
                    riem[a][b][d][c] = -&v;
                    riem[a][b][c][d] = v;
                }
            }
        }
    }
    let mut low = t4(n);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    low[a][b][c][d] =
                        Expr::add((0..n).filter(|&e| !m.g(a, e).is_zero()).map(|e| m.g(a, e) * &riem[e][b][c][d]));
                }
            }
        }
    }
    let ricci: Vec<Vec<Expr>> =
        (0..n).map(|b| (0..n).map(|d| Expr::add((0..n).map(|a| riem[a][b][a][d].clone()))).collect()).collect();
    let scalar = Expr::add((0..n).flat_map(|b| (0..n).map(move |d| (b, d))).map(|(b, d)| m.inv(b, d) * &ricci[b][d]));
    let weyl = if n == 4 { weyl_tensor(m, &low, &ricci, &scalar) } else { t4(n) };
    CurvaturePack { christoffel: gam, riemann: riem, riemann_lower: low, ricci, scalar, weyl }
}

fn weyl_tensor(m: &Metric, low: &T4, ric: &[Vec<Expr>], r: &Expr) -> T4 {
    let n = 4;
    let g = |i: usize, j: usize| m.g(i, j).clone();
    let mut c = t4(n);
    for a in 0..n {
        for b in 0..n {
            for cc in 0..n {
                for d in 0..n {
                    let ric_part = g(a, cc) * &ric[b][d] - g(a, d) * &ric[b][cc] - g(b, cc) * &ric[a][d]
                        + g(b, d) * &ric[a][cc];
                    let r_part = g(a, cc) * g(b, d) - g(a, d) * g(b, cc);
                    c[a][b][cc][d] =
                        &low[a][b][cc][d] - Expr::rat(1, 2) * ric_part + Expr::rat(1, 6) * r * r_part;
                }
            }
        }
    }
    c
}

impl CurvaturePack {
    /// Components of R_ab − (R/n) g_ab.
    pub fn traceless_ricci(&self, m: &Metric) -> Vec<Expr> {
        let n = m.dim();
        let mut out = Vec::new();
        for a in 0..n {
            for b in a..n {
                out.push(&self.ricci[a][b] - Expr::rat(1, n as i64) * &self.scalar * m.g(a, b));
            }
        }
        out
    }

    /// Antisymmetry, pair symmetry and the first Bianchi identity, as expressions that must vanish.
    pub fn identity_residuals(&self) -> Vec<Expr> {
        let r = &self.riemann_lower;
        let n = r.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        if a < b && c < d && (a, b) <= (c, d) {
                            out.push(&r[a][b][c][d] + &r[b][a][c][d]);
                            out.push(&r[a][b][c][d] - &r[c][d][a][b]);
                        }
                        if b < c && c < d {
                            out.push(&r[a][b][c][d] + &r[a][c][d][b] + &r[a][d][b][c]);
                        }
                    }
                }
            }
        }
        out
    }

    /// All single contractions of the Weyl tensor.
    pub fn weyl_traces(&self, m: &Metric) -> Vec<Expr> {
        let n = m.dim();
        let mut out = Vec::new();
        for b in 0..n {
            for d in b..n {
                out.push(Expr::add(
                    (0..n).flat_map(|a| (0..n).map(move |c| (a, c))).map(|(a, c)| m.inv(a, c) * &self.weyl[a][b][c][d]),
                ));
            }
        }
        out
    }
}

pub fn is_ricci_flat(m: &Metric, pack: &CurvaturePack, zt: &ZeroTest) -> Result<bool, CurvatureError> {
    let comps: Vec<Expr> = (0..m.dim()).flat_map(|a| (a..m.dim()).map(move |b| (a, b))).map(|(a, b)| pack.ricci[a][b].clone()).collect();
    Ok(zt.all_zero(&comps, m.context())?)
}

/// Λ with R_ab = Λ g_ab for constant Λ, if the metric is Einstein.
pub fn einstein_constant(m: &Metric, pack: &CurvaturePack, zt: &ZeroTest) -> Result<Option<f64>, CurvatureError> {
    if !zt.all_zero(&pack.traceless_ricci(m), m.context())? {
        return Ok(None);
    }
    let mut first: Option<f64> = None;
    let tol = zt.tol;
    let constant = zt.sample(m.context(), std::slice::from_ref(&pack.scalar), |_, v| {
        let (r, s) = v[0];
        match first {
            None => {
                first = Some(r);
                Verdict::Pass
            }
            Some(f) if (r - f).abs() <= tol * (1.0 + s) * 1e3 => Verdict::Pass,
            Some(_) => Verdict::Fail,
        }
    })?;
    Ok(if constant { first.map(|r| r / m.dim() as f64) } else { None })
}
