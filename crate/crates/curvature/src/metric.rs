use exprcore::{parse, Context, Expr, Verdict, ZeroTest};

use crate::error::CurvatureError;

/// Symmetric metric g_ab over named coordinates, with its symbolic inverse.
#[derive(Clone, Debug)]
pub struct Metric {
    ctx: Context,
    g: Vec<Vec<Expr>>,
    det: Expr,
    inv: Vec<Vec<Expr>>,
}

fn minor(m: &[Vec<Expr>], row: usize, col: usize) -> Vec<Vec<Expr>> {
    m.iter()
        .enumerate()
        .filter(|(i, _)| *i != row)
        .map(|(_, r)| r.iter().enumerate().filter(|(j, _)| *j != col).map(|(_, e)| e.clone()).collect())
        .collect()
}

pub(crate) fn determinant(m: &[Vec<Expr>]) -> Expr {
    match m.len() {
        0 => Expr::one(),
        1 => m[0][0].clone(),
        2 => &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0],
        n => Expr::add((0..n).filter(|&j| !m[0][j].is_zero()).map(|j| {
            let sign = if j % 2 == 0 { 1 } else { -1 };
            Expr::int(sign) * &m[0][j] * determinant(&minor(m, 0, j))
        })),
    }
}

impl Metric {
    /// `g` is the full matrix; it must be structurally symmetric.
    pub fn new(ctx: Context, g: Vec<Vec<Expr>>) -> Result<Metric, CurvatureError> {
        let n = ctx.len();
        if g.len() != n || g.iter().any(|r| r.len() != n) {
            return Err(CurvatureError::Shape(format!("expected a {n}×{n} matrix")));
        }
        for i in 0..n {
            for j in i + 1..n {
                if g[i][j] != g[j][i] {
                    return Err(CurvatureError::Asymmetric(i, j));
                }
            }
        }
        let det = determinant(&g);
        let inv_det = det.recip();
        let inv = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
                        Expr::int(sign) * determinant(&minor(&g, j, i)) * &inv_det
                    })
                    .collect()
            })
            .collect();
        Ok(Metric { ctx, g, det, inv })
    }

    /// Builds from upper-triangle entries `(i, j, g_ij)`; unspecified entries are zero.
    pub fn from_entries(ctx: Context, entries: &[(usize, usize, Expr)]) -> Result<Metric, CurvatureError> {
        let n = ctx.len();
        let mut g = vec![vec![Expr::zero(); n]; n];
        for (i, j, e) in entries {
            if *i >= n || *j >= n {
                return Err(CurvatureError::Shape(format!("entry ({i}, {j}) out of range")));
            }
            g[*i][*j] = e.clone();
            g[*j][*i] = e.clone();
        }
        Metric::new(ctx, g)
    }

    /// Parses upper-triangle entries keyed by coordinate names.
    pub fn parse(ctx: Context, entries: &[(&str, &str, &str)]) -> Result<Metric, CurvatureError> {
        let mut out = Vec::new();
        for (a, b, src) in entries {
            let i = ctx.index(a).ok_or_else(|| exprcore::Error::UnknownVariable(a.to_string()))?;
            let j = ctx.index(b).ok_or_else(|| exprcore::Error::UnknownVariable(b.to_string()))?;
            out.push((i.min(j), i.max(j), parse(src, &ctx)?));
        }
        Metric::from_entries(ctx, &out)
    }

    pub fn context(&self) -> &Context {
        &self.ctx
    }

    pub fn with_box(mut self, name: &str, lo: f64, hi: f64) -> Self {
        self.ctx = self.ctx.with_box(name, lo, hi);
        self
    }

    pub fn dim(&self) -> usize {
        self.g.len()
    }

    pub fn name(&self, i: usize) -> &str {
        self.ctx.name(i)
    }

    pub fn g(&self, i: usize, j: usize) -> &Expr {
        &self.g[i][j]
    }

    pub fn inv(&self, i: usize, j: usize) -> &Expr {
        &self.inv[i][j]
    }

    pub fn det(&self) -> &Expr {
        &self.det
    }

    pub fn matrix(&self) -> &[Vec<Expr>] {
        &self.g
    }

    /// c·g for an expression c.
    pub fn scaled(&self, c: &Expr) -> Result<Metric, CurvatureError> {
        let g = self.g.iter().map(|r| r.iter().map(|e| c * e).collect()).collect();
        Metric::new(self.ctx.clone(), g)
    }

    /// Fails when the determinant vanishes at a sample.
    pub fn check_nondegenerate(&self, zt: &ZeroTest) -> Result<(), CurvatureError> {
        let tol = zt.tol;
        let ok = zt.sample(&self.ctx, std::slice::from_ref(&self.det), |_, v| {
            if v[0].0.abs() > tol * (1.0 + v[0].1) {
                Verdict::Pass
            } else {
                Verdict::Fail
            }
        })?;
        if ok {
            Ok(())
        } else {
            Err(CurvatureError::Degenerate)
        }
    }
}
