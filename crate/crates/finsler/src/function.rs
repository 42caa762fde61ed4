use exprcore::{differentiate, parse, substitute, Context, Expr, ZeroTest};

use crate::error::FinslerError;

/// Base coordinates X^k.
pub const BASE: [&str; 3] = ["X", "Y", "Z"];
/// Fiber coordinates P^k.
pub const FIBER: [&str; 3] = ["v0", "v1", "v2"];

/// Context (X, Y, Z, v0, v1, v2).
pub fn fiber_context() -> Context {
    Context::new(&[BASE[0], BASE[1], BASE[2], FIBER[0], FIBER[1], FIBER[2]])
}

/// Finsler function ℱ held through its square, so that ℱ itself may be left implicit.
#[derive(Clone, Debug)]
pub struct FinslerFunction {
    pub square: Expr,
    ctx: Context,
}

impl FinslerFunction {
    pub fn new(f: Expr) -> Self {
        Self::from_square(&f * &f)
    }

    pub fn from_square(square: Expr) -> Self {
        FinslerFunction { square, ctx: fiber_context() }
    }

    pub fn parse(src: &str) -> Result<Self, FinslerError> {
        Ok(Self::new(parse(src, &fiber_context())?))
    }

    pub fn with_box(mut self, name: &str, lo: f64, hi: f64) -> Self {
        self.ctx = self.ctx.with_box(name, lo, hi);
        self
    }

    pub fn with_context(mut self, ctx: Context) -> Self {
        self.ctx = ctx;
        self
    }

    pub fn context(&self) -> &Context {
        &self.ctx
    }

    /// ℱ²(x, c·v) = c²ℱ²(x, v) at sampled points and several c > 0.
    pub fn is_homogeneous(&self, zt: &ZeroTest) -> Result<bool, FinslerError> {
        homogeneous(&self.square, 2, &self.ctx, zt)
    }
}

pub(crate) fn homogeneous(e: &Expr, degree: u32, ctx: &Context, zt: &ZeroTest) -> Result<bool, FinslerError> {
    let mut residuals = Vec::new();
    for (n, d) in [(3, 2), (1, 3), (7, 5)] {
        let c = Expr::rat(n, d);
        let scaled: Vec<(&str, Expr)> = FIBER.iter().map(|v| (*v, &c * Expr::var(v))).collect();
        residuals.push(substitute(e, &scaled) - c.powi(degree as i64) * e);
    }
    Ok(zt.all_zero(&residuals, ctx)?)
}

/// f_ij = ½ ∂²ℱ²/∂v_i∂v_j.
pub fn metric_tensor(f: &FinslerFunction) -> [[Expr; 3]; 3] {
    let grad: Vec<Expr> = FIBER.iter().map(|v| differentiate(&f.square, v)).collect();
    std::array::from_fn(|i| std::array::from_fn(|j| Expr::rat(1, 2) * differentiate(&grad[i], FIBER[j])))
}

pub(crate) fn det3(m: &[[Expr; 3]; 3]) -> Expr {
    let c = |i: usize, j: usize| cofactor(m, i, j);
    &m[0][0] * c(0, 0) + &m[0][1] * c(0, 1) + &m[0][2] * c(0, 2)
}

fn cofactor(m: &[[Expr; 3]; 3], i: usize, j: usize) -> Expr {
    let (r0, r1) = ((i + 1) % 3, (i + 2) % 3);
    let (c0, c1) = ((j + 1) % 3, (j + 2) % 3);
    &m[r0][c0] * &m[r1][c1] - &m[r0][c1] * &m[r1][c0]
}

/// Symbolic inverse via the adjugate.
pub(crate) fn inverse3(m: &[[Expr; 3]; 3]) -> Result<[[Expr; 3]; 3], FinslerError> {
    let det = det3(m);
    if det.is_zero() {
        return Err(FinslerError::Singular);
    }
    let inv = det.recip();
    Ok(std::array::from_fn(|i| std::array::from_fn(|j| cofactor(m, j, i) * &inv)))
}
