use exprcore::{differentiate, parse, Context, Expr};

use crate::error::PathError;

/// Canonical coordinates: independent variable, dependent pair, first derivatives.
pub const CANONICAL: [&str; 5] = ["X", "Y", "Z", "p0", "p1"];
/// Dependent variables Y^A.
pub const POS: [&str; 2] = ["Y", "Z"];
/// First derivatives P^A.
pub const VEL: [&str; 2] = ["p0", "p1"];

pub fn canonical_context() -> Context {
    Context::new(&CANONICAL)
}

/// Y'' = F, Z'' = G with a sampling context over the canonical coordinates.
#[derive(Clone, Debug)]
pub struct SecondOrderSystem {
    pub f: Expr,
    pub g: Expr,
    ctx: Context,
}

impl SecondOrderSystem {
    pub fn new(f: Expr, g: Expr) -> Result<Self, PathError> {
        Self::with_context(f, g, canonical_context())
    }

    /// Uses `ctx` for sampling; it must list exactly the canonical variables.
    pub fn with_context(f: Expr, g: Expr, ctx: Context) -> Result<Self, PathError> {
        let names: Vec<&str> = ctx.names().collect();
        if names != CANONICAL {
            return Err(exprcore::Error::Context(format!("expected context {CANONICAL:?}, got {names:?}")).into());
        }
        for v in f.variables().into_iter().chain(g.variables()) {
            if !CANONICAL.contains(&v.as_str()) {
                return Err(PathError::ForeignVariable(v));
            }
        }
        Ok(SecondOrderSystem { f, g, ctx })
    }

    pub fn parse(f: &str, g: &str) -> Result<Self, PathError> {
        Self::parse_in(f, g, canonical_context())
    }

    pub fn parse_in(f: &str, g: &str, ctx: Context) -> Result<Self, PathError> {
        let fe = parse(f, &ctx)?;
        let ge = parse(g, &ctx)?;
        Self::with_context(fe, ge, ctx)
    }

    pub fn trivial() -> Self {
        Self::new(Expr::zero(), Expr::zero()).unwrap()
    }

    pub fn context(&self) -> &Context {
        &self.ctx
    }

    /// Replaces the sampling box of one coordinate.
    pub fn with_box(mut self, name: &str, lo: f64, hi: f64) -> Self {
        self.ctx = self.ctx.with_box(name, lo, hi);
        self
    }

    /// Right-hand side F^A.
    pub fn rhs(&self, a: usize) -> &Expr {
        if a == 0 {
            &self.f
        } else {
            &self.g
        }
    }

    /// ∂F^A/∂P^B.
    pub fn dv(&self, a: usize, b: usize) -> Expr {
        differentiate(self.rhs(a), VEL[b])
    }

    /// ∂F^A/∂Y^B.
    pub fn dy(&self, a: usize, b: usize) -> Expr {
        differentiate(self.rhs(a), POS[b])
    }

    /// ∂F^C/∂P^C.
    pub fn divergence(&self) -> Expr {
        self.dv(0, 0) + self.dv(1, 1)
    }
}

/// d/dX = ∂_X + P^A ∂_{Y^A} + F^A ∂_{P^A}.
pub fn total_derivative(e: &Expr, sys: &SecondOrderSystem) -> Expr {
    let p0 = Expr::var("p0");
    let p1 = Expr::var("p1");
    Expr::add([
        differentiate(e, "X"),
        p0 * differentiate(e, "Y"),
        p1 * differentiate(e, "Z"),
        sys.f.clone() * differentiate(e, "p0"),
        sys.g.clone() * differentiate(e, "p1"),
    ])
}
