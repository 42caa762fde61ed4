use exprcore::{differentiate, parse, substitute, Context, Error, Expr};

/// Base coordinates (X, Y, Z).
pub const BASE: [&str; 3] = ["X", "Y", "Z"];

pub fn base_context() -> Context {
    Context::new(&BASE)
}

/// χ = χ₋₁∂_X + χ₀∂_Y + χ₁∂_Z; `c[0]` is χ₋₁.
#[derive(Clone, Debug, PartialEq)]
pub struct VectorField3 {
    pub c: [Expr; 3],
}

impl VectorField3 {
    pub fn new(c: [Expr; 3]) -> Result<Self, Error> {
        for e in &c {
            if let Some(v) = e.variables().into_iter().find(|v| !BASE.contains(&v.as_str())) {
                return Err(Error::UnknownVariable(v));
            }
        }
        Ok(VectorField3 { c })
    }

    pub fn parse(x: &str, y: &str, z: &str) -> Result<Self, Error> {
        let ctx = base_context();
        Self::new([parse(x, &ctx)?, parse(y, &ctx)?, parse(z, &ctx)?])
    }

    pub fn zero() -> Self {
        VectorField3 { c: std::array::from_fn(|_| Expr::zero()) }
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Expr::is_zero)
    }

    /// χ(f) for f over any context containing (X, Y, Z).
    pub fn apply(&self, f: &Expr) -> Expr {
        Expr::add((0..3).map(|i| &self.c[i] * differentiate(f, BASE[i])))
    }

    pub fn scale(&self, k: &Expr) -> Self {
        VectorField3 { c: std::array::from_fn(|i| k * &self.c[i]) }
    }

    pub fn add(&self, o: &Self) -> Self {
        VectorField3 { c: std::array::from_fn(|i| &self.c[i] + &o.c[i]) }
    }

    /// Transports a field given in coordinates x̂ = φ(x) back to x, where `inverse` writes x in terms of x̂
    /// (with x̂ named X, Y, Z) and `forward` writes x̂ in terms of x.
    pub fn pull_back(&self, forward: &[Expr; 3], inverse: &[Expr; 3]) -> Self {
        let at_hat: Vec<(&str, Expr)> = BASE.iter().copied().zip(forward.iter().cloned()).collect();
        let c = std::array::from_fn(|i| {
            let pushed = Expr::add((0..3).map(|j| &self.c[j] * differentiate(&inverse[i], BASE[j])));
            substitute(&pushed, &at_hat)
        });
        VectorField3 { c }
    }
}

impl std::fmt::Display for VectorField3 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}, {})", self.c[0], self.c[1], self.c[2])
    }
}

/// [a, b]^i = a(b^i) − b(a^i).
pub fn lie_bracket(a: &VectorField3, b: &VectorField3) -> VectorField3 {
    VectorField3 { c: std::array::from_fn(|i| a.apply(&b.c[i]) - b.apply(&a.c[i])) }
}
