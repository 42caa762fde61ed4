use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum TwistorError {
    #[error(transparent)]
    Expr(#[from] exprcore::Error),
    #[error("potential must be polynomial in (w, z, x, y): {0}")]
    NonPolynomialTheta(String),
    #[error("recursion inconsistent at order {0}; the potential violates the heavenly equation")]
    InconsistentRecursion(usize),
    #[error("order-{0} coefficient differs from the normalized expansion by more than a function of (w, z)")]
    GaugeMismatch(usize),
    #[error("Newton iteration did not converge after {iterations} steps (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },
    #[error("Jacobian is singular at the current iterate")]
    SingularJacobian,
    #[error("intersection condition has degree {0} in the displacement, not 2")]
    NotQuadratic(usize),
    #[error("degree {degree} in X exceeds the limit {max}")]
    DegreeOverflow { degree: usize, max: usize },
    #[error("family must list four parameters distinct from X")]
    Parameters,
}
