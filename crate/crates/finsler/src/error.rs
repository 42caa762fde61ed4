use thiserror::Error;

#[derive(Debug, Error)]
pub enum FinslerError {
    #[error(transparent)]
    Expr(#[from] exprcore::Error),
    #[error(transparent)]
    Path(#[from] pathsys::PathError),
    #[error("fiber metric is singular")]
    Singular,
    #[error("flag is degenerate: direction and transverse vector are dependent")]
    DegenerateFlag,
    #[error("navigation data leave the Randers domain at {point:?} (1 - |W|^2 = {value})")]
    ZermeloDomain { point: Vec<f64>, value: f64 },
    #[error("chart requires a nonzero first fiber component")]
    Chart,
    #[error("Lagrangian has degenerate velocity Hessian")]
    DegenerateLagrangian,
    #[error("expression is not positively homogeneous of degree {0} in the fiber")]
    NotHomogeneous(u32),
}
