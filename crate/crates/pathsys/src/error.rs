use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum PathError {
    #[error(transparent)]
    Expr(#[from] exprcore::Error),
    #[error("system references `{0}` outside (X, Y, Z, p0, p1)")]
    ForeignVariable(String),
    #[error("not integrable: {0}")]
    NotIntegrable(String),
}
