use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum CurvatureError {
    #[error(transparent)]
    Expr(#[from] exprcore::Error),
    #[error("metric is degenerate on its sampling box")]
    Degenerate,
    #[error("metric is not symmetric at ({0}, {1})")]
    Asymmetric(usize, usize),
    #[error("{0}")]
    Shape(String),
}
