use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("syntax error at {line}:{col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("undeclared variable `{name}` at {line}:{col}")]
    Undeclared { name: String, line: usize, col: usize },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("singular evaluation of `{term}`: {reason}")]
    Singular { term: String, reason: &'static str },
    #[error("zero test inconclusive: {redraws} singular samples, last at `{last}`")]
    Inconclusive { redraws: usize, last: String },
    #[error("not a rational function: `{0}`")]
    NonRational(String),
    #[error("{0}")]
    Context(String),
}
