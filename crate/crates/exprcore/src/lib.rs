//! Symbolic expression engine: exact rational constants, parsing, calculus,
//! compiled numeric evaluation and sampled zero tests, plus an exact
//! polynomial layer for identities that must hold on the nose.

mod calculus;
mod context;
mod error;
mod eval;
mod expr;
mod linalg;
mod parse;
pub mod poly;
mod print;
mod zero;

pub use calculus::{differentiate, differentiate_many, gradient, substitute, Differentiator};
pub use context::{Context, Point, DEFAULT_BOX};
pub use error::Error;
pub use eval::{eval, eval_at, Fault, Tape};
pub use expr::{Expr, Func, Node};
pub use linalg::rational_rank;
pub use parse::parse;
pub use poly::{is_rational_zero, Poly, RatFunc};
pub use zero::{zero_test, Verdict, ZeroTest, DEFAULT_SEED};

pub use num::BigRational;

/// Shorthand for a variable expression.
pub fn var(name: &str) -> Expr {
    Expr::var(name)
}

/// Shorthand for the rational constant n/d.
pub fn rat(n: i64, d: i64) -> Expr {
    Expr::rat(n, d)
}

/// 4th-order central difference of `e` along `v` at `x` (ordered by `ctx`).
pub fn central_difference(e: &Expr, ctx: &Context, v: &str, x: &[f64], h: f64) -> Result<f64, Error> {
    let i = ctx.index(v).ok_or_else(|| Error::UnknownVariable(v.to_string()))?;
    let t = Tape::compile(std::slice::from_ref(e), ctx)?;
    let at = |s: f64| -> Result<f64, Error> {
        let mut y = x.to_vec();
        y[i] += s;
        t.eval(&y).map(|v| v[0]).map_err(|f| t.fault_error(f))
    };
    Ok((at(-2.0 * h)? - 8.0 * at(-h)? + 8.0 * at(h)? - at(2.0 * h)?) / (12.0 * h))
}
