//! Probabilistic identity testing by sampling.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::context::Context;
use crate::error::Error;
use crate::eval::Tape;
use crate::expr::Expr;

pub const DEFAULT_SEED: u64 = 0x5eed_2024;

/// Settings for sampled zero tests.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ZeroTest {
    pub trials: usize,
    pub tol: f64,
    pub seed: u64,
    /// Singular samples tolerated before giving up.
    pub max_redraws: usize,
}

impl Default for ZeroTest {
    fn default() -> Self {
        ZeroTest { trials: 20, tol: 1e-9, seed: DEFAULT_SEED, max_redraws: 400 }
    }
}

/// Outcome of judging one sample.
pub enum Verdict {
    Pass,
    Fail,
    Redraw,
}

impl ZeroTest {
    pub fn new(trials: usize, tol: f64) -> Self {
        ZeroTest { trials, tol, ..Default::default() }
    }

    pub fn with_seed(self, seed: u64) -> Self {
        ZeroTest { seed, ..self }
    }

    pub fn with_trials(self, trials: usize) -> Self {
        ZeroTest { trials, ..self }
    }

    pub fn with_tol(self, tol: f64) -> Self {
        ZeroTest { tol, ..self }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }

    /// Uniform point from the context's sampling boxes.
    pub fn draw(rng: &mut impl Rng, ctx: &Context) -> Vec<f64> {
        (0..ctx.len())
            .map(|i| {
                let (lo, hi) = ctx.bounds(i);
                if lo == hi {
                    lo
                } else {
                    rng.gen_range(lo..hi)
                }
            })
            .collect()
    }

    /// Runs `judge` on `trials` good samples of the compiled `exprs`.
    ///
    /// Samples where evaluation is singular, or where the judge asks for it, are redrawn.
    pub fn sample<F>(&self, ctx: &Context, exprs: &[Expr], mut judge: F) -> Result<bool, Error>
    where
        F: FnMut(&[f64], &[(f64, f64)]) -> Verdict,
    {
        let tape = Tape::compile(exprs, ctx)?;
        let mut rng = self.rng();
        let mut redraws = 0usize;
        let mut good = 0usize;
        let mut last = String::new();
        while good < self.trials.max(1) {
            let x = Self::draw(&mut rng, ctx);
            let verdict = match tape.eval_scaled(&x) {
                Ok(vals) => judge(&x, &vals),
                Err(f) => {
                    last = tape.subterm(f.slot).to_string();
                    Verdict::Redraw
                }
            };
            match verdict {
                Verdict::Pass => good += 1,
                Verdict::Fail => return Ok(false),
                Verdict::Redraw => {
                    redraws += 1;
                    if redraws > self.max_redraws {
                        return Err(Error::Inconclusive { redraws, last });
                    }
                }
            }
        }
        Ok(true)
    }

    /// True when every expression vanishes at every sample, relative to its magnitude bound.
    pub fn all_zero(&self, exprs: &[Expr], ctx: &Context) -> Result<bool, Error> {
        let tol = self.tol;
        self.sample(ctx, exprs, |_, vals| {
            if vals.iter().all(|(v, s)| v.abs() <= tol * (1.0 + s.abs())) {
                Verdict::Pass
            } else {
                Verdict::Fail
            }
        })
    }

    pub fn is_zero(&self, e: &Expr, ctx: &Context) -> Result<bool, Error> {
        if e.is_zero() {
            return Ok(true);
        }
        self.all_zero(std::slice::from_ref(e), ctx)
    }

    /// Largest scaled residual |v|/(1+scale) over the samples, for reports.
    pub fn max_residual(&self, exprs: &[Expr], ctx: &Context) -> Result<f64, Error> {
        let mut worst = 0.0f64;
        self.sample(ctx, exprs, |_, vals| {
            for (v, s) in vals {
                worst = worst.max(v.abs() / (1.0 + s.abs()));
            }
            Verdict::Pass
        })?;
        Ok(worst)
    }
}

/// Sampled zero test with the default seed.
pub fn zero_test(e: &Expr, ctx: &Context, trials: usize, tol: f64) -> Result<bool, Error> {
    ZeroTest::new(trials, tol).is_zero(e, ctx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse;

    #[test]
    fn pythagorean_identity() {
        let ctx = Context::new(&["x"]);
        let e = parse("sin(x)^2 + cos(x)^2 - 1", &ctx).unwrap();
        assert!(zero_test(&e, &ctx, 20, 1e-9).unwrap());
    }

    #[test]
    fn nonzero_detected() {
        let ctx = Context::new(&["x", "y"]);
        let e = parse("x*y - 1", &ctx).unwrap();
        assert!(!zero_test(&e, &ctx, 20, 1e-9).unwrap());
    }

    #[test]
    fn singular_everywhere_is_inconclusive() {
        let ctx = Context::new(&["x"]).with_box("x", -2.0, -1.0);
        let e = parse("sqrt(x) + 1", &ctx).unwrap();
        let r = ZeroTest { max_redraws: 10, ..Default::default() }.is_zero(&e, &ctx);
        assert!(matches!(r, Err(Error::Inconclusive { .. })));
    }

    #[test]
    fn partly_singular_boxes_redraw() {
        let ctx = Context::new(&["x"]).with_box("x", -1.0, 1.0);
        let e = parse("sqrt(x)*sqrt(x + 1) - sqrt(x^2 + x)", &ctx).unwrap();
        assert!(zero_test(&e, &ctx, 20, 1e-9).unwrap());
    }
}
