//! Front end for the path-geometry toolkit: geometry documents, analyses and the fixture corpus.

pub mod commands;
pub mod criteria;
pub mod document;
pub mod report;
pub mod tolerances;

use exprcore::ZeroTest;

/// Sampling settings shared by every analysis.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Settings {
    pub trials: usize,
    pub tol: f64,
    pub seed: u64,
    pub series_order: usize,
}

impl Default for Settings {
    fn default() -> Self {
        Settings { trials: 20, tol: 1e-9, seed: exprcore::DEFAULT_SEED, series_order: 8 }
    }
}

impl Settings {
    pub fn zero_test(&self) -> ZeroTest {
        ZeroTest::new(self.trials, self.tol).with_seed(self.seed)
    }

    /// Same seed with a different tolerance.
    pub fn zero_test_with(&self, trials: usize, tol: f64) -> ZeroTest {
        ZeroTest::new(trials, tol).with_seed(self.seed)
    }
}
