use std::collections::BTreeMap;

use exprcore::rational_rank;
use num::{BigRational, Zero};

/// β(Y') = Σ ξ_k (Y')^k, given up to order K, optionally continued by ξ_k = c for all k > K.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct BetaFamily {
    pub coeffs: BTreeMap<u32, BigRational>,
    pub order: u32,
    pub tail: Option<BigRational>,
}

impl BetaFamily {
    pub fn new(coeffs: impl IntoIterator<Item = (u32, BigRational)>) -> Self {
        let coeffs: BTreeMap<_, _> = coeffs.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let order = coeffs.keys().next_back().copied().unwrap_or(0);
        BetaFamily { coeffs, order, tail: None }
    }

    /// Sets ξ_k = c for every k beyond the current order.
    pub fn with_tail(mut self, c: BigRational) -> Self {
        self.tail = (!c.is_zero()).then_some(c);
        self
    }

    pub fn xi(&self, k: i64) -> BigRational {
        if k < 0 {
            return BigRational::zero();
        }
        let k = k as u32;
        if k <= self.order {
            self.coeffs.get(&k).cloned().unwrap_or_else(BigRational::zero)
        } else {
            self.tail.clone().unwrap_or_else(BigRational::zero)
        }
    }

    /// β is at most quadratic.
    pub fn is_quadratic(&self) -> bool {
        self.tail.is_none() && self.coeffs.keys().all(|&k| k < 3)
    }
}

/// 12 − rank M₁ − rank M₂, or 15 when β is quadratic.
pub fn beta_symmetry_dimension(fam: &BetaFamily) -> usize {
    if fam.is_quadratic() {
        return 15;
    }
    let q = |v: i64| BigRational::from_integer(v.into());
    let last = fam.order as i64 + 3;
    let mut m1 = Vec::new();
    let mut m2 = Vec::new();
    for k in 3..=last {
        let (prev, cur, next) = (fam.xi(k - 1), fam.xi(k), fam.xi(k + 1));
        m1.push(vec![cur.clone(), next.clone()]);
        m2.push(vec![cur.clone(), q(k - 2) * &cur, q(k - 3) * prev, q(-(k + 1)) * next]);
    }
    12 - rational_rank(m1) - rational_rank(m2)
}
