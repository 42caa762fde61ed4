use exprcore::{differentiate, Expr, ZeroTest};

use crate::error::PathError;
use crate::system::{total_derivative, SecondOrderSystem, VEL};

/// T^A_B and its trace-free part.
#[derive(Clone, Debug)]
pub struct WilczynskiTensor {
    pub t: [[Expr; 2]; 2],
    pub trace_free: [[Expr; 2]; 2],
}

impl WilczynskiTensor {
    /// The three independent trace-free entries: ½(T⁰₀ − T¹₁), T⁰₁, T¹₀.
    pub fn components(&self) -> [Expr; 3] {
        [self.trace_free[0][0].clone(), self.trace_free[0][1].clone(), self.trace_free[1][0].clone()]
    }
}

pub fn wilczynski(sys: &SecondOrderSystem) -> WilczynskiTensor {
    let dv: [[Expr; 2]; 2] = std::array::from_fn(|a| std::array::from_fn(|b| sys.dv(a, b)));
    let t: [[Expr; 2]; 2] = std::array::from_fn(|a| {
        std::array::from_fn(|b| {
            let quad = Expr::add((0..2).map(|c| &dv[a][c] * &dv[c][b]));
            -sys.dy(a, b) - Expr::rat(1, 4) * quad + Expr::rat(1, 2) * total_derivative(&dv[a][b], sys)
        })
    });
    let half_diff = Expr::rat(1, 2) * (&t[0][0] - &t[1][1]);
    let trace_free = [[half_diff.clone(), t[0][1].clone()], [t[1][0].clone(), -half_diff]];
    WilczynskiTensor { t, trace_free }
}

/// All three Wilczynski invariants vanish.
pub fn is_torsion_free(sys: &SecondOrderSystem, zt: &ZeroTest) -> Result<bool, PathError> {
    let w = wilczynski(sys);
    Ok(zt.all_zero(&w.components(), sys.context())?)
}

/// S^A_{BCD} indexed `s[a][b][c][d]`, with its symmetrization over the last three slots.
#[derive(Clone, Debug)]
pub struct FelsTensor {
    pub s: [[[[Expr; 2]; 2]; 2]; 2],
    pub sym: [[[[Expr; 2]; 2]; 2]; 2],
}

impl FelsTensor {
    /// Independent symmetrized entries S^A_(BCD), B ≤ C ≤ D.
    pub fn components(&self) -> Vec<Expr> {
        let mut out = Vec::new();
        for a in 0..2 {
            for (b, c, d) in [(0, 0, 0), (0, 0, 1), (0, 1, 1), (1, 1, 1)] {
                out.push(self.sym[a][b][c][d].clone());
            }
        }
        out
    }
}

pub fn fels(sys: &SecondOrderSystem) -> FelsTensor {
    let third = |a: usize, b: usize, c: usize, d: usize| {
        differentiate(&differentiate(&sys.dv(a, b), VEL[c]), VEL[d])
    };
    let trace: [[Expr; 2]; 2] =
        std::array::from_fn(|b| std::array::from_fn(|c| third(0, 0, b, c) + third(1, 1, b, c)));
    let s: [[[[Expr; 2]; 2]; 2]; 2] = std::array::from_fn(|a| {
        std::array::from_fn(|b| {
            std::array::from_fn(|c| {
                std::array::from_fn(|d| {
                    let corr = if a == d { Expr::rat(3, 4) * &trace[b][c] } else { Expr::zero() };
                    third(a, b, c, d) - corr
                })
            })
        })
    });
    let sym = std::array::from_fn(|a| {
        std::array::from_fn(|b| {
            std::array::from_fn(|c| {
                std::array::from_fn(|d| {
                    let perms = [(b, c, d), (b, d, c), (c, b, d), (c, d, b), (d, b, c), (d, c, b)];
                    Expr::rat(1, 6) * Expr::add(perms.iter().map(|&(i, j, k)| s[a][i][j][k].clone()))
                })
            })
        })
    });
    FelsTensor { s, sym }
}
