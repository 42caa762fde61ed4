use exprcore::{substitute, Expr, ZeroTest};

use crate::error::PathError;
use crate::system::{total_derivative, SecondOrderSystem};

/// ε_AB with ε_01 = +1.
pub(crate) fn eps(a: usize, b: usize) -> i64 {
    match (a, b) {
        (0, 1) => 1,
        (1, 0) => -1,
        _ => 0,
    }
}

/// g = ε_AB dY^A dP^B + φ_AB dY^A dY^B on (X, Y, Z, p0, p1).
#[derive(Clone, Debug)]
pub struct CorrespondenceMetric {
    pub g: [[Expr; 5]; 5],
    pub phi: [[Expr; 2]; 2],
    pub omega2: Expr,
}

impl CorrespondenceMetric {
    /// The (Y, Z, p0, p1) block.
    pub fn block(&self) -> [[Expr; 4]; 4] {
        std::array::from_fn(|i| std::array::from_fn(|j| self.g[i + 1][j + 1].clone()))
    }
}

pub fn correspondence_metric(sys: &SecondOrderSystem) -> CorrespondenceMetric {
    let div = sys.divergence();
    let phi: [[Expr; 2]; 2] = std::array::from_fn(|a| {
        std::array::from_fn(|b| {
            let lin = Expr::add((0..2).map(|c| Expr::int(eps(a, c)) * sys.dv(c, b)));
            Expr::rat(-1, 2) * lin + Expr::rat(eps(a, b), 4) * &div
        })
    });
    let mut g: [[Expr; 5]; 5] = std::array::from_fn(|_| std::array::from_fn(|_| Expr::zero()));
    for a in 0..2 {
        for b in 0..2 {
            let e = eps(a, b);
            if e != 0 {
                g[1 + a][3 + b] = Expr::rat(e, 2);
                g[3 + b][1 + a] = Expr::rat(e, 2);
            }
        }
    }
    g[1][1] = phi[0][0].clone();
    g[2][2] = phi[1][1].clone();
    let off = Expr::rat(1, 2) * (&phi[0][1] + &phi[1][0]);
    g[1][2] = off.clone();
    g[2][1] = off;
    CorrespondenceMetric { g, phi, omega2: Expr::rat(1, 2) * div }
}

/// The (Y, Z, p0, p1) block at X = 0 rewritten in heavenly coordinates (w, z, x, y)
/// via Y = w, Z = −z, p0 = −y, p1 = −x.
pub fn correspondence_quadric(sys: &SecondOrderSystem) -> [[Expr; 4]; 4] {
    let block = correspondence_metric(sys).block();
    let at = [
        ("X", Expr::zero()),
        ("Y", Expr::var("w")),
        ("Z", -Expr::var("z")),
        ("p0", -Expr::var("y")),
        ("p1", -Expr::var("x")),
    ];
    // heavenly coordinate i reads block slot src[i] with sign sign[i]
    let src = [0, 1, 3, 2];
    let sign = [1, -1, -1, -1];
    std::array::from_fn(|i| {
        std::array::from_fn(|j| Expr::int(sign[i] * sign[j]) * substitute(&block[src[i]][src[j]], &at))
    })
}

/// dφ_AB/dX + ∂F^C/∂Y^(B ε_A)C − Ω² φ_AB for AB = 00, 01, 11.
pub fn conformal_evolution_residual(sys: &SecondOrderSystem) -> [Expr; 3] {
    let cm = correspondence_metric(sys);
    let r = |a: usize, b: usize| {
        let sym = Expr::add((0..2).map(|c| {
            Expr::int(eps(a, c)) * sys.dy(c, b) + Expr::int(eps(b, c)) * sys.dy(c, a)
        }));
        total_derivative(&cm.phi[a][b], sys) + Expr::rat(1, 2) * sym - &cm.omega2 * &cm.phi[a][b]
    };
    [r(0, 0), r(0, 1), r(1, 1)]
}

pub fn conformal_evolution_holds(sys: &SecondOrderSystem, zt: &ZeroTest) -> Result<bool, PathError> {
    Ok(zt.all_zero(&conformal_evolution_residual(sys), sys.context())?)
}
