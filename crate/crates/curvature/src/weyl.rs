use exprcore::{Expr, Tape, ZeroTest};

use crate::error::CurvatureError;
use crate::metric::Metric;
use crate::tensors::CurvaturePack;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    /// Volume form +√|det g| dx⁰∧dx¹∧dx²∧dx³ in the declared coordinate order.
    Plus,
    Minus,
}

impl Orientation {
    pub fn symbol(self) -> &'static str {
        match self {
            Orientation::Plus => "+",
            Orientation::Minus => "-",
        }
    }

    fn sign(self) -> i64 {
        match self {
            Orientation::Plus => 1,
            Orientation::Minus => -1,
        }
    }
}

/// Outcome of the anti-self-duality test; `orientation` is the one in which the Weyl tensor is ASD.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SelfDuality {
    pub asd: bool,
    pub orientation: Option<Orientation>,
}

fn perm_sign(p: [usize; 4]) -> i64 {
    let mut s = 1;
    for i in 0..4 {
        for j in i + 1..4 {
            if p[i] == p[j] {
                return 0;
            }
            if p[i] > p[j] {
                s = -s;
            }
        }
    }
    s
}

/// √|det g| with the sign of det g read off a sample.
fn volume_density(m: &Metric, zt: &ZeroTest) -> Result<Expr, CurvatureError> {
    let det = m.det().clone();
    let tape = Tape::compile(std::slice::from_ref(&det), m.context())?;
    let mut rng = zt.rng();
    for _ in 0..=zt.max_redraws {
        let x = ZeroTest::draw(&mut rng, m.context());
        if let Ok(v) = tape.eval(&x) {
            if v[0] > 0.0 {
                return Ok(det.sqrt());
            }
            if v[0] < 0.0 {
                return Ok((-det).sqrt());
            }
        }
    }
    Err(CurvatureError::Degenerate)
}

/// Components (C + ⋆C)_abcd, a < b, c < d, with ⋆ acting on the first pair.
pub fn asd_residuals(m: &Metric, pack: &CurvaturePack, o: Orientation, zt: &ZeroTest) -> Result<Vec<Expr>, CurvatureError> {
    if m.dim() != 4 {
        return Err(CurvatureError::Shape("self-duality needs four dimensions".into()));
    }
    let vol = Expr::int(o.sign()) * volume_density(m, zt)?;
    let c = &pack.weyl;
    let raised = |e: usize, f: usize, cc: usize, d: usize| {
        let mut terms = Vec::new();
        for a in 0..4 {
            for b in 0..4 {
                if a != b && !m.inv(e, a).is_zero() && !m.inv(f, b).is_zero() {
                    terms.push(m.inv(e, a) * m.inv(f, b) * &c[a][b][cc][d]);
                }
            }
        }
        Expr::add(terms)
    };
    let mut out = Vec::new();
    for a in 0..4 {
        for b in a + 1..4 {
            let others: Vec<usize> = (0..4).filter(|&i| i != a && i != b).collect();
            let (e, f) = (others[0], others[1]);
            let eps = perm_sign([a, b, e, f]);
            for cc in 0..4 {
                for d in cc + 1..4 {
                    // ½ ε_ab^{ef} over ordered pairs doubles the single e < f term.
                    let star = Expr::int(eps) * &vol * (raised(e, f, cc, d));
                    out.push(&c[a][b][cc][d] + star);
                }
            }
        }
    }
    Ok(out)
}

/// Tests ⋆C = −C in each orientation.
pub fn sd_weyl(m: &Metric, pack: &CurvaturePack, zt: &ZeroTest) -> Result<SelfDuality, CurvatureError> {
    for o in [Orientation::Plus, Orientation::Minus] {
        if zt.all_zero(&asd_residuals(m, pack, o, zt)?, m.context())? {
            return Ok(SelfDuality { asd: true, orientation: Some(o) });
        }
    }
    Ok(SelfDuality { asd: false, orientation: None })
}
