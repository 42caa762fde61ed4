use exprcore::{parse, Context, Expr, Tape, Verdict, ZeroTest};

use crate::error::FinslerError;
use crate::function::{fiber_context, inverse3, FinslerFunction, BASE, FIBER};

/// Navigation data: a Riemannian metric h and a wind W.
#[derive(Clone, Debug)]
pub struct ZermeloData {
    pub h: [[Expr; 3]; 3],
    pub w: [Expr; 3],
    ctx: Context,
}

impl ZermeloData {
    pub fn new(h: [[Expr; 3]; 3], w: [Expr; 3]) -> Self {
        ZermeloData { h, w, ctx: Context::new(&BASE) }
    }

    /// `h` lists the upper triangle (00, 01, 02, 11, 12, 22).
    pub fn parse(h: [&str; 6], w: [&str; 3]) -> Result<Self, FinslerError> {
        let ctx = Context::new(&BASE);
        let u: Vec<Expr> = h.iter().map(|s| parse(s, &ctx)).collect::<Result<_, _>>()?;
        let idx = |i: usize, j: usize| {
            let (a, b) = if i <= j { (i, j) } else { (j, i) };
            [[0, 1, 2], [1, 3, 4], [2, 4, 5]][a][b]
        };
        let hm = std::array::from_fn(|i| std::array::from_fn(|j| u[idx(i, j)].clone()));
        let wv: Vec<Expr> = w.iter().map(|s| parse(s, &ctx)).collect::<Result<_, _>>()?;
        Ok(Self::new(hm, [wv[0].clone(), wv[1].clone(), wv[2].clone()]))
    }

    pub fn with_box(mut self, name: &str, lo: f64, hi: f64) -> Self {
        self.ctx = self.ctx.with_box(name, lo, hi);
        self
    }

    pub fn context(&self) -> &Context {
        &self.ctx
    }

    /// W_i = h_ij W^j.
    pub fn lowered(&self) -> [Expr; 3] {
        std::array::from_fn(|i| Expr::add((0..3).map(|j| &self.h[i][j] * &self.w[j])))
    }

    /// λ = 1 − h_ij W^i W^j.
    pub fn lambda(&self) -> Expr {
        let wl = self.lowered();
        Expr::one() - Expr::add((0..3).map(|i| &wl[i] * &self.w[i]))
    }
}

/// Randers data a_ij, b_i.
#[derive(Clone, Debug)]
pub struct RandersData {
    pub a: [[Expr; 3]; 3],
    pub b: [Expr; 3],
    ctx: Context,
}

impl RandersData {
    pub fn new(a: [[Expr; 3]; 3], b: [Expr; 3], ctx: Context) -> Self {
        RandersData { a, b, ctx }
    }

    pub fn context(&self) -> &Context {
        &self.ctx
    }

    /// ℱ = √(a_ij v^i v^j) + b_i v^i, sampled over the base box and unit fiber box.
    pub fn finsler(&self) -> FinslerFunction {
        let v: Vec<Expr> = FIBER.iter().map(|n| Expr::var(n)).collect();
        let quad = Expr::add((0..3).flat_map(|i| (0..3).map(move |j| (i, j))).map(|(i, j)| &self.a[i][j] * &v[i] * &v[j]));
        let lin = Expr::add((0..3).map(|i| &self.b[i] * &v[i]));
        let mut ctx = fiber_context();
        for (i, n) in BASE.iter().enumerate() {
            if let Some((lo, hi)) = self.ctx.declared_box(i) {
                ctx = ctx.with_box(n, lo, hi);
            }
        }
        FinslerFunction::new(quad.sqrt() + lin).with_context(ctx)
    }

    /// ‖b‖_a < 1 at sampled points.
    pub fn is_positive(&self, zt: &ZeroTest) -> Result<bool, FinslerError> {
        let inv = inverse3(&self.a)?;
        let norm = Expr::add((0..3).flat_map(|i| (0..3).map(move |j| (i, j))).map(|(i, j)| &inv[i][j] * &self.b[i] * &self.b[j]));
        Ok(zt.sample(&self.ctx, &[norm], |_, v| if v[0].0 < 1.0 { Verdict::Pass } else { Verdict::Fail })?)
    }
}

/// a_ij = (λ h_ij + W_i W_j)/λ², b_i = −W_i/λ, after checking λ > 0 at box corners and samples.
pub fn randers_from_zermelo(zd: &ZermeloData, zt: &ZeroTest) -> Result<RandersData, FinslerError> {
    let lam = zd.lambda();
    let ctx = zd.context();
    let tape = Tape::compile(std::slice::from_ref(&lam), ctx)?;
    for corner in 0..8 {
        let x: Vec<f64> = (0..3)
            .map(|i| {
                let (lo, hi) = ctx.bounds(i);
                if corner >> i & 1 == 0 { lo } else { hi }
            })
            .collect();
        check_lambda(&tape, &x)?;
    }
    let mut rng = zt.rng();
    for _ in 0..zt.trials {
        let x = ZeroTest::draw(&mut rng, ctx);
        check_lambda(&tape, &x)?;
    }
    let wl = zd.lowered();
    let il = lam.recip();
    let il2 = il.powi(2);
    let a = std::array::from_fn(|i| std::array::from_fn(|j| (&lam * &zd.h[i][j] + &wl[i] * &wl[j]) * &il2));
    let b = std::array::from_fn(|i| -(&wl[i] * &il));
    Ok(RandersData::new(a, b, ctx.clone()))
}

fn check_lambda(tape: &Tape, x: &[f64]) -> Result<(), FinslerError> {
    let value = tape.eval(x).map(|v| v[0]).unwrap_or(f64::NAN);
    if value > 0.0 {
        Ok(())
    } else {
        Err(FinslerError::ZermeloDomain { point: x.to_vec(), value })
    }
}
