use exprcore::{differentiate, parse, Context, Expr, Tape};
use nalgebra::{Matrix4, Vector4};

use crate::error::TwistorError;

/// Starting point for the Newton inversion, read off the flat model.
#[derive(Clone, Debug, PartialEq)]
pub enum SeedRule {
    /// Parameters (w, z, x, y) of 𝒴 ≈ w + Xy, 𝒵 ≈ z − Xx: seed (Y − X p0, Z − X p1, −p1, p0).
    Heavenly,
    /// Parameters (w, y, t, z) of 𝒴 ≈ w + Xy − X²t: seed (Y − X p0, p0, 0, Z).
    GibbonsHawking,
    Fixed([f64; 4]),
}

impl SeedRule {
    fn seed(&self, pt: &[f64; 5]) -> [f64; 4] {
        let [x, y, z, p0, p1] = *pt;
        match self {
            SeedRule::Heavenly => [y - x * p0, z - x * p1, -p1, p0],
            SeedRule::GibbonsHawking => [y - x * p0, p0, 0.0, z],
            SeedRule::Fixed(s) => *s,
        }
    }
}

/// Four-parameter family of curves X ↦ (𝒴, 𝒵).
#[derive(Clone, Debug)]
pub struct CurveFamily {
    pub params: [String; 4],
    pub y: Expr,
    pub z: Expr,
    pub seed: SeedRule,
    ctx: Context,
}

impl CurveFamily {
    pub fn new(params: [&str; 4], y: Expr, z: Expr, seed: SeedRule) -> Result<Self, TwistorError> {
        let mut names = vec!["X"];
        names.extend(params);
        let ctx = Context::try_new(&names).map_err(|_| TwistorError::Parameters)?;
        for v in y.variables().into_iter().chain(z.variables()) {
            if !names.contains(&v.as_str()) {
                return Err(exprcore::Error::UnknownVariable(v).into());
            }
        }
        Ok(CurveFamily { params: params.map(String::from), y, z, seed, ctx })
    }

    pub fn parse(params: [&str; 4], y: &str, z: &str, seed: SeedRule) -> Result<Self, TwistorError> {
        let mut names = vec!["X"];
        names.extend(params);
        let ctx = Context::try_new(&names).map_err(|_| TwistorError::Parameters)?;
        Self::new(params, parse(y, &ctx)?, parse(z, &ctx)?, seed)
    }

    /// Context (X, parameters...).
    pub fn context(&self) -> &Context {
        &self.ctx
    }

    pub fn param_names(&self) -> [&str; 4] {
        std::array::from_fn(|i| self.params[i].as_str())
    }
}

#[derive(Clone, Copy, Debug)]
pub struct NewtonOptions {
    pub max_iter: usize,
    pub tol: f64,
}

impl Default for NewtonOptions {
    fn default() -> Self {
        NewtonOptions { max_iter: 50, tol: 1e-12 }
    }
}

/// Values (Y'', Z'') at `pt` = (X, Y, Z, p0, p1) of the curve through that jet.
pub fn extract_system(fam: &CurveFamily, pt: [f64; 5], opts: &NewtonOptions) -> Result<[f64; 2], TwistorError> {
    let params = fam.param_names();
    let yx = differentiate(&fam.y, "X");
    let zx = differentiate(&fam.z, "X");
    let f = [fam.y.clone(), fam.z.clone(), yx.clone(), zx.clone()];
    let mut exprs: Vec<Expr> = f.to_vec();
    for e in &f {
        for p in params {
            exprs.push(differentiate(e, p));
        }
    }
    exprs.push(differentiate(&yx, "X"));
    exprs.push(differentiate(&zx, "X"));
    let tape = Tape::compile(&exprs, fam.context())?;
    let target = Vector4::new(pt[1], pt[2], pt[3], pt[4]);
    let scale = 1.0 + target.amax();
    let eval = |u: &Vector4<f64>| -> Option<Vec<f64>> {
        let x = [pt[0], u[0], u[1], u[2], u[3]];
        tape.eval(&x).ok()
    };
    let residual = |v: &[f64]| Vector4::new(v[0], v[1], v[2], v[3]) - target;
    let mut u = Vector4::from(fam.seed.seed(&pt));
    let mut vals = eval(&u).ok_or(TwistorError::SingularJacobian)?;
    let mut r = residual(&vals);
    for _ in 0..opts.max_iter {
        if r.amax() <= opts.tol * scale {
            return Ok([vals[20], vals[21]]);
        }
        let j = Matrix4::from_fn(|i, k| vals[4 + 4 * i + k]);
        let step = j.lu().solve(&-r).ok_or(TwistorError::SingularJacobian)?;
        let mut t = 1.0;
        loop {
            let cand = u + step * t;
            if let Some(v) = eval(&cand) {
                let rc = residual(&v);
                if rc.norm() < r.norm() || t < 1e-6 {
                    u = cand;
                    vals = v;
                    r = rc;
                    break;
                }
            }
            t *= 0.5;
            if t < 1e-9 {
                return Err(TwistorError::NoConvergence { iterations: opts.max_iter, residual: r.amax() });
            }
        }
    }
    if r.amax() <= opts.tol * scale {
        return Ok([vals[20], vals[21]]);
    }
    Err(TwistorError::NoConvergence { iterations: opts.max_iter, residual: r.amax() })
}
