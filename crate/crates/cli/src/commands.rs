//! One function per subcommand; each reads the blocks it needs from a document.

use curvature::{curvature, einstein_constant, heavenly_metric, is_ricci_flat, lax_frobenius, sd_weyl, weyl_spinor, Metric};
use exprcore::{BigRational, Expr, RatFunc, Tape, ZeroTest};
use finsler::{
    euler_lagrange, geodesic_spray, isotropy_check, metric_tensor, randers_from_zermelo, spray_curvature, unparametrized_geodesics, FinslerFunction,
    FlagCurvature, SprayFormula,
};
use pathsys::{
    beta_symmetry_dimension, correspondence_quadric, fels, heavenly_residual, is_torsion_free, system_from_theta, wilczynski, BetaFamily, SecondOrderSystem,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use symmetry::{is_closed_and_solvable, span_dimension, symmetry_check};
use twistor::{extract_system, null_cone, proportional, twistor_series, CurveFamily, NewtonOptions, QuadraticForm4};

use crate::document::{GeometryDocument, InputError};
use crate::report::Report;
use crate::tolerances::{EXTRACTION_POINTS, EXTRACTION_TOL, GEODESIC_POINTS, GEODESIC_TOL};
use crate::Settings;

fn need<T>(v: Option<T>, what: &str, command: &str) -> Result<T, InputError> {
    v.ok_or_else(|| InputError(format!("`{command}` needs a {what} block")))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn invariants(doc: &GeometryDocument, s: &Settings) -> Result<Report, InputError> {
    let sys = need(doc.system()?, "system", "invariants")?;
    let zt = s.zero_test();
    let mut r = Report::new("invariants");
    match zt.all_zero(&wilczynski(&sys).components(), sys.context()) {
        Ok(true) => r.info("wilczynski", "vanishes"),
        Ok(false) => {
            let w = wilczynski(&sys).components();
            let worst = zt.max_residual(&w, sys.context()).unwrap_or(f64::NAN);
            r.info("wilczynski", format!("nonzero (largest sampled component {worst:.3e})"));
        }
        Err(e) => r.error("wilczynski", e),
    }
    let f = fels(&sys).components();
    if f.iter().all(Expr::is_zero) {
        r.info("fels", "vanishes");
    } else {
        match zt.all_zero(&f, sys.context()) {
            Ok(true) => r.info("fels", "vanishes"),
            Ok(false) => r.info("fels", "nonzero"),
            Err(e) => r.error("fels", e),
        }
    }
    Ok(r)
}

pub fn symmetry(doc: &GeometryDocument, s: &Settings) -> Result<Report, InputError> {
    let sys = need(doc.system()?, "system", "symmetry")?;
    let fields = doc.vectorfields()?;
    if fields.is_empty() {
        return Err(InputError("`symmetry` needs a nonempty vectorfields list".into()));
    }
    let zt = s.zero_test();
    let mut r = Report::new("symmetry");
    for (i, chi) in fields.iter().enumerate() {
        let name = format!("generator {i}");
        match symmetry_check(chi, &sys, &zt) {
            Ok(ok) => r.check(&name, ok, chi.to_string()),
            Err(e) => r.error(&name, e),
        }
    }
    r.info("span dimension", span_dimension(&fields).to_string());
    let st = is_closed_and_solvable(&fields);
    r.info("closed", yes_no(st.closed));
    if st.closed {
        r.info("solvable", yes_no(st.solvable));
    }
    Ok(r)
}

/// Exact constant value of a rational expression, if it is one.
fn exact_constant(e: &Expr, names: &[&str]) -> Option<BigRational> {
    RatFunc::from_expr(e, names).ok().and_then(|r| r.constant_value())
}

fn curvature_items(m: &Metric, zt: &ZeroTest, r: &mut Report) {
    let pack = curvature(m);
    let names: Vec<&str> = m.context().names().collect();
    match exact_constant(&pack.scalar, &names) {
        Some(c) => r.info("scalar curvature", format!("{c} (exact)")),
        None => r.info("scalar curvature", "not an exact constant"),
    }
    match is_ricci_flat(m, &pack, zt) {
        Ok(b) => r.info("ricci flat", yes_no(b)),
        Err(e) => r.error("ricci flat", e),
    }
    match einstein_constant(m, &pack, zt) {
        Ok(Some(l)) => r.info("einstein", format!("Ric = {l:.12} g")),
        Ok(None) => r.info("einstein", "no"),
        Err(e) => r.error("einstein", e),
    }
    match sd_weyl(m, &pack, zt) {
        Ok(sd) if sd.asd => {
            let o = sd.orientation.map_or("?", |o| o.symbol());
            r.info("anti-self-dual", format!("yes (orientation {o})"));
        }
        Ok(_) => r.info("anti-self-dual", "no"),
        Err(e) => r.error("anti-self-dual", e),
    }
    match zt.all_zero(&pack.identity_residuals(), m.context()) {
        Ok(b) => r.check("bianchi identities", b, "zero-test"),
        Err(e) => r.error("bianchi identities", e),
    }
    match zt.all_zero(&pack.weyl_traces(m), m.context()) {
        Ok(b) => r.check("weyl tracelessness", b, "zero-test"),
        Err(e) => r.error("weyl tracelessness", e),
    }
}

pub fn curvature_cmd(doc: &GeometryDocument, s: &Settings) -> Result<Report, InputError> {
    let m = need(doc.metric()?, "metric", "curvature")?;
    let mut r = Report::new("curvature");
    if let Err(e) = m.check_nondegenerate(&s.zero_test()) {
        r.error("metric", e);
        return Ok(r);
    }
    curvature_items(&m, &s.zero_test(), &mut r);
    Ok(r)
}

pub fn heavenly(doc: &GeometryDocument, s: &Settings) -> Result<Report, InputError> {
    let (th, ctx) = need(doc.theta()?, "theta", "heavenly")?;
    let zt = s.zero_test();
    let mut r = Report::new("heavenly");
    match zt.is_zero(&heavenly_residual(&th), &ctx) {
        Ok(b) => r.check("heavenly equation", b, "residual zero-test"),
        Err(e) => r.error("heavenly equation", e),
    }
    match heavenly_metric(&th, ctx.clone()) {
        Ok(m) => {
            for i in 0..4 {
                for j in i..4 {
                    if !m.g(i, j).is_zero() {
                        r.info(&format!("g_{}{}", m.name(i), m.name(j)), m.g(i, j).to_string());
                    }
                }
            }
        }
        Err(e) => r.error("metric", e),
    }
    let psi = weyl_spinor(&th);
    r.info("weyl spinor", psi.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", "));
    match lax_frobenius(&th, &zt) {
        Ok(b) => r.check("lax pair commutes", b, "Frobenius zero-test"),
        Err(e) => r.error("lax pair commutes", e),
    }
    Ok(r)
}

pub fn form_of(m: &Metric) -> QuadraticForm4 {
    let q = std::array::from_fn(|i| std::array::from_fn(|j| m.g(i, j).clone()));
    QuadraticForm4::new(std::array::from_fn(|i| m.name(i)), q)
}

/// Jet (X, Y, Z, Y', Z') of the member with the given parameters.
pub fn jet(fam: &CurveFamily, x: f64, params: &[f64]) -> Result<[f64; 5], String> {
    let exprs = [fam.y.clone(), fam.z.clone(), exprcore::differentiate(&fam.y, "X"), exprcore::differentiate(&fam.z, "X")];
    let tape = Tape::compile(&exprs, fam.context()).map_err(|e| e.to_string())?;
    let v = tape.eval(&[x, params[0], params[1], params[2], params[3]]).map_err(|f| tape.fault_error(f).to_string())?;
    Ok([x, v[0], v[1], v[2], v[3]])
}

/// Largest scaled deviation between extraction and the system on jets of random members drawn from `ctx`.
pub fn extraction_deviation(fam: &CurveFamily, ctx: &exprcore::Context, sys: &SecondOrderSystem, n: usize, seed: u64) -> Result<f64, String> {
    let tape = Tape::compile(&[sys.f.clone(), sys.g.clone()], sys.context()).map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    let mut done = 0;
    let mut tries = 0;
    while done < n {
        tries += 1;
        if tries > 50 * n {
            return Err("too many singular samples".into());
        }
        let x = ZeroTest::draw(&mut rng, ctx);
        let Ok(pt) = jet(fam, x[0], &x[1..]) else { continue };
        let Ok(want) = tape.eval(&pt) else { continue };
        let mut f = fam.clone();
        if let twistor::SeedRule::Fixed(_) = f.seed {
            f.seed = twistor::SeedRule::Fixed(std::array::from_fn(|i| x[1 + i] * 1.02 + 0.01));
        }
        let got = extract_system(&f, pt, &NewtonOptions::default()).map_err(|e| format!("{e} at {pt:?}"))?;
        for k in 0..2 {
            worst = worst.max((got[k] - want[k]).abs() / (1.0 + want[k].abs()));
        }
        done += 1;
    }
    Ok(worst)
}

pub fn twistor_cmd(doc: &GeometryDocument, s: &Settings) -> Result<Report, InputError> {
    let theta = doc.theta()?;
    let curves = doc.curves()?;
    if theta.is_none() && curves.is_none() {
        return Err(InputError("`twistor` needs a theta or curves block".into()));
    }
    let zt = s.zero_test();
    let mut r = Report::new("twistor");
    if let Some((th, _)) = &theta {
        match twistor_series(th, s.series_order) {
            Ok(series) => {
                for k in 0..=series.order {
                    r.info(&format!("a{k}"), series.a[k].to_string());
                    r.info(&format!("b{k}"), series.b[k].to_string());
                }
                match series.exact_degree {
                    Some(d) => r.info("series", format!("terminates at order {d}")),
                    None => r.info("series", format!("no termination seen through order {}", series.order)),
                }
                let fam = series.to_family();
                let ctx = fam.context().clone();
                let sys = system_from_theta(th);
                if series.is_exact() {
                    match extraction_deviation(&fam, &ctx, &sys, EXTRACTION_POINTS, s.seed) {
                        Ok(d) => r.check("extraction", d <= EXTRACTION_TOL, format!("largest deviation from the potential's system {d:.3e}")),
                        Err(e) => r.error("extraction", e),
                    }
                }
            }
            Err(e) => r.error("series", e),
        }
    }
    if let Some((fam, ctx)) = &curves {
        let max = doc.curves.as_ref().and_then(|b| b.max_degree).unwrap_or(twistor::DEFAULT_MAX_DEGREE);
        match null_cone(fam, max) {
            Ok(q) => {
                for i in 0..4 {
                    for j in i..4 {
                        if !q.q[i][j].is_zero() {
                            r.info(&format!("cone d{} d{}", q.names[i], q.names[j]), q.q[i][j].to_string());
                        }
                    }
                }
                match zt.is_zero(&q.determinant(), ctx) {
                    Ok(z) => r.check("cone nondegenerate", !z, "determinant zero-test"),
                    Err(e) => r.error("cone nondegenerate", e),
                }
                if let Some(m) = doc.metric()? {
                    match proportional(&q, &form_of(&m), m.context(), &zt) {
                        Ok(b) => r.check("cone proportional to metric", b, "2x2 minors zero-test"),
                        Err(e) => r.error("cone proportional to metric", e),
                    }
                }
            }
            Err(e) => r.error("null cone", e),
        }
        if let Some(sys) = doc.system()? {
            match extraction_deviation(fam, ctx, &sys, EXTRACTION_POINTS, s.seed) {
                Ok(d) => r.check("extraction", d <= EXTRACTION_TOL, format!("largest deviation from the system {d:.3e}")),
                Err(e) => r.error("extraction", e),
            }
        }
    }
    Ok(r)
}

pub fn from_theta(doc: &GeometryDocument, s: &Settings) -> Result<Report, InputError> {
    let (th, ctx) = need(doc.theta()?, "theta", "from-theta")?;
    let zt = s.zero_test();
    let mut r = Report::new("from-theta");
    let sys = system_from_theta(&th);
    r.info("F", sys.f.to_string());
    r.info("G", sys.g.to_string());
    match zt.is_zero(&heavenly_residual(&th), &ctx) {
        Ok(b) => r.check("heavenly equation", b, "residual zero-test"),
        Err(e) => r.error("heavenly equation", e),
    }
    match is_torsion_free(&sys, &zt) {
        Ok(b) => r.info("torsion free", yes_no(b)),
        Err(e) => r.error("torsion free", e),
    }
    match heavenly_metric(&th, ctx.clone()) {
        Ok(m) => {
            let q = correspondence_quadric(&sys);
            let qf = QuadraticForm4::new(std::array::from_fn(|i| m.name(i)), q);
            match proportional(&qf, &form_of(&m), &ctx, &zt) {
                Ok(b) => r.check("correspondence metric at X = 0", b, "proportional to the heavenly metric"),
                Err(e) => r.error("correspondence metric at X = 0", e),
            }
        }
        Err(e) => r.error("heavenly metric", e),
    }
    Ok(r)
}

fn finsler_items(f: &FinslerFunction, sys: Option<&SecondOrderSystem>, s: &Settings, r: &mut Report) {
    let zt = s.zero_test();
    match f.is_homogeneous(&zt) {
        Ok(b) => r.check("homogeneity", b, "F(x, c v) = c F(x, v)"),
        Err(e) => r.error("homogeneity", e),
    }
    let g = metric_tensor(f);
    for i in 0..3 {
        for j in i..3 {
            r.info(&format!("f_{i}{j}"), g[i][j].to_string());
        }
    }
    let spray = match geodesic_spray(f, SprayFormula::Energy) {
        Ok(sp) => sp,
        Err(e) => return r.error("spray", e),
    };
    match spray.is_homogeneous(&zt) {
        Ok(b) => r.check("spray homogeneity", b, "Euler relation zero-test"),
        Err(e) => r.error("spray homogeneity", e),
    }
    let curv = spray_curvature(&spray);
    match isotropy_check(&curv, &zt, s.tol.max(1e-8)) {
        Ok(rep) => r.info("isotropic", format!("{} (largest fit residual {:.3e})", yes_no(rep.isotropic), rep.max_residual)),
        Err(e) => r.error("isotropic", e),
    }
    match FlagCurvature::new(f, &curv) {
        Ok(k) => {
            let mut rng = ChaCha8Rng::seed_from_u64(s.seed);
            let mut vals = Vec::new();
            let mut tries = 0;
            while vals.len() < 10 && tries < 200 {
                tries += 1;
                let x = ZeroTest::draw(&mut rng, f.context());
                let w: [f64; 3] = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
                if let Ok(v) = k.eval([x[0], x[1], x[2]], [x[3], x[4], x[5]], w) {
                    vals.push(v);
                }
            }
            let lo = vals.iter().cloned().fold(f64::INFINITY, f64::min);
            let hi = vals.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            r.info("flag curvature", format!("sampled range [{lo:.9}, {hi:.9}] over {} flags", vals.len()));
        }
        Err(e) => r.error("flag curvature", e),
    }
    if let Some(sys) = sys {
        let tape = match Tape::compile(&[sys.f.clone(), sys.g.clone()], sys.context()) {
            Ok(t) => t,
            Err(e) => return r.error("geodesic match", e),
        };
        let mut rng = ChaCha8Rng::seed_from_u64(s.seed);
        let mut worst = [0.0f64; 2];
        let mut n = 0;
        let mut tries = 0;
        while n < GEODESIC_POINTS && tries < 50 * GEODESIC_POINTS {
            tries += 1;
            let pt = ZeroTest::draw(&mut rng, sys.context());
            let Ok(want) = tape.eval(&pt) else { continue };
            let x = [pt[0], pt[1], pt[2]];
            for (slot, c) in [1.0, -1.0].iter().enumerate() {
                match unparametrized_geodesics(&spray, x, [*c, c * pt[3], c * pt[4]]) {
                    Ok(got) => {
                        for k in 0..2 {
                            worst[slot] = worst[slot].max((got[k] - want[k]).abs() / (1.0 + want[k].abs()));
                        }
                    }
                    Err(_) => worst[slot] = f64::INFINITY,
                }
            }
            n += 1;
        }
        let ok = worst.iter().any(|&w| w <= GEODESIC_TOL);
        r.check("geodesic match", ok, format!("largest deviation forward {:.3e}, reversed {:.3e}", worst[0], worst[1]));
    }
}

pub fn finsler_cmd(doc: &GeometryDocument, s: &Settings) -> Result<Report, InputError> {
    let zd = doc.zermelo()?;
    let fin = doc.finsler()?;
    let lag = doc.lagrangian()?;
    if zd.is_none() && fin.is_none() && lag.is_none() {
        return Err(InputError("`finsler` needs a zermelo, finsler or lagrangian block".into()));
    }
    let sys = doc.system()?;
    let zt = s.zero_test();
    let mut r = Report::new("finsler");
    if let Some(zd) = &zd {
        r.info("navigation lambda", zd.lambda().to_string());
        match randers_from_zermelo(zd, &zt) {
            Ok(rd) => {
                for i in 0..3 {
                    for j in i..3 {
                        r.info(&format!("a_{i}{j}"), rd.a[i][j].to_string());
                    }
                }
                for i in 0..3 {
                    r.info(&format!("b_{i}"), rd.b[i].to_string());
                }
                match rd.is_positive(&zt) {
                    Ok(b) => r.check("randers positivity", b, "|b|_a < 1"),
                    Err(e) => r.error("randers positivity", e),
                }
                finsler_items(&rd.finsler(), sys.as_ref(), s, &mut r);
            }
            Err(e) => r.error("randers data", e),
        }
    }
    if let Some(f) = &fin {
        finsler_items(f, sys.as_ref(), s, &mut r);
    }
    if let Some(l) = &lag {
        match euler_lagrange(l, &zt) {
            Ok(el) => {
                r.info("euler-lagrange F", el.f.to_string());
                r.info("euler-lagrange G", el.g.to_string());
                if let Some(sys) = &sys {
                    let res = [&el.f - &sys.f, &el.g - &sys.g];
                    match zt.all_zero(&res, sys.context()) {
                        Ok(b) => r.check("euler-lagrange matches system", b, "zero-test"),
                        Err(e) => r.error("euler-lagrange matches system", e),
                    }
                }
            }
            Err(e) => r.error("euler-lagrange", e),
        }
    }
    Ok(r)
}

/// Parses `k=c` with rational c.
pub fn parse_xi(s: &str) -> Result<(u32, BigRational), InputError> {
    let (k, c) = s.split_once('=').ok_or_else(|| InputError(format!("--xi `{s}`: expected k=c")))?;
    let k: u32 = k.trim().parse().map_err(|e| InputError(format!("--xi `{s}`: {e}")))?;
    let c = parse_rational(c)?;
    Ok((k, c))
}

pub fn parse_rational(s: &str) -> Result<BigRational, InputError> {
    let t = s.trim();
    let r = match t.split_once('/') {
        Some((n, d)) => {
            let n: i64 = n.trim().parse().map_err(|e| InputError(format!("`{s}`: {e}")))?;
            let d: i64 = d.trim().parse().map_err(|e| InputError(format!("`{s}`: {e}")))?;
            if d == 0 {
                return Err(InputError(format!("`{s}`: zero denominator")));
            }
            BigRational::new(n.into(), d.into())
        }
        None => BigRational::from_integer(t.parse::<i64>().map_err(|e| InputError(format!("`{s}`: {e}")))?.into()),
    };
    Ok(r)
}

pub fn beta_dim(xi: &[(u32, BigRational)], tail: Option<BigRational>) -> Report {
    let mut fam = BetaFamily::new(xi.iter().cloned());
    if let Some(t) = tail {
        fam = fam.with_tail(t);
    }
    let mut r = Report::new("beta-dim");
    r.info("dimension", beta_symmetry_dimension(&fam).to_string());
    r
}
