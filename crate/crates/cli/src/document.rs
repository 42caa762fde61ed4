//! JSON geometry documents with expression values in the exprcore grammar.

use std::collections::BTreeMap;
use std::fmt;

use curvature::Metric;
use exprcore::{parse, Context, Expr};
use finsler::{fiber_context, FinslerFunction, ZermeloData};
use pathsys::{canonical_context, theta_context, SecondOrderSystem};
use serde::Deserialize;
use symmetry::VectorField3;
use twistor::{CurveFamily, SeedRule};

use crate::Settings;

/// Malformed document or expression; maps to exit code 2.
#[derive(Debug, Clone, PartialEq)]
pub struct InputError(pub String);

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

fn at(place: &str, e: impl fmt::Display) -> InputError {
    InputError(format!("{place}: {e}"))
}

pub type Boxes = BTreeMap<String, [f64; 2]>;

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeometryDocument {
    #[serde(default)]
    pub name: Option<String>,
    pub system: Option<SystemBlock>,
    pub theta: Option<ThetaBlock>,
    pub metric: Option<MetricBlock>,
    pub curves: Option<CurvesBlock>,
    pub vectorfields: Option<Vec<[String; 3]>>,
    pub zermelo: Option<ZermeloBlock>,
    pub finsler: Option<FinslerBlock>,
    pub lagrangian: Option<LagrangianBlock>,
    pub settings: Option<SettingsBlock>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemBlock {
    #[serde(rename = "F")]
    pub f: String,
    #[serde(rename = "G")]
    pub g: String,
    #[serde(default, rename = "box")]
    pub boxes: Boxes,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ThetaBlock {
    pub theta: String,
    #[serde(default, rename = "box")]
    pub boxes: Boxes,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MetricBlock {
    pub coords: Vec<String>,
    /// Upper-triangle entries [a, b, g_ab].
    pub components: Vec<[String; 3]>,
    #[serde(default, rename = "box")]
    pub boxes: Boxes,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum SeedSpec {
    Named(String),
    Fixed([f64; 4]),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurvesBlock {
    pub params: [String; 4],
    #[serde(rename = "Y")]
    pub y: String,
    #[serde(rename = "Z")]
    pub z: String,
    #[serde(default)]
    pub seed: Option<SeedSpec>,
    /// Sampling box for X and the parameters when checking extraction.
    #[serde(default, rename = "box")]
    pub boxes: Boxes,
    #[serde(default)]
    pub max_degree: Option<usize>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ZermeloBlock {
    /// Upper triangle h_00, h_01, h_02, h_11, h_12, h_22.
    pub h: [String; 6],
    #[serde(rename = "W")]
    pub w: [String; 3],
    #[serde(default, rename = "box")]
    pub boxes: Boxes,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FinslerBlock {
    #[serde(default, rename = "F")]
    pub f: Option<String>,
    /// ℱ² directly, for functions whose square is simpler.
    #[serde(default, rename = "F2")]
    pub square: Option<String>,
    #[serde(default, rename = "box")]
    pub boxes: Boxes,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LagrangianBlock {
    #[serde(rename = "L")]
    pub l: String,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SettingsBlock {
    pub trials: Option<usize>,
    pub tol: Option<f64>,
    pub seed: Option<u64>,
    pub series_order: Option<usize>,
}

fn boxed(mut ctx: Context, boxes: &Boxes, place: &str) -> Result<Context, InputError> {
    for (name, [lo, hi]) in boxes {
        ctx.set_box(name, *lo, *hi).map_err(|e| at(&format!("{place}.box"), e))?;
    }
    Ok(ctx)
}

fn expr(src: &str, ctx: &Context, place: &str) -> Result<Expr, InputError> {
    parse(src, ctx).map_err(|e| at(place, e))
}

impl GeometryDocument {
    pub fn from_json(text: &str) -> Result<Self, InputError> {
        let doc: GeometryDocument =
            serde_json::from_str(text).map_err(|e| InputError(format!("document syntax error at line {} column {}: {e}", e.line(), e.column())))?;
        let blocks = [
            doc.system.is_some(),
            doc.theta.is_some(),
            doc.metric.is_some(),
            doc.curves.is_some(),
            doc.zermelo.is_some(),
            doc.finsler.is_some(),
            doc.lagrangian.is_some(),
        ];
        if !blocks.iter().any(|&b| b) {
            return Err(InputError("document has no analysis block".into()));
        }
        Ok(doc)
    }

    pub fn load(path: &std::path::Path) -> Result<Self, InputError> {
        let text = std::fs::read_to_string(path).map_err(|e| at(&path.display().to_string(), e))?;
        Self::from_json(&text)
    }

    /// Command-line settings overridden by the document's settings block.
    pub fn settings(&self, base: Settings) -> Settings {
        let s = self.settings.as_ref();
        Settings {
            trials: s.and_then(|s| s.trials).unwrap_or(base.trials),
            tol: s.and_then(|s| s.tol).unwrap_or(base.tol),
            seed: s.and_then(|s| s.seed).unwrap_or(base.seed),
            series_order: s.and_then(|s| s.series_order).unwrap_or(base.series_order),
        }
    }

    pub fn system(&self) -> Result<Option<SecondOrderSystem>, InputError> {
        let Some(b) = &self.system else { return Ok(None) };
        let ctx = boxed(canonical_context(), &b.boxes, "system")?;
        let f = expr(&b.f, &ctx, "system.F")?;
        let g = expr(&b.g, &ctx, "system.G")?;
        SecondOrderSystem::with_context(f, g, ctx).map(Some).map_err(|e| at("system", e))
    }

    pub fn theta(&self) -> Result<Option<(Expr, Context)>, InputError> {
        let Some(b) = &self.theta else { return Ok(None) };
        let ctx = boxed(theta_context(), &b.boxes, "theta")?;
        Ok(Some((expr(&b.theta, &ctx, "theta.theta")?, ctx)))
    }

    pub fn metric(&self) -> Result<Option<Metric>, InputError> {
        let Some(b) = &self.metric else { return Ok(None) };
        let names: Vec<&str> = b.coords.iter().map(String::as_str).collect();
        let ctx = Context::try_new(&names).map_err(|e| at("metric.coords", e))?;
        let ctx = boxed(ctx, &b.boxes, "metric")?;
        let entries: Vec<(&str, &str, &str)> = b.components.iter().map(|[a, c, e]| (a.as_str(), c.as_str(), e.as_str())).collect();
        Metric::parse(ctx, &entries).map(Some).map_err(|e| at("metric.components", e))
    }

    pub fn curves(&self) -> Result<Option<(CurveFamily, Context)>, InputError> {
        let Some(b) = &self.curves else { return Ok(None) };
        let seed = match &b.seed {
            None => SeedRule::Heavenly,
            Some(SeedSpec::Named(n)) if n == "heavenly" => SeedRule::Heavenly,
            Some(SeedSpec::Named(n)) if n == "gibbons-hawking" => SeedRule::GibbonsHawking,
            Some(SeedSpec::Named(n)) => return Err(InputError(format!("curves.seed: unknown rule `{n}`"))),
            Some(SeedSpec::Fixed(s)) => SeedRule::Fixed(*s),
        };
        let params: [&str; 4] = std::array::from_fn(|i| b.params[i].as_str());
        let fam = CurveFamily::parse(params, &b.y, &b.z, seed).map_err(|e| at("curves", e))?;
        let ctx = boxed(fam.context().clone(), &b.boxes, "curves")?;
        Ok(Some((fam, ctx)))
    }

    pub fn vectorfields(&self) -> Result<Vec<VectorField3>, InputError> {
        let Some(list) = &self.vectorfields else { return Ok(Vec::new()) };
        list.iter()
            .enumerate()
            .map(|(i, [x, y, z])| VectorField3::parse(x, y, z).map_err(|e| at(&format!("vectorfields[{i}]"), e)))
            .collect()
    }

    pub fn zermelo(&self) -> Result<Option<ZermeloData>, InputError> {
        let Some(b) = &self.zermelo else { return Ok(None) };
        let h: [&str; 6] = std::array::from_fn(|i| b.h[i].as_str());
        let w: [&str; 3] = std::array::from_fn(|i| b.w[i].as_str());
        let mut zd = ZermeloData::parse(h, w).map_err(|e| at("zermelo", e))?;
        boxed(zd.context().clone(), &b.boxes, "zermelo")?;
        for (n, [lo, hi]) in &b.boxes {
            zd = zd.with_box(n, *lo, *hi);
        }
        Ok(Some(zd))
    }

    pub fn finsler(&self) -> Result<Option<FinslerFunction>, InputError> {
        let Some(b) = &self.finsler else { return Ok(None) };
        let ctx = boxed(fiber_context(), &b.boxes, "finsler")?;
        let f = match (&b.f, &b.square) {
            (Some(f), None) => FinslerFunction::new(expr(f, &ctx, "finsler.F")?),
            (None, Some(s)) => FinslerFunction::from_square(expr(s, &ctx, "finsler.F2")?),
            _ => return Err(InputError("finsler: give exactly one of F and F2".into())),
        };
        Ok(Some(f.with_context(ctx)))
    }

    pub fn lagrangian(&self) -> Result<Option<Expr>, InputError> {
        let Some(b) = &self.lagrangian else { return Ok(None) };
        expr(&b.l, &canonical_context(), "lagrangian.L").map(Some)
    }
}
