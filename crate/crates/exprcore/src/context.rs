use std::sync::Arc;

use crate::error::Error;

/// Sampling interval used when a variable has no declared box.
pub const DEFAULT_BOX: (f64, f64) = (0.5, 1.5);

/// Ordered variable declarations with optional sampling boxes.
#[derive(Clone, Debug, PartialEq)]
pub struct Context {
    names: Vec<Arc<str>>,
    boxes: Vec<Option<(f64, f64)>>,
}

impl Context {
    /// Panics on duplicate or non-identifier names; use [`Context::try_new`] for input data.
    pub fn new(names: &[&str]) -> Context {
        Context::try_new(names).expect("invalid variable list")
    }

    pub fn try_new(names: &[&str]) -> Result<Context, Error> {
        let mut out = Context { names: Vec::new(), boxes: Vec::new() };
        for n in names {
            out.push(n)?;
        }
        Ok(out)
    }

    fn push(&mut self, name: &str) -> Result<(), Error> {
        let ok = name.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
            && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !ok {
            return Err(Error::Context(format!("`{name}` is not an identifier")));
        }
        if self.index(name).is_some() {
            return Err(Error::Context(format!("`{name}` declared twice")));
        }
        self.names.push(Arc::from(name));
        self.boxes.push(None);
        Ok(())
    }

    /// Returns a copy with `name` sampled from `[lo, hi]`.
    pub fn with_box(mut self, name: &str, lo: f64, hi: f64) -> Context {
        self.set_box(name, lo, hi).expect("invalid box");
        self
    }

    pub fn set_box(&mut self, name: &str, lo: f64, hi: f64) -> Result<(), Error> {
        let i = self
            .index(name)
            .ok_or_else(|| Error::Context(format!("no variable `{name}` to box")))?;
        if !(lo <= hi) || !lo.is_finite() || !hi.is_finite() {
            return Err(Error::Context(format!("empty box [{lo}, {hi}] for `{name}`")));
        }
        self.boxes[i] = Some((lo, hi));
        Ok(())
    }

    /// Returns a copy extended by fresh variables (default boxes).
    pub fn extended(&self, extra: &[&str]) -> Context {
        let mut c = self.clone();
        for n in extra {
            c.push(n).expect("invalid variable");
        }
        c
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| &**n == name)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.names.iter().map(|n| &**n)
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn bounds(&self, i: usize) -> (f64, f64) {
        self.boxes[i].unwrap_or(DEFAULT_BOX)
    }

    pub fn declared_box(&self, i: usize) -> Option<(f64, f64)> {
        self.boxes[i]
    }

    /// Each declared variable as an expression, in order.
    pub fn vars(&self) -> Vec<crate::Expr> {
        self.names().map(crate::Expr::var).collect()
    }
}

/// A full assignment of finite values to a context's variables.
#[derive(Clone, Debug, PartialEq)]
pub struct Point {
    values: Vec<f64>,
}

impl Point {
    pub fn new(ctx: &Context, values: &[f64]) -> Result<Point, Error> {
        if values.len() != ctx.len() {
            return Err(Error::Context(format!(
                "point has {} values for {} variables",
                values.len(),
                ctx.len()
            )));
        }
        for (i, v) in values.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::Context(format!("non-finite value for `{}`", ctx.name(i))));
            }
            if let Some((lo, hi)) = ctx.declared_box(i) {
                if *v < lo || *v > hi {
                    return Err(Error::Context(format!(
                        "`{}` = {v} outside [{lo}, {hi}]",
                        ctx.name(i)
                    )));
                }
            }
        }
        Ok(Point { values: values.to_vec() })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}
