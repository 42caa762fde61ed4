//! Compilation of expression DAGs to a flat instruction tape.

use std::collections::HashMap;

use num::ToPrimitive;

use crate::context::{Context, Point};
use crate::error::Error;
use crate::expr::{Expr, Func, Node};

#[derive(Clone, Debug)]
enum Op {
    Const(f64),
    Var(usize),
    Add(Vec<usize>),
    Mul(Vec<usize>),
    PowI(usize, i32),
    PowF(usize, f64),
    Func(Func, usize),
}

/// Slot index and reason of a failed evaluation.
#[derive(Clone, Copy, Debug)]
pub struct Fault {
    pub slot: usize,
    pub reason: &'static str,
}

/// Straight-line program evaluating several expressions over one context.
#[derive(Clone, Debug)]
pub struct Tape {
    ops: Vec<Op>,
    nodes: Vec<Expr>,
    roots: Vec<usize>,
    arity: usize,
}

impl Tape {
    pub fn compile(exprs: &[Expr], ctx: &Context) -> Result<Tape, Error> {
        let mut t = Tape { ops: Vec::new(), nodes: Vec::new(), roots: Vec::new(), arity: ctx.len() };
        let mut slots: HashMap<Expr, usize> = HashMap::new();
        for e in exprs {
            let r = t.emit(e, ctx, &mut slots)?;
            t.roots.push(r);
        }
        Ok(t)
    }

    fn emit(&mut self, e: &Expr, ctx: &Context, slots: &mut HashMap<Expr, usize>) -> Result<usize, Error> {
        if let Some(&s) = slots.get(e) {
            return Ok(s);
        }
        let op = match e.node() {
            Node::Num(r) => Op::Const(r.to_f64().unwrap_or(f64::NAN)),
            Node::Var(v) => Op::Var(ctx.index(v).ok_or_else(|| Error::UnknownVariable(v.to_string()))?),
            Node::Add(ts) => {
                let ch = ts.iter().map(|t| self.emit(t, ctx, slots)).collect::<Result<_, _>>()?;
                Op::Add(ch)
            }
            Node::Mul(fs) => {
                let ch = fs.iter().map(|f| self.emit(f, ctx, slots)).collect::<Result<_, _>>()?;
                Op::Mul(ch)
            }
            Node::Pow(b, ex) => {
                let s = self.emit(b, ctx, slots)?;
                match ex.to_integer().to_i32() {
                    Some(n) if ex.is_integer() => Op::PowI(s, n),
                    _ => Op::PowF(s, ex.to_f64().unwrap_or(f64::NAN)),
                }
            }
            Node::Func(f, a) => Op::Func(*f, self.emit(a, ctx, slots)?),
        };
        self.ops.push(op);
        self.nodes.push(e.clone());
        let s = self.ops.len() - 1;
        slots.insert(e.clone(), s);
        Ok(s)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn outputs(&self) -> usize {
        self.roots.len()
    }

    /// Subterm stored at a slot, for diagnostics.
    pub fn subterm(&self, slot: usize) -> &Expr {
        &self.nodes[slot]
    }

    pub fn fault_error(&self, f: Fault) -> Error {
        Error::Singular { term: self.nodes[f.slot].to_string(), reason: f.reason }
    }

    /// Values of all roots at `x`.
    pub fn eval(&self, x: &[f64]) -> Result<Vec<f64>, Fault> {
        Ok(self.eval_scaled(x)?.into_iter().map(|(v, _)| v).collect())
    }

    /// Values with a magnitude bound: the largest additive subterm met on the way to each root.
    pub fn eval_scaled(&self, x: &[f64]) -> Result<Vec<(f64, f64)>, Fault> {
        debug_assert_eq!(x.len(), self.arity);
        let mut val = vec![0.0f64; self.ops.len()];
        let mut mag = vec![0.0f64; self.ops.len()];
        for (i, op) in self.ops.iter().enumerate() {
            let fault = |reason| Fault { slot: i, reason };
            let (v, m) = match op {
                Op::Const(c) => (*c, c.abs()),
                Op::Var(k) => (x[*k], x[*k].abs()),
                Op::Add(ch) => {
                    let v: f64 = ch.iter().map(|&c| val[c]).sum();
                    let m = ch.iter().map(|&c| mag[c]).fold(0.0, f64::max);
                    (v, m)
                }
                Op::Mul(ch) => {
                    let v: f64 = ch.iter().map(|&c| val[c]).product();
                    let m: f64 = ch.iter().map(|&c| mag[c]).product();
                    (v, m)
                }
                Op::PowI(b, n) => {
                    if *n < 0 && val[*b] == 0.0 {
                        return Err(fault("division by zero"));
                    }
                    let v = val[*b].powi(*n);
                    let m = if *n > 0 { mag[*b].powi(*n) } else { v.abs() };
                    (v, m)
                }
                Op::PowF(b, e) => {
                    let base = val[*b];
                    if base < 0.0 {
                        return Err(fault("fractional power of a negative number"));
                    }
                    if base == 0.0 && *e < 0.0 {
                        return Err(fault("division by zero"));
                    }
                    let v = base.powf(*e);
                    let m = if *e > 0.0 { mag[*b].powf(*e) } else { v.abs() };
                    (v, m)
                }
                Op::Func(f, a) => {
                    let u = val[*a];
                    let v = match f {
                        Func::Exp => u.exp(),
                        Func::Log => {
                            if u <= 0.0 {
                                return Err(fault("log of a non-positive number"));
                            }
                            u.ln()
                        }
                        Func::Sin => u.sin(),
                        Func::Cos => u.cos(),
                    };
                    let m = match f {
                        Func::Sin | Func::Cos => 1.0,
                        _ => v.abs(),
                    };
                    (v, m)
                }
            };
            if !v.is_finite() {
                return Err(fault("non-finite value"));
            }
            val[i] = v;
            mag[i] = m.max(v.abs());
        }
        Ok(self.roots.iter().map(|&r| (val[r], mag[r])).collect())
    }
}

/// Evaluates one expression at a point.
pub fn eval(e: &Expr, ctx: &Context, pt: &Point) -> Result<f64, Error> {
    let t = Tape::compile(std::slice::from_ref(e), ctx)?;
    t.eval(pt.values()).map(|v| v[0]).map_err(|f| t.fault_error(f))
}

/// Evaluates with name/value pairs; every free variable must be bound.
pub fn eval_at(e: &Expr, bindings: &[(&str, f64)]) -> Result<f64, Error> {
    let names: Vec<&str> = bindings.iter().map(|(n, _)| *n).collect();
    let ctx = Context::try_new(&names)?;
    let vals: Vec<f64> = bindings.iter().map(|(_, v)| *v).collect();
    let t = Tape::compile(std::slice::from_ref(e), &ctx)?;
    t.eval(&vals).map(|v| v[0]).map_err(|f| t.fault_error(f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse;

    #[test]
    fn plain_values() {
        let ctx = Context::new(&["y"]);
        let e = parse("y^3", &ctx).unwrap();
        assert_eq!(eval(&e, &ctx, &Point::new(&ctx, &[2.0]).unwrap()).unwrap(), 8.0);
        let c4 = Context::new(&["w", "z", "x", "y"]);
        let e = parse("1/(x*w + y*z)", &c4).unwrap();
        let v = eval(&e, &c4, &Point::new(&c4, &[1.0; 4]).unwrap()).unwrap();
        assert_eq!(v, 0.5);
    }

    #[test]
    fn singular_points_name_the_subterm() {
        let ctx = Context::new(&["x"]);
        let e = parse("sqrt(x)", &ctx).unwrap();
        match eval(&e, &ctx, &Point::new(&ctx, &[-1.0]).unwrap()) {
            Err(Error::Singular { term, .. }) => assert_eq!(term, "sqrt(x)"),
            r => panic!("{r:?}"),
        }
        let e = parse("1/(x - 1)", &ctx).unwrap();
        match eval(&e, &ctx, &Point::new(&ctx, &[1.0]).unwrap()) {
            Err(Error::Singular { term, reason }) => {
                assert_eq!(term, "1/(x - 1)");
                assert_eq!(reason, "division by zero");
            }
            r => panic!("{r:?}"),
        }
        let e = parse("log(x)", &ctx).unwrap();
        assert!(eval(&e, &ctx, &Point::new(&ctx, &[0.0]).unwrap()).is_err());
    }

    #[test]
    fn shared_subterms_evaluate_once() {
        let ctx = Context::new(&["x", "y"]);
        let a = parse("(x + y)^2", &ctx).unwrap();
        let b = parse("(x + y)^3", &ctx).unwrap();
        let t = Tape::compile(&[a, b], &ctx).unwrap();
        assert_eq!(t.eval(&[1.0, 1.0]).unwrap(), vec![4.0, 8.0]);
        assert!(t.ops.len() <= 6);
    }
}
