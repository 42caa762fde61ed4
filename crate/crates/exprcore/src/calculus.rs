use std::collections::HashMap;

use num::{BigRational, One};

use crate::expr::{Expr, Func, Node};

/// Partial derivative with respect to the variable `v`.
pub fn differentiate(e: &Expr, v: &str) -> Expr {
    Differentiator::new(v).run(e)
}

/// Derivative engine that keeps its memo table across calls for the same variable.
pub struct Differentiator {
    var: String,
    memo: HashMap<usize, (Expr, Expr)>,
}

impl Differentiator {
    pub fn new(v: &str) -> Self {
        Differentiator { var: v.to_string(), memo: HashMap::new() }
    }

    pub fn run(&mut self, e: &Expr) -> Expr {
        if let Some((_, d)) = self.memo.get(&e.id()) {
            return d.clone();
        }
        let d = match e.node() {
            Node::Num(_) => Expr::zero(),
            Node::Var(name) => {
                if **name == *self.var {
                    Expr::one()
                } else {
                    Expr::zero()
                }
            }
            Node::Add(ts) => Expr::add(ts.iter().map(|t| self.run(t))),
            Node::Mul(fs) => {
                let ds: Vec<Expr> = fs.iter().map(|f| self.run(f)).collect();
                let mut terms = Vec::new();
                for (i, di) in ds.iter().enumerate() {
                    if di.is_zero() {
                        continue;
                    }
                    let mut parts: Vec<Expr> = fs
                        .iter()
                        .enumerate()
                        .filter(|&(j, _)| j != i)
                        .map(|(_, f)| f.clone())
                        .collect();
                    parts.push(di.clone());
                    terms.push(Expr::mul(parts));
                }
                Expr::add(terms)
            }
            Node::Pow(b, ex) => {
                let db = self.run(b);
                if db.is_zero() {
                    Expr::zero()
                } else {
                    let lowered = Expr::pow(b, ex - BigRational::one());
                    Expr::mul([Expr::num(ex.clone()), lowered, db])
                }
            }
            Node::Func(f, a) => {
                let da = self.run(a);
                if da.is_zero() {
                    Expr::zero()
                } else {
                    let outer = match f {
                        Func::Exp => e.clone(),
                        Func::Log => a.recip(),
                        Func::Sin => a.cos(),
                        Func::Cos => -a.sin(),
                    };
                    outer * da
                }
            }
        };
        // keep `e` alive so its address cannot be reused while memoized
        self.memo.insert(e.id(), (e.clone(), d.clone()));
        d
    }
}

/// Mixed partial derivative along the listed variables, applied left to right.
pub fn differentiate_many(e: &Expr, vars: &[&str]) -> Expr {
    vars.iter().fold(e.clone(), |acc, v| differentiate(&acc, v))
}

/// Simultaneous substitution of variables by expressions.
pub fn substitute(e: &Expr, bindings: &[(&str, Expr)]) -> Expr {
    let map: HashMap<&str, &Expr> = bindings.iter().map(|(k, v)| (*k, v)).collect();
    let mut memo: HashMap<usize, (Expr, Expr)> = HashMap::new();
    subst_rec(e, &map, &mut memo)
}

fn subst_rec(e: &Expr, map: &HashMap<&str, &Expr>, memo: &mut HashMap<usize, (Expr, Expr)>) -> Expr {
    if let Some((_, r)) = memo.get(&e.id()) {
        return r.clone();
    }
    let r = match e.node() {
        Node::Num(_) => e.clone(),
        Node::Var(v) => map.get(&**v).map(|x| (*x).clone()).unwrap_or_else(|| e.clone()),
        Node::Add(ts) => Expr::add(ts.iter().map(|t| subst_rec(t, map, memo))),
        Node::Mul(fs) => Expr::mul(fs.iter().map(|f| subst_rec(f, map, memo))),
        Node::Pow(b, ex) => Expr::pow(&subst_rec(b, map, memo), ex.clone()),
        Node::Func(f, a) => Expr::func(*f, subst_rec(a, map, memo)),
    };
    memo.insert(e.id(), (e.clone(), r.clone()));
    r
}

/// Gradient along each variable in `vars`.
pub fn gradient(e: &Expr, vars: &[&str]) -> Vec<Expr> {
    vars.iter().map(|v| differentiate(e, v)).collect()
}
