//! Immutable expression DAG with structural normalization.

use std::cmp::Ordering;
use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops;
use std::sync::Arc;

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};

/// Unary functions kept opaque by the normalizer. `sqrt` is not here: it is `Pow(_, 1/2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Func {
    Exp,
    Log,
    Sin,
    Cos,
}

impl Func {
    pub fn name(self) -> &'static str {
        match self {
            Func::Exp => "exp",
            Func::Log => "log",
            Func::Sin => "sin",
            Func::Cos => "cos",
        }
    }
}

#[derive(Debug)]
pub enum Node {
    Num(BigRational),
    Var(Arc<str>),
    Add(Vec<Expr>),
    Mul(Vec<Expr>),
    Pow(Expr, BigRational),
    Func(Func, Expr),
}

#[derive(Debug)]
struct Inner {
    node: Node,
    hash: u64,
}

/// A normalized expression. Cloning is a pointer copy.
#[derive(Clone)]
pub struct Expr(Arc<Inner>);

fn rank(n: &Node) -> u8 {
    match n {
        Node::Num(_) => 0,
        Node::Var(_) => 1,
        Node::Pow(..) => 2,
        Node::Func(..) => 3,
        Node::Mul(_) => 4,
        Node::Add(_) => 5,
    }
}

impl Expr {
    fn raw(node: Node) -> Expr {
        let mut h = DefaultHasher::new();
        rank(&node).hash(&mut h);
        match &node {
            Node::Num(r) => r.hash(&mut h),
            Node::Var(v) => v.hash(&mut h),
            Node::Add(ts) | Node::Mul(ts) => {
                for t in ts {
                    t.0.hash.hash(&mut h);
                }
            }
            Node::Pow(b, e) => {
                b.0.hash.hash(&mut h);
                e.hash(&mut h);
            }
            Node::Func(f, a) => {
                f.hash(&mut h);
                a.0.hash.hash(&mut h);
            }
        }
        Expr(Arc::new(Inner { node, hash: h.finish() }))
    }

    pub fn node(&self) -> &Node {
        &self.0.node
    }

    /// Address of the shared node; stable while the expression is alive.
    pub fn id(&self) -> usize {
        Arc::as_ptr(&self.0) as usize
    }

    pub fn structural_hash(&self) -> u64 {
        self.0.hash
    }

    pub fn num(r: BigRational) -> Expr {
        Expr::raw(Node::Num(r))
    }

    pub fn int(i: i64) -> Expr {
        Expr::num(BigRational::from_integer(BigInt::from(i)))
    }

    pub fn rat(n: i64, d: i64) -> Expr {
        Expr::num(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn zero() -> Expr {
        Expr::int(0)
    }

    pub fn one() -> Expr {
        Expr::int(1)
    }

    pub fn var(name: &str) -> Expr {
        Expr::raw(Node::Var(Arc::from(name)))
    }

    pub fn as_num(&self) -> Option<&BigRational> {
        match self.node() {
            Node::Num(r) => Some(r),
            _ => None,
        }
    }

    pub fn as_var(&self) -> Option<&str> {
        match self.node() {
            Node::Var(v) => Some(v),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.as_num().is_some_and(|r| r.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.as_num().is_some_and(|r| r.is_one())
    }

    pub fn children(&self) -> Vec<&Expr> {
        match self.node() {
            Node::Num(_) | Node::Var(_) => vec![],
            Node::Add(ts) | Node::Mul(ts) => ts.iter().collect(),
            Node::Pow(b, _) => vec![b],
            Node::Func(_, a) => vec![a],
        }
    }

    pub fn add(terms: impl IntoIterator<Item = Expr>) -> Expr {
        let mut konst = BigRational::zero();
        let mut order: Vec<Expr> = Vec::new();
        let mut coefs: HashMap<Expr, BigRational> = HashMap::new();
        let mut stack: Vec<Expr> = terms.into_iter().collect();
        stack.reverse();
        while let Some(t) = stack.pop() {
            match t.node() {
                Node::Num(r) => konst += r,
                Node::Add(ts) => stack.extend(ts.iter().rev().cloned()),
                _ => {
                    let (c, rest) = split_coef(&t);
                    match coefs.get_mut(&rest) {
                        Some(acc) => *acc += c,
                        None => {
                            order.push(rest.clone());
                            coefs.insert(rest, c);
                        }
                    }
                }
            }
        }
        let mut kept: Vec<(Expr, BigRational)> = order
            .into_iter()
            .filter_map(|r| {
                let c = coefs.remove(&r).unwrap();
                (!c.is_zero()).then_some((r, c))
            })
            .collect();
        kept.sort_by(|a, b| a.0.cmp(&b.0));
        let mut out: Vec<Expr> = Vec::with_capacity(kept.len() + 1);
        if !konst.is_zero() {
            out.push(Expr::num(konst));
        }
        out.extend(kept.into_iter().map(|(r, c)| with_coef(c, r)));
        match out.len() {
            0 => Expr::zero(),
            1 => out.pop().unwrap(),
            _ => Expr::raw(Node::Add(out)),
        }
    }

    pub fn mul(factors: impl IntoIterator<Item = Expr>) -> Expr {
        let mut coef = BigRational::one();
        let mut order: Vec<Expr> = Vec::new();
        let mut exps: HashMap<Expr, BigRational> = HashMap::new();
        let mut stack: Vec<Expr> = factors.into_iter().collect();
        stack.reverse();
        while let Some(f) = stack.pop() {
            match f.node() {
                Node::Num(r) => {
                    if r.is_zero() {
                        return Expr::zero();
                    }
                    coef *= r;
                }
                Node::Mul(fs) => stack.extend(fs.iter().rev().cloned()),
                _ => {
                    let (b, e) = match f.node() {
                        Node::Pow(b, e) => (b.clone(), e.clone()),
                        _ => (f.clone(), BigRational::one()),
                    };
                    match exps.get_mut(&b) {
                        Some(acc) => *acc += e,
                        None => {
                            order.push(b.clone());
                            exps.insert(b, e);
                        }
                    }
                }
            }
        }
        let mut kept: Vec<(Expr, BigRational)> = order
            .into_iter()
            .filter_map(|b| {
                let e = exps.remove(&b).unwrap();
                (!e.is_zero()).then_some((b, e))
            })
            .collect();
        kept.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)));
        let mut built: Vec<Expr> = Vec::with_capacity(kept.len());
        let mut again = false;
        for (b, e) in kept {
            let p = if e.is_one() { b } else { Expr::pow(&b, e) };
            match p.node() {
                Node::Num(r) => {
                    if r.is_zero() {
                        return Expr::zero();
                    }
                    coef *= r;
                }
                Node::Mul(_) => {
                    again = true;
                    built.push(p);
                }
                _ => built.push(p),
            }
        }
        if again {
            built.push(Expr::num(coef));
            return Expr::mul(built);
        }
        if built.is_empty() {
            return Expr::num(coef);
        }
        if coef.is_one() {
            if built.len() == 1 {
                return built.pop().unwrap();
            }
            return Expr::raw(Node::Mul(built));
        }
        built.insert(0, Expr::num(coef));
        Expr::raw(Node::Mul(built))
    }

    pub fn pow(base: &Expr, e: BigRational) -> Expr {
        if e.is_zero() {
            return Expr::one();
        }
        if e.is_one() {
            return base.clone();
        }
        match base.node() {
            Node::Num(r) => pow_num(r, &e),
            Node::Pow(c, e1) if e.is_integer() => Expr::pow(c, e1 * &e),
            Node::Mul(fs) if e.is_integer() => {
                Expr::mul(fs.iter().map(|f| Expr::pow(f, e.clone())))
            }
            Node::Mul(fs) => match fs[0].node() {
                Node::Num(c) if c.is_positive() => {
                    let rest = Expr::raw(Node::Mul(fs[1..].to_vec()));
                    let rest = if fs.len() == 2 { fs[1].clone() } else { rest };
                    Expr::mul([pow_num(c, &e), Expr::raw(Node::Pow(rest, e))])
                }
                _ => Expr::raw(Node::Pow(base.clone(), e)),
            },
            _ => Expr::raw(Node::Pow(base.clone(), e)),
        }
    }

    pub fn powi(&self, n: i64) -> Expr {
        Expr::pow(self, BigRational::from_integer(BigInt::from(n)))
    }

    pub fn powr(&self, n: i64, d: i64) -> Expr {
        Expr::pow(self, BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn sqrt(&self) -> Expr {
        self.powr(1, 2)
    }

    pub fn recip(&self) -> Expr {
        self.powi(-1)
    }

    pub fn func(f: Func, a: Expr) -> Expr {
        if let Some(r) = a.as_num() {
            if r.is_zero() {
                match f {
                    Func::Exp | Func::Cos => return Expr::one(),
                    Func::Sin => return Expr::zero(),
                    Func::Log => {}
                }
            }
            if r.is_one() && f == Func::Log {
                return Expr::zero();
            }
        }
        if f == Func::Log {
            if let Node::Func(Func::Exp, inner) = a.node() {
                return inner.clone();
            }
        }
        Expr::raw(Node::Func(f, a))
    }

    pub fn exp(&self) -> Expr {
        Expr::func(Func::Exp, self.clone())
    }

    pub fn log(&self) -> Expr {
        Expr::func(Func::Log, self.clone())
    }

    pub fn sin(&self) -> Expr {
        Expr::func(Func::Sin, self.clone())
    }

    pub fn cos(&self) -> Expr {
        Expr::func(Func::Cos, self.clone())
    }

    /// Variable names occurring anywhere in the DAG.
    pub fn variables(&self) -> BTreeSet<String> {
        let mut seen = std::collections::HashSet::new();
        let mut out = BTreeSet::new();
        let mut stack = vec![self.clone()];
        while let Some(e) = stack.pop() {
            if !seen.insert(e.id()) {
                continue;
            }
            if let Node::Var(v) = e.node() {
                out.insert(v.to_string());
            }
            stack.extend(e.children().into_iter().cloned());
        }
        out
    }

    pub fn depends_on(&self, var: &str) -> bool {
        self.variables().contains(var)
    }

    /// Number of distinct nodes in the DAG.
    pub fn dag_size(&self) -> usize {
        let mut seen = std::collections::HashSet::new();
        let mut stack = vec![self.clone()];
        while let Some(e) = stack.pop() {
            if seen.insert(e.id()) {
                stack.extend(e.children().into_iter().cloned());
            }
        }
        seen.len()
    }

    /// Distribute products over sums and expand positive integer powers of sums.
    pub fn expand(&self) -> Expr {
        let mut memo = HashMap::new();
        expand_rec(self, &mut memo)
    }

    /// Numeric value when the expression is a rational constant.
    pub fn to_f64(&self) -> Option<f64> {
        self.as_num().and_then(|r| r.to_f64())
    }
}

fn expand_rec(e: &Expr, memo: &mut HashMap<usize, Expr>) -> Expr {
    if let Some(r) = memo.get(&e.id()) {
        return r.clone();
    }
    let out = match e.node() {
        Node::Num(_) | Node::Var(_) => e.clone(),
        Node::Add(ts) => Expr::add(ts.iter().map(|t| expand_rec(t, memo))),
        Node::Mul(fs) => distribute(fs.iter().map(|f| expand_rec(f, memo)).collect()),
        Node::Pow(b, ex) => {
            let b2 = expand_rec(b, memo);
            match (b2.node(), ex.to_integer().to_usize()) {
                (Node::Add(_), Some(n)) if ex.is_integer() && n > 0 => distribute(vec![b2.clone(); n]),
                _ => {
                    let p = Expr::pow(&b2, ex.clone());
                    match p.node() {
                        Node::Mul(fs) => distribute(fs.clone()),
                        _ => p,
                    }
                }
            }
        }
        Node::Func(f, a) => Expr::func(*f, expand_rec(a, memo)),
    };
    memo.insert(e.id(), out.clone());
    out
}

/// Product of already expanded factors, multiplied out term by term.
fn distribute(parts: Vec<Expr>) -> Expr {
    let mut acc: Vec<Expr> = vec![Expr::one()];
    for p in parts {
        let terms: Vec<Expr> = match p.node() {
            Node::Add(ts) => ts.clone(),
            _ => vec![p.clone()],
        };
        let mut next = Vec::with_capacity(acc.len() * terms.len());
        for a in &acc {
            for t in &terms {
                next.push(Expr::mul([a.clone(), t.clone()]));
            }
        }
        acc = next;
    }
    Expr::add(acc)
}

fn split_coef(t: &Expr) -> (BigRational, Expr) {
    if let Node::Mul(fs) = t.node() {
        if let Node::Num(c) = fs[0].node() {
            let rest = if fs.len() == 2 {
                fs[1].clone()
            } else {
                Expr::raw(Node::Mul(fs[1..].to_vec()))
            };
            return (c.clone(), rest);
        }
    }
    (BigRational::one(), t.clone())
}

fn with_coef(c: BigRational, rest: Expr) -> Expr {
    if c.is_one() {
        return rest;
    }
    match rest.node() {
        Node::Mul(fs) => {
            let mut v = Vec::with_capacity(fs.len() + 1);
            v.push(Expr::num(c));
            v.extend(fs.iter().cloned());
            Expr::raw(Node::Mul(v))
        }
        _ => Expr::raw(Node::Mul(vec![Expr::num(c), rest])),
    }
}

fn int_root(n: &BigInt, q: u32) -> Option<BigInt> {
    if n.is_negative() {
        if q % 2 == 0 {
            return None;
        }
        return int_root(&-n, q).map(|r| -r);
    }
    let r = n.nth_root(q);
    (num::pow(r.clone(), q as usize) == *n).then_some(r)
}

fn pow_num(r: &BigRational, e: &BigRational) -> Expr {
    if r.is_zero() {
        return if e.is_positive() {
            Expr::zero()
        } else {
            Expr::raw(Node::Pow(Expr::num(r.clone()), e.clone()))
        };
    }
    if r.is_one() {
        return Expr::one();
    }
    if e.is_integer() {
        if let Some(n) = e.to_integer().to_i32() {
            return Expr::num(num::traits::Pow::pow(r, n));
        }
    }
    let q = e.denom().to_u32().unwrap_or(0);
    if q > 0 {
        if let (Some(a), Some(b)) = (int_root(r.numer(), q), int_root(r.denom(), q)) {
            let root = BigRational::new(a, b);
            let p = e.numer().to_i32().unwrap_or(1);
            return Expr::num(num::traits::Pow::pow(&root, p));
        }
    }
    let whole = e.floor();
    let frac = e - &whole;
    let base = Expr::num(r.clone());
    if whole.is_zero() {
        return Expr::raw(Node::Pow(base, frac));
    }
    let w = whole.to_integer().to_i32().unwrap_or(0);
    Expr::mul([
        Expr::num(num::traits::Pow::pow(r, w)),
        Expr::raw(Node::Pow(base, frac)),
    ])
}

impl PartialEq for Expr {
    fn eq(&self, other: &Expr) -> bool {
        if Arc::ptr_eq(&self.0, &other.0) {
            return true;
        }
        if self.0.hash != other.0.hash {
            return false;
        }
        match (self.node(), other.node()) {
            (Node::Num(a), Node::Num(b)) => a == b,
            (Node::Var(a), Node::Var(b)) => a == b,
            (Node::Add(a), Node::Add(b)) | (Node::Mul(a), Node::Mul(b)) => {
                a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.0.hash == y.0.hash)
            }
            (Node::Pow(a, e), Node::Pow(b, f)) => a.0.hash == b.0.hash && e == f,
            (Node::Func(f, a), Node::Func(g, b)) => f == g && a.0.hash == b.0.hash,
            _ => false,
        }
    }
}

impl Eq for Expr {}

impl Hash for Expr {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.hash.hash(state);
    }
}

impl Ord for Expr {
    fn cmp(&self, other: &Expr) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        let (a, b) = (self.node(), other.node());
        let by_kind = match (a, b) {
            (Node::Num(x), Node::Num(y)) => x.cmp(y),
            (Node::Var(x), Node::Var(y)) => x.cmp(y),
            (Node::Pow(x, e), Node::Pow(y, f)) => x.cmp(y).then_with(|| e.cmp(f)),
            (Node::Func(f, x), Node::Func(g, y)) => f.cmp(g).then_with(|| x.cmp(y)),
            (Node::Add(xs), Node::Add(ys)) | (Node::Mul(xs), Node::Mul(ys)) => xs
                .iter()
                .zip(ys)
                .map(|(x, y)| x.cmp(y))
                .find(|o| *o != Ordering::Equal)
                .unwrap_or_else(|| xs.len().cmp(&ys.len())),
            // a power sorts next to its base
            (Node::Pow(x, _), _) => x.cmp(other).then(Ordering::Greater),
            (_, Node::Pow(y, _)) => self.cmp(y).then(Ordering::Less),
            _ => rank(a).cmp(&rank(b)),
        };
        by_kind.then_with(|| self.0.hash.cmp(&other.0.hash))
    }
}

impl PartialOrd for Expr {
    fn partial_cmp(&self, other: &Expr) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Expr({self})")
    }
}

impl From<i64> for Expr {
    fn from(i: i64) -> Expr {
        Expr::int(i)
    }
}

impl From<BigRational> for Expr {
    fn from(r: BigRational) -> Expr {
        Expr::num(r)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl ops::$tr<Expr> for Expr {
            type Output = Expr;
            fn $m(self, rhs: Expr) -> Expr {
                let f: fn(Expr, Expr) -> Expr = $body;
                f(self, rhs)
            }
        }
        impl ops::$tr<&Expr> for &Expr {
            type Output = Expr;
            fn $m(self, rhs: &Expr) -> Expr {
                let f: fn(Expr, Expr) -> Expr = $body;
                f(self.clone(), rhs.clone())
            }
        }
        impl ops::$tr<&Expr> for Expr {
            type Output = Expr;
            fn $m(self, rhs: &Expr) -> Expr {
                let f: fn(Expr, Expr) -> Expr = $body;
                f(self, rhs.clone())
            }
        }
        impl ops::$tr<Expr> for &Expr {
            type Output = Expr;
            fn $m(self, rhs: Expr) -> Expr {
                let f: fn(Expr, Expr) -> Expr = $body;
                f(self.clone(), rhs)
            }
        }
        impl ops::$tr<i64> for Expr {
            type Output = Expr;
            fn $m(self, rhs: i64) -> Expr {
                let f: fn(Expr, Expr) -> Expr = $body;
                f(self, Expr::int(rhs))
            }
        }
        impl ops::$tr<i64> for &Expr {
            type Output = Expr;
            fn $m(self, rhs: i64) -> Expr {
                let f: fn(Expr, Expr) -> Expr = $body;
                f(self.clone(), Expr::int(rhs))
            }
        }
        impl ops::$tr<Expr> for i64 {
            type Output = Expr;
            fn $m(self, rhs: Expr) -> Expr {
                let f: fn(Expr, Expr) -> Expr = $body;
                f(Expr::int(self), rhs)
            }
        }
        impl ops::$tr<&Expr> for i64 {
            type Output = Expr;
            fn $m(self, rhs: &Expr) -> Expr {
                let f: fn(Expr, Expr) -> Expr = $body;
                f(Expr::int(self), rhs.clone())
            }
        }
    };
}

binop!(Add, add, |a, b| Expr::add([a, b]));
binop!(Sub, sub, |a, b| Expr::add([a, Expr::mul([Expr::int(-1), b])]));
binop!(Mul, mul, |a, b| Expr::mul([a, b]));
binop!(Div, div, |a, b| Expr::mul([a, b.powi(-1)]));

impl ops::Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::mul([Expr::int(-1), self])
    }
}

impl ops::Neg for &Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::mul([Expr::int(-1), self.clone()])
    }
}

impl std::iter::Sum for Expr {
    fn sum<I: Iterator<Item = Expr>>(iter: I) -> Expr {
        Expr::add(iter)
    }
}

impl std::iter::Product for Expr {
    fn product<I: Iterator<Item = Expr>>(iter: I) -> Expr {
        Expr::mul(iter)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Expr {
        Expr::var("x")
    }
    fn y() -> Expr {
        Expr::var("y")
    }

    #[test]
    fn constants_fold() {
        assert_eq!(Expr::int(2) + Expr::int(3), Expr::int(5));
        assert_eq!(Expr::int(6) / Expr::int(4), Expr::rat(3, 2));
        assert_eq!(Expr::int(4).sqrt(), Expr::int(2));
        assert_eq!(Expr::rat(9, 4).powr(-1, 2), Expr::rat(2, 3));
    }

    #[test]
    fn like_terms_collect() {
        assert_eq!(x() + x(), Expr::int(2) * x());
        assert_eq!(x() - x(), Expr::zero());
        assert_eq!(x() * x(), x().powi(2));
        assert_eq!(x() / x(), Expr::one());
        assert_eq!(x() * y() + y() * x(), 2 * (x() * y()));
    }

    #[test]
    fn neutral_elements_cancel() {
        assert_eq!(x() + 0, x());
        assert_eq!(x() * 1, x());
        assert_eq!(x().powi(1), x());
        assert_eq!(x().powi(0), Expr::one());
        assert_eq!(x() * 0, Expr::zero());
    }

    #[test]
    fn nested_powers() {
        assert_eq!(x().powi(2).powi(3), x().powi(6));
        assert_eq!(x().sqrt().powi(2), x());
        // not folded: (x^2)^(1/2) is |x|
        assert!(matches!(x().powi(2).sqrt().node(), Node::Pow(..)));
        assert_eq!((x() * y()).powi(2), x().powi(2) * y().powi(2));
        assert_eq!((4 * x()).sqrt(), 2 * x().sqrt());
    }

    #[test]
    fn radical_constants() {
        let s = Expr::int(2).sqrt();
        assert_eq!(&s * &s, Expr::int(2));
        assert_eq!(Expr::int(2).powr(3, 2), 2 * Expr::int(2).sqrt());
    }

    #[test]
    fn expand_distributes() {
        let e = (x() + y()).powi(2);
        assert_eq!(e.expand(), x().powi(2) + 2 * x() * y() + y().powi(2));
        let f = (x() + 1) * (x() - 1);
        assert_eq!(f.expand(), x().powi(2) - 1);
    }

    #[test]
    fn order_is_total_and_stable() {
        let a = x() + y();
        let b = y() + x();
        assert_eq!(a, b);
        assert_eq!(a.structural_hash(), b.structural_hash());
    }
}
