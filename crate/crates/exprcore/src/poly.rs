//! Exact sparse multivariate polynomials and rational functions over ℚ.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops;

use num::{BigInt, BigRational, Integer, One, Signed, ToPrimitive, Zero};

use crate::error::Error;
use crate::expr::{Expr, Node};

pub type Monomial = Vec<u32>;

/// Polynomial in a fixed number of variables; terms keyed by exponent vector (lex order).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, BigRational>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Poly {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: BigRational) -> Poly {
        let mut p = Poly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(nvars: usize) -> Poly {
        Poly::constant(nvars, BigRational::one())
    }

    pub fn var(nvars: usize, i: usize) -> Poly {
        Poly::monomial(nvars, i, 1, BigRational::one())
    }

    /// c·x_i^k
    pub fn monomial(nvars: usize, i: usize, k: u32, c: BigRational) -> Poly {
        let mut m = vec![0; nvars];
        m[i] = k;
        let mut p = Poly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, BigRational)>) -> Poly {
        let mut p = Poly::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.len(), nvars);
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant_value(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.iter().all(|&e| e == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.constant_value().is_some()
    }

    pub fn coefficient(&self, m: &[u32]) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn degree(&self, i: usize) -> Option<u32> {
        self.terms.keys().map(|m| m[i]).max()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.iter().sum()).max()
    }

    pub fn leading(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::one(self.nvars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn derivative(&self, i: usize) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            if m[i] > 0 {
                let mut m2 = m.clone();
                m2[i] -= 1;
                out.add_term(m2, c * BigRational::from_integer(BigInt::from(m[i])));
            }
        }
        out
    }

    /// Antiderivative in x_i with zero integration constant.
    pub fn integrate(&self, i: usize) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut m2 = m.clone();
            m2[i] += 1;
            out.add_term(m2, c / BigRational::from_integer(BigInt::from(m[i] + 1)));
        }
        out
    }

    /// Quotient when `d` divides `self` exactly.
    pub fn exact_div(&self, d: &Poly) -> Option<Poly> {
        let (dm, dc) = d.leading()?;
        let mut rem = self.clone();
        let mut q = Poly::zero(self.nvars);
        while let Some((rm, rc)) = rem.leading() {
            if rm.iter().zip(dm).any(|(a, b)| a < b) {
                return None;
            }
            let m: Monomial = rm.iter().zip(dm).map(|(a, b)| a - b).collect();
            let c = rc / dc;
            let t = Poly::from_terms(self.nvars, [(m, c)]);
            rem = &rem - &(&t * d);
            q = &q + &t;
        }
        Some(q)
    }

    /// (c, p) with self = c·p, p having coprime integer coefficients and positive leading term.
    pub fn normalize(&self) -> (BigRational, Poly) {
        if self.is_zero() {
            return (BigRational::zero(), self.clone());
        }
        let mut g = BigInt::zero();
        let mut l = BigInt::one();
        for c in self.terms.values() {
            g = g.gcd(c.numer());
            l = l.lcm(c.denom());
        }
        let mut content = BigRational::new(g, l);
        if self.leading().unwrap().1.is_negative() {
            content = -content;
        }
        let prim = self.scale(&content.recip());
        (content, prim)
    }

    /// Componentwise minimum exponent over all terms.
    pub fn min_monomial(&self) -> Monomial {
        let mut m: Option<Monomial> = None;
        for k in self.terms.keys() {
            m = Some(match m {
                None => k.clone(),
                Some(a) => a.iter().zip(k).map(|(x, y)| *x.min(y)).collect(),
            });
        }
        m.unwrap_or_else(|| vec![0; self.nvars])
    }

    pub fn div_monomial(&self, m: &[u32]) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.iter().zip(m).map(|(a, b)| a - b).collect(), c.clone()))
                .collect(),
        }
    }

    /// Coefficients of powers of x_i, lowest first; each still lives in all variables.
    pub fn coeffs_in(&self, i: usize) -> Vec<Poly> {
        let deg = self.degree(i).unwrap_or(0) as usize;
        let mut out = vec![Poly::zero(self.nvars); deg + 1];
        for (m, c) in &self.terms {
            let mut m2 = m.clone();
            m2[i] = 0;
            out[m[i] as usize].add_term(m2, c.clone());
        }
        out
    }

    /// Replaces x_i by the polynomial `q`.
    pub fn compose(&self, i: usize, q: &Poly) -> Poly {
        let coeffs = self.coeffs_in(i);
        let mut acc = Poly::zero(self.nvars);
        for c in coeffs.iter().rev() {
            acc = &(&acc * q) + c;
        }
        acc
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| {
                let mut t = c.to_f64().unwrap_or(f64::NAN);
                for (xi, &e) in x.iter().zip(m) {
                    t *= xi.powi(e as i32);
                }
                t
            })
            .sum()
    }

    pub fn to_expr(&self, vars: &[Expr]) -> Expr {
        Expr::add(self.terms.iter().map(|(m, c)| {
            let mut fs = vec![Expr::num(c.clone())];
            for (v, &e) in vars.iter().zip(m) {
                if e > 0 {
                    fs.push(v.powi(e as i64));
                }
            }
            Expr::mul(fs)
        }))
    }

    /// Exact conversion; fails on anything that is not a polynomial in `names`.
    pub fn from_expr(e: &Expr, names: &[&str]) -> Result<Poly, Error> {
        let r = RatFunc::from_expr(e, names)?;
        if !r.den.is_empty() {
            return Err(Error::NonRational(format!("{e} has a denominator")));
        }
        Ok(r.num)
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<Expr> = (0..self.nvars).map(|i| Expr::var(&format!("x{i}"))).collect();
        write!(f, "Poly({})", self.to_expr(&names))
    }
}

impl ops::Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl ops::Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl ops::Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-BigRational::one())
    }
}

impl ops::Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut acc: BTreeMap<Monomial, BigRational> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                let m: Monomial = m1.iter().zip(m2).map(|(a, b)| a + b).collect();
                *acc.entry(m).or_insert_with(BigRational::zero) += c1 * c2;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Poly { nvars: self.nvars, terms: acc }
    }
}

/// Numerator over a factored denominator of primitive atoms.
#[derive(Clone, Debug)]
pub struct RatFunc {
    pub num: Poly,
    pub den: Vec<(Poly, u32)>,
}

fn atomize(p: &Poly) -> (BigRational, Vec<(Poly, u32)>) {
    let (c, prim) = p.normalize();
    let m = prim.min_monomial();
    let rest = prim.div_monomial(&m);
    let mut atoms = Vec::new();
    for (i, &e) in m.iter().enumerate() {
        if e > 0 {
            atoms.push((Poly::var(p.nvars, i), e));
        }
    }
    if !rest.is_constant() {
        atoms.push((rest, 1));
    }
    (c, atoms)
}

fn merge(into: &mut Vec<(Poly, u32)>, atom: Poly, e: u32) {
    match into.iter_mut().find(|(a, _)| *a == atom) {
        Some(slot) => slot.1 += e,
        None => into.push((atom, e)),
    }
}

impl RatFunc {
    pub fn from_poly(p: Poly) -> RatFunc {
        RatFunc { num: p, den: Vec::new() }
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn constant_value(&self) -> Option<BigRational> {
        if self.den.is_empty() {
            self.num.constant_value()
        } else {
            None
        }
    }

    fn reduce(mut self) -> RatFunc {
        if self.num.is_zero() {
            self.den.clear();
            return self;
        }
        for (atom, e) in self.den.iter_mut() {
            while *e > 0 {
                match self.num.exact_div(atom) {
                    Some(q) => {
                        self.num = q;
                        *e -= 1;
                    }
                    None => break,
                }
            }
        }
        self.den.retain(|(_, e)| *e > 0);
        self
    }

    pub fn mul(&self, o: &RatFunc) -> RatFunc {
        let mut den = self.den.clone();
        for (a, e) in &o.den {
            merge(&mut den, a.clone(), *e);
        }
        RatFunc { num: &self.num * &o.num, den }.reduce()
    }

    pub fn add(&self, o: &RatFunc) -> RatFunc {
        let mut den = self.den.clone();
        for (a, e) in &o.den {
            match den.iter_mut().find(|(b, _)| b == a) {
                Some(slot) => slot.1 = slot.1.max(*e),
                None => den.push((a.clone(), *e)),
            }
        }
        let lift = |r: &RatFunc| {
            let mut n = r.num.clone();
            for (a, e) in &den {
                let have = r.den.iter().find(|(b, _)| b == a).map(|x| x.1).unwrap_or(0);
                if *e > have {
                    n = &n * &a.pow(e - have);
                }
            }
            n
        };
        let num = &lift(self) + &lift(o);
        RatFunc { num, den }.reduce()
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }

    pub fn sub(&self, o: &RatFunc) -> RatFunc {
        self.add(&o.neg())
    }

    pub fn inv(&self) -> Result<RatFunc, Error> {
        if self.num.is_zero() {
            return Err(Error::Singular { term: "0".into(), reason: "division by zero" });
        }
        let (c, atoms) = atomize(&self.num);
        let mut num = Poly::constant(self.nvars(), c.recip());
        for (a, e) in &self.den {
            num = &num * &a.pow(*e);
        }
        Ok(RatFunc { num, den: atoms }.reduce())
    }

    pub fn powi(&self, k: i64) -> Result<RatFunc, Error> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let k = k.unsigned_abs() as u32;
        let num = base.num.pow(k);
        let den = base.den.iter().map(|(a, e)| (a.clone(), e * k)).collect();
        Ok(RatFunc { num, den })
    }

    /// Exact conversion of a rational expression in `names`.
    pub fn from_expr(e: &Expr, names: &[&str]) -> Result<RatFunc, Error> {
        let mut memo = HashMap::new();
        rat_rec(e, names, &mut memo)
    }

    pub fn to_expr(&self, vars: &[Expr]) -> Expr {
        let mut fs = vec![self.num.to_expr(vars)];
        for (a, e) in &self.den {
            fs.push(a.to_expr(vars).powi(-(*e as i64)));
        }
        Expr::mul(fs)
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        let mut v = self.num.eval(x);
        for (a, e) in &self.den {
            v /= a.eval(x).powi(*e as i32);
        }
        v
    }
}

fn rat_rec(e: &Expr, names: &[&str], memo: &mut HashMap<usize, (Expr, RatFunc)>) -> Result<RatFunc, Error> {
    if let Some((_, r)) = memo.get(&e.id()) {
        return Ok(r.clone());
    }
    let n = names.len();
    let r = match e.node() {
        Node::Num(c) => RatFunc::from_poly(Poly::constant(n, c.clone())),
        Node::Var(v) => {
            let i = names.iter().position(|x| **x == **v).ok_or_else(|| Error::UnknownVariable(v.to_string()))?;
            RatFunc::from_poly(Poly::var(n, i))
        }
        Node::Add(ts) => {
            let mut acc = RatFunc::from_poly(Poly::zero(n));
            for t in ts {
                acc = acc.add(&rat_rec(t, names, memo)?);
            }
            acc
        }
        Node::Mul(fs) => {
            let mut acc = RatFunc::from_poly(Poly::one(n));
            for f in fs {
                acc = acc.mul(&rat_rec(f, names, memo)?);
            }
            acc
        }
        Node::Pow(b, ex) => {
            let k = ex
                .is_integer()
                .then(|| ex.to_integer().to_i64())
                .flatten()
                .ok_or_else(|| Error::NonRational(e.to_string()))?;
            rat_rec(b, names, memo)?.powi(k)?
        }
        Node::Func(..) => return Err(Error::NonRational(e.to_string())),
    };
    memo.insert(e.id(), (e.clone(), r.clone()));
    Ok(r)
}

/// Exact zero test for rational expressions.
pub fn is_rational_zero(e: &Expr, names: &[&str]) -> Result<bool, Error> {
    Ok(RatFunc::from_expr(e, names)?.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::Context;
    use crate::parse::parse;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn arithmetic_and_division() {
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let a = &(&x + &y) * &(&x - &y);
        let b = &x.pow(2) - &y.pow(2);
        assert_eq!(a, b);
        assert_eq!(b.exact_div(&(&x + &y)), Some(&x - &y));
        assert_eq!(b.exact_div(&(&x + &Poly::one(2))), None);
    }

    #[test]
    fn calculus_roundtrip() {
        let x = Poly::var(1, 0);
        let p = &x.pow(3).scale(&q(2, 3)) + &x;
        assert_eq!(p.derivative(0).integrate(0), p);
    }

    #[test]
    fn normalize_content() {
        let x = Poly::var(1, 0);
        let p = (&x.scale(&q(-2, 3)) + &Poly::constant(1, q(4, 9))).clone();
        let (c, prim) = p.normalize();
        assert_eq!(c, q(-2, 9));
        assert_eq!(prim, &x.scale(&q(3, 1)) - &Poly::constant(1, q(2, 1)));
    }

    #[test]
    fn rational_cancellation() {
        let ctx = Context::new(&["x", "y"]);
        let e = parse("(x^2 - y^2)/(x + y) - x + y", &ctx).unwrap();
        assert!(is_rational_zero(&e, &["x", "y"]).unwrap());
        let e = parse("1/x + 1/y - (x + y)/(x*y)", &ctx).unwrap();
        assert!(is_rational_zero(&e, &["x", "y"]).unwrap());
        let e = parse("1/x + 1/y", &ctx).unwrap();
        assert!(!is_rational_zero(&e, &["x", "y"]).unwrap());
    }

    #[test]
    fn radicals_rejected() {
        let ctx = Context::new(&["x"]);
        let e = parse("sqrt(x)", &ctx).unwrap();
        assert!(matches!(RatFunc::from_expr(&e, &["x"]), Err(Error::NonRational(_))));
    }

    #[test]
    fn compose_substitutes() {
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let p = &x.pow(2) + &y;
        let r = p.compose(0, &(&y + &Poly::one(2)));
        assert_eq!(r, &(&y.pow(2) + &y.scale(&q(3, 1))) + &Poly::one(2));
    }
}
