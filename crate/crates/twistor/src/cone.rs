use std::collections::HashMap;

use exprcore::{differentiate, BigRational, Context, Expr, Node, Poly, RatFunc, ZeroTest};
use num::One;

use crate::error::TwistorError;
use crate::family::CurveFamily;

pub const DEFAULT_MAX_DEGREE: usize = 4;

/// Symmetric quadratic form on the parameter space, meaningful up to scale.
#[derive(Clone, Debug)]
pub struct QuadraticForm4 {
    pub names: [String; 4],
    pub q: [[Expr; 4]; 4],
}

impl QuadraticForm4 {
    pub fn new(names: [&str; 4], q: [[Expr; 4]; 4]) -> Self {
        QuadraticForm4 { names: names.map(String::from), q }
    }

    /// Upper-triangle entries row by row.
    pub fn entries(&self) -> Vec<Expr> {
        let mut out = Vec::new();
        for i in 0..4 {
            for j in i..4 {
                out.push(self.q[i][j].clone());
            }
        }
        out
    }

    pub fn determinant(&self) -> Expr {
        let m: Vec<Vec<Expr>> = self.q.iter().map(|r| r.to_vec()).collect();
        det_expr(&m)
    }
}

fn det_expr(m: &[Vec<Expr>]) -> Expr {
    if m.len() == 1 {
        return m[0][0].clone();
    }
    Expr::add((0..m.len()).filter(|&j| !m[0][j].is_zero()).map(|j| {
        let minor: Vec<Vec<Expr>> = m[1..]
            .iter()
            .map(|r| r.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, e)| e.clone()).collect())
            .collect();
        let s = if j % 2 == 0 { 1 } else { -1 };
        Expr::int(s) * &m[0][j] * det_expr(&minor)
    }))
}

/// All 2×2 minors of the stacked upper-triangle entries vanish.
pub fn proportional(a: &QuadraticForm4, b: &QuadraticForm4, ctx: &Context, zt: &ZeroTest) -> Result<bool, TwistorError> {
    let (ea, eb) = (a.entries(), b.entries());
    let mut minors = Vec::new();
    for i in 0..ea.len() {
        for j in i + 1..ea.len() {
            let m = &ea[i] * &eb[j] - &ea[j] * &eb[i];
            if !m.is_zero() {
                minors.push(m);
            }
        }
    }
    Ok(zt.all_zero(&minors, ctx)?)
}

/// Replaces X-free irrational subterms by fresh symbols so the rest is rational.
struct Atoms {
    names: Vec<String>,
    values: Vec<Expr>,
    memo: HashMap<Expr, Expr>,
}

impl Atoms {
    fn atom(&mut self, e: Expr) -> Expr {
        if let Some(a) = self.memo.get(&e) {
            return a.clone();
        }
        let name = format!("_a{}", self.names.len());
        let a = Expr::var(&name);
        self.names.push(name);
        self.values.push(e.clone());
        self.memo.insert(e, a.clone());
        a
    }

    fn rewrite(&mut self, e: &Expr) -> Expr {
        let x_free = !e.depends_on("X");
        match e.node() {
            Node::Num(_) | Node::Var(_) => e.clone(),
            Node::Add(ts) => Expr::add(ts.iter().map(|t| self.rewrite(t)).collect::<Vec<_>>()),
            Node::Mul(fs) => Expr::mul(fs.iter().map(|f| self.rewrite(f)).collect::<Vec<_>>()),
            Node::Pow(b, r) if !r.is_integer() && x_free => {
                let root = Expr::pow(b, BigRational::new(BigRational::one().numer().clone(), r.denom().clone()));
                let a = self.atom(root);
                Expr::pow(&a, BigRational::from_integer(r.numer().clone()))
            }
            Node::Pow(b, r) => Expr::pow(&self.rewrite(b), r.clone()),
            Node::Func(..) if x_free => self.atom(e.clone()),
            Node::Func(f, a) => Expr::func(*f, self.rewrite(a)),
        }
    }
}

/// Numerator of a rational function with all powers of X factored out.
fn cleared(e: &Expr, names: &[&str]) -> Result<Poly, TwistorError> {
    let r = RatFunc::from_expr(e, names)?;
    let mut m = vec![0; names.len()];
    m[0] = r.num.min_monomial()[0];
    Ok(r.num.div_monomial(&m))
}

/// Sylvester matrix of two polynomials given by coefficients, lowest power first.
fn sylvester(p: &[Poly], q: &[Poly], nv: usize) -> Vec<Vec<Poly>> {
    let (m, n) = (p.len() - 1, q.len() - 1);
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![Poly::zero(nv); size];
        for (k, c) in p.iter().rev().enumerate() {
            row[i + k] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![Poly::zero(nv); size];
        for (k, c) in q.iter().rev().enumerate() {
            row[i + k] = c.clone();
        }
        rows.push(row);
    }
    rows
}

/// Fraction-free determinant.
fn bareiss(mut m: Vec<Vec<Poly>>, nv: usize) -> Poly {
    let n = m.len();
    if n == 0 {
        return Poly::one(nv);
    }
    let mut sign = 1;
    let mut prev = Poly::one(nv);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return Poly::zero(nv),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = t.exact_div(&prev).expect("Bareiss division is exact");
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign < 0 {
        -&d
    } else {
        d
    }
}

fn displacement_degree(p: &Poly, dvars: std::ops::Range<usize>) -> Option<u32> {
    let degs: Vec<u32> = p.terms().map(|(m, _)| dvars.clone().map(|i| m[i]).sum()).collect();
    let lo = *degs.iter().min()?;
    (degs.iter().all(|&d| d == lo)).then_some(lo)
}

/// Quadratic form whose vanishing makes two infinitesimally close curves meet.
pub fn null_cone(fam: &CurveFamily, max_degree: usize) -> Result<QuadraticForm4, TwistorError> {
    let params = fam.param_names();
    let dnames: Vec<String> = params.iter().map(|p| format!("_d{p}")).collect();
    let vary = |e: &Expr| Expr::add((0..4).map(|a| differentiate(e, params[a]) * Expr::var(&dnames[a])));
    let mut atoms = Atoms { names: Vec::new(), values: Vec::new(), memo: HashMap::new() };
    let dy = atoms.rewrite(&vary(&fam.y));
    let dz = atoms.rewrite(&vary(&fam.z));
    let mut names: Vec<&str> = vec!["X"];
    names.extend(params);
    names.extend(dnames.iter().map(String::as_str));
    names.extend(atoms.names.iter().map(String::as_str));
    let nv = names.len();
    let dr = 5..9;
    let p = cleared(&dy, &names)?;
    let q = cleared(&dz, &names)?;
    let (cp, cq) = (p.coeffs_in(0), q.coeffs_in(0));
    for c in [&cp, &cq] {
        if c.len() - 1 > max_degree {
            return Err(TwistorError::DegreeOverflow { degree: c.len() - 1, max: max_degree });
        }
    }
    let mut res = bareiss(sylvester(&cp, &cq, nv), nv);
    if res.is_zero() {
        return Err(TwistorError::NotQuadratic(0));
    }
    let (lp, lq) = (cp.last().unwrap(), cq.last().unwrap());
    let mut degree = displacement_degree(&res, dr.clone()).ok_or(TwistorError::NotQuadratic(0))?;
    // A linear form dividing both leading coefficients gives a spurious common root at X = ∞.
    for lead in [lp, lq] {
        if degree <= 2 || displacement_degree(lead, dr.clone()) != Some(1) {
            continue;
        }
        let ell = strip_nondisplacement(lead, dr.clone());
        let shared = lp.exact_div(&ell).is_some() && lq.exact_div(&ell).is_some();
        if let (true, Some(r)) = (shared, res.exact_div(&ell)) {
            res = r;
            degree -= 1;
        }
    }
    if degree != 2 {
        return Err(TwistorError::NotQuadratic(degree as usize));
    }
    let (_, res) = res.normalize();
    let mut content = res.min_monomial();
    dr.clone().for_each(|i| content[i] = 0);
    let res = res.div_monomial(&content);
    let mut vars: Vec<Expr> = names.iter().map(|n| Expr::var(n)).collect();
    for (k, v) in atoms.values.iter().enumerate() {
        vars[9 + k] = v.clone();
    }
    let mut q: [[Expr; 4]; 4] = std::array::from_fn(|_| std::array::from_fn(|_| Expr::zero()));
    let mut parts: HashMap<(usize, usize), Vec<(Vec<u32>, BigRational)>> = HashMap::new();
    for (m, c) in res.terms() {
        let idx: Vec<usize> = dr.clone().flat_map(|i| std::iter::repeat(i - 5).take(m[i] as usize)).collect();
        let mut rest = m.to_vec();
        dr.clone().for_each(|i| rest[i] = 0);
        parts.entry((idx[0], idx[1])).or_default().push((rest, c.clone()));
    }
    for ((a, b), terms) in parts {
        let poly = Poly::from_terms(nv, terms);
        let e = poly.to_expr(&vars);
        if a == b {
            q[a][a] = e;
        } else {
            let half = Expr::rat(1, 2) * e;
            q[a][b] = half.clone();
            q[b][a] = half;
        }
    }
    Ok(QuadraticForm4::new(params, q))
}

/// Primitive part with the monomial content outside the displacement variables removed.
fn strip_nondisplacement(p: &Poly, dr: std::ops::Range<usize>) -> Poly {
    let (_, prim) = p.normalize();
    let mut m = prim.min_monomial();
    dr.for_each(|i| m[i] = 0);
    prim.div_monomial(&m)
}
