use std::collections::BTreeMap;

use exprcore::{rational_rank, BigRational, Poly, Tape, ZeroTest};
use nalgebra::DMatrix;

use crate::field::{base_context, lie_bracket, VectorField3, BASE};

const SAMPLE_POINTS: usize = 12;

fn exact_rows(fields: &[VectorField3]) -> Option<Vec<Vec<BigRational>>> {
    let polys: Vec<Vec<Poly>> = fields
        .iter()
        .map(|f| f.c.iter().map(|e| Poly::from_expr(e, &BASE).ok()).collect())
        .collect::<Option<_>>()?;
    let mut index: BTreeMap<(usize, Vec<u32>), usize> = BTreeMap::new();
    for ps in &polys {
        for (i, p) in ps.iter().enumerate() {
            for (m, _) in p.terms() {
                let n = index.len();
                index.entry((i, m.to_vec())).or_insert(n);
            }
        }
    }
    let rows = polys
        .iter()
        .map(|ps| {
            let mut row = vec![BigRational::from_integer(0.into()); index.len()];
            for (i, p) in ps.iter().enumerate() {
                for (m, c) in p.terms() {
                    row[index[&(i, m.to_vec())]] = c.clone();
                }
            }
            row
        })
        .collect();
    Some(rows)
}

fn numeric_rank(fields: &[VectorField3]) -> usize {
    let ctx = base_context();
    let mut rng = ZeroTest::default().rng();
    let mut cols = Vec::new();
    let exprs: Vec<_> = fields.iter().flat_map(|f| f.c.iter().cloned()).collect();
    let tape = Tape::compile(&exprs, &ctx).expect("fields live on (X, Y, Z)");
    let mut tries = 0;
    while cols.len() < SAMPLE_POINTS * 3 && tries < 400 {
        tries += 1;
        let x = ZeroTest::draw(&mut rng, &ctx);
        if let Ok(v) = tape.eval(&x) {
            for i in 0..3 {
                cols.push((0..fields.len()).map(|f| v[3 * f + i]).collect::<Vec<f64>>());
            }
        }
    }
    let m = DMatrix::from_fn(fields.len(), cols.len(), |r, c| cols[c][r]);
    let sv = m.singular_values();
    let top = sv.iter().cloned().fold(0.0, f64::max);
    sv.iter().filter(|&&s| s > 1e-9 * top.max(1.0)).count()
}

/// Dimension of the real span of the fields as elements of the Lie algebra of vector fields.
///
/// Exact over polynomial coefficients when every component is polynomial, otherwise estimated from
/// samples of the components at random points.
pub fn span_dimension(fields: &[VectorField3]) -> usize {
    let nonzero: Vec<VectorField3> = fields.iter().filter(|f| !f.is_zero()).cloned().collect();
    if nonzero.is_empty() {
        return 0;
    }
    match exact_rows(&nonzero) {
        Some(rows) => rational_rank(rows),
        None => numeric_rank(&nonzero),
    }
}

/// A linearly independent subset spanning the same space.
fn basis(fields: &[VectorField3]) -> Vec<VectorField3> {
    let mut out: Vec<VectorField3> = Vec::new();
    for f in fields {
        let mut trial = out.clone();
        trial.push(f.clone());
        if span_dimension(&trial) > out.len() {
            out = trial;
        }
    }
    out
}

fn brackets(fields: &[VectorField3]) -> Vec<VectorField3> {
    let mut out = Vec::new();
    for i in 0..fields.len() {
        for j in i + 1..fields.len() {
            out.push(lie_bracket(&fields[i], &fields[j]));
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Structure {
    pub dim: usize,
    pub closed: bool,
    pub solvable: bool,
}

/// Closure under brackets and termination of the derived series of the span.
pub fn is_closed_and_solvable(fields: &[VectorField3]) -> Structure {
    let mut current = basis(fields);
    let dim = current.len();
    let closed = brackets(&current).iter().all(|b| {
        let mut t = current.clone();
        t.push(b.clone());
        span_dimension(&t) == dim
    });
    let mut solvable = false;
    for _ in 0..=dim {
        let next = basis(&brackets(&current));
        if next.is_empty() {
            solvable = true;
            break;
        }
        if next.len() == current.len() {
            break;
        }
        current = next;
    }
    Structure { dim, closed, solvable }
}
