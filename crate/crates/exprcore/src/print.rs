use std::fmt;

use num::{BigRational, One, Signed};

use crate::expr::{Expr, Node};

#[derive(Clone, Copy, PartialEq, PartialOrd)]
enum Prec {
    Sum,
    Product,
    Power,
}

fn write_rat(f: &mut fmt::Formatter<'_>, r: &BigRational) -> fmt::Result {
    if r.is_integer() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

fn write_exponent(f: &mut fmt::Formatter<'_>, e: &BigRational) -> fmt::Result {
    if e.is_integer() && e.is_positive() {
        write!(f, "^{}", e.numer())
    } else {
        f.write_str("^(")?;
        write_rat(f, e)?;
        f.write_str(")")
    }
}

/// Writes `e` assuming the surrounding context binds at least as tightly as `ctx`.
fn write_expr(f: &mut fmt::Formatter<'_>, e: &Expr, ctx: Prec) -> fmt::Result {
    match e.node() {
        Node::Num(r) => {
            let needs = (r.is_negative() && ctx > Prec::Sum)
                || (!r.is_integer() && ctx > Prec::Product);
            if needs {
                f.write_str("(")?;
                write_rat(f, r)?;
                f.write_str(")")
            } else {
                write_rat(f, r)
            }
        }
        Node::Var(v) => f.write_str(v),
        Node::Func(func, a) => {
            write!(f, "{}(", func.name())?;
            write_expr(f, a, Prec::Sum)?;
            f.write_str(")")
        }
        Node::Pow(b, ex) => {
            let half = BigRational::new(1.into(), 2.into());
            if *ex == half {
                f.write_str("sqrt(")?;
                write_expr(f, b, Prec::Sum)?;
                return f.write_str(")");
            }
            if ctx > Prec::Product && !ex.is_positive() {
                f.write_str("(")?;
                write_expr(f, e, Prec::Sum)?;
                return f.write_str(")");
            }
            if ex.is_negative() {
                // lone reciprocal
                f.write_str("1/")?;
                return write_positive_power(f, b, &-ex.clone());
            }
            write_expr(f, b, Prec::Power)?;
            write_exponent(f, ex)
        }
        Node::Add(ts) => {
            if ctx > Prec::Sum {
                f.write_str("(")?;
            }
            // constants read best at the end
            let mut order: Vec<&Expr> = ts.iter().filter(|t| t.as_num().is_none()).collect();
            order.extend(ts.iter().filter(|t| t.as_num().is_some()));
            for (i, t) in order.into_iter().enumerate() {
                let (neg, body) = negated(t);
                match (i, neg) {
                    (0, true) => f.write_str("-")?,
                    (0, false) => {}
                    (_, true) => f.write_str(" - ")?,
                    (_, false) => f.write_str(" + ")?,
                }
                match body {
                    Some(b) => write_expr(f, &b, Prec::Product)?,
                    None => write_expr(f, t, Prec::Product)?,
                }
            }
            if ctx > Prec::Sum {
                f.write_str(")")?;
            }
            Ok(())
        }
        Node::Mul(fs) => {
            let wrap = ctx > Prec::Product
                || (ctx == Prec::Product && fs[0].as_num().is_some_and(|c| c.is_negative()));
            if wrap {
                f.write_str("(")?;
            }
            write_product(f, fs)?;
            if wrap {
                f.write_str(")")?;
            }
            Ok(())
        }
    }
}

/// Base raised to a positive exponent, as a single factor.
fn write_positive_power(f: &mut fmt::Formatter<'_>, b: &Expr, ex: &BigRational) -> fmt::Result {
    if ex.is_one() {
        return write_expr(f, b, Prec::Power);
    }
    let half = BigRational::new(1.into(), 2.into());
    if *ex == half {
        f.write_str("sqrt(")?;
        write_expr(f, b, Prec::Sum)?;
        return f.write_str(")");
    }
    write_expr(f, b, Prec::Power)?;
    write_exponent(f, ex)
}

fn write_product(f: &mut fmt::Formatter<'_>, fs: &[Expr]) -> fmt::Result {
    let mut coef = BigRational::one();
    let mut numer: Vec<&Expr> = Vec::new();
    let mut denom: Vec<(&Expr, BigRational)> = Vec::new();
    for x in fs {
        match x.node() {
            Node::Num(r) => coef = r.clone(),
            Node::Pow(b, e) if e.is_negative() => denom.push((b, -e.clone())),
            _ => numer.push(x),
        }
    }
    if coef.is_negative() {
        f.write_str("-")?;
    }
    let top = coef.numer().abs();
    let bottom = coef.denom().clone();
    let mut first = true;
    if !top.is_one() || numer.is_empty() {
        write!(f, "{top}")?;
        first = false;
    }
    for x in &numer {
        if !first {
            f.write_str("*")?;
        }
        write_expr(f, x, Prec::Product)?;
        first = false;
    }
    let count = denom.len() + usize::from(!bottom.is_one());
    if count == 0 {
        return Ok(());
    }
    f.write_str("/")?;
    if count > 1 {
        f.write_str("(")?;
    }
    let mut lead = true;
    if !bottom.is_one() {
        write!(f, "{bottom}")?;
        lead = false;
    }
    for (b, e) in &denom {
        if !lead {
            f.write_str("*")?;
        }
        write_positive_power(f, b, e)?;
        lead = false;
    }
    if count > 1 {
        f.write_str(")")?;
    }
    Ok(())
}

/// For a term with a negative leading coefficient, the positive version of that term.
fn negated(t: &Expr) -> (bool, Option<Expr>) {
    match t.node() {
        Node::Num(r) if r.is_negative() => (true, Some(Expr::num(-r.clone()))),
        Node::Mul(fs) => match fs[0].node() {
            Node::Num(c) if c.is_negative() => {
                let mut v = vec![Expr::num(-c.clone())];
                v.extend(fs[1..].iter().cloned());
                (true, Some(Expr::mul(v)))
            }
            _ => (false, None),
        },
        _ => (false, None),
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_expr(f, self, Prec::Sum)
    }
}
