//! Recursive-descent parser for the expression grammar.
//!
//! ```text
//! expr     := ['-'] term (('+'|'-') ['-'] term)*
//! term     := factor (('*'|'/') factor)*
//! factor   := base ('^' exponent)?
//! exponent := ['-'] integer | '(' ['-'] integer ['/' integer] ')'
//! base     := identifier | integer | '(' expr ')' | func '(' expr ')'
//! ```

use num::{BigInt, BigRational, Zero};

use crate::context::Context;
use crate::error::Error;
use crate::expr::{Expr, Func};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Op(char),
    End,
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::CharIndices<'a>>,
    line: usize,
    col: usize,
}

#[derive(Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer { chars: src.char_indices().peekable(), line: 1, col: 1 }
    }

    fn bump(&mut self) -> Option<char> {
        let (_, c) = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn tokens(mut self) -> Result<Vec<Spanned>, Error> {
        let mut out = Vec::new();
        loop {
            while self.chars.peek().is_some_and(|(_, c)| c.is_whitespace()) {
                self.bump();
            }
            let (line, col) = (self.line, self.col);
            let Some(&(_, c)) = self.chars.peek() else {
                out.push(Spanned { tok: Tok::End, line, col });
                return Ok(out);
            };
            let tok = if c.is_ascii_alphabetic() {
                let mut s = String::new();
                while let Some(&(_, c)) = self.chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        s.push(c);
                        self.bump();
                    } else {
                        break;
                    }
                }
                Tok::Ident(s)
            } else if c.is_ascii_digit() {
                let mut s = String::new();
                while let Some(&(_, c)) = self.chars.peek() {
                    if c.is_ascii_digit() {
                        s.push(c);
                        self.bump();
                    } else {
                        break;
                    }
                }
                Tok::Int(s.parse().expect("digits"))
            } else if "+-*/^()".contains(c) {
                self.bump();
                Tok::Op(c)
            } else {
                return Err(Error::Syntax { line, col, msg: format!("unexpected character `{c}`") });
            };
            out.push(Spanned { tok, line, col });
        }
    }
}

struct Parser<'c> {
    toks: Vec<Spanned>,
    pos: usize,
    ctx: &'c Context,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn here(&self) -> (usize, usize) {
        let s = &self.toks[self.pos];
        (s.line, s.col)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, Error> {
        let (line, col) = self.here();
        Err(Error::Syntax { line, col, msg: msg.into() })
    }

    fn next(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Op(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), Error> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected `{c}`"))
        }
    }

    fn expr(&mut self) -> Result<Expr, Error> {
        let mut terms = Vec::new();
        let neg = self.eat('-');
        let t = self.term()?;
        terms.push(if neg { -t } else { t });
        loop {
            let sign = if self.eat('+') {
                false
            } else if self.eat('-') {
                true
            } else {
                break;
            };
            let neg = self.eat('-') ^ sign;
            let t = self.term()?;
            terms.push(if neg { -t } else { t });
        }
        Ok(Expr::add(terms))
    }

    fn term(&mut self) -> Result<Expr, Error> {
        let mut acc = self.factor()?;
        loop {
            if self.eat('*') {
                acc = acc * self.factor()?;
            } else if self.eat('/') {
                let d = self.factor()?;
                acc = acc / d;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<Expr, Error> {
        let b = self.base()?;
        if self.eat('^') {
            let e = self.exponent()?;
            return Ok(Expr::pow(&b, e));
        }
        Ok(b)
    }

    fn integer(&mut self) -> Result<BigInt, Error> {
        match self.next() {
            Tok::Int(i) => Ok(i),
            _ => {
                self.pos -= 1;
                self.err("expected an integer")
            }
        }
    }

    fn exponent(&mut self) -> Result<BigRational, Error> {
        if self.eat('(') {
            let neg = self.eat('-');
            let n = self.integer()?;
            let d = if self.eat('/') { self.integer()? } else { BigInt::from(1) };
            if d.is_zero() {
                return self.err("zero denominator in exponent");
            }
            self.expect(')')?;
            let r = BigRational::new(n, d);
            return Ok(if neg { -r } else { r });
        }
        let neg = self.eat('-');
        let n = self.integer()?;
        Ok(BigRational::from_integer(if neg { -n } else { n }))
    }

    fn base(&mut self) -> Result<Expr, Error> {
        let (line, col) = self.here();
        match self.next() {
            Tok::Int(i) => Ok(Expr::num(BigRational::from_integer(i))),
            Tok::Op('(') => {
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Ident(name) => {
                let func = match name.as_str() {
                    "sqrt" => Some(None),
                    "exp" => Some(Some(Func::Exp)),
                    "log" => Some(Some(Func::Log)),
                    "sin" => Some(Some(Func::Sin)),
                    "cos" => Some(Some(Func::Cos)),
                    _ => None,
                };
                if let Some(f) = func {
                    if *self.peek() == Tok::Op('(') {
                        self.pos += 1;
                        let a = self.expr()?;
                        self.expect(')')?;
                        return Ok(match f {
                            None => a.sqrt(),
                            Some(f) => Expr::func(f, a),
                        });
                    }
                }
                if self.ctx.index(&name).is_none() {
                    return Err(Error::Undeclared { name, line, col });
                }
                Ok(Expr::var(&name))
            }
            Tok::End => {
                self.pos = self.toks.len() - 1;
                self.err("unexpected end of input")
            }
            Tok::Op(c) => {
                self.pos -= 1;
                self.err(format!("unexpected `{c}`"))
            }
        }
    }
}

/// Parses and normalizes `src`; every identifier must be declared in `ctx`.
pub fn parse(src: &str, ctx: &Context) -> Result<Expr, Error> {
    let toks = Lexer::new(src).tokens()?;
    let mut p = Parser { toks, pos: 0, ctx };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return p.err("trailing input");
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> Context {
        Context::new(&["w", "z", "x", "y"])
    }

    #[test]
    fn quartic_potential() {
        let e = parse("(y^4)/4", &ctx()).unwrap();
        assert_eq!(e, Expr::var("y").powi(4) * Expr::rat(1, 4));
    }

    #[test]
    fn reciprocal_potential() {
        let e = parse("1/(x*w + y*z)", &ctx()).unwrap();
        let d = Expr::var("x") * Expr::var("w") + Expr::var("y") * Expr::var("z");
        assert_eq!(e, d.recip());
    }

    #[test]
    fn undeclared_is_named() {
        let e = parse("q + 1", &Context::new(&["x"])).unwrap_err();
        assert_eq!(e, Error::Undeclared { name: "q".into(), line: 1, col: 1 });
    }

    #[test]
    fn syntax_errors_have_positions() {
        match parse("x +\n  * y", &ctx()).unwrap_err() {
            Error::Syntax { line, col, .. } => assert_eq!((line, col), (2, 3)),
            e => panic!("{e:?}"),
        }
        assert!(parse("x^y", &ctx()).is_err());
        assert!(parse("(x", &ctx()).is_err());
        assert!(parse("x $ y", &ctx()).is_err());
    }

    #[test]
    fn exponents() {
        let c = ctx();
        assert_eq!(parse("x^(-2)", &c).unwrap(), Expr::var("x").powi(-2));
        assert_eq!(parse("x^-2", &c).unwrap(), Expr::var("x").powi(-2));
        assert_eq!(parse("x^(3/2)", &c).unwrap(), Expr::var("x").powr(3, 2));
        assert_eq!(parse("sqrt(x)", &c).unwrap(), Expr::var("x").powr(1, 2));
    }

    #[test]
    fn unary_minus() {
        let c = ctx();
        assert_eq!(parse("-x + y", &c).unwrap(), Expr::var("y") - Expr::var("x"));
        assert_eq!(parse("x - -y", &c).unwrap(), Expr::var("x") + Expr::var("y"));
        assert_eq!(parse("-x^2", &c).unwrap(), -Expr::var("x").powi(2));
    }
}
