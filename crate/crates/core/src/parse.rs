//! Expression grammar for batch queries: ASCII-safe mirror of the chart
//! notation. Products use `*`, a trailing `*` on a generator token is its
//! star (`b23*` is the starred generator; `b13*b24` is a product), `d(..)`
//! applies the differential, `star(..)` the involution, and `ox` (printed
//! `(x)`) forms tensor legs in twisted contexts.

use crate::coeff::{rat, LaurentScalar as L};
use crate::dga::GradedPresentation;
use crate::ncalg::catalog::resolve_symbol;
use crate::ncalg::{AlgebraElement, Presentation};
use crate::twist::{from_su2, twisted_mul, twisted_star, TwistedElement};
use num::BigInt;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("syntax error at {pos}: expected {expected}")]
    SyntaxError { pos: usize, expected: String },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("unknown algebra `{0}`")]
    UnknownAlgebra(String),
    #[error("cannot evaluate: {0}")]
    Eval(String),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Unit,
    Scalar(L),
    Gen(String),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
    Star(Box<Expr>),
    D(Box<Expr>),
    Tensor(Box<Expr>, Box<Expr>),
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Int(i64),
    Plus,
    Minus,
    Mul,
    Caret,
    Slash,
    LParen,
    RParen,
    Ox,
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let b: Vec<char> = src.chars().collect();
    let mut i = 0usize;
    let mut out = Vec::new();
    while i < b.len() {
        let c = b[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        // the tensor sign prints as (x)
        if c == '(' && i + 2 < b.len() && b[i + 1] == 'x' && b[i + 2] == ')' {
            let next_alnum = b.get(i + 3).map(|d| d.is_alphanumeric()).unwrap_or(false);
            if !next_alnum {
                out.push((i, Tok::Ox));
                i += 3;
                continue;
            }
        }
        match c {
            '+' => {
                out.push((i, Tok::Plus));
                i += 1;
            }
            '-' => {
                out.push((i, Tok::Minus));
                i += 1;
            }
            '*' => {
                out.push((i, Tok::Mul));
                i += 1;
            }
            '^' => {
                out.push((i, Tok::Caret));
                i += 1;
            }
            '/' => {
                out.push((i, Tok::Slash));
                i += 1;
            }
            '(' => {
                out.push((i, Tok::LParen));
                i += 1;
            }
            ')' => {
                out.push((i, Tok::RParen));
                i += 1;
            }
            d if d.is_ascii_digit() => {
                let start = i;
                while i < b.len() && b[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = b[start..i].iter().collect();
                let v = s.parse::<i64>().map_err(|_| ParseError::SyntaxError {
                    pos: start,
                    expected: "integer".into(),
                })?;
                out.push((start, Tok::Int(v)));
            }
            a if a.is_ascii_alphabetic() || a == '_' => {
                let start = i;
                while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == '_') {
                    i += 1;
                }
                let mut s: String = b[start..i].iter().collect();
                if s == "ox" {
                    out.push((start, Tok::Ox));
                    continue;
                }
                // a '*' is part of the token (a starred generator) unless
                // an atom follows it, in which case it multiplies
                if i < b.len() && b[i] == '*' {
                    let next = b.get(i + 1).copied();
                    let atom_follows = matches!(next, Some(d) if d.is_ascii_alphanumeric() || d == '(');
                    if !atom_follows {
                        s.push('*');
                        i += 1;
                    }
                }
                out.push((start, Tok::Ident(s)));
            }
            other => {
                return Err(ParseError::SyntaxError {
                    pos: i,
                    expected: format!("token (found `{}`)", other),
                })
            }
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn at(&self) -> usize {
        self.toks
            .get(self.pos)
            .map(|(p, _)| *p)
            .unwrap_or_else(|| self.toks.last().map(|(p, _)| p + 1).unwrap_or(0))
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<(), ParseError> {
        if self.peek() == Some(&t) {
            self.pos += 1;
            Ok(())
        } else {
            Err(ParseError::SyntaxError { pos: self.at(), expected: what.into() })
        }
    }

    fn parse_int(&mut self) -> Result<i64, ParseError> {
        let neg = if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            true
        } else {
            false
        };
        match self.bump() {
            Some(Tok::Int(v)) => Ok(if neg { -v } else { v }),
            _ => Err(ParseError::SyntaxError { pos: self.at(), expected: "integer".into() }),
        }
    }

    // expr := tens (('+'|'-') tens)*
    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.tens()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    let rhs = self.tens()?;
                    lhs = Expr::Add(Box::new(lhs), Box::new(rhs));
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    let rhs = self.tens()?;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    // tens := term ('ox' term)*
    fn tens(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        while matches!(self.peek(), Some(Tok::Ox)) {
            self.pos += 1;
            let rhs = self.term()?;
            lhs = Expr::Tensor(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    // term := factor ('*' factor)*
    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        while matches!(self.peek(), Some(Tok::Mul)) {
            self.pos += 1;
            let rhs = self.factor()?;
            lhs = Expr::Mul(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    // factor := atom ('^' int)*
    fn factor(&mut self) -> Result<Expr, ParseError> {
        let mut base = self.atom()?;
        while matches!(self.peek(), Some(Tok::Caret)) {
            self.pos += 1;
            let e = self.parse_int()?;
            base = Expr::Pow(Box::new(base), e);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.bump() {
            Some(Tok::Minus) => Ok(Expr::Neg(Box::new(self.factor()?))),
            Some(Tok::Int(v)) => {
                // rational literal n/d
                if self.peek() == Some(&Tok::Slash) {
                    self.pos += 1;
                    match self.bump() {
                        Some(Tok::Int(d)) if d != 0 => Ok(Expr::Scalar(L::from_rat(rat(v, d)))),
                        _ => Err(ParseError::SyntaxError {
                            pos: self.at(),
                            expected: "nonzero denominator".into(),
                        }),
                    }
                } else {
                    Ok(Expr::Scalar(L::from_int(v)))
                }
            }
            Some(Tok::LParen) => {
                let e = self.expr()?;
                self.expect(Tok::RParen, "closing parenthesis")?;
                Ok(e)
            }
            Some(Tok::Ident(name)) => {
                if name == "q" {
                    return Ok(Expr::Scalar(L::q()));
                }
                if (name == "d" || name == "star") && self.peek() == Some(&Tok::LParen) {
                    self.pos += 1;
                    let inner = self.expr()?;
                    self.expect(Tok::RParen, "closing parenthesis")?;
                    return Ok(if name == "d" {
                        Expr::D(Box::new(inner))
                    } else {
                        Expr::Star(Box::new(inner))
                    });
                }
                Ok(Expr::Gen(name))
            }
            _ => Err(ParseError::SyntaxError { pos: self.at(), expected: "expression".into() }),
        }
    }
}

pub fn parse(src: &str) -> Result<Expr, ParseError> {
    let toks = lex(src)?;
    if toks.is_empty() {
        return Err(ParseError::SyntaxError { pos: 0, expected: "expression".into() });
    }
    let mut p = Parser { toks, pos: 0 };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(ParseError::SyntaxError { pos: p.at(), expected: "end of input".into() });
    }
    Ok(e)
}

/// Evaluate an expression in a plain presentation (optionally with
/// differential data for `d(..)` nodes).
pub fn eval(
    e: &Expr,
    pres: &Presentation,
    graded: Option<&GradedPresentation>,
) -> Result<AlgebraElement, ParseError> {
    let alg = |r: Result<AlgebraElement, crate::ncalg::AlgError>| {
        r.map_err(|err| ParseError::Eval(err.to_string()))
    };
    match e {
        Expr::Unit => Ok(AlgebraElement::unit()),
        Expr::Scalar(c) => Ok(AlgebraElement::scalar(c.clone())),
        Expr::Gen(name) => {
            resolve_symbol(pres, name).map_err(|_| ParseError::UnknownGenerator(name.clone()))
        }
        Expr::Add(a, b) => {
            let va = eval(a, pres, graded)?;
            let vb = eval(b, pres, graded)?;
            alg(pres.normal_form(&va.add(&vb)))
        }
        Expr::Sub(a, b) => {
            let va = eval(a, pres, graded)?;
            let vb = eval(b, pres, graded)?;
            alg(pres.normal_form(&va.sub(&vb)))
        }
        Expr::Neg(a) => Ok(eval(a, pres, graded)?.neg()),
        Expr::Mul(a, b) => {
            let va = eval(a, pres, graded)?;
            let vb = eval(b, pres, graded)?;
            alg(pres.mul(&va, &vb))
        }
        Expr::Pow(a, k) => {
            let va = eval(a, pres, graded)?;
            if *k >= 0 {
                alg(pres.pow(&va, *k as u32))
            } else if let Some((w, c)) = va.terms.iter().next().filter(|_| va.terms.len() == 1) {
                if w.is_empty() {
                    let inv = c
                        .inverse()
                        .map_err(|err| ParseError::Eval(err.to_string()))?;
                    alg(Ok(AlgebraElement::scalar(inv))).and_then(|x| {
                        let mut acc = AlgebraElement::unit();
                        for _ in 0..k.unsigned_abs() {
                            acc = pres
                                .mul(&acc, &x)
                                .map_err(|err| ParseError::Eval(err.to_string()))?;
                        }
                        Ok(acc)
                    })
                } else {
                    Err(ParseError::Eval("negative power of a non-scalar".into()))
                }
            } else {
                Err(ParseError::Eval("negative power of a non-scalar".into()))
            }
        }
        Expr::Star(a) => {
            let va = eval(a, pres, graded)?;
            alg(pres.star(&va))
        }
        Expr::D(a) => {
            let g = graded.ok_or_else(|| {
                ParseError::Eval("d(..) needs a graded presentation".into())
            })?;
            let va = eval(a, pres, graded)?;
            g.differential(&va).map_err(|err| ParseError::Eval(err.to_string()))
        }
        Expr::Tensor(_, _) => Err(ParseError::Eval(
            "tensor expressions only evaluate in the twisted context".into(),
        )),
    }
}

/// Evaluate in the twisted tensor product: su2 expressions on the left
/// leg, radius powers on the right; bare generators live on their natural
/// side.
pub fn eval_twisted(e: &Expr, su2: &Presentation) -> Result<TwistedElement, ParseError> {
    match e {
        Expr::Unit => Ok(TwistedElement::one()),
        Expr::Scalar(c) => Ok(TwistedElement::one().scale(c)),
        Expr::Gen(g) if g == "r" => Ok(TwistedElement::from_term(
            crate::twist::AMonomial::one(),
            1,
            L::one(),
        )),
        Expr::Gen(g) if g == "rinv" => Ok(TwistedElement::from_term(
            crate::twist::AMonomial::one(),
            -1,
            L::one(),
        )),
        Expr::Gen(name) => {
            let x = resolve_symbol(su2, name)
                .map_err(|_| ParseError::UnknownGenerator(name.clone()))?;
            from_su2(su2, &x).map_err(|err| ParseError::Eval(err.to_string()))
        }
        Expr::Add(a, b) => Ok(eval_twisted(a, su2)?.add(&eval_twisted(b, su2)?)),
        Expr::Sub(a, b) => Ok(eval_twisted(a, su2)?.sub(&eval_twisted(b, su2)?)),
        Expr::Neg(a) => Ok(TwistedElement::zero().sub(&eval_twisted(a, su2)?)),
        Expr::Mul(a, b) => Ok(twisted_mul(&eval_twisted(a, su2)?, &eval_twisted(b, su2)?)),
        Expr::Pow(a, k) => {
            let v = eval_twisted(a, su2)?;
            if *k < 0 {
                // negative powers only for pure radius legs
                let mut acc = TwistedElement::one();
                let rinv = TwistedElement::from_term(crate::twist::AMonomial::one(), -1, L::one());
                if v == TwistedElement::from_term(crate::twist::AMonomial::one(), 1, L::one()) {
                    for _ in 0..k.unsigned_abs() {
                        acc = twisted_mul(&acc, &rinv);
                    }
                    return Ok(acc);
                }
                return Err(ParseError::Eval("negative power in twisted context".into()));
            }
            let mut acc = TwistedElement::one();
            for _ in 0..*k {
                acc = twisted_mul(&acc, &v);
            }
            Ok(acc)
        }
        Expr::Star(a) => Ok(twisted_star(&eval_twisted(a, su2)?)),
        Expr::Tensor(a, b) => Ok(twisted_mul(&eval_twisted(a, su2)?, &eval_twisted(b, su2)?)),
        Expr::D(_) => Err(ParseError::Eval("no differential in the twisted context".into())),
    }
}

/// Scalar pretty-printer already lives on [`L`]; element printing on the
/// presentation. This helper renders an element so that parsing it back
/// yields the same normal form.
pub fn print_element(pres: &Presentation, e: &AlgebraElement) -> String {
    pres.display(e)
}

pub fn big_to_i64(b: &BigInt) -> Option<i64> {
    use num::ToPrimitive;
    b.to_i64()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dga::graded_catalog;
    use crate::ncalg::catalog::catalog;

    #[test]
    fn parse_r2_identity_input() {
        let c = catalog();
        let sn = c.presentation("chart-sn-ext").unwrap();
        let e = parse("q^-1*(b13*b24 - b14*b23)").unwrap();
        let v = eval(&e, sn, None).unwrap();
        let expect = sn.elem(&[(L::one(), &["r", "r"])]).unwrap();
        assert_eq!(v, expect);
    }

    #[test]
    fn empty_input_is_a_syntax_error() {
        assert!(matches!(parse(""), Err(ParseError::SyntaxError { .. })));
        assert!(matches!(parse("b23 +"), Err(ParseError::SyntaxError { .. })));
    }

    #[test]
    fn starred_token_vs_product() {
        let c = catalog();
        let n = c.presentation("chart-n").unwrap();
        // trailing star binds to the generator
        let e = parse("b23* * b23").unwrap();
        let v = eval(&e, n, None).unwrap();
        assert_eq!(v, n.elem(&[(L::one(), &["b23*", "b23"])]).unwrap());
        // star before an atom multiplies
        let e = parse("b23*b24").unwrap();
        let v = eval(&e, n, None).unwrap();
        assert_eq!(v, n.elem(&[(L::one(), &["b23", "b24"])]).unwrap());
    }

    #[test]
    fn differential_and_star_functions() {
        let g = graded_catalog().get("dga-n").unwrap();
        let e = parse("d(b23)*star(b23)").unwrap();
        let v = eval(&e, &g.pres, Some(g)).unwrap();
        let expect = g
            .pres
            .elem(&[(L::q_pow(-2), &["b23*", "d(b23)"])])
            .unwrap();
        assert_eq!(v, expect);
    }

    #[test]
    fn print_parse_round_trip_on_random_elements() {
        use rand::SeedableRng;
        let c = catalog();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for name in crate::ncalg::catalog::PRESENTATION_NAMES {
            let p = c.presentation(name).unwrap();
            for _ in 0..20 {
                let x = p.normal_form(&p.random_element(&mut rng, 3, 3)).unwrap();
                let s = print_element(p, &x);
                let back = eval(&parse(&s).unwrap(), p, None)
                    .unwrap_or_else(|e| panic!("{}: `{}`: {}", name, s, e));
                assert_eq!(back, x, "{}: `{}`", name, s);
            }
        }
    }

    #[test]
    fn twisted_tensor_parse_and_round_trip() {
        let c = catalog();
        let su2 = c.presentation("su2").unwrap();
        let e = parse("x23 ox r + q^2 * x24* ox rinv").unwrap();
        let v = eval_twisted(&e, su2).unwrap();
        let s = v.to_string();
        let back = eval_twisted(&parse(&s).unwrap(), su2).unwrap();
        assert_eq!(back, v, "`{}`", s);
    }

    #[test]
    fn graded_round_trip() {
        use rand::SeedableRng;
        let gc = graded_catalog();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for name in ["dga-n", "dga-s", "dga-sn-ext"] {
            let g = gc.get(name).unwrap();
            for _ in 0..15 {
                let x = g
                    .pres
                    .normal_form(&g.pres.random_element(&mut rng, 3, 2))
                    .unwrap();
                let s = print_element(&g.pres, &x);
                let back = eval(&parse(&s).unwrap(), &g.pres, Some(g))
                    .unwrap_or_else(|e| panic!("{}: `{}`: {}", name, s, e));
                assert_eq!(back, x, "{}: `{}`", name, s);
            }
        }
    }
}
