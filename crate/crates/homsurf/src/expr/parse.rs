//! Text format for expressions: a conventional infix grammar with `+ - * /`,
//! parentheses, integer literals (rationals are written `p/q`), variables
//! `x1` and `x2`, parameter identifiers, and the functions `exp(u)`,
//! `log(u)`, `sin(u)`, `cos(u)` and `pow(base, exponent)`.
//!
//! `parse_expr` and `to_text` round-trip semantically: the printed form
//! re-parses to a function identical under the zero test.

use super::{Exponent, Expr, ExprError, Var};
use crate::rat::{rat_to_string, Rat};
use num::traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(num::BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    LParen,
    RParen,
    Comma,
}

fn tokenize(input: &str) -> Result<Vec<Token>, ExprError> {
    let mut out = Vec::new();
    let mut chars = input.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                chars.next();
            }
            '+' => {
                chars.next();
                out.push(Token::Plus);
            }
            '-' => {
                chars.next();
                out.push(Token::Minus);
            }
            '*' => {
                chars.next();
                out.push(Token::Star);
            }
            '/' => {
                chars.next();
                out.push(Token::Slash);
            }
            '(' => {
                chars.next();
                out.push(Token::LParen);
            }
            ')' => {
                chars.next();
                out.push(Token::RParen);
            }
            ',' => {
                chars.next();
                out.push(Token::Comma);
            }
            '0'..='9' => {
                let mut s = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        s.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                let n: num::BigInt = s
                    .parse()
                    .map_err(|_| ExprError::Parse(format!("bad integer `{s}`")))?;
                out.push(Token::Int(n));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut s = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        s.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push(Token::Ident(s));
            }
            other => {
                return Err(ExprError::Parse(format!("unexpected character `{other}`")));
            }
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, t: Token) -> Result<(), ExprError> {
        match self.next() {
            Some(found) if found == t => Ok(()),
            found => Err(ExprError::Parse(format!(
                "expected {t:?}, found {found:?}"
            ))),
        }
    }

    fn expr(&mut self) -> Result<Expr, ExprError> {
        let mut terms = vec![self.term()?];
        while let Some(tok) = self.peek() {
            match tok {
                Token::Plus => {
                    self.next();
                    terms.push(self.term()?);
                }
                Token::Minus => {
                    self.next();
                    let t = self.term()?;
                    terms.push(Expr::product(vec![Expr::int(-1), t]));
                }
                _ => break,
            }
        }
        Ok(Expr::sum(terms))
    }

    fn term(&mut self) -> Result<Expr, ExprError> {
        let mut factors = vec![self.factor()?];
        while let Some(tok) = self.peek() {
            match tok {
                Token::Star => {
                    self.next();
                    factors.push(self.factor()?);
                }
                Token::Slash => {
                    self.next();
                    let f = self.factor()?;
                    factors.push(Expr::Power(Box::new(f), Exponent::Rat(-Rat::one())).canonical());
                }
                _ => break,
            }
        }
        Ok(Expr::product(factors))
    }

    fn factor(&mut self) -> Result<Expr, ExprError> {
        match self.peek() {
            Some(Token::Minus) => {
                self.next();
                let f = self.factor()?;
                Ok(Expr::product(vec![Expr::int(-1), f]))
            }
            _ => self.primary(),
        }
    }

    fn primary(&mut self) -> Result<Expr, ExprError> {
        match self.next() {
            Some(Token::Int(n)) => Ok(Expr::Const(Rat::from_integer(n))),
            Some(Token::LParen) => {
                let e = self.expr()?;
                self.expect(Token::RParen)?;
                Ok(e)
            }
            Some(Token::Ident(name)) => {
                if self.peek() == Some(&Token::LParen) {
                    self.next();
                    let first = self.expr()?;
                    let e = match name.as_str() {
                        "exp" => Expr::Exp(Box::new(first)),
                        "log" => Expr::Log(Box::new(first)),
                        "sin" => Expr::Sin(Box::new(first)),
                        "cos" => Expr::Cos(Box::new(first)),
                        "pow" => {
                            self.expect(Token::Comma)?;
                            let exp_arg = self.expr()?;
                            let exponent = expr_to_exponent(&exp_arg)?;
                            Expr::Power(Box::new(first), exponent)
                        }
                        other => {
                            return Err(ExprError::Parse(format!("unknown function `{other}`")));
                        }
                    };
                    self.expect(Token::RParen)?;
                    Ok(e.canonical())
                } else {
                    match name.as_str() {
                        "x1" => Ok(Expr::Var(Var::X1)),
                        "x2" => Ok(Expr::Var(Var::X2)),
                        _ => Ok(Expr::Param(name)),
                    }
                }
            }
            found => Err(ExprError::Parse(format!("unexpected token {found:?}"))),
        }
    }
}

/// The exponent argument of `pow` must be rational or affine in a single
/// parameter: `q`, `c`, `-c`, `c + q`, `q * c + r`, ...
fn expr_to_exponent(e: &Expr) -> Result<Exponent, ExprError> {
    fn affine_part(e: &Expr) -> Option<(String, Rat)> {
        // product recognizable as scale * param
        match e {
            Expr::Param(n) => Some((n.clone(), Rat::one())),
            Expr::Product(fs) if fs.len() == 2 => match (&fs[0], &fs[1]) {
                (Expr::Const(c), Expr::Param(n)) => Some((n.clone(), c.clone())),
                (Expr::Param(n), Expr::Const(c)) => Some((n.clone(), c.clone())),
                _ => None,
            },
            _ => None,
        }
    }
    let e = e.clone().canonical();
    if let Expr::Const(q) = &e {
        return Ok(Exponent::Rat(q.clone()));
    }
    if let Some((name, scale)) = affine_part(&e) {
        return Ok(Exponent::Param {
            name,
            scale,
            shift: Rat::zero(),
        });
    }
    if let Expr::Sum(ts) = &e {
        if ts.len() == 2 {
            for (a, b) in [(&ts[0], &ts[1]), (&ts[1], &ts[0])] {
                if let (Some((name, scale)), Expr::Const(shift)) = (affine_part(a), b) {
                    return Ok(Exponent::Param {
                        name,
                        scale,
                        shift: shift.clone(),
                    });
                }
            }
        }
    }
    Err(ExprError::Parse(format!(
        "unsupported exponent `{}`",
        to_text(&e)
    )))
}

/// Parses the expression text format.
pub fn parse_expr(input: &str) -> Result<Expr, ExprError> {
    let tokens = tokenize(input)?;
    let mut p = Parser { tokens, pos: 0 };
    let e = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(ExprError::Parse(format!(
            "trailing input after expression (token {})",
            p.pos
        )));
    }
    Ok(e.canonical())
}

/// Prints an expression in the text format.
pub fn to_text(e: &Expr) -> String {
    match e {
        Expr::Const(c) => rat_to_string(c),
        Expr::Param(n) => n.clone(),
        Expr::Var(Var::X1) => "x1".into(),
        Expr::Var(Var::X2) => "x2".into(),
        Expr::Sum(ts) => {
            let mut out = String::new();
            for (i, t) in ts.iter().enumerate() {
                match negated(t) {
                    Some(pos) if i > 0 => {
                        out.push_str(" - ");
                        out.push_str(&to_text(&pos));
                    }
                    _ => {
                        if i > 0 {
                            out.push_str(" + ");
                        }
                        out.push_str(&to_text(t));
                    }
                }
            }
            out
        }
        Expr::Product(fs) => fs
            .iter()
            .map(|f| match f {
                Expr::Sum(_) => format!("({})", to_text(f)),
                _ => to_text(f),
            })
            .collect::<Vec<_>>()
            .join(" * "),
        Expr::Power(base, exponent) => {
            format!("pow({}, {})", to_text(base), exponent_text(exponent))
        }
        Expr::Exp(a) => format!("exp({})", to_text(a)),
        Expr::Log(a) => format!("log({})", to_text(a)),
        Expr::Sin(a) => format!("sin({})", to_text(a)),
        Expr::Cos(a) => format!("cos({})", to_text(a)),
    }
}

/// The term with its sign flipped, when it is negative-leading.
fn negated(e: &Expr) -> Option<Expr> {
    match e {
        Expr::Const(c) if c.is_negative() => Some(Expr::Const(-c)),
        Expr::Product(fs) => {
            let mut out = Vec::with_capacity(fs.len());
            let mut flipped = false;
            for f in fs {
                match f {
                    Expr::Const(c) if c.is_negative() => {
                        flipped = true;
                        out.push(Expr::Const(-c));
                    }
                    other => out.push(other.clone()),
                }
            }
            if flipped {
                Some(Expr::Product(out).canonical())
            } else {
                None
            }
        }
        _ => None,
    }
}

fn exponent_text(e: &Exponent) -> String {
    match e {
        Exponent::Rat(q) => rat_to_string(q),
        Exponent::Param { name, scale, shift } => {
            let head = if scale.is_one() {
                name.clone()
            } else if (-scale).is_one() {
                format!("-{name}")
            } else {
                format!("{} * {name}", rat_to_string(scale))
            };
            if shift.is_zero() {
                head
            } else if shift.is_negative() {
                format!("{head} - {}", rat_to_string(&-shift))
            } else {
                format!("{head} + {}", rat_to_string(shift))
            }
        }
    }
}
