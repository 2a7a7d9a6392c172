//! Minimal symbolic expression engine for the closed-form functions that
//! appear as components of affine Killing vector fields: rational
//! polynomials in the chart coordinates, rational powers, exp, log, sin
//! and cos, plus opaque parameters that are bound to exact rationals at
//! evaluation time.
//!
//! There is deliberately no general simplifier. Expressions are kept in a
//! shallow canonical form (flattened sums/products, folded rational
//! constants) and equality of functions is decided semantically by
//! [`is_identically_zero`].

mod eval;
mod parse;
mod poly;
mod zero;

pub use eval::{evaluate, evaluate_f64, EvalPoint};
pub use parse::{parse_expr, to_text};
pub use poly::{as_laurent_poly, Poly2};
pub use zero::{is_identically_zero, SamplePoints, ZeroTest, DEFAULT_SEED, DEFAULT_TOL};

use crate::rat::Rat;
use num::traits::{One, Signed, Zero};
use std::collections::BTreeMap;

/// Chart coordinates of the fixed coordinate systems.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Var {
    X1,
    X2,
}

/// Exponent of a `Power` node: an exact rational, or an affine form
/// `scale·param + shift` so that powers like `(x¹)^{-c}` and `(x¹)^{c+1}`
/// stay closed under differentiation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Exponent {
    Rat(Rat),
    Param { name: String, scale: Rat, shift: Rat },
}

/// Symbolic expression tree.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Expr {
    Const(Rat),
    Param(String),
    Var(Var),
    Sum(Vec<Expr>),
    Product(Vec<Expr>),
    Power(Box<Expr>, Exponent),
    Exp(Box<Expr>),
    Log(Box<Expr>),
    Sin(Box<Expr>),
    Cos(Box<Expr>),
}

/// Errors raised by expression evaluation and parsing.
#[derive(Debug, Clone, thiserror::Error)]
pub enum ExprError {
    #[error("log or fractional power evaluated at non-positive argument {0}")]
    Domain(f64),
    #[error("parameter `{0}` has no binding")]
    UnboundParam(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Expr {
    pub fn zero() -> Expr {
        Expr::Const(Rat::zero())
    }

    pub fn one() -> Expr {
        Expr::Const(Rat::one())
    }

    pub fn int(n: i64) -> Expr {
        Expr::Const(crate::rat::rat_int(n))
    }

    pub fn ratio(n: i64, d: i64) -> Expr {
        Expr::Const(crate::rat::rat(n, d))
    }

    pub fn rational(r: Rat) -> Expr {
        Expr::Const(r)
    }

    pub fn param(name: impl Into<String>) -> Expr {
        Expr::Param(name.into())
    }

    pub fn x1() -> Expr {
        Expr::Var(Var::X1)
    }

    pub fn x2() -> Expr {
        Expr::Var(Var::X2)
    }

    pub fn sum(terms: Vec<Expr>) -> Expr {
        Expr::Sum(terms).canonical()
    }

    pub fn product(factors: Vec<Expr>) -> Expr {
        Expr::Product(factors).canonical()
    }

    pub fn pow(self, exponent: Rat) -> Expr {
        Expr::Power(Box::new(self), Exponent::Rat(exponent)).canonical()
    }

    pub fn pow_int(self, n: i64) -> Expr {
        self.pow(crate::rat::rat_int(n))
    }

    pub fn exp(self) -> Expr {
        Expr::Exp(Box::new(self)).canonical()
    }

    pub fn log(self) -> Expr {
        Expr::Log(Box::new(self)).canonical()
    }

    pub fn sin(self) -> Expr {
        Expr::Sin(Box::new(self)).canonical()
    }

    pub fn cos(self) -> Expr {
        Expr::Cos(Box::new(self)).canonical()
    }

    /// Syntactic test for the zero constant.
    pub fn is_zero_const(&self) -> bool {
        matches!(self, Expr::Const(c) if c.is_zero())
    }

    /// Canonical form: nested sums/products flattened, rational constants
    /// folded (including collection of syntactically identical summands
    /// and distribution of a lone constant over a sum), zero products
    /// collapsed, children sorted. Idempotent.
    pub fn canonical(self) -> Expr {
        match self {
            Expr::Sum(terms) => {
                let mut flat = Vec::new();
                let mut acc = Rat::zero();
                for t in terms {
                    match t.canonical() {
                        Expr::Const(c) => acc += c,
                        Expr::Sum(inner) => {
                            for u in inner {
                                match u {
                                    Expr::Const(c) => acc += c,
                                    other => flat.push(other),
                                }
                            }
                        }
                        other => flat.push(other),
                    }
                }
                // Collect terms equal up to their rational coefficient.
                let mut groups: Vec<(Vec<Expr>, Rat)> = Vec::new();
                for term in flat {
                    let (coeff, key) = split_coefficient(term);
                    match groups.iter_mut().find(|(k, _)| *k == key) {
                        Some((_, c)) => *c = &*c + &coeff,
                        None => groups.push((key, coeff)),
                    }
                }
                let mut out: Vec<Expr> = groups
                    .into_iter()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(key, c)| {
                        let mut factors = key;
                        if !c.is_one() {
                            factors.push(Expr::Const(c));
                        }
                        match factors.len() {
                            1 => factors.pop().unwrap(),
                            _ => {
                                factors.sort();
                                Expr::Product(factors)
                            }
                        }
                    })
                    .collect();
                if !acc.is_zero() || out.is_empty() {
                    out.push(Expr::Const(acc));
                }
                out.sort();
                match out.len() {
                    1 => out.pop().unwrap(),
                    _ => Expr::Sum(out),
                }
            }
            Expr::Product(factors) => {
                let mut flat = Vec::new();
                let mut acc = Rat::one();
                for f in factors {
                    match f.canonical() {
                        Expr::Const(c) => acc *= c,
                        Expr::Product(inner) => {
                            for u in inner {
                                match u {
                                    Expr::Const(c) => acc *= c,
                                    other => flat.push(other),
                                }
                            }
                        }
                        other => flat.push(other),
                    }
                }
                if acc.is_zero() {
                    return Expr::Const(Rat::zero());
                }
                // A lone constant times a sum distributes.
                if flat.len() == 1 && matches!(flat[0], Expr::Sum(_)) && !acc.is_one() {
                    let Expr::Sum(ts) = flat.pop().unwrap() else {
                        unreachable!()
                    };
                    return Expr::Sum(
                        ts.into_iter()
                            .map(|t| Expr::Product(vec![Expr::Const(acc.clone()), t]))
                            .collect(),
                    )
                    .canonical();
                }
                if !acc.is_one() || flat.is_empty() {
                    flat.push(Expr::Const(acc));
                }
                flat.sort();
                match flat.len() {
                    1 => flat.pop().unwrap(),
                    _ => Expr::Product(flat),
                }
            }
            Expr::Power(base, exponent) => {
                let base = base.canonical();
                match &exponent {
                    Exponent::Rat(q) if q.is_zero() => return Expr::one(),
                    Exponent::Rat(q) if q.is_one() => return base,
                    _ => {}
                }
                if let (Expr::Const(c), Exponent::Rat(q)) = (&base, &exponent) {
                    if c.is_one() {
                        return Expr::one();
                    }
                    if q.is_integer() && !(c.is_zero() && q.is_negative()) {
                        return Expr::Const(pow_const(c, q));
                    }
                }
                Expr::Power(Box::new(base), exponent)
            }
            Expr::Exp(a) => Expr::Exp(Box::new(a.canonical())),
            Expr::Log(a) => Expr::Log(Box::new(a.canonical())),
            Expr::Sin(a) => Expr::Sin(Box::new(a.canonical())),
            Expr::Cos(a) => Expr::Cos(Box::new(a.canonical())),
            leaf => leaf,
        }
    }

    /// Substitutes parameter bindings (also inside exponents) and
    /// re-canonicalizes. Unbound parameters are left in place.
    pub fn subst_params(&self, params: &BTreeMap<String, Rat>) -> Expr {
        match self {
            Expr::Param(name) => match params.get(name) {
                Some(v) => Expr::Const(v.clone()),
                None => self.clone(),
            },
            Expr::Sum(ts) => Expr::Sum(ts.iter().map(|t| t.subst_params(params)).collect()),
            Expr::Product(fs) => {
                Expr::Product(fs.iter().map(|f| f.subst_params(params)).collect())
            }
            Expr::Power(b, e) => {
                let e = match e {
                    Exponent::Param { name, scale, shift } => match params.get(name) {
                        Some(v) => Exponent::Rat(scale * v + shift),
                        None => e.clone(),
                    },
                    rat => rat.clone(),
                };
                Expr::Power(Box::new(b.subst_params(params)), e)
            }
            Expr::Exp(a) => Expr::Exp(Box::new(a.subst_params(params))),
            Expr::Log(a) => Expr::Log(Box::new(a.subst_params(params))),
            Expr::Sin(a) => Expr::Sin(Box::new(a.subst_params(params))),
            Expr::Cos(a) => Expr::Cos(Box::new(a.subst_params(params))),
            leaf => leaf.clone(),
        }
        .canonical()
    }

    /// Partial derivative with respect to a chart coordinate. Total on
    /// canonical trees; the result is canonical.
    pub fn differentiate(&self, var: Var) -> Expr {
        match self {
            Expr::Const(_) | Expr::Param(_) => Expr::zero(),
            Expr::Var(v) => {
                if *v == var {
                    Expr::one()
                } else {
                    Expr::zero()
                }
            }
            Expr::Sum(ts) => Expr::sum(ts.iter().map(|t| t.differentiate(var)).collect()),
            Expr::Product(fs) => {
                // n-ary Leibniz rule
                let mut terms = Vec::new();
                for i in 0..fs.len() {
                    let mut factors: Vec<Expr> = Vec::with_capacity(fs.len());
                    for (j, f) in fs.iter().enumerate() {
                        if i == j {
                            factors.push(f.differentiate(var));
                        } else {
                            factors.push(f.clone());
                        }
                    }
                    terms.push(Expr::product(factors));
                }
                Expr::sum(terms)
            }
            Expr::Power(base, exponent) => {
                let du = base.differentiate(var);
                let (mult, dec) = match exponent {
                    Exponent::Rat(q) => (
                        Expr::Const(q.clone()),
                        Exponent::Rat(q - Rat::one()),
                    ),
                    Exponent::Param { name, scale, shift } => (
                        Expr::sum(vec![
                            Expr::product(vec![
                                Expr::Const(scale.clone()),
                                Expr::Param(name.clone()),
                            ]),
                            Expr::Const(shift.clone()),
                        ]),
                        Exponent::Param {
                            name: name.clone(),
                            scale: scale.clone(),
                            shift: shift - Rat::one(),
                        },
                    ),
                };
                Expr::product(vec![
                    mult,
                    Expr::Power(base.clone(), dec).canonical(),
                    du,
                ])
            }
            Expr::Exp(a) => Expr::product(vec![self.clone(), a.differentiate(var)]),
            Expr::Log(a) => Expr::product(vec![
                a.differentiate(var),
                a.as_ref().clone().pow_int(-1),
            ]),
            Expr::Sin(a) => Expr::product(vec![
                Expr::Cos(a.clone()).canonical(),
                a.differentiate(var),
            ]),
            Expr::Cos(a) => Expr::product(vec![
                Expr::int(-1),
                Expr::Sin(a.clone()).canonical(),
                a.differentiate(var),
            ]),
        }
    }
}

/// Splits a canonical non-const term into its rational coefficient and the
/// remaining factor list (the grouping key for like-term collection).
fn split_coefficient(term: Expr) -> (Rat, Vec<Expr>) {
    match term {
        Expr::Product(fs) => {
            let mut coeff = Rat::one();
            let mut key = Vec::with_capacity(fs.len());
            for f in fs {
                match f {
                    Expr::Const(c) => coeff *= c,
                    other => key.push(other),
                }
            }
            (coeff, key)
        }
        other => (Rat::one(), vec![other]),
    }
}

fn pow_const(c: &Rat, q: &Rat) -> Rat {
    let n = q.to_integer();
    let mut acc = Rat::one();
    let (mag, invert) = if n.is_negative() {
        (-n.clone(), true)
    } else {
        (n.clone(), false)
    };
    let mut k = num::BigInt::zero();
    while k < mag {
        acc *= c;
        k += 1;
    }
    if invert {
        Rat::one() / acc
    } else {
        acc
    }
}

impl std::ops::Add for Expr {
    type Output = Expr;
    fn add(self, rhs: Expr) -> Expr {
        Expr::sum(vec![self, rhs])
    }
}

impl std::ops::Sub for Expr {
    type Output = Expr;
    fn sub(self, rhs: Expr) -> Expr {
        Expr::sum(vec![self, Expr::product(vec![Expr::int(-1), rhs])])
    }
}

impl std::ops::Mul for Expr {
    type Output = Expr;
    fn mul(self, rhs: Expr) -> Expr {
        Expr::product(vec![self, rhs])
    }
}

impl std::ops::Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::product(vec![Expr::int(-1), self])
    }
}

impl std::fmt::Display for Expr {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", to_text(self))
    }
}
