//! Expression evaluation. Purely rational subtrees are evaluated in exact
//! rational arithmetic; values cross into `f64` only at transcendental
//! nodes and at the chart coordinates themselves.

use super::{Exponent, Expr, ExprError, Var};
use crate::rat::{rat_to_f64, Rat};
use num::traits::{ToPrimitive, Zero};
use std::collections::BTreeMap;

/// A sample point: real chart coordinates plus exact rational parameter
/// bindings.
#[derive(Debug, Clone, Default)]
pub struct EvalPoint {
    pub x1: f64,
    pub x2: f64,
    pub params: BTreeMap<String, Rat>,
}

impl EvalPoint {
    pub fn new(x1: f64, x2: f64) -> Self {
        EvalPoint {
            x1,
            x2,
            params: BTreeMap::new(),
        }
    }

    pub fn with_params(x1: f64, x2: f64, params: BTreeMap<String, Rat>) -> Self {
        EvalPoint { x1, x2, params }
    }
}

enum Val {
    Exact(Rat),
    Approx(f64),
}

impl Val {
    fn to_f64(&self) -> f64 {
        match self {
            Val::Exact(r) => rat_to_f64(r),
            Val::Approx(x) => *x,
        }
    }
}

/// Evaluates an expression at a point.
pub fn evaluate(e: &Expr, p: &EvalPoint) -> Result<f64, ExprError> {
    eval_val(e, p).map(|v| v.to_f64())
}

fn eval_val(e: &Expr, p: &EvalPoint) -> Result<Val, ExprError> {
    match e {
        Expr::Const(c) => Ok(Val::Exact(c.clone())),
        Expr::Param(name) => match p.params.get(name) {
            Some(v) => Ok(Val::Exact(v.clone())),
            None => Err(ExprError::UnboundParam(name.clone())),
        },
        Expr::Var(Var::X1) => Ok(Val::Approx(p.x1)),
        Expr::Var(Var::X2) => Ok(Val::Approx(p.x2)),
        Expr::Sum(ts) => {
            let mut exact = Rat::zero();
            let mut approx = 0.0f64;
            let mut all_exact = true;
            for t in ts {
                match eval_val(t, p)? {
                    Val::Exact(r) => exact += r,
                    Val::Approx(x) => {
                        all_exact = false;
                        approx += x;
                    }
                }
            }
            if all_exact {
                Ok(Val::Exact(exact))
            } else {
                Ok(Val::Approx(approx + rat_to_f64(&exact)))
            }
        }
        Expr::Product(fs) => {
            let mut exact = Rat::from_integer(1.into());
            let mut approx = 1.0f64;
            let mut all_exact = true;
            for f in fs {
                match eval_val(f, p)? {
                    Val::Exact(r) => exact *= r,
                    Val::Approx(x) => {
                        all_exact = false;
                        approx *= x;
                    }
                }
            }
            if all_exact {
                Ok(Val::Exact(exact))
            } else {
                Ok(Val::Approx(approx * rat_to_f64(&exact)))
            }
        }
        Expr::Power(base, exponent) => {
            let q = resolve_exponent(exponent, p)?;
            let b = eval_val(base, p)?;
            if q.is_integer() {
                let n = q.to_integer().to_i64().ok_or_else(|| {
                    ExprError::Parse("exponent out of range".into())
                })?;
                match b {
                    Val::Exact(r) => {
                        if r.is_zero() && n < 0 {
                            return Err(ExprError::Domain(0.0));
                        }
                        Ok(Val::Exact(pow_exact(&r, n)))
                    }
                    Val::Approx(x) => {
                        if x == 0.0 && n < 0 {
                            return Err(ExprError::Domain(0.0));
                        }
                        Ok(Val::Approx(x.powi(n as i32)))
                    }
                }
            } else {
                let x = b.to_f64();
                if x <= 0.0 {
                    return Err(ExprError::Domain(x));
                }
                Ok(Val::Approx(x.powf(rat_to_f64(&q))))
            }
        }
        Expr::Exp(a) => Ok(Val::Approx(eval_val(a, p)?.to_f64().exp())),
        Expr::Log(a) => {
            let x = eval_val(a, p)?.to_f64();
            if x <= 0.0 {
                return Err(ExprError::Domain(x));
            }
            Ok(Val::Approx(x.ln()))
        }
        Expr::Sin(a) => Ok(Val::Approx(eval_val(a, p)?.to_f64().sin())),
        Expr::Cos(a) => Ok(Val::Approx(eval_val(a, p)?.to_f64().cos())),
    }
}

fn resolve_exponent(e: &Exponent, p: &EvalPoint) -> Result<Rat, ExprError> {
    match e {
        Exponent::Rat(q) => Ok(q.clone()),
        Exponent::Param { name, scale, shift } => match p.params.get(name) {
            Some(v) => Ok(scale * v + shift),
            None => Err(ExprError::UnboundParam(name.clone())),
        },
    }
}

fn pow_exact(r: &Rat, n: i64) -> Rat {
    let mut acc = Rat::from_integer(1.into());
    for _ in 0..n.unsigned_abs() {
        acc *= r;
    }
    if n < 0 {
        Rat::from_integer(1.into()) / acc
    } else {
        acc
    }
}

/// Plain `f64` evaluation for parameter-free expressions; the fast path
/// used by the sampled linear solves.
pub fn evaluate_f64(e: &Expr, x1: f64, x2: f64) -> Result<f64, ExprError> {
    match e {
        Expr::Const(c) => Ok(rat_to_f64(c)),
        Expr::Param(name) => Err(ExprError::UnboundParam(name.clone())),
        Expr::Var(Var::X1) => Ok(x1),
        Expr::Var(Var::X2) => Ok(x2),
        Expr::Sum(ts) => {
            let mut acc = 0.0;
            for t in ts {
                acc += evaluate_f64(t, x1, x2)?;
            }
            Ok(acc)
        }
        Expr::Product(fs) => {
            let mut acc = 1.0;
            for f in fs {
                acc *= evaluate_f64(f, x1, x2)?;
            }
            Ok(acc)
        }
        Expr::Power(base, exponent) => {
            let q = match exponent {
                Exponent::Rat(q) => q,
                Exponent::Param { name, .. } => {
                    return Err(ExprError::UnboundParam(name.clone()))
                }
            };
            let b = evaluate_f64(base, x1, x2)?;
            if q.is_integer() {
                let n = q.to_integer().to_i64().unwrap_or(0);
                if b == 0.0 && n < 0 {
                    return Err(ExprError::Domain(0.0));
                }
                Ok(b.powi(n as i32))
            } else {
                if b <= 0.0 {
                    return Err(ExprError::Domain(b));
                }
                Ok(b.powf(rat_to_f64(q)))
            }
        }
        Expr::Exp(a) => Ok(evaluate_f64(a, x1, x2)?.exp()),
        Expr::Log(a) => {
            let x = evaluate_f64(a, x1, x2)?;
            if x <= 0.0 {
                return Err(ExprError::Domain(x));
            }
            Ok(x.ln())
        }
        Expr::Sin(a) => Ok(evaluate_f64(a, x1, x2)?.sin()),
        Expr::Cos(a) => Ok(evaluate_f64(a, x1, x2)?.cos()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    #[test]
    fn constants_are_exact() {
        let e = Expr::ratio(3, 2);
        assert_eq!(evaluate(&e, &EvalPoint::new(0.7, 0.3)).unwrap(), 1.5);
    }

    #[test]
    fn log_one_is_zero() {
        let e = Expr::x1() * Expr::x1().log();
        assert_eq!(evaluate(&e, &EvalPoint::new(1.0, 0.0)).unwrap(), 0.0);
    }

    #[test]
    fn exp_zero_is_one() {
        let e = (-Expr::x1()).exp();
        assert_eq!(evaluate(&e, &EvalPoint::new(0.0, 5.0)).unwrap(), 1.0);
    }

    #[test]
    fn domain_errors() {
        let e = Expr::x1().log();
        assert!(matches!(
            evaluate(&e, &EvalPoint::new(-1.0, 0.0)),
            Err(ExprError::Domain(_))
        ));
        let f = Expr::x1().pow(rat(1, 2));
        assert!(matches!(
            evaluate(&f, &EvalPoint::new(-4.0, 0.0)),
            Err(ExprError::Domain(_))
        ));
        let g = Expr::param("c");
        assert!(matches!(
            evaluate(&g, &EvalPoint::new(1.0, 0.0)),
            Err(ExprError::UnboundParam(_))
        ));
    }
}
