//! Exact normal form for expressions that are Laurent polynomials in x¹
//! and ordinary polynomials in x². Expressions of this shape admit an
//! exact zero test by coefficient comparison; everything else falls back
//! to sampling.

use super::{Exponent, Expr, Var};
use crate::rat::Rat;
use num::traits::{ToPrimitive, Zero};
use std::collections::BTreeMap;

/// Polynomial in x¹, 1/x¹ and x² with rational coefficients, keyed by
/// `(x¹ exponent, x² exponent)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Poly2 {
    terms: BTreeMap<(i64, i64), Rat>,
}

impl Poly2 {
    pub fn zero() -> Self {
        Poly2::default()
    }

    pub fn constant(c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((0, 0), c);
        }
        Poly2 { terms }
    }

    pub fn var(v: Var) -> Self {
        let key = match v {
            Var::X1 => (1, 0),
            Var::X2 => (0, 1),
        };
        let mut terms = BTreeMap::new();
        terms.insert(key, Rat::from_integer(1.into()));
        Poly2 { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Poly2) -> Poly2 {
        let mut terms = self.terms.clone();
        for (k, c) in &other.terms {
            let e = terms.entry(*k).or_insert_with(Rat::zero);
            *e = &*e + c;
            if e.is_zero() {
                terms.remove(k);
            }
        }
        Poly2 { terms }
    }

    pub fn mul(&self, other: &Poly2) -> Poly2 {
        let mut terms: BTreeMap<(i64, i64), Rat> = BTreeMap::new();
        for ((a1, a2), ca) in &self.terms {
            for ((b1, b2), cb) in &other.terms {
                let key = (a1 + b1, a2 + b2);
                let prod = ca * cb;
                let e = terms.entry(key).or_insert_with(Rat::zero);
                *e = &*e + &prod;
                if e.is_zero() {
                    terms.remove(&key);
                }
            }
        }
        Poly2 { terms }
    }

    /// The single monomial `(coefficient, x¹ exp, x² exp)` when the
    /// polynomial has exactly one term.
    fn as_monomial(&self) -> Option<(Rat, i64, i64)> {
        if self.terms.len() == 1 {
            let ((k1, k2), c) = self.terms.iter().next().unwrap();
            Some((c.clone(), *k1, *k2))
        } else {
            None
        }
    }
}

/// Attempts to read an expression as a Laurent polynomial (negative powers
/// allowed only for x¹). Parameters must already be substituted; any
/// transcendental node aborts the extraction.
pub fn as_laurent_poly(e: &Expr) -> Option<Poly2> {
    match e {
        Expr::Const(c) => Some(Poly2::constant(c.clone())),
        Expr::Param(_) => None,
        Expr::Var(v) => Some(Poly2::var(*v)),
        Expr::Sum(ts) => {
            let mut acc = Poly2::zero();
            for t in ts {
                acc = acc.add(&as_laurent_poly(t)?);
            }
            Some(acc)
        }
        Expr::Product(fs) => {
            let mut acc = Poly2::constant(Rat::from_integer(1.into()));
            for f in fs {
                acc = acc.mul(&as_laurent_poly(f)?);
            }
            Some(acc)
        }
        Expr::Power(base, Exponent::Rat(q)) if q.is_integer() => {
            let n = q.to_integer().to_i64()?;
            let b = as_laurent_poly(base)?;
            if n >= 0 {
                let mut acc = Poly2::constant(Rat::from_integer(1.into()));
                for _ in 0..n {
                    acc = acc.mul(&b);
                }
                Some(acc)
            } else {
                // Negative powers only of a pure x¹ monomial.
                let (c, k1, k2) = b.as_monomial()?;
                if k2 != 0 || c.is_zero() {
                    return None;
                }
                let mut inv = Poly2::zero();
                let coeff = Rat::from_integer(1.into()) / c;
                let mut acc = Poly2::constant(Rat::from_integer(1.into()));
                let unit = {
                    let mut t = BTreeMap::new();
                    t.insert((-k1, 0i64), coeff);
                    Poly2 { terms: t }
                };
                for _ in 0..(-n) {
                    acc = acc.mul(&unit);
                }
                inv = inv.add(&acc);
                Some(inv)
            }
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat_int;

    #[test]
    fn polynomial_difference_cancels_exactly() {
        // (x1 + x2)^2 - x1^2 - 2 x1 x2 - x2^2 == 0
        let sq = (Expr::x1() + Expr::x2()).pow_int(2);
        let expanded = Expr::x1().pow_int(2)
            + Expr::int(2) * Expr::x1() * Expr::x2()
            + Expr::x2().pow_int(2);
        let diff = sq - expanded;
        assert!(as_laurent_poly(&diff).unwrap().is_zero());
    }

    #[test]
    fn inverse_x1_is_polynomial() {
        // x1 * (1/x1) - 1 == 0 in the Laurent normal form
        let e = Expr::x1() * Expr::x1().pow_int(-1) - Expr::one();
        assert!(as_laurent_poly(&e).unwrap().is_zero());
        // x2^{-1} is outside the admissible class
        assert!(as_laurent_poly(&Expr::x2().pow_int(-1)).is_none());
        // transcendental nodes abort
        assert!(as_laurent_poly(&Expr::x1().exp()).is_none());
        let _ = rat_int(0);
    }
}
