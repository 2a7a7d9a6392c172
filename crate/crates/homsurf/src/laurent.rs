//! Laurent polynomials in the single chart coordinate x¹ with exact
//! rational coefficients. The jet prolongation keeps every constraint row
//! in this form so that rows can be differentiated and re-evaluated
//! exactly.

use crate::rat::Rat;
use num::traits::{One, Zero};
use std::collections::BTreeMap;

/// Σ c_k · (x¹)^k with integer (possibly negative) exponents.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Laurent {
    terms: BTreeMap<i32, Rat>,
}

impl Laurent {
    pub fn zero() -> Self {
        Laurent::default()
    }

    pub fn constant(c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(0, c);
        }
        Laurent { terms }
    }

    /// `c · (x¹)^k`
    pub fn monomial(c: Rat, k: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(k, c);
        }
        Laurent { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Laurent) -> Laurent {
        let mut terms = self.terms.clone();
        for (k, c) in &other.terms {
            let entry = terms.entry(*k).or_insert_with(Rat::zero);
            *entry = &*entry + c;
            if entry.is_zero() {
                terms.remove(k);
            }
        }
        Laurent { terms }
    }

    pub fn sub(&self, other: &Laurent) -> Laurent {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Laurent {
        Laurent {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }

    pub fn mul(&self, other: &Laurent) -> Laurent {
        let mut terms: BTreeMap<i32, Rat> = BTreeMap::new();
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                let k = ka + kb;
                let prod = ca * cb;
                let entry = terms.entry(k).or_insert_with(Rat::zero);
                *entry = &*entry + &prod;
                if entry.is_zero() {
                    terms.remove(&k);
                }
            }
        }
        Laurent { terms }
    }

    pub fn scale(&self, c: &Rat) -> Laurent {
        if c.is_zero() {
            return Laurent::zero();
        }
        Laurent {
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    /// d/dx¹
    pub fn ddx(&self) -> Laurent {
        Laurent {
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| **k != 0)
                .map(|(k, c)| (k - 1, c * Rat::from_integer((*k).into())))
                .collect(),
        }
    }

    /// Exact evaluation; `None` at x = 0 when negative powers are present.
    pub fn eval(&self, x: &Rat) -> Option<Rat> {
        let mut acc = Rat::zero();
        for (k, c) in &self.terms {
            if *k >= 0 {
                acc += c * pow_rat(x, *k as u32);
            } else {
                if x.is_zero() {
                    return None;
                }
                acc += c / pow_rat(x, (-k) as u32);
            }
        }
        Some(acc)
    }

    /// Sparse view `(exponent, coefficient)`.
    pub fn iter(&self) -> impl Iterator<Item = (&i32, &Rat)> {
        self.terms.iter()
    }
}

fn pow_rat(x: &Rat, n: u32) -> Rat {
    let mut acc = Rat::one();
    for _ in 0..n {
        acc *= x;
    }
    acc
}
