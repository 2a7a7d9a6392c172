//! Exact linear algebra on the closed-form function class of the
//! dictionary.
//!
//! Killing residuals of dictionary fields are ℚ-linear combinations of
//! "atoms"
//!
//! ```text
//! x1^α · x2^b · log(x1)^L · exp(m·x1 + n·x2) · {1, sin(q·x2), cos(q·x2)}
//! ```
//!
//! with rational α, m, n, q and small natural b, L. Distinct atoms are
//! linearly independent functions on the half-plane, so expanding the
//! residuals in this basis turns the ansatz kernel into an exact rational
//! nullspace problem with no floating-point separation issues.

use crate::expr::{Exponent, Expr, Var};
use crate::rat::Rat;
use num::traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) enum Trig {
    One,
    Sin(Rat),
    Cos(Rat),
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) struct Atom {
    x1_pow: Rat,
    x2_pow: u32,
    log_pow: u32,
    rate1: Rat,
    rate2: Rat,
    trig: Trig,
}

impl Atom {
    fn unit() -> Atom {
        Atom {
            x1_pow: Rat::zero(),
            x2_pow: 0,
            log_pow: 0,
            rate1: Rat::zero(),
            rate2: Rat::zero(),
            trig: Trig::One,
        }
    }
}

/// ℚ-linear combination of atoms.
pub(crate) type AtomSum = BTreeMap<Atom, Rat>;

fn singleton(a: Atom, c: Rat) -> AtomSum {
    let mut m = BTreeMap::new();
    if !c.is_zero() {
        m.insert(a, c);
    }
    m
}

fn add_into(acc: &mut AtomSum, other: AtomSum) {
    for (a, c) in other {
        let e = acc.entry(a.clone()).or_insert_with(Rat::zero);
        *e = &*e + &c;
        if e.is_zero() {
            acc.remove(&a);
        }
    }
}

/// Product of two atoms as an atom sum (trig products linearize via the
/// product-to-sum identities; sine arguments are normalized positive).
fn mul_atoms(a: &Atom, b: &Atom) -> AtomSum {
    let half = Rat::new(1.into(), 2.into());
    let base = Atom {
        x1_pow: &a.x1_pow + &b.x1_pow,
        x2_pow: a.x2_pow + b.x2_pow,
        log_pow: a.log_pow + b.log_pow,
        rate1: &a.rate1 + &b.rate1,
        rate2: &a.rate2 + &b.rate2,
        trig: Trig::One,
    };
    let with_trig = |t: Trig, coeff: Rat| -> AtomSum {
        let (t, coeff) = normalize_trig(t, coeff);
        singleton(
            Atom {
                trig: t,
                ..base.clone()
            },
            coeff,
        )
    };
    match (&a.trig, &b.trig) {
        (Trig::One, t) | (t, Trig::One) => with_trig(t.clone(), Rat::one()),
        (Trig::Sin(p), Trig::Sin(q)) => {
            // sin p sin q = ½cos(p−q) − ½cos(p+q)
            let mut out = with_trig(Trig::Cos(p - q), half.clone());
            add_into(&mut out, with_trig(Trig::Cos(p + q), -half));
            out
        }
        (Trig::Cos(p), Trig::Cos(q)) => {
            // cos p cos q = ½cos(p−q) + ½cos(p+q)
            let mut out = with_trig(Trig::Cos(p - q), half.clone());
            add_into(&mut out, with_trig(Trig::Cos(p + q), half));
            out
        }
        (Trig::Sin(p), Trig::Cos(q)) | (Trig::Cos(q), Trig::Sin(p)) => {
            // sin p cos q = ½sin(p+q) + ½sin(p−q)
            let mut out = with_trig(Trig::Sin(p + q), half.clone());
            add_into(&mut out, with_trig(Trig::Sin(p - q), half));
            out
        }
    }
}

/// cos(0) = 1, sin(0) = 0, sin(−q) = −sin(q), cos(−q) = cos(q).
fn normalize_trig(t: Trig, coeff: Rat) -> (Trig, Rat) {
    match t {
        Trig::One => (Trig::One, coeff),
        Trig::Sin(q) => {
            if q.is_zero() {
                (Trig::One, Rat::zero())
            } else if q.is_negative() {
                (Trig::Sin(-q), -coeff)
            } else {
                (Trig::Sin(q), coeff)
            }
        }
        Trig::Cos(q) => {
            if q.is_zero() {
                (Trig::One, coeff)
            } else if q.is_negative() {
                (Trig::Cos(-q), coeff)
            } else {
                (Trig::Cos(q), coeff)
            }
        }
    }
}

fn mul_sums(a: &AtomSum, b: &AtomSum) -> AtomSum {
    let mut out = AtomSum::new();
    for (aa, ca) in a {
        for (ab, cb) in b {
            let c = ca * cb;
            let mut terms = mul_atoms(aa, ab);
            for v in terms.values_mut() {
                *v = &*v * &c;
            }
            add_into(&mut out, terms);
        }
    }
    out
}

/// Reads an expression as a linear form c1·x1 + c2·x2 (no constant term).
fn as_pure_linear(e: &Expr) -> Option<(Rat, Rat)> {
    let sum = expand(e)?;
    let mut c1 = Rat::zero();
    let mut c2 = Rat::zero();
    let x1 = Atom {
        x1_pow: Rat::one(),
        ..Atom::unit()
    };
    let x2 = Atom {
        x2_pow: 1,
        ..Atom::unit()
    };
    for (a, c) in sum {
        if a == x1 {
            c1 = c;
        } else if a == x2 {
            c2 = c;
        } else {
            return None;
        }
    }
    Some((c1, c2))
}

/// Expands an expression into the atom basis; `None` when the expression
/// leaves the supported class (unbound parameters, exp of a nonlinear
/// argument, log of anything but x1, trig of anything but q·x2, ...).
pub(crate) fn expand(e: &Expr) -> Option<AtomSum> {
    match e {
        Expr::Const(c) => Some(singleton(Atom::unit(), c.clone())),
        Expr::Param(_) => None,
        Expr::Var(Var::X1) => Some(singleton(
            Atom {
                x1_pow: Rat::one(),
                ..Atom::unit()
            },
            Rat::one(),
        )),
        Expr::Var(Var::X2) => Some(singleton(
            Atom {
                x2_pow: 1,
                ..Atom::unit()
            },
            Rat::one(),
        )),
        Expr::Sum(ts) => {
            let mut acc = AtomSum::new();
            for t in ts {
                add_into(&mut acc, expand(t)?);
            }
            Some(acc)
        }
        Expr::Product(fs) => {
            let mut acc = singleton(Atom::unit(), Rat::one());
            for f in fs {
                acc = mul_sums(&acc, &expand(f)?);
            }
            Some(acc)
        }
        Expr::Power(base, Exponent::Rat(q)) => match base.as_ref() {
            Expr::Var(Var::X1) => Some(singleton(
                Atom {
                    x1_pow: q.clone(),
                    ..Atom::unit()
                },
                Rat::one(),
            )),
            Expr::Var(Var::X2) if q.is_integer() && !q.is_negative() => {
                let b = q.to_integer().to_u32()?;
                Some(singleton(
                    Atom {
                        x2_pow: b,
                        ..Atom::unit()
                    },
                    Rat::one(),
                ))
            }
            Expr::Log(arg) if **arg == Expr::Var(Var::X1) && q.is_integer() && !q.is_negative() => {
                let l = q.to_integer().to_u32()?;
                Some(singleton(
                    Atom {
                        log_pow: l,
                        ..Atom::unit()
                    },
                    Rat::one(),
                ))
            }
            _ if q.is_integer() => {
                let n = q.to_integer().to_i64()?;
                let b = expand(base)?;
                if n >= 0 {
                    let mut acc = singleton(Atom::unit(), Rat::one());
                    for _ in 0..n {
                        acc = mul_sums(&acc, &b);
                    }
                    Some(acc)
                } else {
                    // invert a single invertible atom
                    if b.len() != 1 {
                        return None;
                    }
                    let (a, c) = b.into_iter().next().unwrap();
                    if a.x2_pow != 0 || a.log_pow != 0 || a.trig != Trig::One || c.is_zero() {
                        return None;
                    }
                    let inv = Atom {
                        x1_pow: -&a.x1_pow,
                        x2_pow: 0,
                        log_pow: 0,
                        rate1: -&a.rate1,
                        rate2: -&a.rate2,
                        trig: Trig::One,
                    };
                    let mut acc = singleton(Atom::unit(), Rat::one());
                    let step = singleton(inv, Rat::one() / c);
                    for _ in 0..(-n) {
                        acc = mul_sums(&acc, &step);
                    }
                    Some(acc)
                }
            }
            _ => None,
        },
        Expr::Power(_, Exponent::Param { .. }) => None,
        Expr::Exp(arg) => {
            let (m, n) = as_pure_linear(arg)?;
            Some(singleton(
                Atom {
                    rate1: m,
                    rate2: n,
                    ..Atom::unit()
                },
                Rat::one(),
            ))
        }
        Expr::Log(arg) => {
            if **arg == Expr::Var(Var::X1) {
                Some(singleton(
                    Atom {
                        log_pow: 1,
                        ..Atom::unit()
                    },
                    Rat::one(),
                ))
            } else {
                None
            }
        }
        Expr::Sin(arg) => {
            let (m, q) = as_pure_linear(arg)?;
            if !m.is_zero() {
                return None;
            }
            let (t, c) = normalize_trig(Trig::Sin(q), Rat::one());
            Some(singleton(
                Atom {
                    trig: t,
                    ..Atom::unit()
                },
                c,
            ))
        }
        Expr::Cos(arg) => {
            let (m, q) = as_pure_linear(arg)?;
            if !m.is_zero() {
                return None;
            }
            let (t, c) = normalize_trig(Trig::Cos(q), Rat::one());
            Some(singleton(
                Atom {
                    trig: t,
                    ..Atom::unit()
                },
                c,
            ))
        }
    }
}

/// Exact nullspace of the sparse linear system whose columns are atom
/// expansions keyed by an equation index. Maintains a basis of the
/// solution space and cuts it down one constraint row at a time.
pub(crate) fn exact_kernel(columns: &[Vec<(usize, AtomSum)>], ncols: usize) -> Vec<Vec<Rat>> {
    // Assemble rows: one per (equation index, atom) pair.
    let mut rows: BTreeMap<(usize, Atom), Vec<(usize, Rat)>> = BTreeMap::new();
    for (col, sums) in columns.iter().enumerate() {
        for (eq, sum) in sums {
            for (atom, c) in sum {
                rows.entry((*eq, atom.clone()))
                    .or_default()
                    .push((col, c.clone()));
            }
        }
    }
    let mut row_list: Vec<Vec<(usize, Rat)>> = rows.into_values().collect();
    // Sparse rows first keeps the early eliminations cheap.
    row_list.sort_by_key(|r| r.len());

    // Solution basis, sparse; starts as the identity.
    let mut basis: Vec<BTreeMap<usize, Rat>> = (0..ncols)
        .map(|i| {
            let mut m = BTreeMap::new();
            m.insert(i, Rat::one());
            m
        })
        .collect();
    for row in &row_list {
        if basis.is_empty() {
            break;
        }
        let dot = |v: &BTreeMap<usize, Rat>| -> Rat {
            let mut acc = Rat::zero();
            for (col, c) in row {
                if let Some(x) = v.get(col) {
                    acc += c * x;
                }
            }
            acc
        };
        let dots: Vec<Rat> = basis.iter().map(dot).collect();
        // Pivot: the sparsest basis vector with a nonzero dot.
        let pivot = dots
            .iter()
            .enumerate()
            .filter(|(_, d)| !d.is_zero())
            .min_by_key(|(i, _)| basis[*i].len())
            .map(|(i, _)| i);
        let Some(p) = pivot else { continue };
        let dp = dots[p].clone();
        let pivot_vec = basis.remove(p);
        for (i, v) in basis.iter_mut().enumerate() {
            let idx = if i < p { i } else { i + 1 };
            if dots[idx].is_zero() {
                continue;
            }
            let f = &dots[idx] / &dp;
            for (col, c) in &pivot_vec {
                let e = v.entry(*col).or_insert_with(Rat::zero);
                *e = &*e - &f * c;
                if e.is_zero() {
                    v.remove(col);
                }
            }
        }
    }
    basis
        .into_iter()
        .map(|v| {
            let mut dense = vec![Rat::zero(); ncols];
            for (col, c) in v {
                dense[col] = c;
            }
            dense
        })
        .collect()
}
