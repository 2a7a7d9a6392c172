//! Explicit Killing bases through a function-dictionary ansatz.
//!
//! The unknown field is written as a linear combination of dictionary
//! functions in each component. The eight residuals are linear in the
//! coefficients and expand exactly in the atom basis of
//! [`atoms`](super::atoms), so the coefficient kernel is an exact rational
//! nullspace; every kernel vector is still re-verified through
//! [`is_killing_with`] before it is returned, which keeps the expansion
//! and the residual calculus honest against each other.

use super::atoms::{expand, exact_kernel, AtomSum};
use super::{is_killing_with, killing_dimension, killing_residuals, KillingError, VectorField};
use crate::connection::{ChristoffelSpec, Kind};
use crate::expr::{Expr, SamplePoints, ZeroTest};
use crate::linalg;
use crate::rat::{rat_int, Rat};
use nalgebra::DMatrix;
use num::traits::Zero;
use rayon::prelude::*;
use std::collections::BTreeSet;

fn monomial(a: i64, b: i64) -> Expr {
    Expr::x1().pow_int(a) * Expr::x2().pow_int(b)
}

fn exp_rate(m: &Rat, n: &Rat) -> Expr {
    (Expr::rational(m.clone()) * Expr::x1() + Expr::rational(n.clone()) * Expr::x2()).exp()
}

fn dict_type_a(params: &[Rat], out: &mut BTreeSet<Expr>) {
    for a in 0..=3i64 {
        for b in 0..=3i64 {
            if a + b <= 3 {
                out.insert(monomial(a, b));
            }
        }
    }
    let mut rates: Vec<(Rat, Rat)> = Vec::new();
    for m in -1..=1i64 {
        for n in -1..=1i64 {
            if (m, n) != (0, 0) {
                rates.push((rat_int(m), rat_int(n)));
            }
        }
    }
    for v in [2i64, -2] {
        rates.push((rat_int(v), rat_int(0)));
        rates.push((rat_int(0), rat_int(v)));
    }
    for p in params {
        if p.is_zero() {
            continue;
        }
        for m in [-1i64, 0, 1] {
            rates.push((rat_int(m), p.clone()));
            rates.push((rat_int(m), -p.clone()));
        }
        rates.push((p.clone(), rat_int(0)));
        rates.push((-p.clone(), rat_int(0)));
    }
    for (m, n) in &rates {
        if m.is_zero() && n.is_zero() {
            continue;
        }
        let e = exp_rate(m, n);
        out.insert(e.clone() * Expr::x1());
        out.insert(e.clone() * Expr::x2());
        out.insert(e);
    }
    let trig: Vec<Expr> = (1..=2i64)
        .flat_map(|q| {
            let arg = Expr::int(q) * Expr::x2();
            [arg.clone().sin(), arg.cos()]
        })
        .collect();
    for t in &trig {
        out.insert(t.clone());
    }
    let mut trig_rates: Vec<(Rat, Rat)> = vec![(rat_int(-1), rat_int(0)), (rat_int(1), rat_int(0))];
    for p in params {
        if p.is_zero() {
            continue;
        }
        for m in [-1i64, 1] {
            trig_rates.push((rat_int(m), p.clone()));
            trig_rates.push((rat_int(m), -p.clone()));
        }
    }
    for (m, n) in &trig_rates {
        for t in &trig {
            out.insert(exp_rate(m, n) * t.clone());
        }
    }
}

fn dict_type_b(params: &[Rat], out: &mut BTreeSet<Expr>) {
    for a in -1..=3i64 {
        for b in 0..=3i64 {
            if a.max(0) + b <= 3 {
                out.insert(monomial(a, b));
            }
        }
    }
    let log = Expr::x1().log();
    for m in [
        monomial(0, 0),
        monomial(1, 0),
        monomial(0, 1),
        monomial(1, 1),
        monomial(2, 0),
    ] {
        out.insert(m * log.clone());
    }
    for m in [monomial(0, 0), monomial(1, 0), monomial(0, 1)] {
        out.insert(m * log.clone() * log.clone());
    }
    for p in params {
        let one = rat_int(1);
        let gammas = [
            p.clone(),
            -p.clone(),
            p + &one,
            -(p + &one),
            p - &one,
            &one - p,
        ];
        for g in gammas {
            let pw = Expr::x1().pow(g);
            out.insert(pw.clone());
            out.insert(pw * Expr::x2());
        }
    }
}

/// The dictionary used for every catalog family: monomials, exponentials
/// with small integer rates and rates built from the instantiated family
/// parameters, logarithms, rational powers of x¹, trigonometric functions
/// of x², and the structured products of these that closed-form Killing
/// bases are made of. The spec kind selects which blocks apply.
pub fn standard_dictionary(s: &ChristoffelSpec, params: &[Rat]) -> Vec<Expr> {
    let mut set = BTreeSet::new();
    match s.kind() {
        Kind::TypeA => dict_type_a(params, &mut set),
        Kind::TypeB => dict_type_b(params, &mut set),
        Kind::Mixed => {
            dict_type_a(params, &mut set);
            dict_type_b(params, &mut set);
        }
    }
    set.into_iter().collect()
}

/// Sampled values of a field's components at the given coordinates,
/// stacked as (v¹ at all points, then v² at all points).
fn field_samples(x: &VectorField, coords: &[(f64, f64)]) -> Result<Vec<f64>, KillingError> {
    let mut out = Vec::with_capacity(2 * coords.len());
    for comp in [&x.v1, &x.v2] {
        for &(x1, x2) in coords {
            out.push(crate::expr::evaluate_f64(comp, x1, x2)?);
        }
    }
    Ok(out)
}

/// Least-squares membership of `target` in the span of `fields`, decided
/// on seeded sample points with absolute residual tolerance `tol`.
pub fn in_numeric_span(
    fields: &[VectorField],
    target: &VectorField,
    seed: u64,
    tol: f64,
) -> Result<bool, KillingError> {
    let coords = SamplePoints::new(seed, 40).coords();
    if fields.is_empty() {
        let t = field_samples(target, &coords)?;
        return Ok(t.iter().all(|v| v.abs() <= tol));
    }
    let cols: Vec<Vec<f64>> = fields
        .iter()
        .map(|f| field_samples(f, &coords))
        .collect::<Result<_, _>>()?;
    let rows = cols[0].len();
    let a = DMatrix::from_fn(rows, cols.len(), |r, c| cols[c][r]);
    let b = nalgebra::DVector::from_vec(field_samples(target, &coords)?);
    let svd = a.clone().svd(true, true);
    let fit = svd.solve(&b, 1e-12).expect("svd computed with u and v");
    let residual = &a * &fit - &b;
    Ok(residual.iter().all(|v| v.abs() <= tol))
}

/// Computes a basis of Killing fields with components in the span of the
/// dictionary.
///
/// The residuals of the 2n unit fields are expanded in the atom basis and
/// the exact rational kernel of the resulting system is the candidate
/// space; each kernel vector is verified with [`is_killing_with`] before
/// being accepted. `DictionaryInsufficient` reports a kernel smaller than
/// the jet dimension, `SolverMismatch` a kernel larger than it (the two
/// exact routes disagree).
pub fn killing_basis(
    s: &ChristoffelSpec,
    dictionary: &[Expr],
) -> Result<Vec<VectorField>, KillingError> {
    killing_basis_checked(s, dictionary, &ZeroTest::default())
}

/// [`killing_basis`] with an explicit verification zero test.
pub fn killing_basis_checked(
    s: &ChristoffelSpec,
    dictionary: &[Expr],
    zt: &ZeroTest,
) -> Result<Vec<VectorField>, KillingError> {
    let n = dictionary.len();
    assert!(n > 0, "empty dictionary");
    let expected = killing_dimension(s)?;

    // Residuals of the 2n unit fields, expanded in the atom basis; the
    // full residual is linear in the ansatz coefficients.
    let unit_fields: Vec<VectorField> = (0..2 * n)
        .map(|col| {
            let f = dictionary[col % n].clone();
            if col < n {
                VectorField::new(f, Expr::zero())
            } else {
                VectorField::new(Expr::zero(), f)
            }
        })
        .collect();
    let columns: Vec<Vec<(usize, AtomSum)>> = unit_fields
        .par_iter()
        .map(|u| {
            killing_residuals(s, u)
                .iter()
                .enumerate()
                .map(|(eq, r)| {
                    expand(r).map(|sum| (eq, sum)).ok_or_else(|| {
                        KillingError::UnsupportedDictionary(crate::expr::to_text(r))
                    })
                })
                .collect()
        })
        .collect::<Result<_, _>>()?;

    let kernel = exact_kernel(&columns, 2 * n);
    if kernel.len() < expected {
        return Err(KillingError::DictionaryInsufficient {
            found: kernel.len(),
            expected,
        });
    }
    if kernel.len() > expected {
        return Err(KillingError::SolverMismatch {
            ansatz: kernel.len(),
            prolongation: expected,
        });
    }

    // Canonical reduced basis for deterministic, sparse output.
    let (reduced, _) = linalg::rref(&kernel);
    let mut fields = Vec::new();
    for vec in &reduced {
        let assemble = |range: std::ops::Range<usize>| -> Expr {
            Expr::sum(
                range
                    .filter(|c| !vec[*c].is_zero())
                    .map(|c| Expr::rational(vec[c].clone()) * dictionary[c % n].clone())
                    .collect(),
            )
        };
        let candidate = VectorField::new(assemble(0..n), assemble(n..2 * n));
        if is_killing_with(s, &candidate, zt)? {
            fields.push(candidate);
        }
    }
    if fields.len() < expected {
        return Err(KillingError::DictionaryInsufficient {
            found: fields.len(),
            expected,
        });
    }
    Ok(fields)
}
