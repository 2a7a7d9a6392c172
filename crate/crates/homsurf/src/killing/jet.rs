//! Exact solution-space dimension of the Killing equations by jet
//! prolongation.
//!
//! On the 6-dimensional jet u = (v¹, v², ∂₁v¹, ∂₂v¹, ∂₁v², ∂₂v²) the
//! symmetric part of the Killing equations closes into a first-order
//! linear system ∂ᵢu = Aᵢ(x¹)·u, while the antisymmetric part (nontrivial
//! exactly when the torsion is nonzero) contributes algebraic rows. The
//! rows are kept as Laurent-polynomial functions of x¹ so that they can be
//! differentiated exactly; the solution dimension is 6 minus the
//! stabilized rank of all rows evaluated at the base point.

#![allow(clippy::needless_range_loop)]

use super::KillingError;
use crate::connection::{symmetrize, ChristoffelSpec, Coeff, Kind};
use crate::laurent::Laurent;
use crate::linalg;
use crate::rat::Rat;
use num::traits::{Signed, Zero};

const JET_DIM: usize = 6;
const MAX_ITERATIONS: usize = 12;

type Row = [Laurent; 6];
type Mat6 = [[Laurent; 6]; 6];

fn zero_row() -> Row {
    std::array::from_fn(|_| Laurent::zero())
}

/// Column of ∂_b v^a in the jet vector (0-based).
fn jet_col(a: usize, b: usize) -> usize {
    2 + (a - 1) * 2 + (b - 1)
}

fn coeff_laurent(c: &Coeff) -> Laurent {
    Laurent::constant(c.constant.clone()).add(&Laurent::monomial(c.over_x1.clone(), -1))
}

/// First-order jet system of the Killing equations at a base point.
#[derive(Debug, Clone)]
pub struct JetSystem {
    base_point: (Rat, Rat),
    a1: Mat6,
    a2: Mat6,
    /// Echelon basis (over ℚ) of the algebraic constraint rows gathered so
    /// far, each a function of x¹.
    constraints: Vec<Row>,
}

impl JetSystem {
    /// Builds the system: coefficient matrices from the symmetric part,
    /// torsion rows and the integrability obstruction of the jet
    /// connection as the initial algebraic constraints.
    pub fn new(s: &ChristoffelSpec, base_point: (Rat, Rat)) -> Result<Self, KillingError> {
        let valid = match s.kind() {
            Kind::TypeA => true,
            _ => base_point.0.is_positive(),
        };
        if !valid {
            return Err(KillingError::Domain);
        }
        let sym = symmetrize(s);
        let g = |i: usize, j: usize, k: usize| coeff_laurent(sym.gamma(i, j, k));

        // Row expressing ∂i∂j v^k in jet coordinates, read off from the
        // symmetrized equation.
        let second_derivative_row = |i: usize, j: usize, k: usize| -> Row {
            let mut inner = zero_row();
            // v^l ∂l Γ_ij^k  (only l = 1 differentiates)
            inner[0] = inner[0].add(&g(i, j, k).ddx());
            for l in 1..=2 {
                // − Γ_ij^l ∂l v^k
                inner[jet_col(k, l)] = inner[jet_col(k, l)].sub(&g(i, j, l));
                // + Γ_il^k ∂j v^l
                inner[jet_col(l, j)] = inner[jet_col(l, j)].add(&g(i, l, k));
                // + Γ_lj^k ∂i v^l
                inner[jet_col(l, i)] = inner[jet_col(l, i)].add(&g(l, j, k));
            }
            std::array::from_fn(|c| inner[c].neg())
        };

        let unit = |c: usize| -> Row {
            let mut r = zero_row();
            r[c] = Laurent::constant(Rat::from_integer(1.into()));
            r
        };

        let a1: Mat6 = [
            unit(jet_col(1, 1)),
            unit(jet_col(2, 1)),
            second_derivative_row(1, 1, 1),
            second_derivative_row(1, 2, 1),
            second_derivative_row(1, 1, 2),
            second_derivative_row(1, 2, 2),
        ];
        let a2: Mat6 = [
            unit(jet_col(1, 2)),
            unit(jet_col(2, 2)),
            second_derivative_row(1, 2, 1),
            second_derivative_row(2, 2, 1),
            second_derivative_row(1, 2, 2),
            second_derivative_row(2, 2, 2),
        ];

        let mut system = JetSystem {
            base_point,
            a1,
            a2,
            constraints: Vec::new(),
        };

        // Antisymmetric part of the equations: with ΔΓ^k = Γ_12^k − Γ_21^k
        // (twice the torsion), the second derivatives cancel and
        //   v^l ∂l ΔΓ^k − ΔΓ^l ∂l v^k + ΔΓ^k (∂₁v¹ + ∂₂v²) = 0.
        let delta = |k: usize| -> Laurent {
            coeff_laurent(s.gamma(1, 2, k)).sub(&coeff_laurent(s.gamma(2, 1, k)))
        };
        for k in 1..=2 {
            let dk = delta(k);
            let mut row = zero_row();
            row[0] = dk.ddx();
            for l in 1..=2 {
                row[jet_col(k, l)] = row[jet_col(k, l)].sub(&delta(l));
            }
            row[jet_col(1, 1)] = row[jet_col(1, 1)].add(&dk);
            row[jet_col(2, 2)] = row[jet_col(2, 2)].add(&dk);
            system.insert(row);
        }

        // Integrability of ∂ᵢu = Aᵢu along solutions:
        // (∂₂A₁ − ∂₁A₂ + A₁A₂ − A₂A₁) u = 0, with ∂₂A₁ = 0.
        for row in system.obstruction_rows() {
            system.insert(row);
        }
        Ok(system)
    }

    pub fn base_point(&self) -> &(Rat, Rat) {
        &self.base_point
    }

    pub fn a1(&self) -> &Mat6 {
        &self.a1
    }

    pub fn a2(&self) -> &Mat6 {
        &self.a2
    }

    pub fn constraint_rows(&self) -> &[Row] {
        &self.constraints
    }

    fn obstruction_rows(&self) -> Vec<Row> {
        let commutator_minus_da2 = |r: usize| -> Row {
            std::array::from_fn(|c| {
                let mut acc = self.a2[r][c].ddx().neg();
                for m in 0..JET_DIM {
                    acc = acc.add(&self.a1[r][m].mul(&self.a2[m][c]));
                    acc = acc.sub(&self.a2[r][m].mul(&self.a1[m][c]));
                }
                acc
            })
        };
        (0..JET_DIM).map(commutator_minus_da2).collect()
    }

    /// Reduces a row against the echelon basis and inserts the remainder.
    /// Returns the stored (reduced, normalized) row when it enlarged the
    /// ℚ-span of the function rows.
    fn insert(&mut self, mut row: Row) -> Option<Row> {
        for b in &self.constraints {
            let Some(key) = leading_key(b) else { continue };
            let coeff = entry_at(&row, key);
            if !coeff.is_zero() {
                for c in 0..JET_DIM {
                    row[c] = row[c].sub(&b[c].scale(&coeff));
                }
            }
        }
        let key = leading_key(&row)?;
        let lead = entry_at(&row, key);
        let inv = Rat::from_integer(1.into()) / lead;
        for c in 0..JET_DIM {
            row[c] = row[c].scale(&inv);
        }
        // Keep the basis ordered by leading key so reduction is one pass.
        let pos = self
            .constraints
            .binary_search_by(|b| leading_key(b).unwrap().cmp(&key))
            .unwrap_or_else(|p| p);
        self.constraints.insert(pos, row.clone());
        Some(row)
    }

    /// Exact rank of the constraint rows evaluated at the base point.
    fn rank_at_base(&self) -> Result<usize, KillingError> {
        let x = &self.base_point.0;
        let rows: Result<Vec<Vec<Rat>>, KillingError> = self
            .constraints
            .iter()
            .map(|r| {
                r.iter()
                    .map(|l| l.eval(x).ok_or(KillingError::Domain))
                    .collect()
            })
            .collect();
        Ok(linalg::rank(&rows?))
    }

    /// Prolongs the constraints (r ↦ ∂ᵢr + r·Aᵢ) until the evaluated rank
    /// is unchanged for two consecutive iterations, then returns
    /// 6 − rank. A hard iteration cap guards against non-termination.
    ///
    /// Only rows that genuinely enlarged the ℚ-span are prolonged again:
    /// prolongation is ℚ-linear, so a row that reduced to a combination of
    /// existing rows contributes nothing new.
    pub fn solution_dimension(&mut self) -> Result<usize, KillingError> {
        let mut frontier: Vec<Row> = self.constraints.clone();
        let mut rank = self.rank_at_base()?;
        let mut stable = 0usize;
        let mut iterations = 0usize;
        while stable < 2 && !frontier.is_empty() {
            iterations += 1;
            if iterations > MAX_ITERATIONS {
                return Err(KillingError::ProlongationCapExceeded);
            }
            let mut added = Vec::new();
            for row in frontier {
                // ∂₁r + r·A₁ and ∂₂r + r·A₂ (rows do not depend on x²)
                let d1: Row = std::array::from_fn(|c| {
                    let mut acc = row[c].ddx();
                    for m in 0..JET_DIM {
                        acc = acc.add(&row[m].mul(&self.a1[m][c]));
                    }
                    acc
                });
                let d2: Row = std::array::from_fn(|c| {
                    let mut acc = Laurent::zero();
                    for m in 0..JET_DIM {
                        acc = acc.add(&row[m].mul(&self.a2[m][c]));
                    }
                    acc
                });
                for cand in [d1, d2] {
                    if let Some(stored) = self.insert(cand) {
                        added.push(stored);
                    }
                }
            }
            let new_rank = self.rank_at_base()?;
            if new_rank == rank {
                stable += 1;
            } else {
                rank = new_rank;
                stable = 0;
            }
            frontier = added;
        }
        Ok(JET_DIM - rank)
    }
}

fn leading_key(r: &Row) -> Option<(usize, i32)> {
    let mut best: Option<(usize, i32)> = None;
    for (c, l) in r.iter().enumerate() {
        for (k, _) in l.iter() {
            let key = (c, *k);
            if best.is_none_or(|b| key < b) {
                best = Some(key);
            }
        }
    }
    best
}

fn entry_at(r: &Row, key: (usize, i32)) -> Rat {
    r[key.0]
        .iter()
        .find(|(k, _)| **k == key.1)
        .map(|(_, v)| v.clone())
        .unwrap_or_else(Rat::zero)
}

/// Killing-algebra dimension at a chosen base point.
pub fn killing_dimension_at(
    s: &ChristoffelSpec,
    base_point: (Rat, Rat),
) -> Result<usize, KillingError> {
    JetSystem::new(s, base_point)?.solution_dimension()
}

/// Killing-algebra dimension at the default base point (1, 0).
pub fn killing_dimension(s: &ChristoffelSpec) -> Result<usize, KillingError> {
    killing_dimension_at(
        s,
        (Rat::from_integer(1.into()), Rat::from_integer(0.into())),
    )
}
