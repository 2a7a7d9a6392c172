//! Affine Killing vector fields.
//!
//! A vector field X = v¹∂₁ + v²∂₂ preserves a connection exactly when the
//! eight second-order residuals
//!
//! ```text
//! K_ij^k = ∂i∂j v^k + v^l ∂l Γ_ij^k − Γ_ij^l ∂l v^k
//!          + Γ_il^k ∂j v^l + Γ_lj^k ∂i v^l
//! ```
//!
//! vanish. This module forms those residuals symbolically, decides
//! membership, computes the solution-space dimension by exact jet
//! prolongation ([`JetSystem`]), and extracts an explicit basis through a
//! function-dictionary ansatz ([`killing_basis`]).

mod ansatz;
mod atoms;
mod jet;

pub use ansatz::{in_numeric_span, killing_basis, killing_basis_checked, standard_dictionary};
pub use jet::{killing_dimension, killing_dimension_at, JetSystem};

use crate::connection::ChristoffelSpec;
use crate::expr::{Expr, ExprError, Var, ZeroTest};

/// The field X = v¹∂₁ + v²∂₂.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct VectorField {
    pub v1: Expr,
    pub v2: Expr,
}

impl VectorField {
    pub fn new(v1: Expr, v2: Expr) -> Self {
        VectorField {
            v1: v1.canonical(),
            v2: v2.canonical(),
        }
    }

    /// ∂₁
    pub fn d1() -> Self {
        VectorField::new(Expr::one(), Expr::zero())
    }

    /// ∂₂
    pub fn d2() -> Self {
        VectorField::new(Expr::zero(), Expr::one())
    }

    /// x¹∂₁ + x²∂₂, the radial field of the half-plane chart.
    pub fn radial() -> Self {
        VectorField::new(Expr::x1(), Expr::x2())
    }

    pub fn zero() -> Self {
        VectorField::new(Expr::zero(), Expr::zero())
    }

    pub fn component(&self, k: usize) -> &Expr {
        match k {
            1 => &self.v1,
            2 => &self.v2,
            _ => panic!("component index must be 1 or 2"),
        }
    }

    pub fn subst_params(&self, params: &crate::connection::ParamMap) -> VectorField {
        VectorField::new(
            self.v1.subst_params(params),
            self.v2.subst_params(params),
        )
    }
}

impl std::fmt::Display for VectorField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "({}) d1 + ({}) d2",
            crate::expr::to_text(&self.v1),
            crate::expr::to_text(&self.v2)
        )
    }
}

/// Errors from the Killing solvers.
#[derive(Debug, Clone, thiserror::Error)]
pub enum KillingError {
    #[error("base point outside the chart domain")]
    Domain,
    #[error("jet prolongation did not stabilize within the iteration cap")]
    ProlongationCapExceeded,
    #[error("dictionary too small: found {found} independent Killing fields, solution space has dimension {expected}")]
    DictionaryInsufficient { found: usize, expected: usize },
    #[error("ansatz kernel ({ansatz}) disagrees with jet dimension ({prolongation})")]
    SolverMismatch { ansatz: usize, prolongation: usize },
    #[error("dictionary entry outside the expandable function class: {0}")]
    UnsupportedDictionary(String),
    #[error(transparent)]
    Expr(#[from] ExprError),
}

/// The eight residuals K_ij^k of a field against a spec, indexed like the
/// coefficient order 111, 112, 121, 122, 211, 212, 221, 222.
pub fn killing_residuals(s: &ChristoffelSpec, x: &VectorField) -> [Expr; 8] {
    let vars = [Var::X1, Var::X2];
    // jet of the field: d[l-1][k-1] = ∂l v^k
    let d = |l: usize, k: usize| x.component(k).differentiate(vars[l - 1]);
    let mut out: [Expr; 8] = std::array::from_fn(|_| Expr::zero());
    let mut idx = 0;
    for i in 1..=2 {
        for j in 1..=2 {
            for k in 1..=2 {
                let mut terms = Vec::new();
                // ∂i∂j v^k
                terms.push(
                    x.component(k)
                        .differentiate(vars[i - 1])
                        .differentiate(vars[j - 1]),
                );
                for l in 1..=2 {
                    // v^l ∂l Γ_ij^k
                    terms.push(
                        x.component(l).clone()
                            * s.gamma_expr(i, j, k).differentiate(vars[l - 1]),
                    );
                    // − Γ_ij^l ∂l v^k
                    terms.push(Expr::int(-1) * s.gamma_expr(i, j, l) * d(l, k));
                    // + Γ_il^k ∂j v^l
                    terms.push(s.gamma_expr(i, l, k) * d(j, l));
                    // + Γ_lj^k ∂i v^l
                    terms.push(s.gamma_expr(l, j, k) * d(i, l));
                }
                out[idx] = Expr::sum(terms);
                idx += 1;
            }
        }
    }
    out
}

/// True when all eight residuals vanish under the given zero test.
pub fn is_killing_with(
    s: &ChristoffelSpec,
    x: &VectorField,
    zt: &ZeroTest,
) -> Result<bool, ExprError> {
    for r in killing_residuals(s, x) {
        if !zt.is_zero(&r)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// [`is_killing_with`] under the default 20-point zero test.
pub fn is_killing(s: &ChristoffelSpec, x: &VectorField) -> Result<bool, ExprError> {
    is_killing_with(s, x, &ZeroTest::default())
}
