//! Lie algebras of vector fields: brackets, structure constants on a
//! computed basis, and classification of the isomorphism type against the
//! short list that actually occurs for homogeneous surface connections.
//!
//! Classification is by invariants — derived-subalgebra dimension, exact
//! Killing-form signature, and a discriminant on the action of the
//! quotient on the derived subalgebra — rather than canonical-form search.

use crate::connection::ParamMap;
use crate::expr::{Expr, SamplePoints, Var, ZeroTest};
use crate::killing::VectorField;
use crate::linalg;
use crate::rat::{rat_from_f64_exact, rat_to_string, snap_to_rational, Rat};
use nalgebra::DMatrix;
use num::traits::{One, Signed, Zero};

/// One bracket relation `[e_i, e_j] = Σ_k c_k e_k` given as
/// `(i, j, [(k, c_k), ...])` with 1-based indices.
pub type BracketRelation = (usize, usize, Vec<(usize, Rat)>);

/// Exact structure constants c^k_{ij} with [e_i, e_j] = Σ_k c^k_{ij} e_k.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    dim: usize,
    /// c[i][j][k]
    c: Vec<Vec<Vec<Rat>>>,
}

/// Errors from structure-constant extraction and classification.
#[derive(Debug, Clone, thiserror::Error)]
pub enum LieAlgError {
    #[error("bracket left the span of the basis")]
    Closure,
    #[error("basis fields are linearly dependent")]
    DegenerateBasis,
    #[error("structure constants violate {0}")]
    InvalidAlgebra(String),
    #[error(transparent)]
    Expr(#[from] crate::expr::ExprError),
}

/// Isomorphism types that occur as affine Killing algebras of homogeneous
/// surface connections, plus a catch-all.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlgebraType {
    /// 2-dimensional abelian (translations of the plane).
    KA,
    /// 2-dimensional non-abelian (translations + dilatations of the
    /// half-plane).
    KB,
    So3,
    So21,
    KBplusKB,
    A49Zero,
    A412,
    /// Full affine algebra of the plane.
    A6,
    Unrecognized { dim: usize, summary: String },
}

impl AlgebraType {
    pub fn as_str(&self) -> &str {
        match self {
            AlgebraType::KA => "K_A",
            AlgebraType::KB => "K_B",
            AlgebraType::So3 => "so3",
            AlgebraType::So21 => "so21",
            AlgebraType::KBplusKB => "KBplusKB",
            AlgebraType::A49Zero => "A49zero",
            AlgebraType::A412 => "A412",
            AlgebraType::A6 => "A6",
            AlgebraType::Unrecognized { .. } => "unrecognized",
        }
    }

    /// Parses the tag names used in the catalog data file.
    pub fn from_tag(tag: &str) -> Option<AlgebraType> {
        Some(match tag {
            "K_A" => AlgebraType::KA,
            "K_B" => AlgebraType::KB,
            "so3" => AlgebraType::So3,
            "so21" => AlgebraType::So21,
            "KBplusKB" => AlgebraType::KBplusKB,
            "A49zero" => AlgebraType::A49Zero,
            "A412" => AlgebraType::A412,
            "A6" => AlgebraType::A6,
            _ => return None,
        })
    }
}

impl std::fmt::Display for AlgebraType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AlgebraType::Unrecognized { dim, summary } => {
                write!(f, "unrecognized(dim {dim}: {summary})")
            }
            other => write!(f, "{}", other.as_str()),
        }
    }
}

impl LieAlgebra {
    /// Builds an algebra from the nonzero brackets `[e_i, e_j] = Σ c_k e_k`
    /// with i < j (1-based indices); antisymmetry fills the rest.
    pub fn from_brackets(dim: usize, brackets: &[BracketRelation]) -> Self {
        let mut c = vec![vec![vec![Rat::zero(); dim]; dim]; dim];
        for (i, j, terms) in brackets {
            for (k, v) in terms {
                c[i - 1][j - 1][k - 1] = v.clone();
                c[j - 1][i - 1][k - 1] = -v.clone();
            }
        }
        LieAlgebra { dim, c }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &Rat {
        &self.c[i][j][k]
    }

    /// Bracket of coefficient vectors.
    #[allow(clippy::needless_range_loop)]
    pub fn bracket_vectors(&self, x: &[Rat], y: &[Rat]) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.dim];
        for i in 0..self.dim {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..self.dim {
                if y[j].is_zero() {
                    continue;
                }
                let f = &x[i] * &y[j];
                for k in 0..self.dim {
                    if !self.c[i][j][k].is_zero() {
                        let add = &f * &self.c[i][j][k];
                        out[k] = &out[k] + &add;
                    }
                }
            }
        }
        out
    }

    /// Checks antisymmetry and the Jacobi identity exactly.
    pub fn validate(&self) -> Result<(), LieAlgError> {
        let n = self.dim;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if self.c[i][j][k] != -self.c[j][i][k].clone() {
                        return Err(LieAlgError::InvalidAlgebra("antisymmetry".into()));
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    for k in 0..n {
                        let mut acc = Rat::zero();
                        for m in 0..n {
                            acc = acc
                                + &self.c[i][j][m] * &self.c[m][l][k]
                                + &self.c[j][l][m] * &self.c[m][i][k]
                                + &self.c[l][i][m] * &self.c[m][j][k];
                        }
                        if !acc.is_zero() {
                            return Err(LieAlgError::InvalidAlgebra("Jacobi identity".into()));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Basis (reduced row echelon) of the derived subalgebra [L, L].
    pub fn derived_subalgebra(&self) -> Vec<Vec<Rat>> {
        let mut rows = Vec::new();
        for i in 0..self.dim {
            for j in (i + 1)..self.dim {
                let row = self.c[i][j].clone();
                if row.iter().any(|v| !v.is_zero()) {
                    rows.push(row);
                }
            }
        }
        linalg::rref(&rows).0
    }

    /// Basis of the center.
    pub fn center(&self) -> Vec<Vec<Rat>> {
        // x in center iff Σ_i x_i c[i][j][k] = 0 for all j, k.
        let mut rows = Vec::new();
        for j in 0..self.dim {
            for k in 0..self.dim {
                rows.push((0..self.dim).map(|i| self.c[i][j][k].clone()).collect());
            }
        }
        linalg::nullspace(&rows, self.dim)
    }

    /// Killing form B(i, j) = trace(ad_i ∘ ad_j), exact.
    #[allow(clippy::needless_range_loop)]
    pub fn killing_form(&self) -> Vec<Vec<Rat>> {
        let n = self.dim;
        let mut b = vec![vec![Rat::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = Rat::zero();
                for k in 0..n {
                    for l in 0..n {
                        acc += &self.c[i][l][k] * &self.c[j][k][l];
                    }
                }
                b[i][j] = acc;
            }
        }
        b
    }

    /// Structure constants in the basis e'_i = Σ_j `P[j][i]` e_j.
    pub fn change_basis(&self, p: &[Vec<Rat>]) -> Result<LieAlgebra, LieAlgError> {
        let n = self.dim;
        let pinv = linalg::invert(p).ok_or(LieAlgError::DegenerateBasis)?;
        let mut c = vec![vec![vec![Rat::zero(); n]; n]; n];
        for i in 0..n {
            for j in 0..n {
                // bracket of the new basis vectors, in old coordinates
                let ei: Vec<Rat> = (0..n).map(|a| p[a][i].clone()).collect();
                let ej: Vec<Rat> = (0..n).map(|b| p[b][j].clone()).collect();
                let br = self.bracket_vectors(&ei, &ej);
                // express in the new basis
                for k in 0..n {
                    let mut acc = Rat::zero();
                    for m in 0..n {
                        acc += &pinv[k][m] * &br[m];
                    }
                    c[i][j][k] = acc;
                }
            }
        }
        Ok(LieAlgebra { dim: n, c })
    }

    /// True when all structure constants vanish.
    pub fn is_abelian(&self) -> bool {
        self.c
            .iter()
            .flat_map(|m| m.iter())
            .flat_map(|r| r.iter())
            .all(Rat::is_zero)
    }
}

/// Commutator of vector fields: [X, Y]^k = Σ_l (X^l ∂_l Y^k − Y^l ∂_l X^k).
pub fn bracket(x: &VectorField, y: &VectorField) -> VectorField {
    let component = |k: usize| -> Expr {
        let mut terms = Vec::new();
        for (l, var) in [(1usize, Var::X1), (2, Var::X2)] {
            terms.push(x.component(l).clone() * y.component(k).differentiate(var));
            terms.push(Expr::int(-1) * y.component(l).clone() * x.component(k).differentiate(var));
        }
        Expr::sum(terms)
    };
    VectorField::new(component(1), component(2))
}

/// Expands every pairwise bracket of the basis in the basis itself by
/// sampled linear solves, snaps the coefficients to exact rationals, and
/// verifies the expansion symbolically. Errors: `DegenerateBasis` when the
/// fields are dependent, `Closure` when some bracket leaves the span.
pub fn structure_constants(basis: &[VectorField]) -> Result<LieAlgebra, LieAlgError> {
    structure_constants_seeded(basis, crate::expr::DEFAULT_SEED)
}

/// [`structure_constants`] with an explicit sampling seed.
pub fn structure_constants_seeded(
    basis: &[VectorField],
    seed: u64,
) -> Result<LieAlgebra, LieAlgError> {
    let n = basis.len();
    let coords = SamplePoints::new(seed, n + 4).coords();
    let sample = |f: &VectorField| -> Result<Vec<f64>, LieAlgError> {
        let mut out = Vec::with_capacity(2 * coords.len());
        for comp in [&f.v1, &f.v2] {
            for &(x1, x2) in &coords {
                out.push(crate::expr::evaluate_f64(comp, x1, x2)?);
            }
        }
        Ok(out)
    };
    let cols: Vec<Vec<f64>> = basis.iter().map(sample).collect::<Result<_, _>>()?;
    let rows = cols[0].len();
    let a = DMatrix::from_fn(rows, n, |r, c| cols[c][r]);
    let svd = a.clone().svd(true, true);
    let sigma_max = svd.singular_values.iter().cloned().fold(0.0f64, f64::max);
    let rank = svd
        .singular_values
        .iter()
        .filter(|sv| **sv > sigma_max * 1e-9)
        .count();
    if rank < n {
        return Err(LieAlgError::DegenerateBasis);
    }

    let zt = ZeroTest::default();
    let mut c = vec![vec![vec![Rat::zero(); n]; n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let br = bracket(&basis[i], &basis[j]);
            let b = nalgebra::DVector::from_vec(sample(&br)?);
            let fit = svd.solve(&b, 1e-12).expect("svd computed with u and v");
            let mut coeffs = Vec::with_capacity(n);
            for v in fit.iter() {
                let x = if v.abs() < 1e-10 { 0.0 } else { *v };
                coeffs.push(
                    snap_to_rational(x, 10_000, 1e-9)
                        .or_else(|| rat_from_f64_exact(x))
                        .expect("finite coefficient"),
                );
            }
            // Symbolic verification of the expansion.
            let mut residual_terms = vec![
                br.v1.clone(),
                Expr::int(-1)
                    * Expr::sum(
                        coeffs
                            .iter()
                            .zip(basis)
                            .map(|(cf, f)| Expr::rational(cf.clone()) * f.v1.clone())
                            .collect(),
                    ),
            ];
            let res1 = Expr::sum(std::mem::take(&mut residual_terms));
            let res2 = br.v2.clone()
                - Expr::sum(
                    coeffs
                        .iter()
                        .zip(basis)
                        .map(|(cf, f)| Expr::rational(cf.clone()) * f.v2.clone())
                        .collect(),
                );
            if !zt.is_zero(&res1)? || !zt.is_zero(&res2)? {
                return Err(LieAlgError::Closure);
            }
            for (k, v) in coeffs.into_iter().enumerate() {
                c[i][j][k] = v.clone();
                c[j][i][k] = -v;
            }
        }
    }
    let algebra = LieAlgebra { dim: n, c };
    algebra.validate()?;
    Ok(algebra)
}

/// Classification report: the tag plus the invariants that decided it.
#[derive(Debug, Clone)]
pub struct ClassifyDetails {
    pub tag: AlgebraType,
    pub dim: usize,
    pub derived_dim: usize,
    /// (positive, negative, zero) inertia of the Killing form.
    pub signature: (usize, usize, usize),
    /// Discriminant tr(Z)² − 4 det(Z) for dimension-4 algebras.
    pub delta: Option<Rat>,
}

/// Decides the isomorphism type of a valid Lie algebra.
pub fn classify(l: &LieAlgebra) -> Result<AlgebraType, LieAlgError> {
    classify_with_details(l).map(|d| d.tag)
}

/// [`classify`] returning the invariants alongside the tag.
pub fn classify_with_details(l: &LieAlgebra) -> Result<ClassifyDetails, LieAlgError> {
    l.validate()?;
    let derived = l.derived_subalgebra();
    let killing = l.killing_form();
    let signature = linalg::signature(&killing);
    let mut details = ClassifyDetails {
        tag: AlgebraType::Unrecognized {
            dim: l.dim,
            summary: summarize(derived.len(), &signature),
        },
        dim: l.dim,
        derived_dim: derived.len(),
        signature,
        delta: None,
    };
    match l.dim {
        2 => {
            details.tag = if l.is_abelian() {
                AlgebraType::KA
            } else {
                AlgebraType::KB
            };
        }
        3 => {
            let (pos, neg, zero) = signature;
            if zero == 0 && neg == 3 && pos == 0 {
                details.tag = AlgebraType::So3;
            } else if zero == 0 && pos > 0 && neg > 0 {
                details.tag = AlgebraType::So21;
            }
        }
        4 => {
            if let Some((tag, delta)) = classify_dim4(l, &derived) {
                details.tag = tag;
                details.delta = Some(delta);
            }
        }
        6 => {
            let rank = signature.0 + signature.1;
            if derived.len() == 5 && rank == 4 {
                details.tag = AlgebraType::A6;
            }
        }
        _ => {}
    }
    Ok(details)
}

fn summarize(derived_dim: usize, sig: &(usize, usize, usize)) -> String {
    format!(
        "derived dim {derived_dim}, killing signature ({}, {}, {})",
        sig.0, sig.1, sig.2
    )
}

/// Dimension-4 decision: requires a 2-dimensional abelian derived
/// subalgebra on which the quotient acts with a 2-dimensional image
/// containing the identity; the sign of Δ = tr(Z)² − 4 det(Z) for any
/// non-scalar image element Z separates the three candidates
/// (Δ is invariant under Z ↦ Z + c·Id and under scaling).
fn classify_dim4(l: &LieAlgebra, derived: &[Vec<Rat>]) -> Option<(AlgebraType, Rat)> {
    if derived.len() != 2 {
        return None;
    }
    // Derived subalgebra must be abelian.
    let d_bracket = l.bracket_vectors(&derived[0], &derived[1]);
    if d_bracket.iter().any(|v| !v.is_zero()) {
        return None;
    }
    // Complete the derived basis to a basis of L with coordinate vectors.
    let mut complement = Vec::new();
    let mut span: Vec<Vec<Rat>> = derived.to_vec();
    for i in 0..l.dim {
        let mut e = vec![Rat::zero(); l.dim];
        e[i] = Rat::one();
        if !linalg::in_row_span(&span, &e) {
            span.push(e.clone());
            complement.push(e);
        }
    }
    if complement.len() != 2 {
        return None;
    }
    // Action of the quotient on the derived subalgebra: ρ(f)(n) = [f, n]
    // written in the derived basis (2×2 matrices, columns = images).
    let rho = |f: &Vec<Rat>| -> Option<Vec<Vec<Rat>>> {
        let mut m = vec![vec![Rat::zero(); 2]; 2];
        for (col, d) in derived.iter().enumerate() {
            let img = l.bracket_vectors(f, d);
            // Solve img = a·derived[0] + b·derived[1]; the derived
            // subalgebra is an ideal, so this must be consistent.
            let rows: Vec<Vec<Rat>> = (0..l.dim)
                .map(|r| vec![derived[0][r].clone(), derived[1][r].clone()])
                .collect();
            let sol = linalg::solve(&rows, &img)?;
            m[0][col] = sol[0].clone();
            m[1][col] = sol[1].clone();
        }
        Some(m)
    };
    let r1 = rho(&complement[0])?;
    let r2 = rho(&complement[1])?;
    let flat = |m: &Vec<Vec<Rat>>| -> Vec<Rat> {
        vec![m[0][0].clone(), m[0][1].clone(), m[1][0].clone(), m[1][1].clone()]
    };
    let image = vec![flat(&r1), flat(&r2)];
    if linalg::rank(&image) != 2 {
        return None;
    }
    // The image must contain the identity.
    let id = vec![Rat::one(), Rat::zero(), Rat::zero(), Rat::one()];
    if !linalg::in_row_span(&image, &id) {
        return None;
    }
    // Pick an image element that is not a scalar matrix.
    let non_scalar = |m: &Vec<Vec<Rat>>| {
        !(m[0][0] == m[1][1] && m[0][1].is_zero() && m[1][0].is_zero())
    };
    let z = if non_scalar(&r1) {
        r1
    } else if non_scalar(&r2) {
        r2
    } else {
        return None;
    };
    let tr = &z[0][0] + &z[1][1];
    let det = &z[0][0] * &z[1][1] - &z[0][1] * &z[1][0];
    let delta = &tr * &tr - Rat::from_integer(4.into()) * det;
    let tag = if delta.is_positive() {
        AlgebraType::KBplusKB
    } else if delta.is_negative() {
        AlgebraType::A412
    } else {
        AlgebraType::A49Zero
    };
    Some((tag, delta))
}

/// Structure-constant JSON document: `{"dim": n, "c": [[i, j, k, "p/q"]]}`
/// listing nonzero c^k_{ij} with i < j (1-based).
pub fn algebra_to_json(l: &LieAlgebra) -> serde_json::Value {
    let mut entries = Vec::new();
    for i in 0..l.dim {
        for j in (i + 1)..l.dim {
            for k in 0..l.dim {
                let v = l.constant(i, j, k);
                if !v.is_zero() {
                    entries.push(serde_json::json!([
                        i + 1,
                        j + 1,
                        k + 1,
                        rat_to_string(v)
                    ]));
                }
            }
        }
    }
    serde_json::json!({ "dim": l.dim, "c": entries })
}

/// Parses the structure-constant JSON document.
pub fn algebra_from_json(v: &serde_json::Value) -> Result<LieAlgebra, LieAlgError> {
    let bad = |m: &str| LieAlgError::InvalidAlgebra(m.to_string());
    let dim = v
        .get("dim")
        .and_then(|d| d.as_u64())
        .ok_or_else(|| bad("missing `dim`"))? as usize;
    let entries = v
        .get("c")
        .and_then(|c| c.as_array())
        .ok_or_else(|| bad("missing `c` array"))?;
    let mut brackets = Vec::new();
    for e in entries {
        let arr = e.as_array().filter(|a| a.len() == 4).ok_or_else(|| {
            bad("each entry must be [i, j, k, \"p/q\"]")
        })?;
        let idx = |n: usize| -> Result<usize, LieAlgError> {
            let v = arr[n]
                .as_u64()
                .filter(|v| (1..=dim as u64).contains(v))
                .ok_or_else(|| bad("index out of range"))?;
            Ok(v as usize)
        };
        let (i, j, k) = (idx(0)?, idx(1)?, idx(2)?);
        if i >= j {
            return Err(bad("entries must have i < j"));
        }
        let c = arr[3]
            .as_str()
            .ok_or_else(|| bad("coefficient must be a \"p/q\" string"))
            .and_then(|s| crate::rat::parse_rat(s).map_err(|e| bad(&e)))?;
        brackets.push((i, j, vec![(k, c)]));
    }
    let l = LieAlgebra::from_brackets(dim, &brackets);
    l.validate()?;
    Ok(l)
}

/// Instantiates expression texts of basis fields against parameter
/// bindings; helper shared by the catalog and the CLI.
pub fn fields_from_texts(
    texts: &[(String, String)],
    params: &ParamMap,
) -> Result<Vec<VectorField>, crate::expr::ExprError> {
    texts
        .iter()
        .map(|(v1, v2)| {
            Ok(VectorField::new(
                crate::expr::parse_expr(v1)?.subst_params(params),
                crate::expr::parse_expr(v2)?.subst_params(params),
            ))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_int};

    pub(crate) fn table_ka() -> LieAlgebra {
        LieAlgebra::from_brackets(2, &[])
    }

    pub(crate) fn table_kb() -> LieAlgebra {
        LieAlgebra::from_brackets(2, &[(1, 2, vec![(1, rat_int(1))])])
    }

    pub(crate) fn table_so3() -> LieAlgebra {
        LieAlgebra::from_brackets(
            3,
            &[
                (1, 2, vec![(3, rat_int(1))]),
                (2, 3, vec![(1, rat_int(1))]),
                (3, 1, vec![(2, rat_int(1))]),
            ],
        )
    }

    pub(crate) fn table_so21() -> LieAlgebra {
        LieAlgebra::from_brackets(
            3,
            &[
                (1, 2, vec![(1, rat_int(1))]),
                (2, 3, vec![(3, rat_int(1))]),
                (3, 1, vec![(2, rat_int(2))]),
            ],
        )
    }

    pub(crate) fn table_a49zero() -> LieAlgebra {
        LieAlgebra::from_brackets(
            4,
            &[
                (2, 3, vec![(1, rat_int(1))]),
                (1, 4, vec![(1, rat_int(1))]),
                (2, 4, vec![(2, rat_int(1))]),
            ],
        )
    }

    pub(crate) fn table_a412() -> LieAlgebra {
        LieAlgebra::from_brackets(
            4,
            &[
                (1, 3, vec![(1, rat_int(1))]),
                (2, 3, vec![(2, rat_int(1))]),
                (1, 4, vec![(2, rat_int(-1))]),
                (2, 4, vec![(1, rat_int(1))]),
            ],
        )
    }

    pub(crate) fn table_kb_plus_kb() -> LieAlgebra {
        // block sum of two copies of the non-abelian 2-dimensional algebra
        LieAlgebra::from_brackets(
            4,
            &[
                (1, 2, vec![(1, rat_int(1))]),
                (3, 4, vec![(3, rat_int(1))]),
            ],
        )
    }

    #[test]
    fn bracket_basics() {
        let zero = bracket(&VectorField::d1(), &VectorField::d2());
        assert!(zero.v1.is_zero_const() && zero.v2.is_zero_const());

        // [∂₁, x¹∂₁] = ∂₁
        let x1d1 = VectorField::new(Expr::x1(), Expr::zero());
        let b = bracket(&VectorField::d1(), &x1d1);
        assert_eq!(b, VectorField::d1());

        // [x¹∂₁ + x²∂₂, ∂₂] = −∂₂
        let b = bracket(&VectorField::radial(), &VectorField::d2());
        assert_eq!(b, VectorField::new(Expr::zero(), Expr::int(-1)));
    }

    #[test]
    fn named_tables_validate_and_classify() {
        let cases: Vec<(LieAlgebra, AlgebraType)> = vec![
            (table_ka(), AlgebraType::KA),
            (table_kb(), AlgebraType::KB),
            (table_so3(), AlgebraType::So3),
            (table_so21(), AlgebraType::So21),
            (table_a49zero(), AlgebraType::A49Zero),
            (table_a412(), AlgebraType::A412),
            (table_kb_plus_kb(), AlgebraType::KBplusKB),
        ];
        for (table, expected) in cases {
            table.validate().unwrap();
            assert_eq!(classify(&table).unwrap(), expected, "table for {expected:?}");
        }
    }

    #[test]
    fn so21_killing_form_signature() {
        // Frozen by hand from the bracket table: B = [[0,0,4],[0,2,0],[4,0,0]].
        let b = table_so21().killing_form();
        let expect = vec![
            vec![rat_int(0), rat_int(0), rat_int(4)],
            vec![rat_int(0), rat_int(2), rat_int(0)],
            vec![rat_int(4), rat_int(0), rat_int(0)],
        ];
        assert_eq!(b, expect);
        assert_eq!(linalg::signature(&b), (2, 1, 0));
        // so3 has B = −2·Id: negative definite.
        assert_eq!(linalg::signature(&table_so3().killing_form()), (0, 3, 0));
    }

    #[test]
    fn dim4_invariants_frozen_by_hand() {
        // A49zero: derived = span{e1, e2}, Δ = 0.
        let d = table_a49zero().derived_subalgebra();
        assert_eq!(d.len(), 2);
        let details = classify_with_details(&table_a49zero()).unwrap();
        assert_eq!(details.delta, Some(rat_int(0)));
        // A412: the image contains a rotation, Δ < 0.
        let details = classify_with_details(&table_a412()).unwrap();
        assert!(details.delta.unwrap() < rat_int(0));
        // KB ⊕ KB: Δ > 0.
        let details = classify_with_details(&table_kb_plus_kb()).unwrap();
        assert!(details.delta.unwrap() > rat_int(0));
    }

    #[test]
    fn center_of_abelian_is_everything() {
        assert_eq!(table_ka().center().len(), 2);
        assert_eq!(table_so21().center().len(), 0);
    }

    #[test]
    fn classification_invariant_under_basis_change() {
        use rand::Rng;
        use rand::SeedableRng;
        let tables = [
            table_so3(),
            table_so21(),
            table_a49zero(),
            table_a412(),
            table_kb_plus_kb(),
        ];
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for table in &tables {
            let expected = classify(table).unwrap();
            let mut done = 0;
            while done < 3 {
                let n = table.dim();
                let p: Vec<Vec<Rat>> = (0..n)
                    .map(|_| (0..n).map(|_| rat(rng.random_range(-3..=3), 1)).collect())
                    .collect();
                if linalg::invert(&p).is_none() {
                    continue;
                }
                let moved = table.change_basis(&p).unwrap();
                moved.validate().unwrap();
                assert_eq!(classify(&moved).unwrap(), expected);
                done += 1;
            }
        }
    }

    #[test]
    fn structure_constants_of_coordinate_fields() {
        // {∂₁, ∂₂} is abelian.
        let l = structure_constants(&[VectorField::d1(), VectorField::d2()]).unwrap();
        assert!(l.is_abelian());
        assert_eq!(classify(&l).unwrap(), AlgebraType::KA);

        // {∂₂, X} realizes the non-abelian 2-dimensional algebra.
        let l = structure_constants(&[VectorField::d2(), VectorField::radial()]).unwrap();
        assert_eq!(classify(&l).unwrap(), AlgebraType::KB);

        // A dependent family is rejected.
        let dep = [
            VectorField::d1(),
            VectorField::d1(),
        ];
        assert!(matches!(
            structure_constants(&dep),
            Err(LieAlgError::DegenerateBasis)
        ));

        // A non-closed family is rejected: {∂₂, x²·x¹∂₁} has
        // [∂₂, x²x¹∂₁] = x¹∂₁ outside the span.
        let open = [
            VectorField::d2(),
            VectorField::new(Expr::x1() * Expr::x2(), Expr::zero()),
        ];
        assert!(matches!(structure_constants(&open), Err(LieAlgError::Closure)));
    }

    #[test]
    fn affine_algebra_from_flat_killing_fields() {
        // The six fields ∂₁, ∂₂, x¹∂₁, x¹∂₂, x²∂₁, x²∂₂ close into the
        // full affine algebra: derived dim 5, Killing rank 4.
        let fields = vec![
            VectorField::d1(),
            VectorField::d2(),
            VectorField::new(Expr::x1(), Expr::zero()),
            VectorField::new(Expr::zero(), Expr::x1()),
            VectorField::new(Expr::x2(), Expr::zero()),
            VectorField::new(Expr::zero(), Expr::x2()),
        ];
        let l = structure_constants(&fields).unwrap();
        let details = classify_with_details(&l).unwrap();
        assert_eq!(details.tag, AlgebraType::A6);
        assert_eq!(details.derived_dim, 5);
        assert_eq!(details.signature.0 + details.signature.1, 4);
    }

    #[test]
    fn invalid_tables_are_rejected() {
        // [e1,e2]=e3, [e1,e3]=e1, [e2,e3]=e2 violates the Jacobi identity.
        let bad = LieAlgebra::from_brackets(
            3,
            &[
                (1, 2, vec![(3, rat_int(1))]),
                (1, 3, vec![(1, rat_int(1))]),
                (2, 3, vec![(2, rat_int(1))]),
            ],
        );
        assert!(matches!(
            bad.validate(),
            Err(LieAlgError::InvalidAlgebra(_))
        ));
        assert!(classify(&bad).is_err());
        assert!(algebra_from_json(&algebra_to_json(&bad)).is_err());
    }

    #[test]
    fn sc_json_round_trip() {
        let v = algebra_to_json(&table_so21());
        let back = algebra_from_json(&v).unwrap();
        assert_eq!(back, table_so21());
        assert!(algebra_from_json(&serde_json::json!({"dim": 2})).is_err());
    }
}
