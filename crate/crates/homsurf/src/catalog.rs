//! Machine-readable catalog of the homogeneous connection families whose
//! affine symmetry algebra has dimension greater than two, together with
//! the verification driver that recomputes every claim: solution-space
//! dimension, explicit basis, Lie algebra tag, and the inclusion of the
//! symmetries of a spec in those of its torsion-free part.
//!
//! The data lives in `data/catalog.json` (shipped with the crate and
//! embedded in the binary). Each entry has a constructor template over its
//! family parameters and the two torsion slots `T1`, `T2`, a list of
//! torsion branches with claimed bases and tags, and sample values that
//! violate every branch.

use crate::connection::{symmetrize, torsion, ChristoffelSpec, Coeff, ConnectionError, ParamMap};
use crate::expr::{parse_expr, Expr, ExprError, ZeroTest, DEFAULT_TOL};
use crate::killing::{
    in_numeric_span, is_killing_with, killing_basis, killing_dimension, standard_dictionary,
    KillingError, VectorField,
};
use crate::liealg::{classify, structure_constants, AlgebraType, LieAlgError};
use crate::rat::{parse_rat, rat_to_string, Rat};
use num::traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::sync::OnceLock;

/// Errors from catalog lookup, instantiation and verification.
#[derive(Debug, Clone, thiserror::Error)]
pub enum CatalogError {
    #[error("unknown catalog id `{0}`")]
    UnknownId(String),
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("catalog data: {0}")]
    Schema(String),
    #[error(transparent)]
    Expr(#[from] ExprError),
    #[error(transparent)]
    Connection(#[from] ConnectionError),
    #[error(transparent)]
    Killing(#[from] KillingError),
    #[error(transparent)]
    LieAlg(#[from] LieAlgError),
}

/// One torsion branch of a family: admissible torsion values, the claimed
/// basis (expression texts) and the claimed algebra tag.
#[derive(Debug, Clone, Deserialize)]
pub struct Branch {
    pub when: String,
    pub t_samples: Vec<(String, String)>,
    pub basis: Vec<(String, String)>,
    pub tag: Option<String>,
}

/// One catalog family.
#[derive(Debug, Clone, Deserialize)]
pub struct CatalogEntry {
    pub id: String,
    pub label: String,
    pub kind: String,
    pub params: Vec<String>,
    pub require_nonzero: Vec<String>,
    pub require_zero: Vec<String>,
    constructor: BTreeMap<String, (String, String)>,
    pub param_samples: Vec<BTreeMap<String, String>>,
    pub branches: Vec<Branch>,
    pub off_tag: Option<String>,
    pub off_samples: Vec<(String, String)>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct Catalog {
    entries: Vec<CatalogEntry>,
}

const BUILTIN_JSON: &str = include_str!("../data/catalog.json");

static BUILTIN: OnceLock<Catalog> = OnceLock::new();

impl Catalog {
    /// The catalog shipped with the crate.
    pub fn builtin() -> &'static Catalog {
        BUILTIN.get_or_init(|| {
            Catalog::from_json_str(BUILTIN_JSON).expect("embedded catalog parses")
        })
    }

    pub fn from_json_str(s: &str) -> Result<Catalog, CatalogError> {
        let cat: Catalog =
            serde_json::from_str(s).map_err(|e| CatalogError::Schema(e.to_string()))?;
        for entry in &cat.entries {
            for key in crate::connection::INDEX_KEYS {
                if !entry.constructor.contains_key(key) {
                    return Err(CatalogError::Schema(format!(
                        "entry {} misses constructor key {key}",
                        entry.id
                    )));
                }
            }
        }
        Ok(cat)
    }

    pub fn from_path(path: &std::path::Path) -> Result<Catalog, CatalogError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CatalogError::Schema(format!("{}: {e}", path.display())))?;
        Catalog::from_json_str(&text)
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn entry(&self, id: &str) -> Result<&CatalogEntry, CatalogError> {
        self.entries
            .iter()
            .find(|e| e.id == id)
            .ok_or_else(|| CatalogError::UnknownId(id.to_string()))
    }
}

/// Result of instantiating a family at concrete parameters and torsion.
#[derive(Debug, Clone)]
pub struct InstantiatedSpec {
    pub spec: ChristoffelSpec,
    /// Index of the first branch whose constraint the torsion satisfies.
    pub matched_branch: Option<usize>,
    /// Whether some branch (the region where dim > 2 is claimed) matched.
    pub constraint_satisfied: bool,
}

/// Evaluates an expression text to an exact rational under bindings.
fn eval_rational(text: &str, bind: &ParamMap) -> Result<Rat, CatalogError> {
    let e = parse_expr(text)?.subst_params(bind);
    match e {
        Expr::Const(c) => Ok(c),
        other => Err(CatalogError::BadParams(format!(
            "`{text}` does not reduce to a rational under the given bindings (got `{other}`)"
        ))),
    }
}

/// Conjunctions of polynomial (in)equalities: `expr = expr && expr != expr`.
fn eval_predicate(pred: &str, bind: &ParamMap) -> Result<bool, CatalogError> {
    for clause in pred.split("&&") {
        let clause = clause.trim();
        let (lhs, rhs, negated) = if let Some((l, r)) = clause.split_once("!=") {
            (l, r, true)
        } else if let Some((l, r)) = clause.split_once('=') {
            (l, r, false)
        } else {
            return Err(CatalogError::Schema(format!(
                "predicate clause `{clause}` has no comparison"
            )));
        };
        let equal = eval_rational(lhs, bind)? == eval_rational(rhs, bind)?;
        if equal == negated {
            return Ok(false);
        }
    }
    Ok(true)
}

impl CatalogEntry {
    /// Parameter bindings including the torsion slots.
    fn full_bindings(&self, params: &ParamMap, t: &(Rat, Rat)) -> ParamMap {
        let mut bind = params.clone();
        bind.insert("T1".to_string(), t.0.clone());
        bind.insert("T2".to_string(), t.1.clone());
        bind
    }

    /// Checks declared parameters and their admissible-range predicates.
    fn check_params(&self, params: &ParamMap) -> Result<(), CatalogError> {
        for name in &self.params {
            if !params.contains_key(name) {
                return Err(CatalogError::BadParams(format!(
                    "missing parameter `{name}` for {}",
                    self.id
                )));
            }
        }
        for text in &self.require_nonzero {
            if eval_rational(text, params)?.is_zero() {
                return Err(CatalogError::BadParams(format!(
                    "parameter constraint violated: `{text}` must be nonzero"
                )));
            }
        }
        for text in &self.require_zero {
            if !eval_rational(text, params)?.is_zero() {
                return Err(CatalogError::BadParams(format!(
                    "parameter constraint violated: `{text}` must vanish"
                )));
            }
        }
        Ok(())
    }

    /// Builds the exact spec for concrete parameters and torsion slots and
    /// reports whether the torsion lies in the dim > 2 region.
    pub fn instantiate(
        &self,
        params: &ParamMap,
        t: &(Rat, Rat),
    ) -> Result<InstantiatedSpec, CatalogError> {
        self.check_params(params)?;
        let bind = self.full_bindings(params, t);
        let mut coeffs: [Coeff; 8] = Default::default();
        for (idx, key) in crate::connection::INDEX_KEYS.iter().enumerate() {
            let (a_text, b_text) = &self.constructor[*key];
            coeffs[idx] = Coeff::new(eval_rational(a_text, &bind)?, eval_rational(b_text, &bind)?);
        }
        let spec = ChristoffelSpec::new(coeffs);
        let mut matched = None;
        for (i, branch) in self.branches.iter().enumerate() {
            if eval_predicate(&branch.when, &bind)? {
                matched = Some(i);
                break;
            }
        }
        Ok(InstantiatedSpec {
            spec,
            matched_branch: matched,
            constraint_satisfied: matched.is_some(),
        })
    }

    /// The stored parameter samples as exact maps.
    pub fn param_sample_maps(&self) -> Result<Vec<ParamMap>, CatalogError> {
        self.param_samples
            .iter()
            .map(|sample| {
                sample
                    .iter()
                    .map(|(k, v)| Ok((k.clone(), parse_rat(v).map_err(CatalogError::Schema)?)))
                    .collect()
            })
            .collect()
    }

    /// Claimed basis of a branch instantiated at concrete bindings.
    pub fn claimed_basis(
        &self,
        branch: usize,
        params: &ParamMap,
        t: &(Rat, Rat),
    ) -> Result<Vec<VectorField>, CatalogError> {
        let bind = self.full_bindings(params, t);
        let fields = crate::liealg::fields_from_texts(&self.branches[branch].basis, &bind)?;
        Ok(fields)
    }

    fn param_values(&self, params: &ParamMap) -> Vec<Rat> {
        self.params
            .iter()
            .filter_map(|name| params.get(name).cloned())
            .collect()
    }
}

/// Flags for one verified torsion sample of one branch.
#[derive(Debug, Clone, Serialize)]
pub struct BranchReport {
    pub branch: usize,
    pub t: (String, String),
    pub claimed_dim: usize,
    pub computed_dim: usize,
    pub claimed_tag: Option<String>,
    pub computed_tag: String,
    pub dim_ok: bool,
    pub basis_ok: bool,
    pub tag_ok: bool,
    pub inclusion_ok: bool,
}

/// Flags for one off-branch torsion sample (expected dimension 2).
#[derive(Debug, Clone, Serialize)]
pub struct OffBranchReport {
    pub t: (String, String),
    pub computed_dim: usize,
    pub computed_tag: String,
    pub dim_ok: bool,
    pub tag_ok: bool,
    pub inclusion_ok: bool,
}

/// Aggregated verification report for one entry at one parameter sample.
#[derive(Debug, Clone, Serialize)]
pub struct EntryReport {
    pub id: String,
    pub params: BTreeMap<String, String>,
    pub branches: Vec<BranchReport>,
    pub off_branch: Vec<OffBranchReport>,
    pub dim_ok: bool,
    pub basis_ok: bool,
    pub tag_ok: bool,
    pub inclusion_ok: bool,
}

impl EntryReport {
    pub fn all_ok(&self) -> bool {
        self.dim_ok && self.basis_ok && self.tag_ok && self.inclusion_ok
    }
}

/// Verification options; the defaults match the documented seeds and
/// tolerance.
#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub seed: u64,
    pub tol: f64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            seed: crate::expr::DEFAULT_SEED,
            tol: DEFAULT_TOL,
        }
    }
}

fn mutual_span(
    computed: &[VectorField],
    claimed: &[VectorField],
    seed: u64,
    tol: f64,
) -> Result<bool, KillingError> {
    for c in claimed {
        if !in_numeric_span(computed, c, seed, tol)? {
            return Ok(false);
        }
    }
    for f in computed {
        if !in_numeric_span(claimed, f, seed, tol)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Recomputes every claim of one entry at one parameter sample.
pub fn verify_entry(
    entry: &CatalogEntry,
    params: &ParamMap,
    opts: &VerifyOptions,
) -> Result<EntryReport, CatalogError> {
    let zt = ZeroTest {
        sampler: crate::expr::SamplePoints::new(opts.seed, 20),
        tol: opts.tol,
    };
    let dict_params = entry.param_values(params);
    let mut branches = Vec::new();
    let mut off_branch = Vec::new();

    for (bi, branch) in entry.branches.iter().enumerate() {
        for (t1_text, t2_text) in &branch.t_samples {
            let t = (
                parse_rat(t1_text).map_err(CatalogError::Schema)?,
                parse_rat(t2_text).map_err(CatalogError::Schema)?,
            );
            let bind = entry.full_bindings(params, &t);
            if !eval_predicate(&branch.when, &bind)? {
                // Sample outside the branch for these parameters (for
                // example the c = -1/2 shear branch at other c).
                continue;
            }
            let inst = entry.instantiate(params, &t)?;
            let spec = &inst.spec;
            let claimed = entry.claimed_basis(bi, params, &t)?;
            let computed_dim = killing_dimension(spec)?;
            let dim_ok = computed_dim == claimed.len();

            let dictionary = standard_dictionary(spec, &dict_params);
            let computed = killing_basis(spec, &dictionary)?;
            let mut basis_ok = computed.len() == claimed.len();
            for f in &claimed {
                basis_ok &= is_killing_with(spec, f, &zt)?;
            }
            basis_ok &= mutual_span(&computed, &claimed, opts.seed ^ 0x51AB, opts.tol)?;

            let algebra = structure_constants(&claimed)?;
            let computed_tag = classify(&algebra)?;
            let (claimed_tag, tag_ok) = match &branch.tag {
                Some(name) => {
                    let expected = AlgebraType::from_tag(name).ok_or_else(|| {
                        CatalogError::Schema(format!("unknown tag `{name}`"))
                    })?;
                    (Some(name.clone()), computed_tag == expected)
                }
                None => (None, true),
            };

            let sym = symmetrize(spec);
            let mut inclusion_ok = true;
            for f in &computed {
                inclusion_ok &= is_killing_with(&sym, f, &zt)?;
            }

            branches.push(BranchReport {
                branch: bi,
                t: (t1_text.clone(), t2_text.clone()),
                claimed_dim: claimed.len(),
                computed_dim,
                claimed_tag,
                computed_tag: computed_tag.as_str().to_string(),
                dim_ok,
                basis_ok,
                tag_ok,
                inclusion_ok,
            });
        }
    }

    for (t1_text, t2_text) in &entry.off_samples {
        let t = (
            parse_rat(t1_text).map_err(CatalogError::Schema)?,
            parse_rat(t2_text).map_err(CatalogError::Schema)?,
        );
        let inst = entry.instantiate(params, &t)?;
        if inst.constraint_satisfied {
            // This torsion value lies on a branch for these parameters.
            continue;
        }
        let spec = &inst.spec;
        let computed_dim = killing_dimension(spec)?;
        let dim_ok = computed_dim == 2;
        let dictionary = standard_dictionary(spec, &dict_params);
        let computed = killing_basis(spec, &dictionary)?;
        let algebra = structure_constants(&computed)?;
        let computed_tag = classify(&algebra)?;
        let tag_ok = match &entry.off_tag {
            Some(name) => {
                let expected = AlgebraType::from_tag(name)
                    .ok_or_else(|| CatalogError::Schema(format!("unknown tag `{name}`")))?;
                computed_tag == expected
            }
            None => true,
        };
        let sym = symmetrize(spec);
        let mut inclusion_ok = true;
        for f in &computed {
            inclusion_ok &= is_killing_with(&sym, f, &zt)?;
        }
        off_branch.push(OffBranchReport {
            t: (t1_text.clone(), t2_text.clone()),
            computed_dim,
            computed_tag: computed_tag.as_str().to_string(),
            dim_ok,
            tag_ok,
            inclusion_ok,
        });
    }

    let dim_ok = branches.iter().all(|b| b.dim_ok) && off_branch.iter().all(|o| o.dim_ok);
    let basis_ok = branches.iter().all(|b| b.basis_ok);
    let tag_ok = branches.iter().all(|b| b.tag_ok) && off_branch.iter().all(|o| o.tag_ok);
    let inclusion_ok =
        branches.iter().all(|b| b.inclusion_ok) && off_branch.iter().all(|o| o.inclusion_ok);

    Ok(EntryReport {
        id: entry.id.clone(),
        params: params
            .iter()
            .map(|(k, v)| (k.clone(), rat_to_string(v)))
            .collect(),
        branches,
        off_branch,
        dim_ok,
        basis_ok,
        tag_ok,
        inclusion_ok,
    })
}

/// Verifies every entry of the catalog at every stored parameter sample,
/// in parallel; reports come back ordered by id and sample index.
pub fn verify_catalog(
    catalog: &Catalog,
    opts: &VerifyOptions,
) -> Result<Vec<EntryReport>, CatalogError> {
    let mut jobs = Vec::new();
    for entry in catalog.entries() {
        for params in entry.param_sample_maps()? {
            jobs.push((entry, params));
        }
    }
    jobs.par_iter()
        .map(|(entry, params)| verify_entry(entry, params, opts))
        .collect()
}

/// Checks that the constructor template places its torsion slots in the
/// antisymmetric part: the torsion of the instantiated spec equals
/// (T1, T2) in the constant or 1/x¹ slot according to the entry kind.
pub fn torsion_slots_consistent(
    entry: &CatalogEntry,
    params: &ParamMap,
    t: &(Rat, Rat),
) -> Result<bool, CatalogError> {
    let inst = entry.instantiate(params, t)?;
    let tv = torsion(&inst.spec);
    Ok(match entry.kind.as_str() {
        "A" => tv.t1 == Coeff::constant(t.0.clone()) && tv.t2 == Coeff::constant(t.1.clone()),
        "B" | "mixed" => {
            tv.t1 == Coeff::over_x1(t.0.clone()) && tv.t2 == Coeff::over_x1(t.1.clone())
        }
        other => return Err(CatalogError::Schema(format!("unknown kind `{other}`"))),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_int};

    fn params(pairs: &[(&str, Rat)]) -> ParamMap {
        pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
    }

    #[test]
    fn builtin_catalog_loads_with_expected_families() {
        let cat = Catalog::builtin();
        assert_eq!(cat.entries().len(), 26);
        let a = cat.entries().iter().filter(|e| e.kind == "A").count();
        let b = cat.entries().iter().filter(|e| e.kind == "B").count();
        assert_eq!(a, 11);
        assert_eq!(b, 14);
        assert!(cat.entry("A.M6.0").is_ok());
        assert!(matches!(
            cat.entry("A.M9.9"),
            Err(CatalogError::UnknownId(_))
        ));
    }

    #[test]
    fn instantiate_basic_families() {
        let cat = Catalog::builtin();
        // Antisymmetric-slot family at T = (e1, e2).
        let inst = cat
            .entry("A.M6.0")
            .unwrap()
            .instantiate(&params(&[]), &(rat_int(1), rat_int(2)))
            .unwrap();
        let expected = ChristoffelSpec::type_a([
            rat_int(0),
            rat_int(0),
            rat_int(1),
            rat_int(2),
            rat_int(-1),
            rat_int(-2),
            rat_int(0),
            rat_int(0),
        ]);
        assert_eq!(inst.spec, expected);
        assert!(inst.constraint_satisfied);

        // Two-parameter half-plane family: kappa = 1, theta = 2, T = (0, 1)
        // gives 1/x¹ symbols (3, 0, 0, 2, 0, 0, 0, 0).
        let inst = cat
            .entry("B.N4.2")
            .unwrap()
            .instantiate(
                &params(&[("kappa", rat_int(1)), ("theta", rat_int(2))]),
                &(rat_int(0), rat_int(1)),
            )
            .unwrap();
        let expected = ChristoffelSpec::type_b([
            rat_int(3),
            rat_int(0),
            rat_int(0),
            rat_int(2),
            rat_int(0),
            rat_int(0),
            rat_int(0),
            rat_int(0),
        ]);
        assert_eq!(inst.spec, expected);
        assert!(inst.constraint_satisfied);

        // A nonzero torsion on a family whose only branch is T = 0 is
        // flagged as constraint-violated.
        let inst = cat
            .entry("A.M6.5")
            .unwrap()
            .instantiate(&params(&[]), &(rat_int(1), rat_int(0)))
            .unwrap();
        assert!(!inst.constraint_satisfied);
    }

    #[test]
    fn parameter_range_predicates_are_enforced() {
        let cat = Catalog::builtin();
        let e = cat.entry("A.M4.2").unwrap();
        assert!(matches!(
            e.instantiate(&params(&[("c", rat_int(0))]), &(rat_int(0), rat_int(0))),
            Err(CatalogError::BadParams(_))
        ));
        assert!(matches!(
            e.instantiate(&params(&[("c", rat_int(-1))]), &(rat_int(0), rat_int(0))),
            Err(CatalogError::BadParams(_))
        ));
        assert!(e
            .instantiate(&params(&[("c", rat(1, 2))]), &(rat_int(0), rat_int(0)))
            .is_ok());
        // eps must be a sign.
        let e = cat.entry("B.N6.1").unwrap();
        assert!(matches!(
            e.instantiate(&params(&[("eps", rat_int(2))]), &(rat_int(0), rat_int(0))),
            Err(CatalogError::BadParams(_))
        ));
    }

    #[test]
    fn torsion_slots_and_branch_samples_are_consistent() {
        let cat = Catalog::builtin();
        for entry in cat.entries() {
            for params in entry.param_sample_maps().unwrap() {
                // torsion slot placement
                let t = (rat(3, 7), rat(-2, 5));
                assert!(
                    torsion_slots_consistent(entry, &params, &t).unwrap(),
                    "torsion slots of {}",
                    entry.id
                );
                // every stored branch sample satisfies its predicate (or is
                // skipped for parameters where the branch is empty), and
                // every off sample violates all branches
                for branch in &entry.branches {
                    for (t1, t2) in &branch.t_samples {
                        let t = (parse_rat(t1).unwrap(), parse_rat(t2).unwrap());
                        let bind = entry.full_bindings(&params, &t);
                        // just evaluate; skipping is allowed
                        let _ = eval_predicate(&branch.when, &bind).unwrap();
                    }
                }
                // Off samples may lie on a branch for special parameter
                // values (they are skipped at runtime); require at least
                // two usable ones per parameter sample.
                let usable = entry
                    .off_samples
                    .iter()
                    .filter(|(t1, t2)| {
                        let t = (parse_rat(t1).unwrap(), parse_rat(t2).unwrap());
                        !entry
                            .instantiate(&params, &t)
                            .unwrap()
                            .constraint_satisfied
                    })
                    .count();
                assert!(
                    entry.off_samples.is_empty() || usable >= 2,
                    "too few usable off samples for {}",
                    entry.id
                );
            }
        }
    }

    #[test]
    fn every_branch_is_exercised_by_some_param_sample() {
        let cat = Catalog::builtin();
        for entry in cat.entries() {
            for (bi, branch) in entry.branches.iter().enumerate() {
                let mut hit = false;
                for params in entry.param_sample_maps().unwrap() {
                    for (t1, t2) in &branch.t_samples {
                        let t = (parse_rat(t1).unwrap(), parse_rat(t2).unwrap());
                        let bind = entry.full_bindings(&params, &t);
                        hit |= eval_predicate(&branch.when, &bind).unwrap();
                    }
                }
                assert!(hit, "branch {bi} of {} never exercised", entry.id);
            }
        }
    }

    #[test]
    fn verify_single_entries() {
        let cat = Catalog::builtin();
        let opts = VerifyOptions::default();

        // Example fixture: dim 4 at T = (3, 0) with the nilpotent dim-4 tag.
        let report = verify_entry(cat.entry("A.M4.1").unwrap(), &params(&[]), &opts).unwrap();
        assert!(report.all_ok(), "{report:?}");
        assert!(report
            .branches
            .iter()
            .all(|b| b.computed_dim == 4 && b.computed_tag == "A49zero"));
        assert!(report.off_branch.iter().all(|o| o.computed_dim == 2));

        // Shear family at c = -1/2: the T1 branch has dim 3 and so21.
        let report = verify_entry(
            cat.entry("B.N6.2").unwrap(),
            &params(&[("c", rat(-1, 2))]),
            &opts,
        )
        .unwrap();
        assert!(report.all_ok(), "{report:?}");
        assert!(report
            .branches
            .iter()
            .any(|b| b.computed_dim == 3 && b.computed_tag == "so21"));

        // Flat family: dim 6 with the full affine tag at T = 0.
        let report = verify_entry(cat.entry("B.N6.0").unwrap(), &params(&[]), &opts).unwrap();
        assert!(report.all_ok(), "{report:?}");
        assert!(report
            .branches
            .iter()
            .any(|b| b.computed_dim == 6 && b.computed_tag == "A6"));
    }

    #[test]
    fn hyperbolic_plane_rigidity() {
        // Any torsion perturbation of the two hyperbolic planes collapses
        // the symmetry algebra to the half-plane pair.
        let cat = Catalog::builtin();
        let torsions = [
            (rat_int(1), rat_int(0)),
            (rat_int(0), rat_int(1)),
            (rat_int(1), rat_int(-1)),
            (rat(1, 2), rat(3, 2)),
            (rat_int(-2), rat(1, 3)),
            (rat(2, 5), rat(-7, 3)),
        ];
        for id in ["B.N3.3", "B.N3.4"] {
            let entry = cat.entry(id).unwrap();
            for t in &torsions {
                let inst = entry.instantiate(&ParamMap::new(), t).unwrap();
                assert!(!inst.constraint_satisfied);
                let dim = crate::killing::killing_dimension(&inst.spec).unwrap();
                assert_eq!(dim, 2, "{id} at {t:?}");
            }
        }
    }

    #[test]
    fn branch_dimension_is_base_point_independent() {
        // Homogeneous families give the same jet dimension at any chart
        // point (the mixed fixture is excluded on purpose).
        let cat = Catalog::builtin();
        let points = [
            (rat_int(1), rat_int(0)),
            (rat_int(2), rat_int(-1)),
            (rat(1, 2), rat_int(3)),
        ];
        for entry in cat.entries() {
            if entry.kind == "mixed" {
                continue;
            }
            let params = &entry.param_sample_maps().unwrap()[0];
            let (t1, t2) = &entry.branches[0].t_samples[0];
            let t = (parse_rat(t1).unwrap(), parse_rat(t2).unwrap());
            let spec = entry.instantiate(params, &t).unwrap().spec;
            let dims: Vec<usize> = points
                .iter()
                .map(|p| {
                    crate::killing::killing_dimension_at(&spec, p.clone()).unwrap()
                })
                .collect();
            assert!(
                dims.iter().all(|d| *d == dims[0]),
                "{}: dims {dims:?}",
                entry.id
            );
        }
    }

    #[test]
    fn verify_mixed_fixture() {
        let cat = Catalog::builtin();
        let report = verify_entry(
            cat.entry("M.EX2").unwrap(),
            &params(&[]),
            &VerifyOptions::default(),
        )
        .unwrap();
        assert!(report.all_ok(), "{report:?}");
        let dims: Vec<usize> = report.branches.iter().map(|b| b.computed_dim).collect();
        assert!(dims.contains(&6));
        assert!(dims.contains(&3));
        assert!(dims.contains(&1));
    }
}
