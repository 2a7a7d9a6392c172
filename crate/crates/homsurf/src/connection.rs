//! Homogeneous affine connections on a surface chart, with torsion.
//!
//! A spec stores eight Christoffel coefficients of the form
//! Γ_{ij}^k(x) = a_{ij}^k + b_{ij}^k / x¹ with exact rational a, b. Pure
//! constant symbols (`b ≡ 0`) live on all of ℝ²; anything with a 1/x¹
//! part lives on the half-plane x¹ > 0. The torsion tensor, the
//! torsion-free symmetrization, the perturbation by a torsion tensor, and
//! pointwise Christoffel/curvature values are all exact.

use crate::expr::Expr;
use crate::rat::{parse_rat, rat_to_string, Rat};
use num::traits::Zero;
use serde_json::{json, Value};
use std::collections::BTreeMap;

/// One Christoffel coefficient Γ(x) = constant + over_x1 / x¹.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Coeff {
    pub constant: Rat,
    pub over_x1: Rat,
}

impl Coeff {
    pub fn new(constant: Rat, over_x1: Rat) -> Self {
        Coeff { constant, over_x1 }
    }

    pub fn constant(c: Rat) -> Self {
        Coeff {
            constant: c,
            over_x1: Rat::zero(),
        }
    }

    pub fn over_x1(b: Rat) -> Self {
        Coeff {
            constant: Rat::zero(),
            over_x1: b,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.over_x1.is_zero()
    }

    fn add(&self, other: &Coeff) -> Coeff {
        Coeff {
            constant: &self.constant + &other.constant,
            over_x1: &self.over_x1 + &other.over_x1,
        }
    }

    fn sub(&self, other: &Coeff) -> Coeff {
        Coeff {
            constant: &self.constant - &other.constant,
            over_x1: &self.over_x1 - &other.over_x1,
        }
    }

    fn half(&self) -> Coeff {
        let two = Rat::from_integer(2.into());
        Coeff {
            constant: &self.constant / &two,
            over_x1: &self.over_x1 / &two,
        }
    }

    /// Exact value at x¹ = x; `None` at x = 0 with a 1/x¹ part.
    pub fn eval(&self, x: &Rat) -> Option<Rat> {
        if self.over_x1.is_zero() {
            return Some(self.constant.clone());
        }
        if x.is_zero() {
            return None;
        }
        Some(&self.constant + &self.over_x1 / x)
    }

    /// d/dx¹ at x (the constant part drops, the 1/x¹ part gives -b/x²).
    pub fn eval_ddx(&self, x: &Rat) -> Option<Rat> {
        if self.over_x1.is_zero() {
            return Some(Rat::zero());
        }
        if x.is_zero() {
            return None;
        }
        Some(-&self.over_x1 / (x * x))
    }

    /// The coefficient as a symbolic expression in x¹.
    pub fn to_expr(&self) -> Expr {
        Expr::rational(self.constant.clone())
            + Expr::rational(self.over_x1.clone()) * Expr::x1().pow_int(-1)
    }

    /// Text rendering used in reports: `"a"`, `"b * pow(x1, -1)"`, or the sum.
    pub fn to_text(&self) -> String {
        crate::expr::to_text(&self.to_expr())
    }
}

/// Kind of a connection spec, derived from the coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    /// All 1/x¹ parts vanish: constant symbols on ℝ².
    TypeA,
    /// All constant parts vanish (and some 1/x¹ part is present).
    TypeB,
    /// Both kinds of parts present; valid on x¹ > 0 only.
    Mixed,
}

impl Kind {
    pub fn as_str(&self) -> &'static str {
        match self {
            Kind::TypeA => "A",
            Kind::TypeB => "B",
            Kind::Mixed => "mixed",
        }
    }
}

/// Index order of the eight coefficients: (i, j, k) ∈ {1,2}³ listed as
/// 111, 112, 121, 122, 211, 212, 221, 222.
pub const INDEX_KEYS: [&str; 8] = ["111", "112", "121", "122", "211", "212", "221", "222"];

const fn flat(i: usize, j: usize, k: usize) -> usize {
    (i - 1) * 4 + (j - 1) * 2 + (k - 1)
}

/// Errors from connection operations and the spec JSON schema.
#[derive(Debug, Clone, thiserror::Error)]
pub enum ConnectionError {
    #[error("spec has torsion; expected a torsion-free spec")]
    NotTorsionFree,
    #[error("evaluation point has x1 = 0 but the spec has 1/x1 coefficients")]
    Domain,
    #[error("spec document: {0}")]
    Schema(String),
}

/// A homogeneous connection spec: eight exact coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ChristoffelSpec {
    coeffs: [Coeff; 8],
}

impl ChristoffelSpec {
    pub fn new(coeffs: [Coeff; 8]) -> Self {
        ChristoffelSpec { coeffs }
    }

    /// Spec with constant symbols ξ₁..ξ₈ in the index order above.
    pub fn type_a(xi: [Rat; 8]) -> Self {
        ChristoffelSpec {
            coeffs: xi.map(Coeff::constant),
        }
    }

    /// Spec with symbols ξ₁/x¹ .. ξ₈/x¹.
    pub fn type_b(xi: [Rat; 8]) -> Self {
        ChristoffelSpec {
            coeffs: xi.map(Coeff::over_x1),
        }
    }

    /// The all-zero (flat) spec.
    pub fn flat() -> Self {
        ChristoffelSpec::default()
    }

    /// Coefficient of Γ_{ij}^k (1-based indices).
    pub fn gamma(&self, i: usize, j: usize, k: usize) -> &Coeff {
        &self.coeffs[flat(i, j, k)]
    }

    pub fn gamma_mut(&mut self, i: usize, j: usize, k: usize) -> &mut Coeff {
        &mut self.coeffs[flat(i, j, k)]
    }

    pub fn coeffs(&self) -> &[Coeff; 8] {
        &self.coeffs
    }

    /// Symbolic Γ_{ij}^k as an expression in x¹.
    pub fn gamma_expr(&self, i: usize, j: usize, k: usize) -> Expr {
        self.gamma(i, j, k).to_expr()
    }

    /// Derived kind; never stored.
    pub fn kind(&self) -> Kind {
        let any_b = self.coeffs.iter().any(|c| !c.over_x1.is_zero());
        let any_a = self.coeffs.iter().any(|c| !c.constant.is_zero());
        match (any_a, any_b) {
            (_, false) => Kind::TypeA,
            (false, true) => Kind::TypeB,
            (true, true) => Kind::Mixed,
        }
    }

    /// True when Γ_{12}^k = Γ_{21}^k for k = 1, 2.
    pub fn is_torsion_free(&self) -> bool {
        torsion(self).is_zero()
    }

    /// Serializes to the spec JSON document.
    pub fn to_json(&self) -> Value {
        let mut entries = serde_json::Map::new();
        for (idx, key) in INDEX_KEYS.iter().enumerate() {
            entries.insert(
                (*key).to_string(),
                json!([
                    rat_to_string(&self.coeffs[idx].constant),
                    rat_to_string(&self.coeffs[idx].over_x1)
                ]),
            );
        }
        json!({ "entries": entries })
    }

    /// Parses the spec JSON document. All 8 keys are required; key order
    /// is irrelevant; unknown keys are rejected.
    pub fn from_json(v: &Value) -> Result<Self, ConnectionError> {
        let obj = v
            .as_object()
            .ok_or_else(|| ConnectionError::Schema("expected an object".into()))?;
        let entries = obj
            .get("entries")
            .and_then(|e| e.as_object())
            .ok_or_else(|| ConnectionError::Schema("missing `entries` object".into()))?;
        for key in entries.keys() {
            if !INDEX_KEYS.contains(&key.as_str()) {
                return Err(ConnectionError::Schema(format!("unknown entry key `{key}`")));
            }
        }
        let mut coeffs: [Coeff; 8] = Default::default();
        for (idx, key) in INDEX_KEYS.iter().enumerate() {
            let pair = entries
                .get(*key)
                .ok_or_else(|| ConnectionError::Schema(format!("missing entry `{key}`")))?;
            let arr = pair
                .as_array()
                .filter(|a| a.len() == 2)
                .ok_or_else(|| {
                    ConnectionError::Schema(format!("entry `{key}` must be a pair [a, b]"))
                })?;
            let get = |i: usize| -> Result<Rat, ConnectionError> {
                let s = arr[i].as_str().ok_or_else(|| {
                    ConnectionError::Schema(format!("entry `{key}`[{i}] must be a \"p/q\" string"))
                })?;
                parse_rat(s).map_err(ConnectionError::Schema)
            };
            coeffs[idx] = Coeff::new(get(0)?, get(1)?);
        }
        Ok(ChristoffelSpec::new(coeffs))
    }
}

/// Torsion components: T = (dx¹∧dx²) ⊗ 4Tⁱ∂ᵢ with Tⁱ = ½(Γ₁₂ⁱ − Γ₂₁ⁱ).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TorsionVector {
    pub t1: Coeff,
    pub t2: Coeff,
}

impl TorsionVector {
    pub fn new(t1: Coeff, t2: Coeff) -> Self {
        TorsionVector { t1, t2 }
    }

    pub fn constant(t1: Rat, t2: Rat) -> Self {
        TorsionVector {
            t1: Coeff::constant(t1),
            t2: Coeff::constant(t2),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.t1.is_zero() && self.t2.is_zero()
    }
}

/// Antisymmetric part of the spec.
pub fn torsion(s: &ChristoffelSpec) -> TorsionVector {
    TorsionVector {
        t1: s.gamma(1, 2, 1).sub(s.gamma(2, 1, 1)).half(),
        t2: s.gamma(1, 2, 2).sub(s.gamma(2, 1, 2)).half(),
    }
}

/// Torsion-free symmetrization: ⁰Γ_{ij}^k = ½(Γ_{ij}^k + Γ_{ji}^k).
pub fn symmetrize(s: &ChristoffelSpec) -> ChristoffelSpec {
    let mut out = s.clone();
    for k in 1..=2 {
        let sym = s.gamma(1, 2, k).add(s.gamma(2, 1, k)).half();
        *out.gamma_mut(1, 2, k) = sym.clone();
        *out.gamma_mut(2, 1, k) = sym;
    }
    out
}

/// Adds a torsion tensor to a torsion-free spec: the diagonal entries are
/// copied, Γ₁₂ gains +T and Γ₂₁ gains −T.
pub fn perturb(s0: &ChristoffelSpec, t: &TorsionVector) -> Result<ChristoffelSpec, ConnectionError> {
    if !s0.is_torsion_free() {
        return Err(ConnectionError::NotTorsionFree);
    }
    let mut out = s0.clone();
    for (k, tc) in [(1usize, &t.t1), (2usize, &t.t2)] {
        *out.gamma_mut(1, 2, k) = s0.gamma(1, 2, k).add(tc);
        *out.gamma_mut(2, 1, k) = s0.gamma(2, 1, k).sub(tc);
    }
    Ok(out)
}

/// Pointwise Christoffel values Γ_{ij}^k(p), exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChristoffelValues {
    values: [Rat; 8],
}

impl ChristoffelValues {
    pub fn gamma(&self, i: usize, j: usize, k: usize) -> &Rat {
        &self.values[flat(i, j, k)]
    }

    pub fn values(&self) -> &[Rat; 8] {
        &self.values
    }
}

/// Pointwise curvature components with the convention
/// R^l_{kij} = ∂ᵢΓ_{jk}^l − ∂ⱼΓ_{ik}^l + Γ_{im}^l Γ_{jk}^m − Γ_{jm}^l Γ_{ik}^m,
/// antisymmetric in (i, j).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurvatureValues {
    /// R^l_{k12} indexed by (l-1)*2 + (k-1).
    r12: [Rat; 4],
}

impl CurvatureValues {
    pub fn component(&self, l: usize, k: usize, i: usize, j: usize) -> Rat {
        let base = self.r12[(l - 1) * 2 + (k - 1)].clone();
        match (i, j) {
            (1, 2) => base,
            (2, 1) => -base,
            _ => Rat::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.r12.iter().all(Rat::is_zero)
    }
}

/// Pointwise tensor data at a chart point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorValues {
    pub christoffel: ChristoffelValues,
    pub curvature: CurvatureValues,
}

/// Exact Christoffel values at a rational point.
pub fn christoffel_at(
    s: &ChristoffelSpec,
    point: &(Rat, Rat),
) -> Result<ChristoffelValues, ConnectionError> {
    let mut values: [Rat; 8] = Default::default();
    for (idx, c) in s.coeffs.iter().enumerate() {
        values[idx] = c.eval(&point.0).ok_or(ConnectionError::Domain)?;
    }
    Ok(ChristoffelValues { values })
}

/// Exact curvature values at a rational point.
pub fn curvature_at(
    s: &ChristoffelSpec,
    point: &(Rat, Rat),
) -> Result<CurvatureValues, ConnectionError> {
    let x = &point.0;
    let g = |i: usize, j: usize, k: usize| s.gamma(i, j, k).eval(x).ok_or(ConnectionError::Domain);
    let dg = |i: usize, j: usize, k: usize, wrt: usize| -> Result<Rat, ConnectionError> {
        if wrt == 1 {
            s.gamma(i, j, k).eval_ddx(x).ok_or(ConnectionError::Domain)
        } else {
            Ok(Rat::zero())
        }
    };
    let mut r12: [Rat; 4] = Default::default();
    for l in 1..=2 {
        for k in 1..=2 {
            // R^l_{k12} = ∂₁Γ_{2k}^l − ∂₂Γ_{1k}^l + Σ_m (Γ_{1m}^l Γ_{2k}^m − Γ_{2m}^l Γ_{1k}^m)
            let mut acc = dg(2, k, l, 1)? - dg(1, k, l, 2)?;
            for m in 1..=2 {
                acc = acc + g(1, m, l)? * g(2, k, m)? - g(2, m, l)? * g(1, k, m)?;
            }
            r12[(l - 1) * 2 + (k - 1)] = acc;
        }
    }
    Ok(CurvatureValues { r12 })
}

/// Christoffel and curvature values together.
pub fn tensor_at(s: &ChristoffelSpec, point: &(Rat, Rat)) -> Result<TensorValues, ConnectionError> {
    Ok(TensorValues {
        christoffel: christoffel_at(s, point)?,
        curvature: curvature_at(s, point)?,
    })
}

/// Pushes a spec through the linear coordinate change y = M·x. Valid when
/// the spec has constant symbols only (any invertible M) or when M is a
/// shear [[1, 0], [b, a]] preserving the half-plane chart; the symbols
/// transform as a (1,2)-tensor.
pub fn transform_linear(
    s: &ChristoffelSpec,
    m: &[[Rat; 2]; 2],
) -> Result<ChristoffelSpec, ConnectionError> {
    let det = &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0];
    if det.is_zero() {
        return Err(ConnectionError::Schema("singular transform".into()));
    }
    let is_shear = m[0][0] == Rat::from_integer(1.into()) && m[0][1].is_zero();
    let has_b = s.coeffs.iter().any(|c| !c.over_x1.is_zero());
    if has_b && !is_shear {
        return Err(ConnectionError::Schema(
            "1/x1 specs only transform under shears (x1, x2) -> (x1, b x1 + a x2)".into(),
        ));
    }
    let minv = crate::linalg::invert(&[
        vec![m[0][0].clone(), m[0][1].clone()],
        vec![m[1][0].clone(), m[1][1].clone()],
    ])
    .expect("checked nonzero determinant");
    let mut out = ChristoffelSpec::flat();
    let part = |c: &Coeff, b_part: bool| -> Rat {
        if b_part {
            c.over_x1.clone()
        } else {
            c.constant.clone()
        }
    };
    for b_part in [false, true] {
        for i in 1..=2 {
            for j in 1..=2 {
                for k in 1..=2 {
                    let mut acc = Rat::zero();
                    for a in 1..=2 {
                        for b in 1..=2 {
                            for c in 1..=2 {
                                let term = &minv[a - 1][i - 1]
                                    * &minv[b - 1][j - 1]
                                    * &m[k - 1][c - 1]
                                    * part(s.gamma(a, b, c), b_part);
                                acc += term;
                            }
                        }
                    }
                    let slot = out.gamma_mut(i, j, k);
                    if b_part {
                        slot.over_x1 = acc;
                    } else {
                        slot.constant = acc;
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Parameter map used when instantiating catalog constructors.
pub type ParamMap = BTreeMap<String, Rat>;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_int};

    fn example_2b(t1: Rat, t2: Rat) -> ChristoffelSpec {
        // Constant part Γ₁₁¹ = 1, Γ₁₂² = Γ₂₁² = 1 plus a 1/x¹ torsion.
        let mut s = ChristoffelSpec::flat();
        *s.gamma_mut(1, 1, 1) = Coeff::constant(rat_int(1));
        *s.gamma_mut(1, 2, 2) = Coeff::new(rat_int(1), t2.clone());
        *s.gamma_mut(2, 1, 2) = Coeff::new(rat_int(1), -t2);
        *s.gamma_mut(1, 2, 1) = Coeff::over_x1(t1.clone());
        *s.gamma_mut(2, 1, 1) = Coeff::over_x1(-t1);
        s
    }

    #[test]
    fn torsion_of_antisymmetric_slots() {
        // Constant-symbol spec M(0,0,T1,T2,-T1,-T2,0,0) has torsion (T1, T2).
        let t1 = rat(3, 2);
        let t2 = rat_int(-2);
        let s = ChristoffelSpec::type_a([
            rat_int(0),
            rat_int(0),
            t1.clone(),
            t2.clone(),
            -t1.clone(),
            -t2.clone(),
            rat_int(0),
            rat_int(0),
        ]);
        let t = torsion(&s);
        assert_eq!(t.t1, Coeff::constant(t1));
        assert_eq!(t.t2, Coeff::constant(t2));
        assert_eq!(s.kind(), Kind::TypeA);
    }

    #[test]
    fn torsion_free_condition() {
        let s = ChristoffelSpec::type_a([
            rat_int(1),
            rat_int(2),
            rat(1, 3),
            rat(2, 5),
            rat(1, 3),
            rat(2, 5),
            rat_int(0),
            rat_int(4),
        ]);
        assert!(torsion(&s).is_zero());
        assert_eq!(symmetrize(&s), s);
    }

    #[test]
    fn mixed_example_torsion_and_symmetrization() {
        let s = example_2b(rat_int(0), rat(1, 2));
        assert_eq!(s.kind(), Kind::Mixed);
        let t = torsion(&s);
        assert!(t.t1.is_zero());
        assert_eq!(t.t2, Coeff::over_x1(rat(1, 2)));
        // Symmetrization strips the 1/x¹ torsion and leaves the dim-6 core.
        let sym = symmetrize(&s);
        assert_eq!(sym, example_2b(rat_int(0), rat_int(0)));
        assert_eq!(sym.kind(), Kind::TypeA);
    }

    #[test]
    fn perturbation_round_trip() {
        let s = example_2b(rat(1, 3), rat(-2, 7));
        let split = (symmetrize(&s), torsion(&s));
        let back = perturb(&split.0, &split.1).unwrap();
        assert_eq!(back, s);
        // perturb refuses specs with torsion
        assert!(matches!(
            perturb(&s, &TorsionVector::default()),
            Err(ConnectionError::NotTorsionFree)
        ));
        // trivial perturbation is the identity
        assert_eq!(perturb(&split.0, &TorsionVector::default()).unwrap(), split.0);
    }

    #[test]
    fn christoffel_values_exact() {
        // 1/x¹ symbols at x¹ = 2 halve.
        let s = ChristoffelSpec::type_b([
            rat_int(-1),
            rat_int(0),
            rat_int(0),
            rat_int(-1),
            rat_int(0),
            rat_int(-1),
            rat_int(-1),
            rat_int(0),
        ]);
        let v = christoffel_at(&s, &(rat_int(2), rat_int(0))).unwrap();
        assert_eq!(v.gamma(1, 1, 1), &rat(-1, 2));
        assert_eq!(v.gamma(1, 2, 2), &rat(-1, 2));
        assert_eq!(v.gamma(2, 1, 2), &rat(-1, 2));
        assert_eq!(v.gamma(2, 2, 1), &rat(-1, 2));
        assert_eq!(v.gamma(1, 1, 2), &rat_int(0));
        assert!(christoffel_at(&s, &(rat_int(0), rat_int(0))).is_err());
    }

    #[test]
    fn curvature_of_flat_and_curved_specs() {
        let flat = ChristoffelSpec::flat();
        assert!(curvature_at(&flat, &(rat_int(1), rat_int(0))).unwrap().is_zero());

        // Hyperbolic-plane spec: nonzero curvature, frozen by hand from the
        // convention formula.
        let hyp = ChristoffelSpec::type_b([
            rat_int(-1),
            rat_int(0),
            rat_int(0),
            rat_int(-1),
            rat_int(0),
            rat_int(-1),
            rat_int(1),
            rat_int(0),
        ]);
        let r = curvature_at(&hyp, &(rat_int(1), rat_int(0))).unwrap();
        assert_eq!(r.component(1, 1, 1, 2), rat_int(0));
        assert_eq!(r.component(2, 1, 1, 2), rat_int(1));
        assert_eq!(r.component(1, 2, 1, 2), rat_int(-1));
        assert_eq!(r.component(2, 2, 1, 2), rat_int(0));
        // Antisymmetry in (i, j).
        assert_eq!(r.component(2, 1, 2, 1), rat_int(-1));
    }

    #[test]
    fn spec_json_round_trip() {
        let s = example_2b(rat(1, 3), rat(-2, 7));
        let v = s.to_json();
        let back = ChristoffelSpec::from_json(&v).unwrap();
        assert_eq!(back, s);
        // Missing key is rejected.
        let mut broken = v.clone();
        broken["entries"].as_object_mut().unwrap().remove("121");
        assert!(ChristoffelSpec::from_json(&broken).is_err());
    }
}
