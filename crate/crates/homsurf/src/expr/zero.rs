//! Semantic zero test: exact coefficient comparison on the Laurent
//! polynomial class, deterministic seeded sampling everywhere else.

use super::{as_laurent_poly, evaluate, EvalPoint, Expr, ExprError};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Seed used by every default sampler in the crate.
pub const DEFAULT_SEED: u64 = 0x5EED_0001;

/// Default residual tolerance.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Deterministic sample-point generator on the box [1/2, 2] × [-1, 1].
#[derive(Debug, Clone)]
pub struct SamplePoints {
    pub seed: u64,
    pub count: usize,
}

impl SamplePoints {
    pub fn new(seed: u64, count: usize) -> Self {
        SamplePoints { seed, count }
    }

    /// The sample coordinates, reproducible from the seed.
    pub fn coords(&self) -> Vec<(f64, f64)> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        (0..self.count)
            .map(|_| {
                let x1 = rng.random_range(0.5..=2.0);
                let x2 = rng.random_range(-1.0..=1.0);
                (x1, x2)
            })
            .collect()
    }

    pub fn points(&self) -> Vec<EvalPoint> {
        self.coords()
            .into_iter()
            .map(|(x1, x2)| EvalPoint::new(x1, x2))
            .collect()
    }
}

impl Default for SamplePoints {
    fn default() -> Self {
        SamplePoints::new(DEFAULT_SEED, 20)
    }
}

/// Bundled sampler + tolerance, the residual check configuration shared
/// by the Killing machinery.
#[derive(Debug, Clone)]
pub struct ZeroTest {
    pub sampler: SamplePoints,
    pub tol: f64,
}

impl Default for ZeroTest {
    fn default() -> Self {
        ZeroTest {
            sampler: SamplePoints::default(),
            tol: DEFAULT_TOL,
        }
    }
}

impl ZeroTest {
    pub fn with_seed(seed: u64) -> Self {
        ZeroTest {
            sampler: SamplePoints::new(seed, 20),
            tol: DEFAULT_TOL,
        }
    }

    pub fn is_zero(&self, e: &Expr) -> Result<bool, ExprError> {
        is_identically_zero(e, &self.sampler, self.tol)
    }
}

/// Decides whether an expression is identically zero.
///
/// If the expression is a Laurent polynomial in x¹ and x², the decision is
/// exact and ignores the tolerance. Otherwise it holds iff the absolute
/// value stays within `tol` at every sample point.
pub fn is_identically_zero(
    e: &Expr,
    sampler: &SamplePoints,
    tol: f64,
) -> Result<bool, ExprError> {
    if let Some(p) = as_laurent_poly(e) {
        return Ok(p.is_zero());
    }
    for point in sampler.points() {
        let v = evaluate(e, &point)?;
        if v.abs() > tol {
            return Ok(false);
        }
    }
    Ok(true)
}
