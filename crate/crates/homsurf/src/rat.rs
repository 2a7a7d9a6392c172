//! Exact rational scalars and the `"p/q"` string encoding used by all
//! JSON interfaces.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{Signed, ToPrimitive, Zero};

/// Exact rational scalar used everywhere a decision depends on arithmetic.
pub type Rat = BigRational;

/// Shorthand for an integer rational.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Shorthand for `n/d`. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    assert!(d != 0, "zero denominator");
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Parses the `"p/q"` encoding: an optional sign, an integer, and an
/// optional `/q` part. Whitespace around tokens is ignored.
pub fn parse_rat(s: &str) -> Result<Rat, String> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| format!("invalid rational `{s}`"))?;
    let d: BigInt = match den {
        Some(d) => d.parse().map_err(|_| format!("invalid rational `{s}`"))?,
        None => BigInt::from(1),
    };
    if d.is_zero() {
        return Err(format!("zero denominator in `{s}`"));
    }
    Ok(Rat::new(n, d))
}

/// Renders a rational as `"p"` or `"p/q"` in lowest terms.
pub fn rat_to_string(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Lossless conversion to `f64` up to rounding of the quotient.
pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Fall back to a quotient of truncated parts for huge operands.
        let n = r.numer().to_f64().unwrap_or(f64::INFINITY);
        let d = r.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}

/// Nearest rational with denominator at most `max_den` within `tol` of `x`,
/// found by walking the continued-fraction convergents of `x`.
pub fn snap_to_rational(x: f64, max_den: u64, tol: f64) -> Option<Rat> {
    if !x.is_finite() {
        return None;
    }
    // Convergents p_k/q_k of the continued fraction of |x|.
    let neg = x < 0.0;
    let mut rem = x.abs();
    let (mut p0, mut q0, mut p1, mut q1) = (1i128, 0i128, rem.floor() as i128, 1i128);
    rem -= rem.floor();
    for _ in 0..64 {
        let approx = p1 as f64 / q1 as f64;
        if (approx - x.abs()).abs() <= tol {
            break;
        }
        if rem.abs() < 1e-18 {
            break;
        }
        rem = 1.0 / rem;
        let a = rem.floor();
        if a >= 1e18 {
            break;
        }
        rem -= a;
        let a = a as i128;
        let (p2, q2) = (a * p1 + p0, a * q1 + q0);
        if q2 > max_den as i128 {
            break;
        }
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
    }
    if q1 == 0 || q1 > max_den as i128 {
        return None;
    }
    let cand = Rat::new(
        BigInt::from(if neg { -p1 } else { p1 }),
        BigInt::from(q1),
    );
    if (rat_to_f64(&cand) - x).abs() <= tol {
        Some(cand)
    } else {
        None
    }
}

/// Exact rational equal to the given finite `f64` (every finite double is
/// a dyadic rational).
pub fn rat_from_f64_exact(x: f64) -> Option<Rat> {
    Rat::from_float(x)
}

/// True when the rational is negative.
pub fn is_negative(r: &Rat) -> bool {
    r.is_negative()
}
