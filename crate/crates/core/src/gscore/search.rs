//! Deciding |J(q,n)| < ε²(d-2ε)^(n-2) and finding the least such n.
//!
//! Small instances are compared exactly. Large ones compare
//! φ(n) = 2 ln ε + (n-2) ln u - ln C(n+q-1, q-1) through certified
//! logarithm enclosures, refining precision until the sign is decided.
//! φ(n+1) - φ(n) = ln u - ln((n+q)/(n+1)) increases with n, so φ falls
//! until the turning point and rises afterwards; the least solution past
//! the turning point is found by doubling and bisection.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::interval::Ctx;
use super::{format_rational, GSParams};
use crate::combinat::j_cardinality;
use crate::error::{Error, Result};

/// Largest n compared with exact big-integer arithmetic.
const EXACT_N_LIMIT: u64 = 4096;
/// Exact fallback ceiling once interval refinement stalls.
const EXACT_FALLBACK_LIMIT: u64 = 200_000;
const MAX_REFINEMENTS: u32 = 8;

/// How far an instance is from the boundary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Margin {
    /// ε²u^(n-2) - |J(q,n)|
    Exact(BigRational),
    /// Enclosure lo <= φ(n) <= hi of the log-margin.
    LnBounds { lo: BigRational, hi: BigRational },
}

impl Margin {
    /// Certainly positive.
    pub fn is_positive(&self) -> bool {
        match self {
            Margin::Exact(m) => m.is_positive(),
            Margin::LnBounds { lo, .. } => lo.is_positive(),
        }
    }
}

impl std::fmt::Display for Margin {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Margin::Exact(m) => write!(f, "{}", format_rational(m)),
            Margin::LnBounds { lo, hi } => {
                let approx = |r: &BigRational| r.to_f64().unwrap_or(f64::NAN);
                write!(f, "ln-margin in [{:.6e}, {:.6e}]", approx(lo), approx(hi))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SizeVerdict {
    pub holds: bool,
    pub margin: Margin,
}

pub fn decide_size_condition(q: &BigUint, n: &BigUint, params: &GSParams) -> Result<SizeVerdict> {
    if q.is_zero() || n.is_zero() {
        return Err(Error::InvalidParams("need q >= 1 and n >= 1".into()));
    }
    let small_index = n.min(&(q - 1u32)).clone();
    let exact_ok = |limit: u64| *n <= BigUint::from(limit) && small_index <= BigUint::from(limit);
    if exact_ok(EXACT_N_LIMIT) {
        return Ok(exact(q, n, params));
    }
    let bits = n.bits().max(q.bits()) as u32;
    let mut w = 64 + 2 * bits;
    for _ in 0..MAX_REFINEMENTS {
        let ctx = Ctx::new(w);
        let two = BigInt::from(2);
        let phi = ctx
            .ln_ratio(params.eps())
            .mul_int(&two)
            .add(&ctx.ln_ratio(&params.u()).mul_int(&(BigInt::from(n.clone()) - &two)))
            .sub(&ctx.ln_binomial(&(n + q - 1u32), &(q - 1u32)));
        if phi.positive() || phi.non_positive() {
            let (lo, hi) = phi.bounds(&ctx);
            return Ok(SizeVerdict { holds: phi.positive(), margin: Margin::LnBounds { lo, hi } });
        }
        w *= 2;
    }
    if exact_ok(EXACT_FALLBACK_LIMIT) {
        return Ok(exact(q, n, params));
    }
    Err(Error::Undecidable(format!("|J(q,n)| vs eps^2 u^(n-2) at q={q}, n={n}")))
}

fn exact(q: &BigUint, n: &BigUint, params: &GSParams) -> SizeVerdict {
    let count = BigRational::from_integer(BigInt::from(j_cardinality(q, n)));
    let e = n.to_i32().expect("bounded by the exact limit") - 2;
    let rhs = params.eps_squared() * params.u().pow(e);
    let margin = rhs - count;
    SizeVerdict { holds: margin.is_positive(), margin: Margin::Exact(margin) }
}

/// Least n >= 0 with φ(n+1) >= φ(n), i.e. ceil((q-u)/(u-1)) clamped at 0.
pub fn turning_point(q: &BigUint, params: &GSParams) -> BigUint {
    let u = params.u();
    let t = (BigRational::from_integer(BigInt::from(q.clone())) - &u) / (&u - BigRational::one());
    let c = t.ceil().to_integer();
    c.to_biguint().unwrap_or_default()
}

/// Least n > c_prev, n >= 2, with |J(q,n)| < ε²(d-2ε)^(n-2).
pub fn minimal_n(q: &BigUint, c_prev: &BigUint, params: &GSParams) -> Result<BigUint> {
    minimal_n_with_margin(q, c_prev, params).map(|(n, _)| n)
}

pub fn minimal_n_with_margin(q: &BigUint, c_prev: &BigUint, params: &GSParams) -> Result<(BigUint, SizeVerdict)> {
    if *q < BigUint::from(2u32) {
        return Err(Error::InvalidParams(format!("need q >= 2, got {q}")));
    }
    let start = (c_prev + 1u32).max(BigUint::from(2u32));
    let first = decide_size_condition(q, &start, params)?;
    if first.holds {
        return Ok((start, first));
    }
    let s = start.max(turning_point(q, params));
    // φ is nondecreasing from s on: double, then bisect
    let mut lo = s.clone();
    let mut step = BigUint::zero();
    let (mut hi, mut found) = loop {
        let candidate = &s + &step;
        let verdict = decide_size_condition(q, &candidate, params)?;
        if verdict.holds {
            break (candidate, verdict);
        }
        lo = candidate;
        step = if step.is_zero() { BigUint::one() } else { step * 2u32 };
    };
    if lo == hi {
        return Ok((hi, found));
    }
    // invariant: fails at lo, holds at hi
    while &hi - &lo > BigUint::one() {
        let mid: BigUint = (&lo + &hi).div_floor(&BigUint::from(2u32));
        let verdict = decide_size_condition(q, &mid, params)?;
        if verdict.holds {
            hi = mid;
            found = verdict;
        } else {
            lo = mid;
        }
    }
    Ok((hi, found))
}
