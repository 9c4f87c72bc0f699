//! Exact checks of the growth-bound conditions and the recurrences that
//! give b_n >= (d-v)^n.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::interval::Ctx;
use super::GSParams;
use crate::error::{Error, Result};
use crate::graded::{eq1_rows, RSequence};

/// Exponents above this are compared through certified logarithms first.
const EXACT_EXPONENT_LIMIT: u64 = 20_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundCertificate {
    pub d: u32,
    pub v: BigRational,
    pub c: BigRational,
    pub u: BigRational,
}

impl BoundCertificate {
    pub fn new(d: u32, v: BigRational, c: BigRational, u: BigRational) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidParams(format!("need d >= 2, got {d}")));
        }
        if !(v.is_positive() && c.is_positive() && u.is_positive()) {
            return Err(Error::InvalidParams("v, c and u must be positive".into()));
        }
        Ok(BoundCertificate { d, v, c, u })
    }

    /// (vd - c)/(v + u)
    pub fn condition_b_value(&self) -> BigRational {
        (&self.v * BigInt::from(self.d) - &self.c) / (&self.v + &self.u)
    }

    /// (vd - c)/(v + u) >= v
    pub fn condition_b(&self) -> bool {
        self.condition_b_value() >= self.v
    }

    /// d - v, the base of the guaranteed growth.
    pub fn base(&self) -> BigRational {
        BigRational::from_integer(BigInt::from(self.d)) - &self.v
    }
}

/// (v, c, u) = (ε, ε², d - 2ε).
pub fn reduce_p1_to_p2(params: &GSParams) -> BoundCertificate {
    BoundCertificate {
        d: params.d(),
        v: params.eps().clone(),
        c: params.eps_squared(),
        u: params.u(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundVerdict {
    /// r_{n+2} <= c·u^n for every degree n+2 <= range_max
    pub condition_a: bool,
    pub condition_b: bool,
    /// Least degree where condition (a) fails.
    pub first_violation: Option<u64>,
}

impl BoundVerdict {
    pub fn passed(&self) -> bool {
        self.condition_a && self.condition_b
    }
}

/// count <= coef·base^exp, for base > 0.
pub(crate) fn within_scaled_power(count: &BigUint, coef: &BigRational, base: &BigRational, exp: u64) -> bool {
    if count.is_zero() {
        return true;
    }
    if exp > EXACT_EXPONENT_LIMIT {
        let mut w = 96 + 2 * (64 - exp.leading_zeros());
        for _ in 0..6 {
            let ctx = Ctx::new(w);
            let gap = ctx
                .ln_ratio(coef)
                .add(&ctx.ln_ratio(base).mul_int(&BigInt::from(exp)))
                .sub(&ctx.ln_int(count));
            if gap.positive() {
                return true;
            }
            if gap.non_positive() && !gap.bounds(&ctx).1.is_zero() {
                return false;
            }
            w *= 2;
        }
    }
    let rhs = coef * pow_big(base, exp);
    BigRational::from_integer(BigInt::from(count.clone())) <= rhs
}

fn pow_big(base: &BigRational, exp: u64) -> BigRational {
    let e = i32::try_from(exp).expect("exponent fits i32 on the exact path");
    base.pow(e)
}

pub fn check_bound_conditions(r: &RSequence, cert: &BoundCertificate, range_max: u64) -> BoundVerdict {
    let first_violation = r
        .iter()
        .take_while(|(deg, _)| *deg <= range_max)
        .find(|(deg, count)| *deg < 2 || !within_scaled_power(count, &cert.c, &cert.u, deg - 2))
        .map(|(deg, _)| deg);
    BoundVerdict {
        condition_a: first_violation.is_none(),
        condition_b: cert.condition_b(),
        first_violation,
    }
}

/// Checks at one n; `None` where the range does not reach the inequality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct P2Line {
    pub n: usize,
    /// v·b_{n+1} >= Σ_{j<=n} c·u^(n-j)·b_j
    pub weighted: Option<bool>,
    /// v·b_{n+1} >= Σ_{j<=n} r_{n+2-j}·b_j
    pub convolution: Option<bool>,
    /// b_{n+2} >= (d-v)·b_{n+1}
    pub step: Option<bool>,
    /// b_n >= (d-v)^n
    pub growth: bool,
}

impl P2Line {
    pub fn passed(&self) -> bool {
        self.growth && [self.weighted, self.convolution, self.step].iter().all(|c| c.unwrap_or(true))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct P2Ledger {
    pub lines: Vec<P2Line>,
    /// min_n b_n/(d-v)^n over the range.
    pub min_ratio: BigRational,
}

impl P2Ledger {
    pub fn passed(&self) -> bool {
        self.lines.iter().all(P2Line::passed)
    }
}

pub fn verify_p2_recurrence(b: &[BigUint], r: &RSequence, cert: &BoundCertificate) -> Result<P2Ledger> {
    if let Some(bad) = eq1_rows(cert.d, b, r).iter().find(|row| row.slack.is_negative()) {
        return Err(Error::Eq1Violated { degree: bad.n });
    }
    let rat = |x: &BigUint| BigRational::from_integer(BigInt::from(x.clone()));
    let base = cert.base();
    let len = b.len();
    let mut lines = Vec::with_capacity(len);
    let mut min_ratio: Option<BigRational> = None;
    let mut power = BigRational::one();
    // Σ_{j<=n} u^(n-j) b_j, updated as acc·u + b_n
    let mut acc = BigRational::zero();
    for n in 0..len {
        acc = acc * &cert.u + rat(&b[n]);
        let (weighted, convolution) = if n + 1 < len {
            let lhs = &cert.v * rat(&b[n + 1]);
            let conv: BigUint = (0..=n).map(|j| r.get((n + 2 - j) as u64) * &b[j]).sum();
            (Some(lhs >= &cert.c * &acc), Some(lhs >= rat(&conv)))
        } else {
            (None, None)
        };
        let step = (n + 2 < len).then(|| rat(&b[n + 2]) >= &base * rat(&b[n + 1]));
        let ratio = rat(&b[n]) / &power;
        let growth = ratio >= BigRational::one();
        if min_ratio.as_ref().map_or(true, |m| ratio < *m) {
            min_ratio = Some(ratio);
        }
        lines.push(P2Line { n, weighted, convolution, step, growth });
        power *= &base;
    }
    Ok(P2Ledger { lines, min_ratio: min_ratio.unwrap_or_else(BigRational::one) })
}
