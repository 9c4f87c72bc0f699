//! The growth-bound certificates and the inductive construction of
//! generator sequences whose quotient is nil but infinite-dimensional.

mod blueprint;
mod bounds;
mod interval;
mod nil;
mod search;

pub use blueprint::{
    build_blueprint, build_blueprint_with_cap, check_blueprint, toy_blueprint, Block, BlueprintCheck, BlueprintR, Count,
    DegreeProfile, Envelope, GSBlueprint, Invariant, Mode,
};
pub use bounds::{
    check_bound_conditions, reduce_p1_to_p2, verify_p2_recurrence, BoundCertificate, BoundVerdict, P2Ledger, P2Line,
};
pub use nil::{blueprint_table, nil_certificate, NilCertificate, Verification};
pub use search::{decide_size_condition, minimal_n, minimal_n_with_margin, turning_point, SizeVerdict, Margin};

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::error::{Error, Result};

/// d and ε with ε > 0 and d - 2ε > 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GSParams {
    d: u32,
    eps: BigRational,
}

impl GSParams {
    pub fn new(d: u32, eps: BigRational) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidParams(format!("need d >= 2, got {d}")));
        }
        if !eps.is_positive() {
            return Err(Error::InvalidParams(format!("need eps > 0, got {eps}")));
        }
        let p = GSParams { d, eps };
        if p.u() <= BigRational::one() {
            return Err(Error::InvalidParams(format!("need d - 2*eps > 1, got {}", p.u())));
        }
        Ok(p)
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn eps(&self) -> &BigRational {
        &self.eps
    }

    /// d - 2ε
    pub fn u(&self) -> BigRational {
        BigRational::from_integer(BigInt::from(self.d)) - &self.eps * BigInt::from(2)
    }

    pub fn eps_squared(&self) -> BigRational {
        &self.eps * &self.eps
    }
}

impl fmt::Display for GSParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "d={} eps={}", self.d, format_rational(&self.eps))
    }
}

/// Parses exactly `a/b` with integers a and b, b > 0.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let bad = || Error::InvalidParams(format!("`{text}` is not a rational of the form a/b"));
    let (num, den) = text.trim().split_once('/').ok_or_else(bad)?;
    let digits = |s: &str| {
        let body = s.strip_prefix('-').unwrap_or(s);
        !body.is_empty() && body.bytes().all(|b| b.is_ascii_digit())
    };
    if !digits(num) || !digits(den) || den.starts_with('-') {
        return Err(bad());
    }
    let num = BigInt::from_str(num).map_err(|_| bad())?;
    let den = BigInt::from_str(den).map_err(|_| bad())?;
    if den.sign() == num_bigint::Sign::NoSign {
        return Err(Error::DivisionByZero);
    }
    Ok(BigRational::new(num, den))
}

/// Always `a/b`, integers included.
pub fn format_rational(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}
