//! Exact scalars over GF(2), GF(p) and the rationals.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldDescriptor {
    Binary,
    /// An odd prime modulus below 2^31. `Prime(2)` is never constructed; use `Binary`.
    Prime(u32),
    Rational,
}

impl FieldDescriptor {
    /// GF(p); returns `Binary` for p = 2.
    pub fn prime(p: u32) -> Result<Self> {
        if p >= 1 << 31 || !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not a prime below 2^31")));
        }
        Ok(if p == 2 { Self::Binary } else { Self::Prime(p) })
    }

    pub fn characteristic(&self) -> u32 {
        match self {
            Self::Binary => 2,
            Self::Prime(p) => *p,
            Self::Rational => 0,
        }
    }

    fn modulus(&self) -> Option<u32> {
        match self {
            Self::Rational => None,
            _ => Some(self.characteristic()),
        }
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let p = p as u64;
    let mut i = 2u64;
    while i * i <= p {
        if p % i == 0 {
            return false;
        }
        i += 1;
    }
    true
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Binary => write!(f, "gf2"),
            Self::Prime(p) => write!(f, "gf{p}"),
            Self::Rational => write!(f, "q"),
        }
    }
}

impl FromStr for FieldDescriptor {
    type Err = Error;

    /// Accepts `gf2`, `gf<p>` and `q`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_lowercase();
        if t == "q" {
            return Ok(Self::Rational);
        }
        match t.strip_prefix("gf").map(str::parse::<u32>) {
            Some(Ok(p)) => Self::prime(p),
            _ => Err(Error::InvalidField(format!("unrecognised field `{s}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Value {
    Residue(u32),
    Rational(BigRational),
}

/// An exact field element tagged with its field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar {
    field: FieldDescriptor,
    value: Value,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScalarOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn scalar_arith(a: &Scalar, b: &Scalar, op: ScalarOp) -> Result<Scalar> {
    match op {
        ScalarOp::Add => a.add(b),
        ScalarOp::Sub => a.sub(b),
        ScalarOp::Mul => a.mul(b),
        ScalarOp::Div => a.div(b),
    }
}

/// Canonical image of an integer: reduction mod p, or k/1.
pub fn from_integer(k: &BigInt, field: FieldDescriptor) -> Scalar {
    let value = match field.modulus() {
        Some(p) => {
            let r = k.mod_floor(&BigInt::from(p));
            Value::Residue(r.to_u32().expect("residue below modulus"))
        }
        None => Value::Rational(BigRational::from_integer(k.clone())),
    };
    Scalar { field, value }
}

pub(crate) fn mod_inverse(a: u32, p: u32) -> u32 {
    let (mut old_r, mut r) = (a as i64, p as i64);
    let (mut old_s, mut s) = (1i64, 0i64);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    debug_assert_eq!(old_r, 1);
    old_s.rem_euclid(p as i64) as u32
}

impl Scalar {
    pub fn zero(field: FieldDescriptor) -> Self {
        Self::from_i64(0, field)
    }

    pub fn one(field: FieldDescriptor) -> Self {
        Self::from_i64(1, field)
    }

    pub fn from_i64(k: i64, field: FieldDescriptor) -> Self {
        from_integer(&BigInt::from(k), field)
    }

    /// Rational constant; only valid over Q or when the denominator is invertible mod p.
    pub fn from_rational(r: &BigRational, field: FieldDescriptor) -> Result<Self> {
        let num = from_integer(r.numer(), field);
        let den = from_integer(r.denom(), field);
        num.div(&den)
    }

    pub fn field(&self) -> FieldDescriptor {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        match &self.value {
            Value::Residue(v) => *v == 0,
            Value::Rational(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.value {
            Value::Residue(v) => *v == 1,
            Value::Rational(r) => r.is_one(),
        }
    }

    /// The residue in `0..p` for finite fields.
    pub fn residue(&self) -> Option<u32> {
        match &self.value {
            Value::Residue(v) => Some(*v),
            Value::Rational(_) => None,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.value {
            Value::Rational(r) => Some(r),
            Value::Residue(_) => None,
        }
    }

    fn check(&self, other: &Scalar) -> Result<()> {
        if self.field != other.field {
            return Err(Error::MixedFields(self.field.to_string(), other.field.to_string()));
        }
        Ok(())
    }

    fn residue_op(&self, other: &Scalar, f: impl Fn(u64, u64, u64) -> u64) -> Scalar {
        let p = self.field.characteristic() as u64;
        match (&self.value, &other.value) {
            (Value::Residue(a), Value::Residue(b)) => Scalar {
                field: self.field,
                value: Value::Residue(f(*a as u64, *b as u64, p) as u32),
            },
            _ => unreachable!("residue op on rational"),
        }
    }

    pub fn add(&self, other: &Scalar) -> Result<Scalar> {
        self.check(other)?;
        Ok(match (&self.value, &other.value) {
            (Value::Rational(a), Value::Rational(b)) => self.with(Value::Rational(a + b)),
            _ => self.residue_op(other, |a, b, p| (a + b) % p),
        })
    }

    pub fn sub(&self, other: &Scalar) -> Result<Scalar> {
        self.check(other)?;
        Ok(match (&self.value, &other.value) {
            (Value::Rational(a), Value::Rational(b)) => self.with(Value::Rational(a - b)),
            _ => self.residue_op(other, |a, b, p| (a + p - b) % p),
        })
    }

    pub fn mul(&self, other: &Scalar) -> Result<Scalar> {
        self.check(other)?;
        Ok(match (&self.value, &other.value) {
            (Value::Rational(a), Value::Rational(b)) => self.with(Value::Rational(a * b)),
            _ => self.residue_op(other, |a, b, p| a * b % p),
        })
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar> {
        self.check(other)?;
        let inv = other.inv()?;
        self.mul(&inv)
    }

    pub fn neg(&self) -> Scalar {
        match &self.value {
            Value::Rational(a) => self.with(Value::Rational(-a)),
            Value::Residue(a) => {
                let p = self.field.characteristic();
                self.with(Value::Residue((p - a) % p))
            }
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match &self.value {
            Value::Rational(a) => self.with(Value::Rational(a.recip())),
            Value::Residue(a) => self.with(Value::Residue(mod_inverse(*a, self.field.characteristic()))),
        })
    }

    fn with(&self, value: Value) -> Scalar {
        Scalar { field: self.field, value }
    }

    /// Integer representative when one exists: the residue, or an integral rational.
    pub fn to_integer(&self) -> Option<BigInt> {
        match &self.value {
            Value::Residue(v) => Some(BigInt::from(*v)),
            Value::Rational(r) if r.is_integer() => Some(r.numer().clone()),
            Value::Rational(_) => None,
        }
    }

    pub(crate) fn is_negative(&self) -> bool {
        matches!(&self.value, Value::Rational(r) if r.is_negative())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.value {
            Value::Residue(v) => write!(f, "{v}"),
            Value::Rational(r) => write!(f, "{r}"),
        }
    }
}
