//! Noncommutative monomials and polynomials in F{x1,…,xd}.
//!
//! Monomials are ordered degree-first, then lexicographically with
//! x1 < x2 < … < xd. Within one degree this is the order of the base-d
//! index `Monomial::index`, which the graded linear algebra relies on.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::field::{from_integer, FieldDescriptor, Scalar};

/// A word in the letters 1..=d. The empty word is the unit.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one() -> Self {
        Self(Vec::new())
    }

    /// Letters are 1-based variable indices.
    pub fn new(letters: Vec<u32>) -> Self {
        debug_assert!(letters.iter().all(|&l| l >= 1));
        Self(letters)
    }

    pub fn var(i: u32) -> Self {
        Self(vec![i])
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn letters(&self) -> &[u32] {
        &self.0
    }

    pub fn max_letter(&self) -> u32 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    pub fn concat(&self, other: &Monomial) -> Monomial {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Monomial(v)
    }

    /// Position among the d^n words of this degree in monomial order.
    pub fn index(&self, d: u32) -> u64 {
        self.0.iter().fold(0u64, |acc, &l| acc * d as u64 + (l as u64 - 1))
    }

    pub fn from_index(mut index: u64, degree: usize, d: u32) -> Monomial {
        let mut v = vec![0u32; degree];
        for slot in v.iter_mut().rev() {
            *slot = (index % d as u64) as u32 + 1;
            index /= d as u64;
        }
        Monomial(v)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            write!(f, "x{l}")?;
        }
        Ok(())
    }
}

/// All d^n monomials of degree n, in monomial order.
pub fn monomials_of_degree(d: u32, n: usize) -> impl Iterator<Item = Monomial> {
    let count = (d as u64).checked_pow(n as u32).expect("d^n overflows u64");
    (0..count).map(move |i| Monomial::from_index(i, n, d))
}

/// A homogeneous polynomial from `samples` uniformly drawn words of the given
/// degree, each with a random nonzero coefficient (in -5..=5 over ℚ).
/// Repeated words add up, so the result can have fewer terms or vanish.
pub fn random_homogeneous<R: rand::Rng + ?Sized>(ambient: Ambient, degree: usize, samples: usize, rng: &mut R) -> Polynomial {
    let terms: Vec<(Monomial, Scalar)> = (0..samples)
        .map(|_| {
            let letters = (0..degree).map(|_| rng.gen_range(1..=ambient.d)).collect();
            let coeff = match ambient.field {
                FieldDescriptor::Rational => {
                    let k = rng.gen_range(1..=5i64);
                    if rng.gen_bool(0.5) { -k } else { k }
                }
                f => rng.gen_range(1..f.characteristic()) as i64,
            };
            (Monomial::new(letters), Scalar::from_i64(coeff, ambient.field))
        })
        .collect();
    Polynomial::from_terms(ambient, terms).expect("letters drawn in range")
}

/// Number of variables and coefficient field of a free algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Ambient {
    pub d: u32,
    pub field: FieldDescriptor,
}

impl Ambient {
    pub fn new(d: u32, field: FieldDescriptor) -> Self {
        Self { d, field }
    }
}

impl fmt::Display for Ambient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}<x1..x{}>", self.field, self.d)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    ambient: Ambient,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Polynomial {
    pub fn zero(ambient: Ambient) -> Self {
        Self { ambient, terms: BTreeMap::new() }
    }

    pub fn one(ambient: Ambient) -> Self {
        Self::term(ambient, Monomial::one(), Scalar::one(ambient.field)).expect("unit is in range")
    }

    pub fn var(ambient: Ambient, i: u32) -> Result<Self> {
        Self::term(ambient, Monomial::var(i), Scalar::one(ambient.field))
    }

    pub fn monomial(ambient: Ambient, m: Monomial) -> Result<Self> {
        Self::term(ambient, m, Scalar::one(ambient.field))
    }

    pub fn term(ambient: Ambient, m: Monomial, c: Scalar) -> Result<Self> {
        Self::from_terms(ambient, [(m, c)])
    }

    /// Builds a polynomial, combining like terms and dropping zeros.
    pub fn from_terms(ambient: Ambient, terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Result<Self> {
        let mut p = Self::zero(ambient);
        for (m, c) in terms {
            if m.max_letter() > ambient.d {
                return Err(Error::VariableOutOfRange { index: m.max_letter() as usize, d: ambient.d as usize });
            }
            if c.field() != ambient.field {
                return Err(Error::MixedFields(c.field().to_string(), ambient.field.to_string()));
            }
            p.add_term(m, &c);
        }
        Ok(p)
    }

    fn add_term(&mut self, m: Monomial, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let s = existing.add(c).expect("same field");
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = s;
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(|| Scalar::zero(self.ambient.field))
    }

    /// Largest degree of a term; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.terms.keys().next().map(Monomial::degree)
    }

    /// The degree if every term has the same degree.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        match (self.min_degree(), self.degree()) {
            (Some(a), Some(b)) if a == b => Some(a),
            _ => None,
        }
    }

    pub fn constant_term(&self) -> Scalar {
        self.coeff(&Monomial::one())
    }

    fn check(&self, other: &Polynomial) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch(self.ambient.to_string(), other.ambient.to_string()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            ambient: self.ambient,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Result<Polynomial> {
        let mut out = Polynomial::zero(self.ambient);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), &c.mul(s)?);
        }
        Ok(out)
    }

    /// Noncommutative product.
    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        let mut out = Polynomial::zero(self.ambient);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.concat(m2), &c1.mul(c2)?);
            }
        }
        Ok(out)
    }

    /// `self` multiplied with itself `n >= 1` times.
    pub fn pow(&self, n: u32) -> Polynomial {
        assert!(n >= 1, "exponent must be positive");
        let mut acc = self.clone();
        for _ in 1..n {
            acc = acc.mul(self).expect("same ambient");
        }
        acc
    }

    /// Degree → homogeneous component; the components sum to `self`.
    pub fn homogeneous_components(&self) -> BTreeMap<usize, Polynomial> {
        let mut out: BTreeMap<usize, Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.degree())
                .or_insert_with(|| Polynomial::zero(self.ambient))
                .terms
                .insert(m.clone(), c.clone());
        }
        out
    }

    /// Replaces variable y_i by `targets[i-1]`.
    pub fn substitute(&self, targets: &[Polynomial]) -> Result<Polynomial> {
        let target_ambient = match targets.first() {
            Some(t) => t.ambient,
            None => return Err(Error::InvalidParams("substitution needs at least one target".into())),
        };
        for t in targets {
            if t.ambient != target_ambient {
                return Err(Error::AmbientMismatch(target_ambient.to_string(), t.ambient.to_string()));
            }
        }
        if self.ambient.field != target_ambient.field {
            return Err(Error::AmbientMismatch(self.ambient.to_string(), target_ambient.to_string()));
        }
        let mut out = Polynomial::zero(target_ambient);
        for (m, c) in &self.terms {
            let mut prod = Polynomial::one(target_ambient).scale(c)?;
            for &l in m.letters() {
                let t = targets
                    .get(l as usize - 1)
                    .ok_or(Error::IndexOutOfRange { index: l as usize, max: targets.len() })?;
                prod = prod.mul(t)?;
            }
            for (pm, pc) in prod.terms {
                out.add_term(pm, &pc);
            }
        }
        Ok(out)
    }

    /// Same integer coefficients read in another field.
    pub fn map_field(&self, field: FieldDescriptor) -> Result<Polynomial> {
        let ambient = Ambient::new(self.ambient.d, field);
        let mut out = Polynomial::zero(ambient);
        for (m, c) in &self.terms {
            let image = match (c.to_integer(), c.as_rational()) {
                (Some(k), _) => from_integer(&k, field),
                (None, Some(r)) => Scalar::from_rational(r, field)?,
                (None, None) => unreachable!("finite-field scalars are integers"),
            };
            out.add_term(m.clone(), &image);
        }
        Ok(out)
    }

    pub fn parse(text: &str, d: u32, field: FieldDescriptor) -> Result<Polynomial> {
        Parser::new(text, Ambient::new(d, field)).parse()
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let mag = if negative { c.neg() } else { c.clone() };
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.degree() == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

/// Recursive-descent parser for the polynomial text grammar:
///
/// ```text
/// poly   := term (("+" | "-") term)*
/// term   := [integer "*"] factor ("*" factor)* | integer
/// factor := "x" digits
/// ```
///
/// Whitespace is ignored. Two extensions are accepted so that every printed
/// polynomial parses back: an optional leading sign, and over Q a coefficient
/// of the form `integer "/" integer`.
struct Parser<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    text: &'a str,
    ambient: Ambient,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, ambient: Ambient) -> Self {
        let chars = text.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
        Self { chars, pos: 0, text, ambient }
    }

    fn offset(&self) -> usize {
        self.chars.get(self.pos).map(|&(i, _)| i).unwrap_or(self.text.len())
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::SyntaxError { position: self.offset(), message: message.into() })
    }

    fn digits(&mut self) -> Option<String> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.chars[start..self.pos].iter().map(|&(_, c)| c).collect())
    }

    fn parse(mut self) -> Result<Polynomial> {
        if self.chars.is_empty() {
            return self.err("empty polynomial");
        }
        let mut out = Polynomial::zero(self.ambient);
        let mut negate = match self.peek() {
            Some('-') => {
                self.pos += 1;
                true
            }
            Some('+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        loop {
            let (m, c) = self.term()?;
            let c = if negate { c.neg() } else { c };
            out.add_term(m, &c);
            match self.peek() {
                None => break,
                Some('+') => negate = false,
                Some('-') => negate = true,
                Some(ch) => return self.err(format!("unexpected `{ch}`")),
            }
            self.pos += 1;
        }
        Ok(out)
    }

    fn coefficient(&mut self, digits: String) -> Result<Scalar> {
        let field = self.ambient.field;
        let k: BigInt = digits.parse().expect("digit string");
        if self.peek() == Some('/') {
            if field != FieldDescriptor::Rational {
                return self.err("fractional coefficients are only accepted over q");
            }
            self.pos += 1;
            let den: BigInt = match self.digits() {
                Some(s) => s.parse().expect("digit string"),
                None => return self.err("expected denominator"),
            };
            if den.is_positive() {
                return Scalar::from_rational(&BigRational::new(k, den), field);
            }
            return self.err("zero denominator");
        }
        Ok(from_integer(&k, field))
    }

    fn term(&mut self) -> Result<(Monomial, Scalar)> {
        let field = self.ambient.field;
        let mut coeff = Scalar::one(field);
        let mut letters = Vec::new();
        if let Some(ds) = self.digits() {
            coeff = self.coefficient(ds)?;
            if self.peek() != Some('*') {
                return Ok((Monomial::one(), coeff));
            }
            self.pos += 1;
        }
        loop {
            letters.push(self.factor()?);
            if self.peek() == Some('*') {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok((Monomial::new(letters), coeff))
    }

    fn factor(&mut self) -> Result<u32> {
        if self.peek() != Some('x') {
            return self.err("expected variable `x<index>`");
        }
        self.pos += 1;
        let Some(ds) = self.digits() else {
            return self.err("expected variable index");
        };
        let index: u64 = ds.parse().unwrap_or(u64::MAX);
        if index == 0 || index > self.ambient.d as u64 {
            return Err(Error::VariableOutOfRange {
                index: index.min(usize::MAX as u64) as usize,
                d: self.ambient.d as usize,
            });
        }
        Ok(index as u32)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const GF2: FieldDescriptor = FieldDescriptor::Binary;
    const GF5: FieldDescriptor = FieldDescriptor::Prime(5);
    const Q: FieldDescriptor = FieldDescriptor::Rational;

    fn p(s: &str, d: u32, f: FieldDescriptor) -> Polynomial {
        Polynomial::parse(s, d, f).unwrap()
    }

    #[test]
    fn addition() {
        let sum = p("x1*x2 + x2*x1", 2, GF2).add(&p("x1*x2", 2, GF2)).unwrap();
        assert_eq!(sum, p("x2*x1", 2, GF2));
        let a = p("x1 + 3*x2*x2", 2, Q);
        assert_eq!(a.add(&Polynomial::zero(a.ambient())).unwrap(), a);
        assert!(p("2*x1", 2, GF5).add(&p("3*x1", 2, GF5)).unwrap().is_zero());
        assert!(matches!(p("x1", 2, GF5).add(&p("x1", 3, GF5)), Err(Error::AmbientMismatch(..))));
    }

    #[test]
    fn multiplication_is_noncommutative() {
        let x1 = p("x1", 2, Q);
        let x2 = p("x2", 2, Q);
        assert_eq!(x1.mul(&x2).unwrap(), p("x1*x2", 2, Q));
        assert_eq!(x2.mul(&x1).unwrap(), p("x2*x1", 2, Q));
        assert_ne!(x1.mul(&x2).unwrap(), x2.mul(&x1).unwrap());
        let s = p("x1 + x2", 2, Q);
        assert_eq!(s.mul(&s).unwrap(), p("x1*x1 + x1*x2 + x2*x1 + x2*x2", 2, Q));
        let g = p("x1 - 2*x2*x1", 2, Q);
        assert_eq!(Polynomial::one(g.ambient()).mul(&g).unwrap(), g);
    }

    #[test]
    fn components() {
        let c = p("x1 + x1*x2", 2, Q).homogeneous_components();
        assert_eq!(c.len(), 2);
        assert_eq!(c[&1], p("x1", 2, Q));
        assert_eq!(c[&2], p("x1*x2", 2, Q));
        let h = p("x1*x2*x1 + x2*x2*x2", 2, Q);
        assert_eq!(h.homogeneous_components(), BTreeMap::from([(3, h.clone())]));
        assert!(Polynomial::zero(h.ambient()).homogeneous_components().is_empty());
    }

    #[test]
    fn substitution() {
        let amb = Ambient::new(2, Q);
        let y = p("x1*x2", 2, Q);
        let targets = [p("x1", 2, Q), p("x2*x1", 2, Q)];
        assert_eq!(y.substitute(&targets).unwrap(), p("x1*x2*x1", 2, Q));
        let sum = p("x1 + x2", 2, Q);
        let same = [p("x1", 2, Q), p("x1", 2, Q)];
        assert_eq!(sum.substitute(&same).unwrap(), p("2*x1", 2, Q));
        let sum2 = p("x1 + x2", 2, GF2);
        assert!(sum2.substitute(&[p("x1", 2, GF2), p("x1", 2, GF2)]).unwrap().is_zero());
        // the (1,2) order-symmetric polynomial
        let s12 = p("x1*x2 + x2*x1", 2, Q);
        assert_eq!(s12.substitute(&[p("x1", 2, Q), p("x2", 2, Q)]).unwrap(), p("x1*x2 + x2*x1", 2, Q));
        let bad = p("x3", 3, Q);
        assert!(matches!(bad.substitute(&targets), Err(Error::IndexOutOfRange { index: 3, max: 2 })));
        let other = [Polynomial::one(amb), p("x1", 3, Q)];
        assert!(matches!(y.substitute(&other), Err(Error::AmbientMismatch(..))));
    }

    #[test]
    fn powers() {
        assert_eq!(p("x1", 2, Q).pow(3), p("x1*x1*x1", 2, Q));
        assert_eq!(p("x1 + x2", 2, GF2).pow(2), p("x1*x1 + x1*x2 + x2*x1 + x2*x2", 2, GF2));
        let g = p("x1 + 2*x2*x2", 2, GF5);
        assert_eq!(g.pow(1), g);
    }

    #[test]
    fn parsing() {
        let a = p("x1*x2 + x2*x1", 2, Q);
        assert_eq!(a.len(), 2);
        assert_eq!(a.coeff(&Monomial::new(vec![1, 2])), Scalar::one(Q));
        assert_eq!(p("3*x1*x1 - x2", 2, GF2), p("x1*x1 + x2", 2, GF2));
        assert_eq!(
            Polynomial::parse("x3", 2, Q),
            Err(Error::VariableOutOfRange { index: 3, d: 2 })
        );
        assert_eq!(p(" 1 + x1 ", 2, Q).constant_term(), Scalar::one(Q));
        assert_eq!(p("x 1 * x 2", 2, Q), p("x1*x2", 2, Q));
        assert!(p("x1 - x1", 2, Q).is_zero());
        assert!(matches!(Polynomial::parse("x1 + ", 2, Q), Err(Error::SyntaxError { position: 5, .. })));
        assert!(matches!(Polynomial::parse("x1 ** x2", 2, Q), Err(Error::SyntaxError { .. })));
        assert!(matches!(Polynomial::parse("x1*2", 2, Q), Err(Error::SyntaxError { .. })));
        assert!(matches!(Polynomial::parse("", 2, Q), Err(Error::SyntaxError { .. })));
        assert!(matches!(Polynomial::parse("x0", 2, Q), Err(Error::VariableOutOfRange { .. })));
        assert!(matches!(Polynomial::parse("1/2*x1", 2, GF5), Err(Error::SyntaxError { .. })));
        assert_eq!(p("1/2*x1", 2, Q).to_string(), "1/2*x1");
    }

    #[test]
    fn printing() {
        assert_eq!(p("x2*x1 + x1*x2 + 1", 2, Q).to_string(), "1 + x1*x2 + x2*x1");
        assert_eq!(p("-3*x1 + x2 - 2", 2, Q).to_string(), "-2 - 3*x1 + x2");
        assert_eq!(p("-3*x1", 2, GF5).to_string(), "2*x1");
        assert_eq!(Polynomial::zero(Ambient::new(2, Q)).to_string(), "0");
    }

    #[test]
    fn monomial_order_and_counts() {
        let a = Monomial::new(vec![2]);
        let b = Monomial::new(vec![1, 1]);
        assert!(a < b, "degree first");
        assert!(Monomial::new(vec![1, 2]) < Monomial::new(vec![2, 1]));
        for d in 2..=3u32 {
            for n in 0..=5usize {
                let all: Vec<_> = monomials_of_degree(d, n).collect();
                assert_eq!(all.len() as u64, (d as u64).pow(n as u32));
                assert!(all.windows(2).all(|w| w[0] < w[1]));
                for (i, m) in all.iter().enumerate() {
                    assert_eq!(m.index(d), i as u64);
                }
            }
        }
    }

    fn poly_strategy(d: u32, f: FieldDescriptor) -> impl Strategy<Value = Polynomial> {
        prop::collection::vec((prop::collection::vec(1..=d, 0..5), -7i64..8), 0..8).prop_map(move |ts| {
            Polynomial::from_terms(
                Ambient::new(d, f),
                ts.into_iter().map(|(l, c)| (Monomial::new(l), Scalar::from_i64(c, f))),
            )
            .unwrap()
        })
    }

    fn homogeneous_strategy(d: u32, deg: usize, f: FieldDescriptor) -> impl Strategy<Value = Polynomial> {
        prop::collection::vec((prop::collection::vec(1..=d, deg), -3i64..4), 1..4).prop_map(move |ts| {
            Polynomial::from_terms(
                Ambient::new(d, f),
                ts.into_iter().map(|(l, c)| (Monomial::new(l), Scalar::from_i64(c, f))),
            )
            .unwrap()
        })
    }

    proptest! {
        #[test]
        fn print_parse_round_trip(pq in poly_strategy(3, Q), p5 in poly_strategy(3, GF5), p2 in poly_strategy(2, GF2)) {
            for poly in [pq, p5, p2] {
                let amb = poly.ambient();
                prop_assert_eq!(Polynomial::parse(&poly.to_string(), amb.d, amb.field).unwrap(), poly);
            }
        }

        #[test]
        fn product_degrees_add(a in homogeneous_strategy(3, 2, Q), b in homogeneous_strategy(3, 3, Q)) {
            let prod = a.mul(&b).unwrap();
            prop_assert!(prod.is_zero() || prod.homogeneous_degree() == Some(5));
        }

        #[test]
        fn substitute_is_multiplicative(
            a in homogeneous_strategy(3, 2, GF5),
            b in homogeneous_strategy(3, 1, GF5),
            t in prop::collection::vec(homogeneous_strategy(2, 2, GF5), 3),
        ) {
            let lhs = a.mul(&b).unwrap().substitute(&t).unwrap();
            let rhs = a.substitute(&t).unwrap().mul(&b.substitute(&t).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn components_sum_back(a in poly_strategy(3, Q)) {
            let mut sum = Polynomial::zero(a.ambient());
            for (deg, c) in a.homogeneous_components() {
                prop_assert_eq!(c.homogeneous_degree(), Some(deg));
                sum = sum.add(&c).unwrap();
            }
            prop_assert_eq!(sum, a);
        }
    }
}
