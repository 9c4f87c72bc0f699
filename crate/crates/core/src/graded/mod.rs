//! Graded linear algebra for homogeneous two-sided ideals of F{x1,…,xd}.
//!
//! [`build_table`] computes, degree by degree, the component I_n of the
//! ideal generated by homogeneous polynomials of degree >= 2, together with
//! the complement B_n spanned by the standard (non-pivot) monomials and the
//! quotient dimension b_n = d^n - dim I_n.

mod arith;
mod engine;
pub mod export;
pub mod naive;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};

use crate::error::{too_large, Error, Result};
use crate::field::{FieldDescriptor, Scalar};
use crate::freealg::{Ambient, Monomial, Polynomial};
use arith::{Coeff, Fp, Gf2, Rat};
use engine::{Engine, EngineOps, GeneratorRows};

/// Largest d^n the table will allocate columns for.
pub const DEFAULT_COLUMN_CAP: u64 = 1 << 20;

/// r_ℓ: number of generators of degree ℓ, with multiplicity.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RSequence {
    counts: BTreeMap<u64, BigUint>,
}

impl RSequence {
    pub fn new() -> Self {
        Self::default()
    }

    /// Counts nonzero homogeneous generators by degree.
    pub fn from_generators(generators: &[Polynomial]) -> Self {
        let mut r = Self::new();
        for g in generators {
            if let Some(deg) = g.homogeneous_degree() {
                r.add(deg as u64, &BigUint::from(1u32));
            }
        }
        r
    }

    pub fn add(&mut self, degree: u64, count: &BigUint) {
        if count.is_zero() {
            return;
        }
        *self.counts.entry(degree).or_default() += count;
    }

    pub fn set(&mut self, degree: u64, count: BigUint) {
        if count.is_zero() {
            self.counts.remove(&degree);
        } else {
            self.counts.insert(degree, count);
        }
    }

    pub fn get(&self, degree: u64) -> BigUint {
        self.counts.get(&degree).cloned().unwrap_or_default()
    }

    /// Nonzero entries in increasing degree.
    pub fn iter(&self) -> impl Iterator<Item = (u64, &BigUint)> {
        self.counts.iter().map(|(k, v)| (*k, v))
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn max_degree(&self) -> Option<u64> {
        self.counts.keys().next_back().copied()
    }

    /// Parses `"deg:count,deg:count"`; the empty string is the zero sequence.
    pub fn parse(text: &str) -> Result<Self> {
        let mut r = Self::new();
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let bad = || Error::InvalidParams(format!("bad r entry `{item}` (expected degree:count)"));
            let (deg, count) = item.split_once(':').ok_or_else(bad)?;
            let deg: u64 = deg.trim().parse().map_err(|_| bad())?;
            let count: BigUint = count.trim().parse().map_err(|_| bad())?;
            r.add(deg, &count);
        }
        Ok(r)
    }
}

impl fmt::Display for RSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.counts.iter().map(|(k, v)| format!("{k}:{v}")).collect();
        write!(f, "{}", parts.join(","))
    }
}

pub struct GradedIdealTable {
    d: u32,
    field: FieldDescriptor,
    maxdeg: usize,
    generators: Vec<Polynomial>,
    engine: Box<dyn EngineOps>,
}

impl fmt::Debug for GradedIdealTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GradedIdealTable")
            .field("d", &self.d)
            .field("field", &self.field)
            .field("maxdeg", &self.maxdeg)
            .field("generators", &self.generators.len())
            .field("b", &self.b_sequence())
            .finish()
    }
}

pub fn build_table(generators: &[Polynomial], d: u32, field: FieldDescriptor, maxdeg: usize) -> Result<GradedIdealTable> {
    build_table_with_cap(generators, d, field, maxdeg, DEFAULT_COLUMN_CAP)
}

pub fn build_table_with_cap(
    generators: &[Polynomial],
    d: u32,
    field: FieldDescriptor,
    maxdeg: usize,
    column_cap: u64,
) -> Result<GradedIdealTable> {
    if d < 2 {
        return Err(Error::InvalidParams(format!("need d >= 2, got {d}")));
    }
    let columns = (d as u64).checked_pow(maxdeg as u32).filter(|&c| c <= column_cap);
    if columns.is_none() {
        return Err(too_large("d^maxdeg", format!("{d}^{maxdeg}"), column_cap));
    }
    let ambient = Ambient::new(d, field);
    for (index, g) in generators.iter().enumerate() {
        if g.ambient() != ambient {
            return Err(Error::AmbientMismatch(g.ambient().to_string(), ambient.to_string()));
        }
        if g.is_zero() {
            continue;
        }
        let degree = g.homogeneous_degree().ok_or(Error::NonHomogeneousGenerator { index })?;
        if degree < 2 {
            return Err(Error::DegreeBelowTwo { index, degree });
        }
    }
    let engine: Box<dyn EngineOps> = match field {
        FieldDescriptor::Binary => Box::new(run(Gf2, d, maxdeg, generators)),
        FieldDescriptor::Prime(p) => Box::new(run(Fp(p), d, maxdeg, generators)),
        FieldDescriptor::Rational => Box::new(run(Rat, d, maxdeg, generators)),
    };
    Ok(GradedIdealTable { d, field, maxdeg, generators: generators.to_vec(), engine })
}

fn run<F: Coeff>(field: F, d: u32, maxdeg: usize, generators: &[Polynomial]) -> Engine<F> {
    let rows: Vec<GeneratorRows<F::E>> = generators
        .iter()
        .filter_map(|g| {
            let degree = g.homogeneous_degree()?;
            (degree <= maxdeg).then(|| GeneratorRows {
                degree,
                terms: g.terms().map(|(m, c)| (m.index(d), field.from_scalar(c))).collect(),
            })
        })
        .collect();
    Engine::build(field, d, maxdeg, &rows)
}

/// Result of reducing a polynomial against the table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Membership {
    pub member: bool,
    /// Normal form: the component of the input in B = ⊕ B_n.
    pub residue: Polynomial,
}

impl GradedIdealTable {
    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn field(&self) -> FieldDescriptor {
        self.field
    }

    pub fn maxdeg(&self) -> usize {
        self.maxdeg
    }

    pub fn ambient(&self) -> Ambient {
        Ambient::new(self.d, self.field)
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn r_sequence(&self) -> RSequence {
        RSequence::from_generators(&self.generators)
    }

    pub fn dim_t(&self, n: usize) -> u64 {
        (self.d as u64).pow(n as u32)
    }

    pub fn b(&self, n: usize) -> u64 {
        self.engine.standard(n).len() as u64
    }

    pub fn dim_i(&self, n: usize) -> u64 {
        self.dim_t(n) - self.b(n)
    }

    /// b_0, …, b_maxdeg
    pub fn b_sequence(&self) -> Vec<u64> {
        (0..=self.maxdeg).map(|n| self.b(n)).collect()
    }

    /// Standard monomials of degree n, increasing; they span B_n.
    pub fn standard_monomials(&self, n: usize) -> Vec<Monomial> {
        self.engine.standard(n).iter().map(|&i| Monomial::from_index(i, n, self.d)).collect()
    }

    /// dim(I_{n-1}·T_1), which equals d·dim I_{n-1} here.
    pub fn lifted_dim(&self, n: usize) -> u64 {
        if n == 0 {
            0
        } else {
            self.d as u64 * self.dim_i(n - 1)
        }
    }

    /// Number of products b·f (b ∈ B_{n-k}, f of degree k) spanned in degree n.
    pub fn product_count(&self, n: usize) -> u64 {
        self.engine.candidates(n)
    }

    /// Independent rows added in degree n beyond I_{n-1}·T_1.
    pub fn new_rows(&self, n: usize) -> usize {
        self.engine.new_rows(n)
    }

    fn normal_form_component(&self, n: usize, component: &Polynomial) -> Polynomial {
        let terms: Vec<(u64, Scalar)> = component.terms().map(|(m, c)| (m.index(self.d), c.clone())).collect();
        let reduced = self.engine.normal_form(n, &terms);
        Polynomial::from_terms(
            self.ambient(),
            reduced.into_iter().map(|(i, c)| (Monomial::from_index(i, n, self.d), c)),
        )
        .expect("in range")
    }

    /// Reduced row-echelon basis of I_n: one row μ - NF(μ) per pivot word μ.
    /// Every other entry of a row sits on a standard word larger than μ.
    pub fn rref_basis(&self, n: usize) -> Result<Vec<Polynomial>> {
        if n > self.maxdeg {
            return Err(Error::DegreeExceedsTable { degree: n, maxdeg: self.maxdeg });
        }
        let standard = self.engine.standard(n);
        let mut rows = Vec::new();
        let mut s = standard.iter().peekable();
        for idx in 0..self.dim_t(n) {
            if s.peek() == Some(&&idx) {
                s.next();
                continue;
            }
            let mono = Polynomial::monomial(self.ambient(), Monomial::from_index(idx, n, self.d))?;
            let nf = self.normal_form_component(n, &mono);
            rows.push(mono.sub(&nf)?);
        }
        Ok(rows)
    }
}

/// Componentwise membership test with the normal form as certificate.
pub fn membership(p: &Polynomial, table: &GradedIdealTable) -> Result<Membership> {
    if p.ambient() != table.ambient() {
        return Err(Error::AmbientMismatch(p.ambient().to_string(), table.ambient().to_string()));
    }
    let mut residue = Polynomial::zero(table.ambient());
    for (n, component) in p.homogeneous_components() {
        if n > table.maxdeg {
            return Err(Error::DegreeExceedsTable { degree: n, maxdeg: table.maxdeg });
        }
        residue = residue.add(&table.normal_form_component(n, &component))?;
    }
    Ok(Membership { member: residue.is_zero(), residue })
}

/// One line of the basic-inequality check at degree n >= 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Eq1Row {
    pub n: usize,
    /// b_n
    pub lhs: BigInt,
    /// d·b_{n-1} - Σ_{j=0}^{n-2} r_{n-j}·b_j
    pub rhs: BigInt,
    pub slack: BigInt,
}

/// The basic inequality evaluated on an arbitrary sequence b_0, b_1, ….
pub fn eq1_rows(d: u32, b: &[BigUint], r: &RSequence) -> Vec<Eq1Row> {
    (2..b.len())
        .map(|n| {
            let mut rhs = BigInt::from(d) * BigInt::from(b[n - 1].clone());
            for (j, bj) in b.iter().enumerate().take(n - 1) {
                let rk = r.get((n - j) as u64);
                if !rk.is_zero() {
                    rhs -= BigInt::from(rk * bj);
                }
            }
            let lhs = BigInt::from(b[n].clone());
            let slack = &lhs - &rhs;
            Eq1Row { n, lhs, rhs, slack }
        })
        .collect()
}

pub fn verify_eq1(table: &GradedIdealTable, r: &RSequence) -> Vec<Eq1Row> {
    let b: Vec<BigUint> = table.b_sequence().into_iter().map(BigUint::from).collect();
    eq1_rows(table.d, &b, r)
}

pub(crate) fn to_i128(v: &BigInt) -> i128 {
    v.to_i128().expect("table quantities fit in i128")
}
