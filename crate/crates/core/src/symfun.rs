//! Order-symmetric polynomials s_j and the generators h_j obtained by
//! substituting all monomials of degree 1..=c for the variables y_1..y_q.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::One;

use crate::combinat::{enumerate_orbit, j_cardinality, weak_tuples, WeakTuple};
use crate::error::{too_large, Error, Result};
use crate::field::{FieldDescriptor, Scalar};
use crate::freealg::{monomials_of_degree, Ambient, Monomial, Polynomial};

/// The monomials M_1 < … < M_q of degrees 1..=c in d letters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialWindow {
    d: u32,
    c: usize,
    monomials: Vec<Monomial>,
}

/// q = d + d^2 + … + d^c
pub fn window_size(d: u32, c: u32) -> BigUint {
    let d = BigUint::from(d);
    (d.pow(c + 1) - &d) / (d - 1u32)
}

pub fn monomial_window(d: u32, c: usize, cap: u64) -> Result<MonomialWindow> {
    if d < 2 || c < 1 {
        return Err(Error::InvalidParams(format!("monomial window needs d >= 2, c >= 1 (got d={d}, c={c})")));
    }
    let q = window_size(d, c.min(u32::MAX as usize - 1) as u32);
    if q > BigUint::from(cap.min(u32::MAX as u64)) {
        return Err(too_large("monomial window", q, cap));
    }
    let monomials = (1..=c).flat_map(|deg| monomials_of_degree(d, deg)).collect();
    Ok(MonomialWindow { d, c, monomials })
}

impl MonomialWindow {
    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn c(&self) -> usize {
        self.c
    }

    pub fn q(&self) -> u32 {
        self.monomials.len() as u32
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    /// M_i for 1-based i.
    pub fn get(&self, i: u32) -> &Monomial {
        &self.monomials[i as usize - 1]
    }

    /// The 1-based position of `m`, if 1 <= deg m <= c.
    pub fn index_of(&self, m: &Monomial) -> Option<u32> {
        let deg = m.degree();
        if deg == 0 || deg > self.c || m.max_letter() > self.d {
            return None;
        }
        let below: u64 = (1..deg).map(|i| (self.d as u64).pow(i as u32)).sum();
        Some((below + m.index(self.d) + 1) as u32)
    }
}

/// s_j(y_1..y_q): the sum of y_{i1}⋯y_{in} over the orbit of j.
pub fn order_symmetric(j: &WeakTuple, field: FieldDescriptor, cap: u64) -> Result<Polynomial> {
    let ambient = Ambient::new(j.q(), field);
    let one = Scalar::one(field);
    let orbit = enumerate_orbit(j, cap)?;
    Polynomial::from_terms(ambient, orbit.into_iter().map(|i| (Monomial::new(i), one.clone())))
}

/// Degree of h_j: the sum of the degrees of the M_{j_t}.
pub fn h_degree(j: &WeakTuple, window: &MonomialWindow) -> usize {
    j.entries().iter().map(|&i| window.get(i).degree()).sum()
}

/// h_j = s_j(M_1,…,M_q). Distinct orbit elements may concatenate to the same
/// word; their coefficients add.
pub fn h_generator(j: &WeakTuple, window: &MonomialWindow, field: FieldDescriptor, cap: u64) -> Result<Polynomial> {
    if j.q() != window.q() {
        return Err(Error::InvalidParams(format!("tuple over q={} but window has q={}", j.q(), window.q())));
    }
    let one = Scalar::one(field);
    let orbit = enumerate_orbit(j, cap)?;
    let words = orbit.into_iter().map(|i| {
        let letters: Vec<u32> = i.iter().flat_map(|&k| window.get(k).letters().iter().copied()).collect();
        (Monomial::new(letters), one.clone())
    });
    Polynomial::from_terms(Ambient::new(window.d, field), words)
}

fn alphas(g: &Polynomial, window: &MonomialWindow) -> Result<Vec<(u32, Scalar)>> {
    if g.ambient().d != window.d {
        return Err(Error::AmbientMismatch(g.ambient().to_string(), format!("d={}", window.d)));
    }
    if !g.constant_term().is_zero() {
        return Err(Error::ConstantTerm);
    }
    if let Some(deg) = g.degree().filter(|&deg| deg > window.c) {
        return Err(Error::DegreeTooHigh { degree: deg, max: window.c });
    }
    Ok(g.terms().map(|(m, c)| (window.index_of(m).expect("degree checked"), c.clone())).collect())
}

/// Coefficients λ_j = α_{j1}⋯α_{jn} with g^n = Σ λ_j h_j, where
/// g = Σ α_i M_i. Tuples with λ_j = 0 are omitted.
pub fn expand_power_via_h(
    g: &Polynomial,
    n: usize,
    window: &MonomialWindow,
    cap: u64,
) -> Result<BTreeMap<WeakTuple, Scalar>> {
    let support = alphas(g, window)?;
    let mut out = BTreeMap::new();
    if support.is_empty() || n == 0 {
        return Ok(out);
    }
    let count = j_cardinality(&BigUint::from(support.len()), &BigUint::from(n));
    if count > BigUint::from(cap) {
        return Err(too_large("power expansion", count, cap));
    }
    let field = g.ambient().field;
    for t in weak_tuples(support.len() as u32, n) {
        let mut lambda = Scalar::one(field);
        let mut entries = Vec::with_capacity(n);
        for &s in &t {
            let (idx, alpha) = &support[s as usize - 1];
            lambda = lambda.mul(alpha)?;
            entries.push(*idx);
        }
        if !lambda.is_zero() {
            out.insert(WeakTuple::new(entries, window.q())?, lambda);
        }
    }
    Ok(out)
}

/// Checks g^n = Σ λ_j h_j by expanding both sides.
pub fn verify_power_expansion(
    g: &Polynomial,
    n: usize,
    window: &MonomialWindow,
    lambdas: &BTreeMap<WeakTuple, Scalar>,
    cap: u64,
) -> Result<bool> {
    let field = g.ambient().field;
    let lhs = if n == 0 { Polynomial::one(g.ambient()) } else { g.pow(n as u32) };
    let mut rhs = Polynomial::zero(g.ambient());
    for (j, lambda) in lambdas {
        rhs = rhs.add(&h_generator(j, window, field, cap)?.scale(lambda)?)?;
    }
    Ok(lhs == rhs)
}

/// Number of tuples in J(q,n) whose h_j has each degree, for the window
/// (d, c): coefficients of ∏_i (1 - z t^i)^(-d^i) at z^n.
pub fn h_degree_distribution(d: u32, c: usize, n: usize) -> BTreeMap<usize, BigUint> {
    // table[a][w]: multisets of size a and total weight w using degrees seen so far
    let width = n * c + 1;
    let mut table = vec![vec![BigUint::from(0u32); width]; n + 1];
    table[0][0] = BigUint::one();
    for deg in 1..=c {
        let kinds = BigUint::from(d).pow(deg as u32);
        let mut next = vec![vec![BigUint::from(0u32); width]; n + 1];
        for a in 0..=n {
            for w in 0..width {
                if table[a][w] == BigUint::from(0u32) {
                    continue;
                }
                // choose b more items of this degree: C(kinds + b - 1, b) ways
                let mut ways = BigUint::one();
                let mut b = 0usize;
                while a + b <= n && w + b * deg < width {
                    next[a + b][w + b * deg] += &table[a][w] * &ways;
                    b += 1;
                    ways = ways * (&kinds + (b - 1)) / b;
                }
            }
        }
        table = next;
    }
    table[n]
        .iter()
        .enumerate()
        .filter(|(_, v)| **v != BigUint::from(0u32))
        .map(|(w, v)| (w, v.clone()))
        .collect()
}
