//! Degree-by-degree spanning of I_n = I_{n-1}·T_1 + Σ_k B_{n-k}·R_k.
//!
//! Only the rows that are new in each degree are stored. Right
//! multiplication by a word keeps the leading monomial least and maps
//! distinct leading words to distinct ones, so the basis of I_n is implicitly
//! { w·m : w a new row of degree k <= n, m any word of length n-k }. A word
//! of degree n is a pivot iff one of its prefixes is the leading word of a
//! new row; there is at most one such prefix. With monomials indexed in
//! base d, the prefix of length k of index μ is μ / d^(n-k).

use std::collections::HashMap;

use rayon::prelude::*;

use super::arith::{Accumulator, Coeff};
use crate::field::Scalar;

#[derive(Clone, Debug)]
pub(crate) struct Row<E> {
    /// Increasing positions; the first term is the monic leading term.
    terms: Vec<(u64, E)>,
}

#[derive(Clone, Debug, Default)]
pub(crate) struct Level<E> {
    rows: Vec<Row<E>>,
    pivots: HashMap<u64, usize>,
    standard: Vec<u64>,
    /// Products b·f considered in this degree.
    candidates: u64,
}

pub(crate) struct GeneratorRows<E> {
    pub degree: usize,
    pub terms: Vec<(u64, E)>,
}

pub(crate) struct Engine<F: Coeff> {
    field: F,
    d: u32,
    powers: Vec<u64>,
    levels: Vec<Level<F::E>>,
    /// Degrees that carry new rows, increasing.
    active: Vec<usize>,
}

/// Object-safe view used by the public table.
pub(crate) trait EngineOps: Send + Sync {
    fn standard(&self, n: usize) -> &[u64];
    fn new_rows(&self, n: usize) -> usize;
    fn candidates(&self, n: usize) -> u64;
    fn normal_form(&self, n: usize, terms: &[(u64, Scalar)]) -> Vec<(u64, Scalar)>;
}

impl<F: Coeff> Engine<F> {
    pub fn build(field: F, d: u32, maxdeg: usize, generators: &[GeneratorRows<F::E>]) -> Self {
        let powers: Vec<u64> = (0..=maxdeg as u32).map(|k| (d as u64).pow(k)).collect();
        let mut engine = Engine { field, d, powers, levels: Vec::with_capacity(maxdeg + 1), active: Vec::new() };
        for n in 0..=maxdeg {
            engine.extend(n, generators);
        }
        engine
    }

    fn extend(&mut self, n: usize, generators: &[GeneratorRows<F::E>]) {
        let mut level = Level { rows: Vec::new(), pivots: HashMap::new(), standard: Vec::new(), candidates: 0 };
        if n == 0 {
            level.standard.push(0);
            self.levels.push(level);
            return;
        }
        let products: Vec<Vec<(u64, F::E)>> = generators
            .iter()
            .filter(|g| g.degree >= 2 && g.degree <= n)
            .flat_map(|g| {
                let shift = self.powers[g.degree];
                self.levels[n - g.degree]
                    .standard
                    .iter()
                    .map(move |&b| g.terms.iter().map(|(i, e)| (b * shift + i, e.clone())).collect())
            })
            .collect();
        level.candidates = products.len() as u64;

        // against I_{n-1}·T_1 only; independent per product
        let reduced: Vec<Vec<(u64, F::E)>> = products
            .into_par_iter()
            .map(|terms| self.reduce_terms(n, terms, n - 1))
            .filter(|t| !t.is_empty())
            .collect();

        self.levels.push(level);
        // rows found in this degree reduce the later candidates
        self.active.push(n);
        for terms in reduced {
            let residue = self.reduce_terms(n, terms, n);
            if residue.is_empty() {
                continue;
            }
            let lead_inv = self.field.inv(&residue[0].1);
            let terms: Vec<(u64, F::E)> = if self.field.is_one(&residue[0].1) {
                residue
            } else {
                residue.into_iter().map(|(i, e)| (i, self.field.mul(&e, &lead_inv))).collect()
            };
            let level = &mut self.levels[n];
            level.pivots.insert(terms[0].0, level.rows.len());
            level.rows.push(Row { terms });
        }
        if self.levels[n].rows.is_empty() {
            self.active.pop();
        }

        let d = self.d as u64;
        let prev = std::mem::take(&mut self.levels[n - 1].standard);
        let level = &mut self.levels[n];
        level.standard = prev
            .iter()
            .flat_map(|&b| (0..d).map(move |t| b * d + t))
            .filter(|idx| !level.pivots.contains_key(idx))
            .collect();
        self.levels[n - 1].standard = prev;
    }

    /// The stored row whose leading word is a prefix (of length <= `max_len`)
    /// of the degree-n word `mu`.
    fn pivot_row(&self, mu: u64, n: usize, max_len: usize) -> Option<(usize, &Row<F::E>)> {
        for &k in &self.active {
            if k > max_len {
                break;
            }
            let prefix = mu / self.powers[n - k];
            if let Some(&r) = self.levels[k].pivots.get(&prefix) {
                return Some((k, &self.levels[k].rows[r]));
            }
        }
        None
    }

    /// Full reduction of a degree-n vector against every stored row of
    /// degree <= `max_len`; the result is supported on standard words.
    fn reduce_terms(&self, n: usize, terms: Vec<(u64, F::E)>, max_len: usize) -> Vec<(u64, F::E)> {
        let mut acc = self.field.accumulator(self.powers[n]);
        for (i, e) in &terms {
            acc.add(*i, e);
        }
        let mut pos = 0u64;
        while let Some((mu, coef)) = acc.first_from(pos) {
            if let Some((k, row)) = self.pivot_row(mu, n, max_len) {
                let shift = self.powers[n - k];
                let tail = mu % shift;
                let factor = self.field.neg(&coef);
                for (i, e) in &row.terms {
                    acc.add(i * shift + tail, &self.field.mul(&factor, e));
                }
            }
            pos = mu + 1;
        }
        acc.into_terms()
    }
}

impl<F: Coeff> EngineOps for Engine<F> {
    fn standard(&self, n: usize) -> &[u64] {
        &self.levels[n].standard
    }

    fn new_rows(&self, n: usize) -> usize {
        self.levels[n].rows.len()
    }

    fn candidates(&self, n: usize) -> u64 {
        self.levels[n].candidates
    }

    fn normal_form(&self, n: usize, terms: &[(u64, Scalar)]) -> Vec<(u64, Scalar)> {
        let terms = terms.iter().filter(|(_, s)| !s.is_zero()).map(|(i, s)| (*i, self.field.from_scalar(s))).collect();
        self.reduce_terms(n, terms, n).into_iter().map(|(i, e)| (i, self.field.to_scalar(&e))).collect()
    }
}
