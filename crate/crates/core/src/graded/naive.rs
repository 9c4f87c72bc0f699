//! Reference computation of I_n as the span of every m1·f·m2.
//!
//! Plain Gaussian elimination over [`Scalar`] on sparse rows; only meant for
//! small d^n.

use std::collections::BTreeMap;

use crate::error::{too_large, Result};
use crate::field::{FieldDescriptor, Scalar};
use crate::freealg::{monomials_of_degree, Polynomial};

type SparseRow = BTreeMap<usize, Scalar>;

/// Fully reduced row-echelon basis of I_n, as dense coordinate vectors over
/// the degree-n monomials in increasing order.
pub fn naive_rref(generators: &[Polynomial], d: u32, field: FieldDescriptor, n: usize, cap: u64) -> Result<Vec<Vec<Scalar>>> {
    let (width, basis) = span(generators, d, n, cap)?;
    let mut order: Vec<usize> = (0..basis.rows.len()).collect();
    order.sort_by_key(|&i| basis.pivots[i]);
    Ok(order
        .into_iter()
        .map(|i| {
            let mut dense = vec![Scalar::zero(field); width];
            for (&j, c) in &basis.rows[i] {
                dense[j] = c.clone();
            }
            dense
        })
        .collect())
}

fn span(generators: &[Polynomial], d: u32, n: usize, cap: u64) -> Result<(usize, Basis)> {
    let width = (d as u64).checked_pow(n as u32).unwrap_or(u64::MAX);
    if width > cap {
        return Err(too_large("d^n", width, cap));
    }
    let width = width as usize;
    let mut basis = Basis { rows: Vec::new(), pivots: Vec::new(), pivot_of: vec![None; width] };
    for g in generators {
        let Some(k) = g.homogeneous_degree() else { continue };
        if k > n {
            continue;
        }
        for left_len in 0..=(n - k) {
            for left in monomials_of_degree(d, left_len) {
                for right in monomials_of_degree(d, n - k - left_len) {
                    let row: SparseRow = g
                        .terms()
                        .map(|(m, c)| (left.concat(m).concat(&right).index(d) as usize, c.clone()))
                        .collect();
                    basis.insert(row);
                }
            }
        }
    }
    Ok((width, basis))
}

struct Basis {
    rows: Vec<SparseRow>,
    pivots: Vec<usize>,
    pivot_of: Vec<Option<usize>>,
}

impl Basis {
    /// Keeps the rows fully reduced with monic pivots.
    fn insert(&mut self, mut row: SparseRow) {
        // a reduced row vanishes on the other pivot columns, so only the
        // original support can meet a pivot
        let original: Vec<usize> = row.keys().copied().collect();
        for c in original {
            let Some(r) = self.pivot_of[c] else { continue };
            if let Some(f) = row.get(&c).cloned() {
                axpy(&mut row, &f, &self.rows[r]);
            }
        }
        let Some((&p, lead)) = row.iter().next() else { return };
        let inv = lead.inv().expect("nonzero pivot");
        let row: SparseRow = row.into_iter().map(|(i, x)| (i, x.mul(&inv).expect("same field"))).collect();
        for r in &mut self.rows {
            if let Some(f) = r.get(&p).cloned() {
                axpy(r, &f, &row);
            }
        }
        self.pivot_of[p] = Some(self.rows.len());
        self.rows.push(row);
        self.pivots.push(p);
    }
}

/// target -= f·row
fn axpy(target: &mut SparseRow, f: &Scalar, row: &SparseRow) {
    for (&i, y) in row {
        let delta = f.mul(y).expect("same field");
        let value = match target.get(&i) {
            Some(x) => x.sub(&delta).expect("same field"),
            None => delta.neg(),
        };
        if value.is_zero() {
            target.remove(&i);
        } else {
            target.insert(i, value);
        }
    }
}

/// b_n = d^n - rank of the naive span, for n = 0..=maxdeg.
pub fn naive_b_sequence(generators: &[Polynomial], d: u32, maxdeg: usize, cap: u64) -> Result<Vec<u64>> {
    (0..=maxdeg)
        .map(|n| {
            let (width, basis) = span(generators, d, n, cap)?;
            Ok(width as u64 - basis.rows.len() as u64)
        })
        .collect()
}
