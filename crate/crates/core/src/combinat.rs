//! Index combinatorics: weakly increasing tuples J(q,n), their orbits under
//! position permutations, and the associated counts.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{too_large, Error, Result};

/// Guard for every exhaustive enumeration.
pub const DEFAULT_ENUMERATION_CAP: u64 = 10_000_000;

/// A tuple 1 <= j1 <= … <= jn <= q.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeakTuple {
    entries: Vec<u32>,
    q: u32,
}

impl WeakTuple {
    pub fn new(entries: Vec<u32>, q: u32) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidParams("weak tuple must be nonempty".into()));
        }
        if entries.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidParams(format!("{entries:?} is not weakly increasing")));
        }
        if entries[0] < 1 || *entries.last().unwrap() > q {
            return Err(Error::InvalidParams(format!("entries of {entries:?} must lie in 1..={q}")));
        }
        Ok(Self { entries, q })
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    pub fn multiplicities(&self) -> MultiplicityVector {
        let mut runs: Vec<(u32, u32)> = Vec::new();
        for &e in &self.entries {
            match runs.last_mut() {
                Some((v, m)) if *v == e => *m += 1,
                _ => runs.push((e, 1)),
            }
        }
        MultiplicityVector { q: self.q, runs }
    }
}

/// μ_k = number of occurrences of k, stored sparsely.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicityVector {
    q: u32,
    runs: Vec<(u32, u32)>,
}

impl MultiplicityVector {
    pub fn get(&self, k: u32) -> u32 {
        self.runs.iter().find(|(v, _)| *v == k).map_or(0, |&(_, m)| m)
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// (value, multiplicity) pairs with nonzero multiplicity, increasing.
    pub fn nonzero(&self) -> &[(u32, u32)] {
        &self.runs
    }

    pub fn total(&self) -> u64 {
        self.runs.iter().map(|&(_, m)| m as u64).sum()
    }
}

pub fn binomial(n: &BigUint, k: &BigUint) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let other = n - k;
    let k = if &other < k { other } else { k.clone() };
    let steps = k.to_u64().expect("binomial lower index too large to evaluate");
    let mut acc = BigUint::one();
    let base = n - &k;
    for i in 1..=steps {
        acc = acc * (&base + i) / i;
    }
    acc
}

pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * i)
}

/// Lexicographic iterator over J(q,n).
#[derive(Clone, Debug)]
pub struct WeakTuples {
    q: u32,
    next: Option<Vec<u32>>,
}

impl Iterator for WeakTuples {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        if let Some(i) = succ.iter().rposition(|&e| e < self.q) {
            let v = succ[i] + 1;
            succ[i..].iter_mut().for_each(|e| *e = v);
            self.next = Some(succ);
        }
        Some(current)
    }
}

pub fn weak_tuples(q: u32, n: usize) -> WeakTuples {
    let next = (q >= 1 && n >= 1).then(|| vec![1; n]);
    WeakTuples { q, next }
}

/// |J(q,n)| = C(n+q-1, q-1).
pub fn j_cardinality(q: &BigUint, n: &BigUint) -> BigUint {
    let top = n + q - 1u32;
    // C(top, q-1) = C(top, n); pick the cheaper lower index
    binomial(&top, n.min(&(q - 1u32)))
}

pub fn enumerate_j(q: u32, n: usize, cap: u64) -> Result<Vec<WeakTuple>> {
    if q < 1 || n < 1 {
        return Err(Error::InvalidParams("J(q,n) needs q >= 1 and n >= 1".into()));
    }
    let count = j_cardinality(&BigUint::from(q), &BigUint::from(n));
    if count > BigUint::from(cap) {
        return Err(too_large("|J(q,n)|", count, cap));
    }
    Ok(weak_tuples(q, n).map(|entries| WeakTuple { entries, q }).collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JCount {
    pub count: BigUint,
    /// (n+q-1)^(q-1)
    pub bound: BigUint,
    pub within_bound: bool,
}

pub fn count_j(q: u32, n: u32) -> JCount {
    assert!(q >= 1 && n >= 1, "count_j needs q, n >= 1");
    let count = j_cardinality(&BigUint::from(q), &BigUint::from(n));
    let bound = BigUint::from(n as u64 + q as u64 - 1).pow(q - 1);
    let within_bound = count <= bound;
    JCount { count, bound, within_bound }
}

/// n! / (μ1! ⋯ μq!)
pub fn orbit_size(j: &WeakTuple) -> BigUint {
    let mut acc = BigUint::one();
    let mut placed = 0u64;
    for &(_, m) in j.multiplicities().nonzero() {
        acc *= binomial(&BigUint::from(placed + m as u64), &BigUint::from(m));
        placed += m as u64;
    }
    acc
}

/// All distinct rearrangements of `j`, in lexicographic order.
pub fn enumerate_orbit(j: &WeakTuple, cap: u64) -> Result<Vec<Vec<u32>>> {
    let size = orbit_size(j);
    if size > BigUint::from(cap) {
        return Err(too_large("orbit", size, cap));
    }
    let mut out = Vec::with_capacity(size.to_usize().unwrap_or(0));
    let mut current = j.entries.clone();
    loop {
        out.push(current.clone());
        if !next_permutation(&mut current) {
            break;
        }
    }
    Ok(out)
}

fn next_permutation(v: &mut [u32]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let pivot = i - 1;
    let swap = (i..v.len()).rev().find(|&k| v[k] > v[pivot]).expect("exists by choice of pivot");
    v.swap(pivot, swap);
    v[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn wt(e: &[u32], q: u32) -> WeakTuple {
        WeakTuple::new(e.to_vec(), q).unwrap()
    }

    #[test]
    fn enumerate_small() {
        let j = enumerate_j(2, 2, DEFAULT_ENUMERATION_CAP).unwrap();
        let got: Vec<_> = j.iter().map(|t| t.entries().to_vec()).collect();
        assert_eq!(got, vec![vec![1, 1], vec![1, 2], vec![2, 2]]);
        assert_eq!(enumerate_j(2, 7, DEFAULT_ENUMERATION_CAP).unwrap().len(), 8);
        let ones = enumerate_j(1, 5, DEFAULT_ENUMERATION_CAP).unwrap();
        assert_eq!(ones, vec![wt(&[1, 1, 1, 1, 1], 1)]);
        assert!(matches!(enumerate_j(10, 10, 1000), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn counts_and_bound() {
        let c = count_j(2, 7);
        assert_eq!(c.count, BigUint::from(8u32));
        assert_eq!(c.bound, BigUint::from(8u32));
        assert!(c.within_bound);
        let c = count_j(3, 2);
        assert_eq!((c.count, c.bound), (BigUint::from(6u32), BigUint::from(16u32)));
        assert_eq!(count_j(1, 9).count, BigUint::one());
    }

    #[test]
    fn orbit_sizes() {
        assert_eq!(orbit_size(&wt(&[1, 1, 1, 2, 2, 2, 2], 2)), BigUint::from(35u32));
        assert_eq!(orbit_size(&wt(&[1, 2], 2)), BigUint::from(2u32));
        assert_eq!(orbit_size(&wt(&[1, 1, 1, 1], 3)), BigUint::one());
        let j = wt(&[1, 1, 2, 3, 3, 3], 4);
        assert_eq!(orbit_size(&j), factorial(6) / (factorial(2) * factorial(3)));
    }

    #[test]
    fn orbits() {
        assert_eq!(enumerate_orbit(&wt(&[1, 2], 2), 100).unwrap(), vec![vec![1, 2], vec![2, 1]]);
        assert_eq!(
            enumerate_orbit(&wt(&[1, 1, 2], 2), 100).unwrap(),
            vec![vec![1, 1, 2], vec![1, 2, 1], vec![2, 1, 1]]
        );
        assert_eq!(enumerate_orbit(&wt(&[1, 1], 2), 100).unwrap(), vec![vec![1, 1]]);
        assert!(enumerate_orbit(&wt(&[1, 2, 3, 4, 5, 6], 6), 700).is_err());
    }

    #[test]
    fn invalid_tuples() {
        assert!(WeakTuple::new(vec![2, 1], 2).is_err());
        assert!(WeakTuple::new(vec![1, 3], 2).is_err());
        assert!(WeakTuple::new(vec![0, 1], 2).is_err());
        assert!(WeakTuple::new(vec![], 2).is_err());
    }

    #[test]
    fn multiplicity_vector() {
        let m = wt(&[1, 1, 1, 2, 2, 2, 2], 3).multiplicities();
        assert_eq!((m.get(1), m.get(2), m.get(3)), (3, 4, 0));
        assert_eq!(m.total(), 7);
    }

    #[test]
    fn partition_identity_and_disjointness() {
        for q in 1..=6u32 {
            for n in 1..=6usize {
                let js = enumerate_j(q, n, DEFAULT_ENUMERATION_CAP).unwrap();
                let total: BigUint = js.iter().map(orbit_size).sum();
                assert_eq!(total, BigUint::from(q).pow(n as u32), "q={q} n={n}");
                if q.pow(n as u32) <= 4096 {
                    let mut seen = HashSet::new();
                    let mut listed = 0usize;
                    for j in &js {
                        let orbit = enumerate_orbit(j, DEFAULT_ENUMERATION_CAP).unwrap();
                        assert_eq!(BigUint::from(orbit.len()), orbit_size(j));
                        listed += orbit.len();
                        seen.extend(orbit);
                    }
                    assert_eq!(seen.len(), listed, "orbits overlap at q={q} n={n}");
                    assert_eq!(seen.len() as u64, (q as u64).pow(n as u32));
                }
            }
        }
    }

    #[test]
    fn count_matches_enumeration() {
        for q in 1..=8u32 {
            for n in 1..=8u32 {
                let listed = enumerate_j(q, n as usize, DEFAULT_ENUMERATION_CAP).unwrap();
                assert_eq!(count_j(q, n).count, BigUint::from(listed.len()));
                assert!(listed.windows(2).all(|w| w[0] < w[1]), "lexicographic, no repeats");
            }
        }
    }

    #[test]
    fn polynomial_bound_holds() {
        for q in 1..=6u32 {
            for n in 1..=60u32 {
                assert!(count_j(q, n).within_bound, "q={q} n={n}");
            }
        }
    }
}
