//! Coefficient arithmetic specialised per field for the row reductions.

use std::collections::BTreeMap;
use std::fmt::Debug;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::field::{mod_inverse, FieldDescriptor, Scalar};

pub(crate) trait Coeff: Clone + Send + Sync + 'static {
    type E: Clone + Send + Sync + PartialEq + Debug;
    type Acc: Accumulator<Self::E> + Send;

    fn descriptor(&self) -> FieldDescriptor;
    /// Caller guarantees `s` is nonzero and lives in this field.
    fn from_scalar(&self, s: &Scalar) -> Self::E;
    fn to_scalar(&self, e: &Self::E) -> Scalar;
    fn neg(&self, e: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn inv(&self, e: &Self::E) -> Self::E;
    fn is_one(&self, e: &Self::E) -> bool;
    fn accumulator(&self, len: u64) -> Self::Acc;
}

/// A mutable vector over the monomials of one degree.
pub(crate) trait Accumulator<E> {
    /// Smallest nonzero position >= `pos`.
    fn first_from(&self, pos: u64) -> Option<(u64, E)>;
    /// self[idx] += e
    fn add(&mut self, idx: u64, e: &E);
    /// Nonzero entries in increasing position order.
    fn into_terms(self) -> Vec<(u64, E)>;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Unit;

#[derive(Clone, Copy, Debug)]
pub(crate) struct Gf2;

pub(crate) struct BitAcc {
    words: Vec<u64>,
}

impl Accumulator<Unit> for BitAcc {
    fn first_from(&self, pos: u64) -> Option<(u64, Unit)> {
        let mut w = (pos / 64) as usize;
        if w >= self.words.len() {
            return None;
        }
        let masked = self.words[w] & (!0u64 << (pos % 64));
        if masked != 0 {
            return Some((w as u64 * 64 + masked.trailing_zeros() as u64, Unit));
        }
        w += 1;
        while w < self.words.len() {
            if self.words[w] != 0 {
                return Some((w as u64 * 64 + self.words[w].trailing_zeros() as u64, Unit));
            }
            w += 1;
        }
        None
    }

    fn add(&mut self, idx: u64, _: &Unit) {
        self.words[(idx / 64) as usize] ^= 1 << (idx % 64);
    }

    fn into_terms(self) -> Vec<(u64, Unit)> {
        let mut out = Vec::new();
        for (w, &word) in self.words.iter().enumerate() {
            let mut bits = word;
            while bits != 0 {
                out.push((w as u64 * 64 + bits.trailing_zeros() as u64, Unit));
                bits &= bits - 1;
            }
        }
        out
    }
}

impl Coeff for Gf2 {
    type E = Unit;
    type Acc = BitAcc;

    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor::Binary
    }
    fn from_scalar(&self, _: &Scalar) -> Unit {
        Unit
    }
    fn to_scalar(&self, _: &Unit) -> Scalar {
        Scalar::one(FieldDescriptor::Binary)
    }
    fn neg(&self, _: &Unit) -> Unit {
        Unit
    }
    fn mul(&self, _: &Unit, _: &Unit) -> Unit {
        Unit
    }
    fn inv(&self, _: &Unit) -> Unit {
        Unit
    }
    fn is_one(&self, _: &Unit) -> bool {
        true
    }
    fn accumulator(&self, len: u64) -> BitAcc {
        BitAcc { words: vec![0; len.div_ceil(64) as usize] }
    }
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct Fp(pub u32);

pub(crate) struct ModAcc {
    p: u64,
    map: BTreeMap<u64, u32>,
}

impl Accumulator<u32> for ModAcc {
    fn first_from(&self, pos: u64) -> Option<(u64, u32)> {
        self.map.range(pos..).next().map(|(&k, &v)| (k, v))
    }

    fn add(&mut self, idx: u64, e: &u32) {
        let entry = self.map.entry(idx).or_insert(0);
        *entry = ((*entry as u64 + *e as u64) % self.p) as u32;
        if *entry == 0 {
            self.map.remove(&idx);
        }
    }

    fn into_terms(self) -> Vec<(u64, u32)> {
        self.map.into_iter().collect()
    }
}

impl Coeff for Fp {
    type E = u32;
    type Acc = ModAcc;

    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor::Prime(self.0)
    }
    fn from_scalar(&self, s: &Scalar) -> u32 {
        s.residue().expect("finite field scalar")
    }
    fn to_scalar(&self, e: &u32) -> Scalar {
        Scalar::from_i64(*e as i64, self.descriptor())
    }
    fn neg(&self, e: &u32) -> u32 {
        (self.0 - e) % self.0
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        (*a as u64 * *b as u64 % self.0 as u64) as u32
    }
    fn inv(&self, e: &u32) -> u32 {
        mod_inverse(*e, self.0)
    }
    fn is_one(&self, e: &u32) -> bool {
        *e == 1
    }
    fn accumulator(&self, _: u64) -> ModAcc {
        ModAcc { p: self.0 as u64, map: BTreeMap::new() }
    }
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct Rat;

pub(crate) struct RatAcc {
    map: BTreeMap<u64, BigRational>,
}

impl Accumulator<BigRational> for RatAcc {
    fn first_from(&self, pos: u64) -> Option<(u64, BigRational)> {
        self.map.range(pos..).next().map(|(&k, v)| (k, v.clone()))
    }

    fn add(&mut self, idx: u64, e: &BigRational) {
        let entry = self.map.entry(idx).or_insert_with(BigRational::zero);
        *entry += e;
        if entry.is_zero() {
            self.map.remove(&idx);
        }
    }

    fn into_terms(self) -> Vec<(u64, BigRational)> {
        self.map.into_iter().collect()
    }
}

impl Coeff for Rat {
    type E = BigRational;
    type Acc = RatAcc;

    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor::Rational
    }
    fn from_scalar(&self, s: &Scalar) -> BigRational {
        s.as_rational().expect("rational scalar").clone()
    }
    fn to_scalar(&self, e: &BigRational) -> Scalar {
        Scalar::from_rational(e, FieldDescriptor::Rational).expect("rational")
    }
    fn neg(&self, e: &BigRational) -> BigRational {
        -e
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, e: &BigRational) -> BigRational {
        e.recip()
    }
    fn is_one(&self, e: &BigRational) -> bool {
        e.is_one()
    }
    fn accumulator(&self, _: u64) -> RatAcc {
        RatAcc { map: BTreeMap::new() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bit_accumulator_scans_and_flips() {
        let mut acc = Gf2.accumulator(200);
        for i in [3u64, 64, 130, 199] {
            acc.add(i, &Unit);
        }
        assert_eq!(acc.first_from(0).map(|t| t.0), Some(3));
        assert_eq!(acc.first_from(4).map(|t| t.0), Some(64));
        assert_eq!(acc.first_from(65).map(|t| t.0), Some(130));
        acc.add(130, &Unit);
        assert_eq!(acc.first_from(65).map(|t| t.0), Some(199));
        assert_eq!(acc.first_from(200), None);
        let terms: Vec<u64> = acc.into_terms().into_iter().map(|t| t.0).collect();
        assert_eq!(terms, vec![3, 64, 199]);
    }

    #[test]
    fn mod_accumulator_cancels() {
        let f = Fp(5);
        let mut acc = f.accumulator(10);
        acc.add(2, &3);
        acc.add(2, &2);
        assert_eq!(acc.first_from(0), None);
        acc.add(7, &4);
        assert_eq!(acc.first_from(0), Some((7, 4)));
        assert_eq!(f.mul(&f.inv(&3), &3), 1);
    }
}
