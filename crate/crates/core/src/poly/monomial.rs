use std::cmp::Ordering;

use crate::error::{Error, Result};

/// Dense exponent vector over a fixed universe.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exps: Box<[u32]>,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial { exps: vec![0; nvars].into_boxed_slice() }
    }

    pub fn var(nvars: usize, i: usize, e: u32) -> Self {
        let mut v = vec![0; nvars];
        v[i] = e;
        Monomial { exps: v.into_boxed_slice() }
    }

    pub fn from_exps(exps: Vec<u32>) -> Self {
        Monomial { exps: exps.into_boxed_slice() }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i]
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn degree(&self) -> u64 {
        self.exps.iter().map(|&e| e as u64).sum()
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        debug_assert_eq!(self.nvars(), other.nvars());
        let exps = self
            .exps
            .iter()
            .zip(other.exps.iter())
            .map(|(a, b)| a.checked_add(*b).ok_or(Error::ExponentOverflow))
            .collect::<Result<Vec<_>>>()?;
        Ok(Monomial::from_exps(exps))
    }

    /// Panics on exponent overflow; see [`Monomial::checked_mul`].
    pub fn mul(&self, other: &Self) -> Self {
        self.checked_mul(other).expect("exponent overflow")
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `self / other` if `other` divides `self`.
    pub fn div(&self, other: &Self) -> Option<Self> {
        if !other.divides(self) {
            return None;
        }
        Some(Monomial::from_exps(
            self.exps.iter().zip(other.exps.iter()).map(|(a, b)| a - b).collect(),
        ))
    }

    pub fn lcm(&self, other: &Self) -> Self {
        Monomial::from_exps(
            self.exps.iter().zip(other.exps.iter()).map(|(a, b)| *a.max(b)).collect(),
        )
    }

    pub fn gcd(&self, other: &Self) -> Self {
        Monomial::from_exps(
            self.exps.iter().zip(other.exps.iter()).map(|(a, b)| *a.min(b)).collect(),
        )
    }

    pub fn is_coprime(&self, other: &Self) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Variables with a positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps.iter().enumerate().filter(|(_, e)| **e > 0).map(|(i, _)| i)
    }

    /// Per-block total degree; `blocks[b]` lists the variable indices of block b.
    pub fn multidegree(&self, blocks: &[Vec<usize>]) -> Vec<u64> {
        blocks
            .iter()
            .map(|b| b.iter().map(|&i| self.exps[i] as u64).sum())
            .collect()
    }

    /// Padded or re-indexed copy; `map[i]` is the target index of variable i.
    pub fn remap(&self, map: &[usize], target_nvars: usize) -> Self {
        let mut v = vec![0; target_nvars];
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                v[map[i]] += e;
            }
        }
        Monomial::from_exps(v)
    }
}

/// Graded reverse lexicographic comparison in index order; the canonical
/// storage order of [`crate::poly::MPoly`].
pub fn canonical_cmp(a: &Monomial, b: &Monomial) -> Ordering {
    match a.degree().cmp(&b.degree()) {
        Ordering::Equal => {}
        o => return o,
    }
    for (x, y) in a.exps.iter().zip(b.exps.iter()).rev() {
        if x != y {
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overflow_is_an_error() {
        let a = Monomial::from_exps(vec![u32::MAX, 0]);
        let b = Monomial::from_exps(vec![1, 0]);
        assert_eq!(a.checked_mul(&b), Err(Error::ExponentOverflow));
    }

    #[test]
    fn lcm_and_division() {
        let a = Monomial::from_exps(vec![2, 0, 1]);
        let b = Monomial::from_exps(vec![1, 3, 0]);
        let l = a.lcm(&b);
        assert_eq!(l.exps(), &[2, 3, 1]);
        assert_eq!(l.div(&a).unwrap().exps(), &[0, 3, 0]);
        assert!(a.div(&b).is_none());
    }

    #[test]
    fn multidegree_examples() {
        // x10 * x21 with blocks by column, d = 2, n = 1
        let blocks = vec![vec![0, 1], vec![2, 3]];
        let m = Monomial::from_exps(vec![1, 0, 0, 1]);
        assert_eq!(m.multidegree(&blocks), vec![1, 1]);
        assert_eq!(Monomial::one(4).multidegree(&blocks), vec![0, 0]);
        let m = Monomial::from_exps(vec![2, 1, 0, 0]);
        assert_eq!(m.multidegree(&blocks), vec![3, 0]);
    }
}
