//! Fixed-width bitsets over the elements of a group of order at most 512.

use std::cmp::Ordering;
use std::fmt;

pub const MAX_BITS: usize = 512;
const WORDS: usize = MAX_BITS / 64;

/// A set of element indices `0..512`.
///
/// The total order used throughout the crate is "cardinality first, then the
/// bitset read as a binary integer", which is what [`Ord`] implements.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Bits {
    w: [u64; WORDS],
}

impl Bits {
    pub const fn empty() -> Self {
        Bits { w: [0; WORDS] }
    }

    pub fn singleton(i: usize) -> Self {
        let mut b = Self::empty();
        b.insert(i);
        b
    }

    /// The full set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_BITS);
        let mut b = Self::empty();
        for k in 0..WORDS {
            let lo = k * 64;
            if n >= lo + 64 {
                b.w[k] = u64::MAX;
            } else if n > lo {
                b.w[k] = (1u64 << (n - lo)) - 1;
            }
        }
        b
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Self {
        let mut b = Self::empty();
        for i in it {
            b.insert(i);
        }
        b
    }

    #[inline]
    pub fn insert(&mut self, i: usize) -> bool {
        let (k, m) = (i >> 6, 1u64 << (i & 63));
        let fresh = self.w[k] & m == 0;
        self.w[k] |= m;
        fresh
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        self.w[i >> 6] &= !(1u64 << (i & 63));
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        self.w[i >> 6] >> (i & 63) & 1 == 1
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.w.iter().map(|x| x.count_ones() as usize).sum()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.w.iter().all(|&x| x == 0)
    }

    pub fn is_subset(&self, other: &Bits) -> bool {
        self.w.iter().zip(other.w.iter()).all(|(a, b)| a & !b == 0)
    }

    pub fn intersection(&self, other: &Bits) -> Bits {
        let mut r = *self;
        for (a, b) in r.w.iter_mut().zip(other.w.iter()) {
            *a &= b;
        }
        r
    }

    pub fn union(&self, other: &Bits) -> Bits {
        let mut r = *self;
        for (a, b) in r.w.iter_mut().zip(other.w.iter()) {
            *a |= b;
        }
        r
    }

    pub fn difference(&self, other: &Bits) -> Bits {
        let mut r = *self;
        for (a, b) in r.w.iter_mut().zip(other.w.iter()) {
            *a &= !b;
        }
        r
    }

    /// Smallest member, if any.
    pub fn first(&self) -> Option<usize> {
        self.w
            .iter()
            .enumerate()
            .find(|(_, &x)| x != 0)
            .map(|(k, &x)| k * 64 + x.trailing_zeros() as usize)
    }

    pub fn iter(&self) -> Ones {
        Ones { w: self.w, k: 0 }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    fn cmp_as_integer(&self, other: &Bits) -> Ordering {
        for k in (0..WORDS).rev() {
            match self.w[k].cmp(&other.w[k]) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }
}

impl Ord for Bits {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.cmp_as_integer(other))
    }
}

impl PartialOrd for Bits {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct Ones {
    w: [u64; WORDS],
    k: usize,
}

impl Iterator for Ones {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        while self.k < WORDS {
            let x = self.w[self.k];
            if x != 0 {
                let t = x.trailing_zeros() as usize;
                self.w[self.k] = x & (x - 1);
                return Some(self.k * 64 + t);
            }
            self.k += 1;
        }
        None
    }
}

impl FromIterator<usize> for Bits {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        Bits::from_indices(iter)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn full_and_len() {
        assert_eq!(Bits::full(0).len(), 0);
        assert_eq!(Bits::full(64).len(), 64);
        assert_eq!(Bits::full(65).len(), 65);
        assert_eq!(Bits::full(512).len(), 512);
        assert_eq!(Bits::full(3).to_vec(), vec![0, 1, 2]);
    }

    #[test]
    fn order_is_cardinality_then_integer() {
        let a = Bits::from_indices([0, 100]);
        let b = Bits::from_indices([0, 1, 2]);
        assert!(a < b);
        let c = Bits::from_indices([0, 3]);
        assert!(c < a);
    }

    proptest! {
        #[test]
        fn iter_roundtrip(v in proptest::collection::btree_set(0usize..512, 0..40)) {
            let b = Bits::from_indices(v.iter().copied());
            prop_assert_eq!(b.to_vec(), v.into_iter().collect::<Vec<_>>());
        }
    }
}
