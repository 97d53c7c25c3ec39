//! Bitset subsets of a frozen, indexed point set.

use std::fmt;

/// Largest point set a [`PointSet`] can index.
pub const MAX_POINTS: usize = 64;

/// A subset of `{0, .., n-1}` stored as a machine word.
///
/// The universe size is not stored; operations that need it (complement,
/// enumeration) take it as an argument.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PointSet(pub u64);

impl PointSet {
    pub const EMPTY: PointSet = PointSet(0);

    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_POINTS);
        if n == MAX_POINTS {
            PointSet(u64::MAX)
        } else {
            PointSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        PointSet(1u64 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Self {
        it.into_iter().fold(PointSet::EMPTY, |s, i| s.with(i))
    }

    #[inline]
    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    #[inline]
    pub fn with(self, i: usize) -> Self {
        PointSet(self.0 | 1u64 << i)
    }

    #[inline]
    pub fn without(self, i: usize) -> Self {
        PointSet(self.0 & !(1u64 << i))
    }

    #[inline]
    pub fn union(self, other: Self) -> Self {
        PointSet(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: Self) -> Self {
        PointSet(self.0 & other.0)
    }

    #[inline]
    pub fn difference(self, other: Self) -> Self {
        PointSet(self.0 & !other.0)
    }

    #[inline]
    pub fn complement(self, n: usize) -> Self {
        PointSet(!self.0 & PointSet::full(n).0)
    }

    #[inline]
    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Indices of members, ascending.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }

    /// All subsets of `{0, .., n-1}` in increasing word order.
    pub fn all_subsets(n: usize) -> impl Iterator<Item = PointSet> {
        assert!(
            n < MAX_POINTS,
            "cannot enumerate subsets of a {n}-point set"
        );
        (0..1u64 << n).map(PointSet)
    }

    /// Canonical sort key: by cardinality, then by word.
    pub fn canonical_key(self) -> (u32, u64) {
        (self.0.count_ones(), self.0)
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Sort a family canonically and drop duplicates.
pub fn canonicalize(family: &mut Vec<PointSet>) {
    family.sort_by_key(|s| s.canonical_key());
    family.dedup();
}
