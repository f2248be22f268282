use std::fmt;

/// Maximum number of worlds in any structure handled by the crate.
pub const MAX_WORLDS: usize = 64;

/// A set of world indices, stored as a bitmask.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WorldSet(pub u64);

impl WorldSet {
    pub const EMPTY: WorldSet = WorldSet(0);

    pub fn singleton(w: usize) -> Self {
        WorldSet(1 << w)
    }

    /// The set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        if n >= 64 {
            WorldSet(u64::MAX)
        } else {
            WorldSet((1u64 << n) - 1)
        }
    }

    pub fn from_iter_worlds<I: IntoIterator<Item = usize>>(it: I) -> Self {
        it.into_iter().fold(WorldSet::EMPTY, |acc, w| acc.with(w))
    }

    #[inline]
    pub fn contains(self, w: usize) -> bool {
        self.0 >> w & 1 == 1
    }

    #[inline]
    pub fn with(self, w: usize) -> Self {
        WorldSet(self.0 | 1 << w)
    }

    #[inline]
    pub fn without(self, w: usize) -> Self {
        WorldSet(self.0 & !(1 << w))
    }

    pub fn insert(&mut self, w: usize) {
        self.0 |= 1 << w;
    }

    pub fn remove(&mut self, w: usize) {
        self.0 &= !(1 << w);
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn union(self, other: Self) -> Self {
        WorldSet(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: Self) -> Self {
        WorldSet(self.0 & other.0)
    }

    #[inline]
    pub fn difference(self, other: Self) -> Self {
        WorldSet(self.0 & !other.0)
    }

    #[inline]
    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn intersects(self, other: Self) -> bool {
        self.0 & other.0 != 0
    }

    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> Iter {
        Iter(self.0)
    }

    /// All subsets of `self`, ordered by cardinality and then by bitmask.
    pub fn subsets_by_size(self) -> Vec<WorldSet> {
        let mut out = Vec::with_capacity(1 << self.len());
        let mut sub = 0u64;
        loop {
            out.push(WorldSet(sub));
            if sub == self.0 {
                break;
            }
            sub = (sub.wrapping_sub(self.0)) & self.0;
        }
        out.sort_by_key(|s| (s.len(), s.0));
        out
    }

    /// Nonempty subsets of `self`, ordered by cardinality.
    pub fn nonempty_subsets(self) -> Vec<WorldSet> {
        let mut v = self.subsets_by_size();
        v.remove(0);
        v
    }

    /// Relabel the members through `perm` (world `i` becomes `perm[i]`).
    pub fn permute(self, perm: &[usize]) -> Self {
        self.iter()
            .fold(WorldSet::EMPTY, |acc, w| acc.with(perm[w]))
    }
}

pub struct Iter(u64);

impl Iterator for Iter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let w = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(w)
    }
}

impl IntoIterator for WorldSet {
    type Item = usize;
    type IntoIter = Iter;

    fn into_iter(self) -> Iter {
        self.iter()
    }
}

impl FromIterator<usize> for WorldSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        WorldSet::from_iter_worlds(iter)
    }
}

impl fmt::Debug for WorldSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
