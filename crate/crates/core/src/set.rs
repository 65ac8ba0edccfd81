//! Element identifiers and bitmask subsets of a lattice's carrier.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Largest carrier an [`ElementSet`] can address.
pub const MAX_ELEMENTS: usize = 64;

/// Dense index of an element inside one lattice.
///
/// An id is only meaningful relative to the lattice that produced it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ElementId(usize);

impl ElementId {
    pub const fn new(index: usize) -> Self {
        ElementId(index)
    }

    pub const fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// A subset of lattice elements, stored as a 64-bit mask.
///
/// Ordering is by cardinality first and then by the sorted member list, which
/// is the order every enumeration in this crate reports sets in.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ElementSet(u64);

impl ElementSet {
    pub const EMPTY: ElementSet = ElementSet(0);

    pub const fn from_bits(bits: u64) -> Self {
        ElementSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// All ids `0..n`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_ELEMENTS);
        if n == MAX_ELEMENTS {
            ElementSet(u64::MAX)
        } else {
            ElementSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(a: ElementId) -> Self {
        ElementSet(1u64 << a.0)
    }

    pub fn contains(self, a: ElementId) -> bool {
        self.0 >> a.0 & 1 == 1
    }

    pub fn insert(&mut self, a: ElementId) {
        self.0 |= 1u64 << a.0;
    }

    pub fn remove(&mut self, a: ElementId) {
        self.0 &= !(1u64 << a.0);
    }

    pub fn with(mut self, a: ElementId) -> Self {
        self.insert(a);
        self
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// True iff the set is exactly `{a}`.
    pub fn is_singleton_of(self, a: ElementId) -> bool {
        self.0 == 1u64 << a.0
    }

    /// The unique member of a singleton.
    pub fn as_singleton(self) -> Option<ElementId> {
        (self.len() == 1).then(|| ElementId(self.0.trailing_zeros() as usize))
    }

    /// Smallest member by id.
    pub fn first(self) -> Option<ElementId> {
        (self.0 != 0).then(|| ElementId(self.0.trailing_zeros() as usize))
    }

    pub fn union(self, other: Self) -> Self {
        ElementSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        ElementSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        ElementSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    pub fn iter(self) -> Iter {
        Iter(self.0)
    }

    /// Every subset of `0..n`, in increasing bit order.
    pub fn all_subsets(n: usize) -> impl Iterator<Item = ElementSet> {
        assert!(n < MAX_ELEMENTS, "cannot enumerate 2^{n} subsets");
        (0..1u64 << n).map(ElementSet)
    }
}

impl PartialOrd for ElementSet {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ElementSet {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.iter().cmp(other.iter()))
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(|a| a.0)).finish()
    }
}

impl FromIterator<ElementId> for ElementSet {
    fn from_iter<I: IntoIterator<Item = ElementId>>(iter: I) -> Self {
        let mut s = ElementSet::EMPTY;
        for a in iter {
            s.insert(a);
        }
        s
    }
}

impl IntoIterator for ElementSet {
    type Item = ElementId;
    type IntoIter = Iter;

    fn into_iter(self) -> Iter {
        self.iter()
    }
}

/// Members of an [`ElementSet`] in increasing id order.
#[derive(Clone, Debug)]
pub struct Iter(u64);

impl Iterator for Iter {
    type Item = ElementId;

    fn next(&mut self) -> Option<ElementId> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(ElementId(i))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Iter {}
