//! Pointwise meet and join of element sets and the three set orders.
//!
//! `A <= B` compares every pair, `A <=1 B` bounds each member of `A` by some
//! member of `B`, and `A <=2 B` bounds each member of `B` from below by some
//! member of `A`. Empty arguments are read with the literal quantifiers.

use crate::lattice::BoundedLattice;
use crate::set::{ElementId, ElementSet};

impl BoundedLattice {
    /// `{ x v y : x in A, y in B }`
    pub fn set_join(&self, a: ElementSet, b: ElementSet) -> ElementSet {
        let mut out = ElementSet::EMPTY;
        for x in a.iter() {
            for y in b.iter() {
                out.insert(self.join(x, y));
            }
        }
        out
    }

    /// `{ x ^ y : x in A, y in B }`
    pub fn set_meet(&self, a: ElementSet, b: ElementSet) -> ElementSet {
        let mut out = ElementSet::EMPTY;
        for x in a.iter() {
            for y in b.iter() {
                out.insert(self.meet(x, y));
            }
        }
        out
    }

    /// `A v {b}`
    pub fn set_join_el(&self, a: ElementSet, b: ElementId) -> ElementSet {
        a.iter().map(|x| self.join(x, b)).collect()
    }

    /// `A ^ {b}`
    pub fn set_meet_el(&self, a: ElementSet, b: ElementId) -> ElementSet {
        a.iter().map(|x| self.meet(x, b)).collect()
    }

    /// Every member of `A` lies below every member of `B`.
    pub fn set_le(&self, a: ElementSet, b: ElementSet) -> bool {
        a.iter().all(|x| b.is_subset(self.up_set(x)))
    }

    /// Each member of `A` lies below some member of `B`.
    pub fn set_le1(&self, a: ElementSet, b: ElementSet) -> bool {
        a.iter().all(|x| !self.up_set(x).is_disjoint(b))
    }

    /// Each member of `B` lies above some member of `A`.
    pub fn set_le2(&self, a: ElementSet, b: ElementSet) -> bool {
        b.iter().all(|y| !self.down_set(y).is_disjoint(a))
    }
}
