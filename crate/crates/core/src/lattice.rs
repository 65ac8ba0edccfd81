//! Finite bounded lattices stored as order bitmasks plus precomputed meet and
//! join tables.

use std::collections::HashMap;

use crate::error::{LatticeError, Result};
use crate::set::{ElementId, ElementSet, MAX_ELEMENTS};

/// A finite bounded lattice with `0 != 1`.
///
/// Immutable once built. Element ids are dense `0..len()`; labels exist for
/// presentation and lookup only.
#[derive(Clone, Debug)]
pub struct BoundedLattice {
    name: String,
    labels: Vec<String>,
    // up[a] = { b : a <= b }, down[a] = { b : b <= a }
    up: Vec<ElementSet>,
    down: Vec<ElementSet>,
    meet: Vec<ElementId>,
    join: Vec<ElementId>,
    bottom: ElementId,
    top: ElementId,
    complements: Vec<ElementSet>,
}

/// An `N5` sublattice `{bottom, low, high, side, top}` with `low < high` and
/// `side` a complement of both.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pentagon {
    pub bottom: ElementId,
    pub low: ElementId,
    pub high: ElementId,
    pub side: ElementId,
    pub top: ElementId,
}

impl Pentagon {
    pub fn as_tuple(&self) -> [ElementId; 5] {
        [self.bottom, self.low, self.high, self.side, self.top]
    }
}

impl BoundedLattice {
    /// Builds a lattice from labels and `(lower, upper)` pairs. The order is the
    /// reflexive-transitive closure of the pairs, so redundant pairs are fine.
    pub fn build_from_covers<S: AsRef<str>>(
        name: impl Into<String>,
        labels: &[S],
        covers: &[(S, S)],
    ) -> Result<Self> {
        let labels: Vec<String> = labels.iter().map(|s| s.as_ref().to_string()).collect();
        let n = labels.len();
        check_size(n)?;
        let mut index = HashMap::with_capacity(n);
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.as_str(), i).is_some() {
                return Err(LatticeError::DuplicateLabel(l.clone()));
            }
        }
        let lookup = |s: &str| {
            index
                .get(s)
                .copied()
                .ok_or_else(|| LatticeError::UnknownLabel(s.to_string()))
        };

        let mut up: Vec<ElementSet> = (0..n).map(|i| ElementSet::singleton(ElementId::new(i))).collect();
        for (lo, hi) in covers {
            let (lo, hi) = (lookup(lo.as_ref())?, lookup(hi.as_ref())?);
            if lo == hi {
                return Err(LatticeError::CycleDetected(labels[lo].clone()));
            }
            up[lo].insert(ElementId::new(hi));
        }
        transitive_closure(&mut up);
        for a in 0..n {
            for b in up[a].iter() {
                if b.index() != a && up[b.index()].contains(ElementId::new(a)) {
                    return Err(LatticeError::CycleDetected(labels[a].clone()));
                }
            }
        }
        Self::from_closed_order(name.into(), labels, up)
    }

    /// Builds a lattice from an explicit order given as up-sets
    /// (`up[a]` holds every `b` with `a <= b`). The relation must already be a
    /// partial order.
    pub fn from_order(name: impl Into<String>, labels: Vec<String>, up: Vec<ElementSet>) -> Result<Self> {
        let n = labels.len();
        check_size(n)?;
        if up.len() != n {
            return Err(LatticeError::InvalidParameter(format!(
                "{} labels but {} order rows",
                n,
                up.len()
            )));
        }
        let full = ElementSet::full(n);
        for a in 0..n {
            let ua = up[a];
            if !ua.is_subset(full) || !ua.contains(ElementId::new(a)) {
                return Err(LatticeError::InvalidParameter(format!("order row {a} is not reflexive")));
            }
            for b in ua.iter() {
                if !up[b.index()].is_subset(ua) {
                    return Err(LatticeError::InvalidParameter("order is not transitive".into()));
                }
                if b.index() != a && up[b.index()].contains(ElementId::new(a)) {
                    return Err(LatticeError::CycleDetected(labels[a].clone()));
                }
            }
        }
        Self::from_closed_order(name.into(), labels, up)
    }

    fn from_closed_order(name: String, labels: Vec<String>, up: Vec<ElementSet>) -> Result<Self> {
        let n = labels.len();
        let full = ElementSet::full(n);
        let mut down = vec![ElementSet::EMPTY; n];
        for (a, ua) in up.iter().enumerate() {
            for b in ua.iter() {
                down[b.index()].insert(ElementId::new(a));
            }
        }
        let bottom = (0..n)
            .find(|&a| up[a] == full)
            .map(ElementId::new)
            .ok_or(LatticeError::NoBounds("least"))?;
        let top = (0..n)
            .find(|&a| down[a] == full)
            .map(ElementId::new)
            .ok_or(LatticeError::NoBounds("greatest"))?;
        if bottom == top {
            return Err(LatticeError::TrivialLattice);
        }

        let mut meet = vec![bottom; n * n];
        let mut join = vec![top; n * n];
        for a in 0..n {
            for b in 0..n {
                let lower = down[a].intersection(down[b]);
                meet[a * n + b] = lower
                    .iter()
                    .find(|g| lower.is_subset(down[g.index()]))
                    .ok_or_else(|| {
                        LatticeError::NotALattice(labels[a].clone(), labels[b].clone(), "greatest lower bound")
                    })?;
                let upper = up[a].intersection(up[b]);
                join[a * n + b] = upper
                    .iter()
                    .find(|l| upper.is_subset(up[l.index()]))
                    .ok_or_else(|| {
                        LatticeError::NotALattice(labels[a].clone(), labels[b].clone(), "least upper bound")
                    })?;
            }
        }

        let complements = (0..n)
            .map(|a| {
                (0..n)
                    .filter(|&x| join[a * n + x] == top && meet[a * n + x] == bottom)
                    .map(ElementId::new)
                    .collect()
            })
            .collect();

        Ok(BoundedLattice {
            name,
            labels,
            up,
            down,
            meet,
            join,
            bottom,
            top,
            complements,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, a: ElementId) -> &str {
        &self.labels[a.index()]
    }

    pub fn id_of(&self, label: &str) -> Option<ElementId> {
        self.labels.iter().position(|l| l == label).map(ElementId::new)
    }

    /// Looks up several labels at once; panics on an unknown label.
    pub fn ids(&self, labels: &[&str]) -> ElementSet {
        labels
            .iter()
            .map(|l| self.id_of(l).unwrap_or_else(|| panic!("no element `{l}` in {}", self.name)))
            .collect()
    }

    /// Looks up one label; panics if it is unknown.
    pub fn el(&self, label: &str) -> ElementId {
        self.id_of(label)
            .unwrap_or_else(|| panic!("no element `{label}` in {}", self.name))
    }

    pub fn elements(&self) -> impl Iterator<Item = ElementId> + Clone {
        (0..self.len()).map(ElementId::new)
    }

    pub fn universe(&self) -> ElementSet {
        ElementSet::full(self.len())
    }

    pub fn bottom(&self) -> ElementId {
        self.bottom
    }

    pub fn top(&self) -> ElementId {
        self.top
    }

    #[inline]
    pub fn meet(&self, a: ElementId, b: ElementId) -> ElementId {
        self.meet[a.index() * self.len() + b.index()]
    }

    #[inline]
    pub fn join(&self, a: ElementId, b: ElementId) -> ElementId {
        self.join[a.index() * self.len() + b.index()]
    }

    #[inline]
    pub fn leq(&self, a: ElementId, b: ElementId) -> bool {
        self.up[a.index()].contains(b)
    }

    pub fn lt(&self, a: ElementId, b: ElementId) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn comparable(&self, a: ElementId, b: ElementId) -> bool {
        self.leq(a, b) || self.leq(b, a)
    }

    /// `{ b : a <= b }`
    pub fn up_set(&self, a: ElementId) -> ElementSet {
        self.up[a.index()]
    }

    /// `{ b : b <= a }`
    pub fn down_set(&self, a: ElementId) -> ElementSet {
        self.down[a.index()]
    }

    /// All complements of `a`: `{ x : a v x = 1, a ^ x = 0 }`.
    pub fn complements(&self, a: ElementId) -> ElementSet {
        self.complements[a.index()]
    }

    /// Hasse diagram edges `(lower, upper)` in row-major id order.
    pub fn covers(&self) -> Vec<(ElementId, ElementId)> {
        let mut out = Vec::new();
        for a in self.elements() {
            for b in self.up_set(a).iter() {
                if b == a {
                    continue;
                }
                let between = self.up_set(a).intersection(self.down_set(b));
                if between.len() == 2 {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn atoms(&self) -> ElementSet {
        self.covers()
            .into_iter()
            .filter(|&(lo, _)| lo == self.bottom)
            .map(|(_, hi)| hi)
            .collect()
    }

    /// Modular law: `a <= b` implies `a v (x ^ b) = (a v x) ^ b`.
    pub fn is_modular(&self) -> bool {
        self.modular_violation().is_none()
    }

    /// First `(a, b, x)` breaking the modular law.
    pub fn modular_violation(&self) -> Option<(ElementId, ElementId, ElementId)> {
        for a in self.elements() {
            for b in self.up_set(a).iter() {
                for x in self.elements() {
                    if self.join(a, self.meet(x, b)) != self.meet(self.join(a, x), b) {
                        return Some((a, b, x));
                    }
                }
            }
        }
        None
    }

    pub fn is_distributive(&self) -> bool {
        self.elements().all(|x| {
            self.elements().all(|y| {
                self.elements()
                    .all(|z| self.meet(x, self.join(y, z)) == self.join(self.meet(x, y), self.meet(x, z)))
            })
        })
    }

    pub fn is_complemented(&self) -> bool {
        self.complements.iter().all(|c| !c.is_empty())
    }

    /// No two distinct members are comparable.
    pub fn is_antichain(&self, s: ElementSet) -> bool {
        s.iter()
            .all(|a| self.up_set(a).intersection(s).is_singleton_of(a))
    }

    /// Every `d` with `b <= d <= c` for members `b, c` is itself a member.
    pub fn is_convex(&self, s: ElementSet) -> bool {
        s.iter().all(|b| {
            s.iter()
                .all(|c| self.up_set(b).intersection(self.down_set(c)).is_subset(s))
        })
    }

    /// Searches for an `N5` sublattice containing both bounds.
    pub fn find_n5_through_bounds(&self) -> Option<Pentagon> {
        self.find_pentagon(self.bottom, self.top)
    }

    /// Searches for an `N5` sublattice anywhere in the lattice.
    pub fn find_n5(&self) -> Option<Pentagon> {
        for lo in self.elements() {
            for hi in self.up_set(lo).iter() {
                if let Some(p) = self.find_pentagon(lo, hi) {
                    return Some(p);
                }
            }
        }
        None
    }

    fn find_pentagon(&self, bottom: ElementId, top: ElementId) -> Option<Pentagon> {
        let inner = self
            .up_set(bottom)
            .intersection(self.down_set(top))
            .difference(ElementSet::singleton(bottom).with(top));
        for low in inner.iter() {
            for high in self.up_set(low).intersection(inner).iter() {
                if high == low {
                    continue;
                }
                for side in inner.iter() {
                    if side == low || side == high {
                        continue;
                    }
                    let ok = self.join(low, side) == top
                        && self.join(high, side) == top
                        && self.meet(low, side) == bottom
                        && self.meet(high, side) == bottom;
                    if ok {
                        return Some(Pentagon {
                            bottom,
                            low,
                            high,
                            side,
                            top,
                        });
                    }
                }
            }
        }
        None
    }

    /// True for the lattices `M_n` (n >= 2): every element other than the
    /// bounds is both an atom and a coatom.
    pub fn is_mn_shape(&self) -> bool {
        self.len() >= 4
            && self.elements().all(|x| {
                x == self.bottom
                    || x == self.top
                    || (self.down_set(x).len() == 2 && self.up_set(x).len() == 2)
            })
    }

    /// Longest chain length from the bottom to each element.
    pub fn heights(&self) -> Vec<usize> {
        order_heights(&self.up)
    }
}

fn check_size(n: usize) -> Result<()> {
    if n == 0 {
        return Err(LatticeError::NoBounds("least"));
    }
    if n > MAX_ELEMENTS {
        return Err(LatticeError::SizeCapExceeded {
            what: "lattice",
            got: n,
            cap: MAX_ELEMENTS,
        });
    }
    Ok(())
}

/// Warshall closure over up-set rows.
pub(crate) fn transitive_closure(up: &mut [ElementSet]) {
    let n = up.len();
    for k in 0..n {
        let kid = ElementId::new(k);
        let row_k = up[k];
        for row in up.iter_mut() {
            if row.contains(kid) {
                *row = row.union(row_k);
            }
        }
    }
}

/// Longest-chain height of each element in a partial order given by up-sets.
pub(crate) fn order_heights(up: &[ElementSet]) -> Vec<usize> {
    let n = up.len();
    let mut h = vec![0usize; n];
    // Elements sorted by down-set size form a linear extension.
    let mut order: Vec<usize> = (0..n).collect();
    let down_size: Vec<usize> = (0..n)
        .map(|a| (0..n).filter(|&b| up[b].contains(ElementId::new(a))).count())
        .collect();
    order.sort_by_key(|&a| down_size[a]);
    for &a in &order {
        for b in up[a].iter() {
            if b.index() != a {
                h[b.index()] = h[b.index()].max(h[a] + 1);
            }
        }
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n5() -> BoundedLattice {
        BoundedLattice::build_from_covers(
            "N5",
            &["0", "a", "b", "c", "1"],
            &[("0", "a"), ("a", "c"), ("c", "1"), ("0", "b"), ("b", "1")],
        )
        .unwrap()
    }

    fn m3() -> BoundedLattice {
        BoundedLattice::build_from_covers(
            "M3",
            &["0", "a", "b", "c", "1"],
            &[("0", "a"), ("0", "b"), ("0", "c"), ("a", "1"), ("b", "1"), ("c", "1")],
        )
        .unwrap()
    }

    fn chain3() -> BoundedLattice {
        BoundedLattice::build_from_covers("chain3", &["0", "m", "1"], &[("0", "m"), ("m", "1")]).unwrap()
    }

    #[test]
    fn n5_meets_and_joins() {
        let l = n5();
        assert_eq!(l.meet(l.el("a"), l.el("b")), l.el("0"));
        assert_eq!(l.join(l.el("a"), l.el("b")), l.el("1"));
        assert_eq!(l.join(l.el("a"), l.el("c")), l.el("c"));
        assert!(l.leq(l.el("a"), l.el("c")));
        assert!(!l.leq(l.el("b"), l.el("c")));
    }

    #[test]
    fn m3_meets_and_joins() {
        let l = m3();
        assert_eq!(l.join(l.el("a"), l.el("b")), l.el("1"));
        assert_eq!(l.meet(l.el("a"), l.el("b")), l.el("0"));
    }

    #[test]
    fn two_chain_is_forced() {
        let l = BoundedLattice::build_from_covers("2", &["0", "1"], &[("0", "1")]).unwrap();
        assert_eq!(l.meet(l.el("0"), l.el("1")), l.el("0"));
        assert_eq!(l.join(l.el("0"), l.el("1")), l.el("1"));
        assert_eq!(l.bottom(), l.el("0"));
        assert_eq!(l.top(), l.el("1"));
    }

    #[test]
    fn bounds_absorb() {
        for l in [n5(), m3(), chain3()] {
            for x in l.elements() {
                assert_eq!(l.meet(x, l.top()), x);
                assert_eq!(l.join(x, l.bottom()), x);
            }
        }
    }

    #[test]
    fn cycle_is_rejected() {
        let err = BoundedLattice::build_from_covers("c", &["0", "a", "1"], &[("0", "a"), ("a", "0"), ("a", "1")])
            .unwrap_err();
        assert!(matches!(err, LatticeError::CycleDetected(_)));
        let err = BoundedLattice::build_from_covers("c", &["0", "1"], &[("0", "0")]).unwrap_err();
        assert!(matches!(err, LatticeError::CycleDetected(_)));
    }

    #[test]
    fn missing_bounds_are_rejected() {
        let err = BoundedLattice::build_from_covers("v", &["a", "b", "1"], &[("a", "1"), ("b", "1")]).unwrap_err();
        assert_eq!(err, LatticeError::NoBounds("least"));
        let err = BoundedLattice::build_from_covers("w", &["0", "a", "b"], &[("0", "a"), ("0", "b")]).unwrap_err();
        assert_eq!(err, LatticeError::NoBounds("greatest"));
        let empty: [&str; 0] = [];
        assert!(BoundedLattice::build_from_covers("e", &empty, &[]).is_err());
    }

    #[test]
    fn trivial_lattice_is_rejected() {
        let err = BoundedLattice::build_from_covers("t", &["0"], &[]).unwrap_err();
        assert_eq!(err, LatticeError::TrivialLattice);
    }

    #[test]
    fn non_lattice_reports_first_pair() {
        // 0 < a, b < c, d < 1 with both a, b below both c, d: no join of a and b.
        let err = BoundedLattice::build_from_covers(
            "bowtie",
            &["0", "a", "b", "c", "d", "1"],
            &[
                ("0", "a"),
                ("0", "b"),
                ("a", "c"),
                ("a", "d"),
                ("b", "c"),
                ("b", "d"),
                ("c", "1"),
                ("d", "1"),
            ],
        )
        .unwrap_err();
        assert_eq!(err, LatticeError::NotALattice("a".into(), "b".into(), "least upper bound"));
    }

    #[test]
    fn label_errors() {
        let err = BoundedLattice::build_from_covers("d", &["0", "0"], &[]).unwrap_err();
        assert_eq!(err, LatticeError::DuplicateLabel("0".into()));
        let err = BoundedLattice::build_from_covers("u", &["0", "1"], &[("0", "x")]).unwrap_err();
        assert_eq!(err, LatticeError::UnknownLabel("x".into()));
    }

    #[test]
    fn structural_predicates() {
        assert!(!n5().is_modular());
        assert!(m3().is_modular());
        assert!(!m3().is_distributive());
        assert!(!n5().is_distributive());
        assert!(n5().is_complemented());
        assert!(m3().is_complemented());
        assert!(!chain3().is_complemented());
        assert!(chain3().is_distributive());
    }

    #[test]
    fn antichain_and_convexity() {
        let l = n5();
        assert!(!l.is_antichain(l.ids(&["a", "c"])));
        assert!(l.is_antichain(l.ids(&["b"])));
        assert!(l.is_antichain(ElementSet::EMPTY));
        assert!(l.is_convex(l.ids(&["a", "c"])));
        assert!(l.is_convex(l.universe()));
        assert!(!l.is_convex(l.ids(&["0", "c"])));
        let m = m3();
        assert!(m.is_antichain(m.ids(&["a", "b", "c"])));
    }

    #[test]
    fn pentagon_search() {
        let l = n5();
        let p = l.find_n5_through_bounds().unwrap();
        assert_eq!(p.as_tuple(), [l.el("0"), l.el("a"), l.el("c"), l.el("b"), l.el("1")]);
        assert!(m3().find_n5_through_bounds().is_none());
        assert!(m3().find_n5().is_none());
        assert!(chain3().find_n5().is_none());
    }

    #[test]
    fn covers_of_n5() {
        let l = n5();
        assert_eq!(l.covers().len(), 5);
        assert_eq!(l.atoms(), l.ids(&["a", "b"]));
    }

    #[test]
    fn mn_shape() {
        assert!(m3().is_mn_shape());
        assert!(!n5().is_mn_shape());
        assert!(!chain3().is_mn_shape());
    }

    #[test]
    fn from_order_validates() {
        let labels: Vec<String> = ["0", "1"].iter().map(|s| s.to_string()).collect();
        let bad = vec![ElementSet::from_bits(0b10), ElementSet::from_bits(0b10)];
        assert!(BoundedLattice::from_order("x", labels.clone(), bad).is_err());
        let good = vec![ElementSet::from_bits(0b11), ElementSet::from_bits(0b10)];
        let l = BoundedLattice::from_order("x", labels, good).unwrap();
        assert_eq!(l.len(), 2);
    }

    #[test]
    fn heights_of_n5() {
        let l = n5();
        assert_eq!(l.heights(), vec![0, 1, 1, 2, 3]);
    }
}
