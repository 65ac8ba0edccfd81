//! Set-valued implication and conjunction built from the complement operator.
//!
//! ```text
//! a -> b = a+ v (a ^ b)        A -> B = A+ v (A ^ B)
//! a (.) b = b ^ (a v b+)       A (.) B = B ^ (A v B+)
//! ```
//!
//! Both always return an [`ElementSet`]; statements such as `a -> b = 1` are
//! read as `a -> b = {1}`.

use std::fmt;

use serde::Serialize;

use crate::lattice::BoundedLattice;
use crate::report::{forall_elements, forall_pairs, forall_triples, kind_if, PropertyReport};
use crate::set::{ElementId, ElementSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Connective {
    Implies,
    Odot,
}

impl Connective {
    pub fn symbol(self) -> &'static str {
        match self {
            Connective::Implies => "→",
            Connective::Odot => "⊙",
        }
    }
}

impl fmt::Display for Connective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Connective::Implies => "implies",
            Connective::Odot => "odot",
        })
    }
}

impl std::str::FromStr for Connective {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "implies" | "->" | "→" => Ok(Connective::Implies),
            "odot" | "⊙" => Ok(Connective::Odot),
            other => Err(format!("unknown connective `{other}` (expected implies or odot)")),
        }
    }
}

impl BoundedLattice {
    pub fn implies(&self, a: ElementId, b: ElementId) -> ElementSet {
        self.set_join_el(self.complements(a), self.meet(a, b))
    }

    pub fn implies_sets(&self, a: ElementSet, b: ElementSet) -> ElementSet {
        self.set_join(self.plus(a), self.set_meet(a, b))
    }

    /// `a -> B`, the union of `a -> x` over `x in B`.
    pub fn implies_into(&self, a: ElementId, b: ElementSet) -> ElementSet {
        b.iter()
            .fold(ElementSet::EMPTY, |acc, x| acc.union(self.implies(a, x)))
    }

    pub fn odot(&self, a: ElementId, b: ElementId) -> ElementSet {
        self.set_meet_el(self.set_join_el(self.complements(b), a), b)
    }

    pub fn odot_sets(&self, a: ElementSet, b: ElementSet) -> ElementSet {
        self.set_meet(b, self.set_join(a, self.plus(b)))
    }

    pub fn apply(&self, op: Connective, a: ElementId, b: ElementId) -> ElementSet {
        match op {
            Connective::Implies => self.implies(a, b),
            Connective::Odot => self.odot(a, b),
        }
    }

    /// No `y < a` lies in `a++`.
    pub fn is_minimal_in_dblplus(&self, a: ElementId) -> bool {
        self.double_plus_el(a)
            .intersection(self.down_set(a))
            .is_singleton_of(a)
    }
}

/// Full operation table; row is the left operand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpTable {
    pub op: Connective,
    n: usize,
    entries: Vec<ElementSet>,
}

impl OpTable {
    pub fn new(l: &BoundedLattice, op: Connective) -> Self {
        let entries = l
            .elements()
            .flat_map(|a| l.elements().map(move |b| (a, b)))
            .map(|(a, b)| l.apply(op, a, b))
            .collect();
        OpTable {
            op,
            n: l.len(),
            entries,
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, a: ElementId, b: ElementId) -> ElementSet {
        self.entries[a.index() * self.n + b.index()]
    }
}

pub fn op_table(l: &BoundedLattice, op: Connective) -> OpTable {
    OpTable::new(l, op)
}

/// Residuation: `a (.) b <= c` iff `a <= b -> c`, over all triples.
/// Asserted on complemented modular lattices.
pub fn check_adjointness(l: &BoundedLattice) -> PropertyReport {
    let mut r = PropertyReport::for_lattice(l);
    let imp = OpTable::new(l, Connective::Implies);
    let od = OpTable::new(l, Connective::Odot);
    let outcome = forall_triples(l, |a, b, c| {
        l.set_le(od.get(a, b), ElementSet::singleton(c)) == l.set_le(ElementSet::singleton(a), imp.get(b, c))
    });
    r.record("adjointness", kind_if(l.is_complemented() && l.is_modular()), outcome);
    r
}

/// How `->` relates to `^` via `<=1`.
pub fn check_implies_meet(l: &BoundedLattice) -> PropertyReport {
    let mut r = PropertyReport::for_lattice(l);
    let imp = OpTable::new(l, Connective::Implies);
    let kind = kind_if(l.is_complemented() && l.is_modular());
    let s = ElementSet::singleton;
    r.record(
        "implies_meet.le1_gives_meet_below",
        kind,
        forall_triples(l, |a, b, c| !l.set_le1(s(a), imp.get(b, c)) || l.leq(l.meet(a, b), c)),
    );
    r.record(
        "implies_meet.meet_below_iff_le1",
        kind,
        forall_triples(l, |a, b, c| {
            l.leq(l.meet(a, b), c) == l.set_le1(s(l.meet(a, b)), imp.get(b, c))
        }),
    );
    r.record(
        "implies_meet.mn_residuation",
        kind_if(l.is_mn_shape()),
        forall_triples(l, |a, b, c| l.leq(l.meet(a, b), c) == l.set_le1(s(a), imp.get(b, c))),
    );
    r
}

/// Basic laws of `->` on complemented lattices, plus the minimality criterion.
pub fn check_implication_laws(l: &BoundedLattice) -> PropertyReport {
    let mut r = PropertyReport::for_lattice(l);
    let imp = OpTable::new(l, Connective::Implies);
    let kind = kind_if(l.is_complemented());
    let one = ElementSet::singleton(l.top());
    let is_one = |s: ElementSet| s == one;
    let dp: Vec<ElementSet> = l.elements().map(|a| l.double_plus_el(a)).collect();

    r.record(
        "implies.bottom_and_top",
        kind,
        forall_elements(l, |a| {
            imp.get(a, l.bottom()) == l.complements(a) && imp.get(l.top(), a).is_singleton_of(a)
        }),
    );
    r.record(
        "implies.order_gives_top",
        kind,
        forall_pairs(l, |a, b| !l.leq(a, b) || is_one(imp.get(a, b))),
    );
    r.record(
        "implies.top_iff_meet_in_double",
        kind,
        forall_pairs(l, |a, b| is_one(imp.get(a, b)) == dp[a.index()].contains(l.meet(a, b))),
    );
    r.record(
        "implies.complement_gives_plus",
        kind,
        forall_pairs(l, |a, b| !l.complements(a).contains(b) || imp.get(a, b) == l.complements(a)),
    );
    r.record(
        "implies.monotone_right",
        kind,
        forall_triples(l, |a, b, c| {
            !l.leq(b, c) || (l.set_le1(imp.get(a, b), imp.get(a, c)) && l.set_le2(imp.get(a, b), imp.get(a, c)))
        }),
    );
    let meet_closed = |s: ElementSet| s.iter().all(|x| s.iter().all(|y| s.contains(l.meet(x, y))));
    r.record(
        "implies.meet_of_consequences",
        kind,
        forall_triples(l, |a, b, c| {
            !(is_one(imp.get(a, b)) && is_one(imp.get(a, c)) && meet_closed(dp[a.index()]))
                || is_one(imp.get(a, l.meet(b, c)))
        }),
    );
    r.record(
        "implies.double_inclusion_symmetry",
        kind,
        forall_pairs(l, |a, b| {
            !(dp[a.index()].is_subset(dp[b.index()]) && is_one(imp.get(a, b))) || is_one(imp.get(b, a))
        }),
    );
    r.record(
        "implies.minimality",
        kind,
        forall_elements(l, |a| {
            let criterion = l.elements().all(|x| is_one(imp.get(a, x)) == l.leq(a, x));
            criterion == l.is_minimal_in_dblplus(a)
        }),
    );
    r.record(
        "implies.top_only_when_below",
        crate::report::CheckKind::Observed,
        forall_pairs(l, |a, b| !is_one(imp.get(a, b)) || l.leq(a, b)),
    );
    r
}

/// First `(a, b)` with `a -> b = {1}` although `a` is not below `b`.
pub fn top_without_order(l: &BoundedLattice) -> Option<(ElementId, ElementId)> {
    let one = ElementSet::singleton(l.top());
    for a in l.elements() {
        for b in l.elements() {
            if !l.leq(a, b) && l.implies(a, b) == one {
                return Some((a, b));
            }
        }
    }
    None
}

/// Modus ponens, modus tollens and absorption laws on complemented modular
/// lattices.
pub fn check_modus_laws(l: &BoundedLattice) -> PropertyReport {
    let mut r = PropertyReport::for_lattice(l);
    let imp = OpTable::new(l, Connective::Implies);
    let kind = kind_if(l.is_complemented() && l.is_modular());
    let s = ElementSet::singleton;
    let plus = |x| l.complements(x);

    r.record(
        "modus.ponens",
        kind,
        forall_pairs(l, |a, b| l.set_meet(s(a), imp.get(a, b)).is_singleton_of(l.meet(a, b))),
    );
    r.record(
        "modus.tollens",
        kind,
        forall_pairs(l, |a, b| {
            !l.set_le(plus(a), plus(b)) || l.set_meet(imp.get(a, b), plus(b)) == plus(a)
        }),
    );
    r.record(
        "modus.member_absorbs",
        kind,
        forall_pairs(l, |a, b| imp.get(a, b).iter().all(|c| imp.get(a, c) == imp.get(a, b))),
    );
    r.record(
        "modus.nested",
        kind,
        forall_pairs(l, |a, b| l.implies_sets(s(a), imp.get(a, b)) == imp.get(a, b)),
    );
    r.record(
        "modus.plus_below",
        kind,
        forall_pairs(l, |a, b| !l.set_le(plus(a), s(b)) || imp.get(a, b).is_singleton_of(b)),
    );
    r
}

/// Laws of `(.)`; the last two need modularity.
pub fn check_odot_laws(l: &BoundedLattice) -> PropertyReport {
    let mut r = PropertyReport::for_lattice(l);
    let od = OpTable::new(l, Connective::Odot);
    let complemented = l.is_complemented();
    let kind = kind_if(complemented);
    let modular_kind = kind_if(complemented && l.is_modular());
    let s = ElementSet::singleton;
    let (zero, one) = (l.bottom(), l.top());

    r.record(
        "odot.bottom",
        kind,
        forall_elements(l, |a| od.get(zero, a).is_singleton_of(zero) && od.get(a, zero).is_singleton_of(zero)),
    );
    r.record(
        "odot.top",
        kind,
        forall_elements(l, |a| od.get(one, a).is_singleton_of(a) && od.get(a, one).is_singleton_of(a)),
    );
    r.record(
        "odot.bounds",
        kind,
        forall_pairs(l, |a, b| {
            let v = od.get(a, b);
            l.set_le(s(l.meet(a, b)), v) && l.set_le(v, s(b)) && (!l.leq(b, a) || v.is_singleton_of(b))
        }),
    );
    r.record(
        "odot.idempotent",
        kind,
        forall_elements(l, |a| od.get(a, a).is_singleton_of(a)),
    );
    r.record(
        "odot.monotone_left",
        kind,
        forall_triples(l, |a, b, c| {
            !l.leq(a, b) || (l.set_le1(od.get(a, c), od.get(b, c)) && l.set_le2(od.get(a, c), od.get(b, c)))
        }),
    );
    r.record(
        "odot.below_iff_fixed",
        modular_kind,
        forall_pairs(l, |a, b| l.leq(a, b) == od.get(a, b).is_singleton_of(a)),
    );
    r.record(
        "odot.right_absorb",
        modular_kind,
        forall_pairs(l, |a, b| l.odot_sets(od.get(a, b), s(b)) == od.get(a, b)),
    );
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{make_fig2, make_m3, make_mn, make_n5};

    #[test]
    fn implication_examples_on_fig2() {
        let l = make_fig2();
        let e = |x| l.el(x);
        assert_eq!(l.implies(e("a"), e("b")), l.ids(&["h", "i", "j"]));
        assert!(l.implies(e("a"), e("f")).is_singleton_of(l.top()));
        assert!(l.implies(e("a"), e("g")).is_singleton_of(l.top()));
        assert_eq!(l.implies(e("a"), e("h")), l.complements(e("a")));
        assert!(l.implies(e("f"), e("e")).is_singleton_of(e("e")));
        assert_eq!(l.implies(e("g"), e("h")), l.complements(e("a")));
    }

    #[test]
    fn implication_bounds() {
        for l in [make_n5(), make_m3(), make_fig2()] {
            for a in l.elements() {
                assert!(l.implies(l.top(), a).is_singleton_of(a));
                assert_eq!(l.implies(a, l.bottom()), l.complements(a));
            }
        }
    }

    #[test]
    fn implication_on_sets() {
        let l = make_n5();
        assert_eq!(l.implies_sets(l.universe(), l.ids(&["a"])), ElementSet::EMPTY);
        assert_eq!(l.implies_sets(l.ids(&["a", "c"]), l.ids(&["b"])), l.ids(&["b"]));
        for a in l.elements() {
            for b in l.elements() {
                assert_eq!(l.implies_sets(ElementSet::singleton(a), ElementSet::singleton(b)), l.implies(a, b));
                assert_eq!(l.odot_sets(ElementSet::singleton(a), ElementSet::singleton(b)), l.odot(a, b));
            }
        }
    }

    #[test]
    fn odot_examples() {
        let m = make_m3();
        assert_eq!(m.odot(m.el("a"), m.el("b")), m.ids(&["0", "b"]));
        assert_eq!(m.odot_sets(m.odot(m.el("a"), m.el("b")), m.ids(&["b"])), m.ids(&["0", "b"]));
        let n = make_n5();
        assert!(n.odot(n.el("a"), n.el("c")).is_singleton_of(n.el("c")));
        let f = make_fig2();
        assert_eq!(f.odot_sets(f.ids(&["a"]), f.ids(&["h"])), f.ids(&["0", "b"]));
    }

    #[test]
    fn minimality_in_double_plus() {
        let l = make_n5();
        assert!(!l.is_minimal_in_dblplus(l.el("c")));
        assert!(l.is_minimal_in_dblplus(l.el("a")));
        let m = make_m3();
        assert!(m.elements().all(|a| m.is_minimal_in_dblplus(a)));
    }

    #[test]
    fn converse_of_order_gives_top_fails_on_n5() {
        let l = make_n5();
        assert_eq!(top_without_order(&l), Some((l.el("c"), l.el("a"))));
        assert!(top_without_order(&make_m3()).is_none());
    }

    #[test]
    fn law_suites_hold() {
        for l in [make_n5(), make_m3(), make_fig2(), make_mn(4).unwrap()] {
            for r in [
                check_implication_laws(&l),
                check_modus_laws(&l),
                check_odot_laws(&l),
                check_adjointness(&l),
                check_implies_meet(&l),
            ] {
                assert!(r.all_asserted_hold(), "{r}");
            }
        }
    }

    #[test]
    fn connective_parsing() {
        assert_eq!("odot".parse::<Connective>().unwrap(), Connective::Odot);
        assert_eq!("implies".parse::<Connective>().unwrap(), Connective::Implies);
        assert!("and".parse::<Connective>().is_err());
    }
}
