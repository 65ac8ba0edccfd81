//! The complement operator `+` on elements and subsets, the Galois connection
//! it induces, and the ortholattice of closed sets.
//!
//! For a subset `A`, `A+` is the set of common complements of all members of
//! `A`, so `{}+ = L` and `L+ = {}`. A set is closed when `A++ = A`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::lattice::BoundedLattice;
use crate::report::{
    el_labels, forall_elements, forall_pairs, kind_if, set_label, CheckKind, Outcome, PropertyReport,
};
use crate::set::{ElementId, ElementSet};

impl BoundedLattice {
    /// Common complements of every member of `a`.
    pub fn plus(&self, a: ElementSet) -> ElementSet {
        a.iter()
            .fold(self.universe(), |acc, x| acc.intersection(self.complements(x)))
    }

    pub fn double_plus(&self, a: ElementSet) -> ElementSet {
        self.plus(self.plus(a))
    }

    /// `{a}++`
    pub fn double_plus_el(&self, a: ElementId) -> ElementSet {
        self.plus(self.complements(a))
    }

    pub fn is_closed(&self, a: ElementSet) -> bool {
        self.double_plus(a) == a
    }

    /// True iff `x++ = {x}` for every element.
    pub fn satisfies_dblplus_identity(&self) -> bool {
        self.dblplus_identity_witness().is_none()
    }

    /// First element with `x++ != {x}`.
    pub fn dblplus_identity_witness(&self) -> Option<ElementId> {
        self.elements().find(|&a| !self.double_plus_el(a).is_singleton_of(a))
    }

    /// True iff `x -> x++` is injective.
    pub fn dblplus_injective(&self) -> bool {
        self.dblplus_collision().is_none()
    }

    /// First pair `a < b` (by id) with `a++ = b++`.
    pub fn dblplus_collision(&self) -> Option<(ElementId, ElementId)> {
        let images: Vec<ElementSet> = self.elements().map(|a| self.double_plus_el(a)).collect();
        for a in self.elements() {
            for b in self.elements().skip(a.index() + 1) {
                if images[a.index()] == images[b.index()] {
                    return Some((a, b));
                }
            }
        }
        None
    }

    /// Some `b` in `a++` with `b++ = {b}`.
    ///
    /// Follows a strictly descending chain `a++ > a1++ > a2++ > ...` of closures,
    /// picking each `a_{k+1}` from `a_k++ \ {a_k}`. If the chain stalls (which
    /// needs a non-injective `x -> x++`) the remaining candidates are scanned
    /// directly.
    pub fn find_closed_element_in_dblplus(&self, a: ElementId) -> Option<ElementId> {
        let start = self.double_plus_el(a);
        let mut cur = a;
        let mut cur_closure = start;
        loop {
            if cur_closure.is_singleton_of(cur) {
                return Some(cur);
            }
            let next = cur_closure
                .difference(ElementSet::singleton(cur))
                .iter()
                .map(|b| (b, self.double_plus_el(b)))
                .find(|&(_, c)| c.is_subset(cur_closure) && c != cur_closure);
            match next {
                Some((b, c)) => {
                    cur = b;
                    cur_closure = c;
                }
                None => break,
            }
        }
        start
            .iter()
            .find(|&b| self.double_plus_el(b).is_singleton_of(b))
    }
}

/// The closed subsets of a lattice with the induced ortholattice operations.
#[derive(Clone, Debug)]
pub struct ClosureReport {
    /// Closed sets sorted by size, then members.
    pub closed_sets: Vec<ElementSet>,
    join: Vec<usize>,
    meet: Vec<usize>,
    orthocomplement: Vec<usize>,
    /// Ortholattice axioms that failed to hold, if any.
    pub axiom_failures: Vec<String>,
}

impl ClosureReport {
    pub fn len(&self) -> usize {
        self.closed_sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.closed_sets.is_empty()
    }

    pub fn index_of(&self, s: ElementSet) -> Option<usize> {
        self.closed_sets.binary_search(&s).ok()
    }

    /// `(S u T)++`
    pub fn join(&self, i: usize, j: usize) -> usize {
        self.join[i * self.len() + j]
    }

    /// `S n T`
    pub fn meet(&self, i: usize, j: usize) -> usize {
        self.meet[i * self.len() + j]
    }

    /// `S+`
    pub fn orthocomplement(&self, i: usize) -> usize {
        self.orthocomplement[i]
    }
}

/// Enumerates the closed sets as the intersection closure of
/// `{ a+ : a in L } u { L }` (every `A+` is `n_{a in A} a+`), then tabulates
/// join, meet and orthocomplement and checks the ortholattice axioms.
pub fn closure_lattice(l: &BoundedLattice) -> ClosureReport {
    let mut family = vec![l.universe()];
    let mut frontier = vec![l.universe()];
    let gens: Vec<ElementSet> = l.elements().map(|a| l.complements(a)).collect();
    let mut seen = std::collections::HashSet::new();
    seen.insert(l.universe());
    while let Some(s) = frontier.pop() {
        for &g in &gens {
            let t = s.intersection(g);
            if seen.insert(t) {
                family.push(t);
                frontier.push(t);
            }
        }
    }
    family.sort();

    let k = family.len();
    let idx = |s: ElementSet| family.binary_search(&s).ok();
    let mut failures = Vec::new();
    let mut join = vec![0; k * k];
    let mut meet = vec![0; k * k];
    let mut orth = vec![0; k];

    for (i, &s) in family.iter().enumerate() {
        if !l.is_closed(s) {
            failures.push(format!("{} is not closed", set_label(l, s)));
        }
        match idx(l.plus(s)) {
            Some(j) => orth[i] = j,
            None => failures.push(format!("{}+ is not in the family", set_label(l, s))),
        }
        for (j, &t) in family.iter().enumerate() {
            let jn = l.double_plus(s.union(t));
            let mt = s.intersection(t);
            match (idx(jn), idx(mt)) {
                (Some(a), Some(b)) => {
                    join[i * k + j] = a;
                    meet[i * k + j] = b;
                }
                _ => failures.push(format!(
                    "join/meet of {} and {} leaves the family",
                    set_label(l, s),
                    set_label(l, t)
                )),
            }
        }
    }

    if failures.is_empty() {
        let bottom = idx(ElementSet::EMPTY);
        let top = idx(l.universe());
        if bottom.is_none() || top.is_none() {
            failures.push("family lacks the empty set or the whole carrier".into());
        }
        for i in 0..k {
            let s = family[i];
            let o = orth[i];
            if orth[o] != i {
                failures.push(format!("orthocomplement is not an involution at {}", set_label(l, s)));
            }
            if !s.is_disjoint(family[o]) || Some(meet[i * k + o]) != bottom {
                failures.push(format!("{} meets its orthocomplement", set_label(l, s)));
            }
            if Some(join[i * k + o]) != top {
                failures.push(format!("{} joined with its orthocomplement is not L", set_label(l, s)));
            }
            for j in 0..k {
                let t = family[j];
                if s.is_subset(t) && !family[orth[j]].is_subset(family[o]) {
                    failures.push(format!("orthocomplement not antitone on {} <= {}", set_label(l, s), set_label(l, t)));
                }
                let jn = family[join[i * k + j]];
                let mt = family[meet[i * k + j]];
                let upper = family.iter().filter(|u| s.is_subset(**u) && t.is_subset(**u));
                let lower = family.iter().filter(|u| u.is_subset(s) && u.is_subset(t));
                let lub_ok = s.is_subset(jn) && t.is_subset(jn) && upper.clone().all(|u| jn.is_subset(*u));
                let glb_ok = mt.is_subset(s) && mt.is_subset(t) && lower.clone().all(|u| u.is_subset(mt));
                if !lub_ok || !glb_ok {
                    failures.push(format!(
                        "join/meet of {} and {} is not the lub/glb",
                        set_label(l, s),
                        set_label(l, t)
                    ));
                }
            }
        }
    }

    ClosureReport {
        closed_sets: family,
        join,
        meet,
        orthocomplement: orth,
        axiom_failures: failures,
    }
}

/// Which subsets the Galois-law check visits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GaloisScope {
    /// Every subset and every pair of subsets.
    Exhaustive,
    /// Seeded random subsets and pairs.
    Sampled { pairs: usize, seed: u64 },
}

impl GaloisScope {
    /// Exhaustive up to 8 elements (65,536 pairs), else 10,000 seeded pairs.
    pub fn for_size(n: usize) -> Self {
        if n <= 8 {
            GaloisScope::Exhaustive
        } else {
            GaloisScope::Sampled {
                pairs: 10_000,
                seed: 0x6a10_15ed,
            }
        }
    }
}

/// The closure-operator laws of `+`, on every lattice.
pub fn check_galois_laws(l: &BoundedLattice, scope: GaloisScope) -> PropertyReport {
    let mut r = PropertyReport::for_lattice(l);
    let n = l.len();
    let full = l.universe().bits();

    let singles: Box<dyn Iterator<Item = ElementSet>> = match scope {
        GaloisScope::Exhaustive => Box::new(ElementSet::all_subsets(n)),
        GaloisScope::Sampled { pairs, seed } if n > 16 => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 1);
            Box::new((0..pairs).map(move |_| ElementSet::from_bits(rng.gen::<u64>() & full)))
        }
        GaloisScope::Sampled { .. } => Box::new(ElementSet::all_subsets(n)),
    };
    let pairs: Box<dyn Iterator<Item = (ElementSet, ElementSet)>> = match scope {
        GaloisScope::Exhaustive => Box::new(
            ElementSet::all_subsets(n).flat_map(move |a| ElementSet::all_subsets(n).map(move |b| (a, b))),
        ),
        GaloisScope::Sampled { pairs, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            Box::new((0..pairs).map(move |_| {
                (
                    ElementSet::from_bits(rng.gen::<u64>() & full),
                    ElementSet::from_bits(rng.gen::<u64>() & full),
                )
            }))
        }
    };

    let mut extensive: Outcome = Ok(());
    let mut triple: Outcome = Ok(());
    let mut disjoint: Outcome = Ok(());
    for a in singles {
        let p = l.plus(a);
        let pp = l.plus(p);
        if extensive.is_ok() && !a.is_subset(pp) {
            extensive = Err(vec![set_label(l, a)]);
        }
        if triple.is_ok() && l.plus(pp) != p {
            triple = Err(vec![set_label(l, a)]);
        }
        if disjoint.is_ok() && !p.is_disjoint(pp) {
            disjoint = Err(vec![set_label(l, a)]);
        }
    }

    let mut antitone: Outcome = Ok(());
    let mut exchange: Outcome = Ok(());
    let sampled = matches!(scope, GaloisScope::Sampled { .. });
    for (a, b) in pairs {
        let (pa, pb) = (l.plus(a), l.plus(b));
        // Random pairs are rarely nested, so sampled runs test A <= A u B too.
        let nested = if sampled { a.union(b) } else { b };
        if antitone.is_ok() && a.is_subset(nested) && !l.plus(nested).is_subset(pa) {
            antitone = Err(vec![set_label(l, a), set_label(l, nested)]);
        }
        if exchange.is_ok() && a.is_subset(pb) != b.is_subset(pa) {
            exchange = Err(vec![set_label(l, a), set_label(l, b)]);
        }
    }

    r.record("galois.extensive", CheckKind::Asserted, extensive);
    r.record("galois.antitone", CheckKind::Asserted, antitone);
    r.record("galois.triple_plus", CheckKind::Asserted, triple);
    r.record("galois.exchange", CheckKind::Asserted, exchange);
    r.record("galois.disjoint", CheckKind::Asserted, disjoint);
    r
}

/// Element-level facts about `+`: membership in `a++`, `a+++ = a+`, the
/// antichain/pentagon equivalence, convexity, injectivity of `x -> x++`, and
/// the descending-chain fixed point. Asserted on complemented lattices.
pub fn check_complement_structure(l: &BoundedLattice) -> PropertyReport {
    let mut r = PropertyReport::for_lattice(l);
    let kind = kind_if(l.is_complemented());

    r.record(
        "plus.self_in_double",
        kind,
        forall_elements(l, |a| l.double_plus_el(a).contains(a)),
    );
    r.record(
        "plus.triple_is_single",
        kind,
        forall_elements(l, |a| l.plus(l.double_plus_el(a)) == l.complements(a)),
    );

    let bad_antichain = l.elements().find(|&x| !l.is_antichain(l.complements(x)));
    let pentagon = l.find_n5_through_bounds();
    let iff = match (bad_antichain, pentagon) {
        (None, None) | (Some(_), Some(_)) => Ok(()),
        (Some(x), None) => Err(vec![format!("{}+ not an antichain, no pentagon", l.label(x))]),
        (None, Some(p)) => {
            let mut w = el_labels(l, &p.as_tuple());
            w.push("pentagon but all x+ antichains".into());
            Err(w)
        }
    };
    r.record("plus.antichain_iff_no_n5_through_bounds", kind, iff);

    r.record(
        "plus.convex",
        kind,
        forall_elements(l, |a| l.is_convex(l.complements(a))),
    );

    let cond = match (l.dblplus_collision(), l.dblplus_identity_witness()) {
        (Some((a, b)), None) => Err(el_labels(l, &[a, b])),
        _ => Ok(()),
    };
    r.record("plus.non_injective_breaks_identity", kind, cond);

    let injective = l.dblplus_injective();
    r.record(
        "plus.closed_point_in_double",
        kind,
        forall_elements(l, |a| {
            if !injective || l.double_plus_el(a).is_singleton_of(a) {
                return true;
            }
            match l.find_closed_element_in_dblplus(a) {
                Some(b) => l.double_plus_el(a).contains(b) && l.double_plus_el(b).is_singleton_of(b),
                None => false,
            }
        }),
    );
    r
}

/// On complemented modular lattices `a+`, `A+` (A nonempty) and `a++` are
/// antichains.
pub fn check_modular_antichains(l: &BoundedLattice, closed: &ClosureReport) -> PropertyReport {
    let mut r = PropertyReport::for_lattice(l);
    let kind = kind_if(l.is_complemented() && l.is_modular());
    r.record(
        "plus.element_antichain",
        kind,
        forall_elements(l, |a| l.is_antichain(l.complements(a))),
    );
    // Closed sets other than L are exactly the A+ with A nonempty.
    let outcome = match closed
        .closed_sets
        .iter()
        .find(|&&s| s != l.universe() && !l.is_antichain(s))
    {
        Some(&s) => Err(vec![set_label(l, s)]),
        None => Ok(()),
    };
    r.record("plus.set_antichain", kind, outcome);
    r.record(
        "plus.double_antichain",
        kind,
        forall_elements(l, |a| l.is_antichain(l.double_plus_el(a))),
    );
    r
}

/// The three order-reversal statements, each observed, plus the asserted
/// implications `join_of_plus => antitone` and `antitone <=> plus_of_join`.
pub fn check_order_reversal(l: &BoundedLattice) -> PropertyReport {
    let mut r = PropertyReport::for_lattice(l);
    let kind = kind_if(l.is_complemented());
    let plus = |x| l.complements(x);

    let s1 = forall_pairs(l, |x, y| l.set_le1(l.set_join(plus(x), plus(y)), plus(l.meet(x, y))));
    let s2 = forall_pairs(l, |x, y| !l.leq(x, y) || l.set_le1(plus(y), plus(x)));
    let s3 = forall_pairs(l, |x, y| l.set_le1(plus(l.join(x, y)), l.set_meet(plus(x), plus(y))));
    let (h1, h2, h3) = (s1.is_ok(), s2.is_ok(), s3.is_ok());

    r.record("order_reversal.join_of_plus_below_plus_of_meet", CheckKind::Observed, s1);
    r.record("order_reversal.antitone", CheckKind::Observed, s2);
    r.record("order_reversal.plus_of_join_below_meet_of_plus", CheckKind::Observed, s3);
    let w = |ok: bool| -> Outcome {
        if ok {
            Ok(())
        } else {
            Err(vec![format!("join_of_plus={h1} antitone={h2} plus_of_join={h3}")])
        }
    };
    r.record("order_reversal.first_implies_antitone", kind, w(!h1 || h2));
    r.record("order_reversal.antitone_iff_third", kind, w(h2 == h3));
    r
}

/// `x++ = x` for all `x` iff for every `x` and `y in x++` some `z in y+`
/// has `(x v y) ^ z = 0` or `(x ^ y) v z = 1`. Asserted on complemented
/// modular lattices.
pub fn check_dblplus_characterization(l: &BoundedLattice) -> PropertyReport {
    let mut r = PropertyReport::for_lattice(l);
    let identity = match l.dblplus_identity_witness() {
        Some(a) => Err(el_labels(l, &[a])),
        None => Ok(()),
    };
    let mut condition: Outcome = Ok(());
    'outer: for x in l.elements() {
        for y in l.double_plus_el(x).iter() {
            let found = l.complements(y).iter().any(|z| {
                l.meet(l.join(x, y), z) == l.bottom() || l.join(l.meet(x, y), z) == l.top()
            });
            if !found {
                condition = Err(el_labels(l, &[x, y]));
                break 'outer;
            }
        }
    }
    let agree = identity.is_ok() == condition.is_ok();
    r.record("dblplus.identity", CheckKind::Observed, identity);
    r.record("dblplus.witness_condition", CheckKind::Observed, condition);
    r.record(
        "dblplus.characterization",
        kind_if(l.is_complemented() && l.is_modular()),
        if agree { Ok(()) } else { Err(vec!["identity and witness condition disagree".into()]) },
    );
    r
}

/// Records the ortholattice verdict of [`closure_lattice`].
pub fn check_closure_lattice(l: &BoundedLattice, closed: &ClosureReport) -> PropertyReport {
    let mut r = PropertyReport::for_lattice(l);
    let outcome = if closed.axiom_failures.is_empty() {
        Ok(())
    } else {
        Err(closed.axiom_failures.iter().take(3).cloned().collect())
    };
    r.record("closure.ortholattice", CheckKind::Asserted, outcome)
        .note = Some(format!("{} closed sets", closed.len()));
    r
}
