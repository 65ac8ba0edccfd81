//! Deductive systems, filters, and the equivalences they induce.
//!
//! A deductive system `D` contains `1` and is closed under set-valued modus
//! ponens: `a in D` and `a -> b <= D` give `b in D`. `Theta(D)` relates `x` and
//! `y` when both `x -> y` and `y -> x` land inside `D`.

use std::collections::{HashSet, VecDeque};

use crate::connectives::{Connective, OpTable};
use crate::error::{LatticeError, Result};
use crate::lattice::BoundedLattice;
use crate::report::{kind_if, set_label, CheckKind, Outcome, PropertyReport};
use crate::set::{ElementId, ElementSet};

/// Enumeration limits. Both are element counts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Largest lattice whose subsets (deductive systems) are enumerated.
    pub max_subsets: usize,
    /// Largest lattice whose partitions (meet-congruences) are enumerated.
    pub max_partitions: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_subsets: 20,
            max_partitions: 10,
        }
    }
}

/// Limit on how many SP-> equivalences are generated before giving up.
const MAX_GENERATED_EQUIVALENCES: usize = 200_000;

/// A binary relation on elements, stored as one row set per element.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Relation {
    rows: Vec<ElementSet>,
}

impl Relation {
    pub fn empty(n: usize) -> Self {
        Relation {
            rows: vec![ElementSet::EMPTY; n],
        }
    }

    pub fn identity(n: usize) -> Self {
        Relation {
            rows: (0..n).map(|i| ElementSet::singleton(ElementId::new(i))).collect(),
        }
    }

    pub fn full(n: usize) -> Self {
        Relation {
            rows: vec![ElementSet::full(n); n],
        }
    }

    /// The equivalence whose classes are given by `class[i]`.
    pub fn from_classes(class: &[usize]) -> Self {
        let n = class.len();
        let rows = (0..n)
            .map(|i| (0..n).filter(|&j| class[j] == class[i]).map(ElementId::new).collect())
            .collect();
        Relation { rows }
    }

    /// The equivalence whose classes are the given sets; elements not listed
    /// are singletons.
    pub fn from_blocks(n: usize, blocks: &[ElementSet]) -> Self {
        let mut r = Relation::identity(n);
        for &b in blocks {
            for x in b.iter() {
                r.rows[x.index()] = r.rows[x.index()].union(b);
            }
        }
        r
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn contains(&self, a: ElementId, b: ElementId) -> bool {
        self.rows[a.index()].contains(b)
    }

    pub fn insert(&mut self, a: ElementId, b: ElementId) {
        self.rows[a.index()].insert(b);
    }

    /// `{ y : (a, y) in R }`
    pub fn row(&self, a: ElementId) -> ElementSet {
        self.rows[a.index()]
    }

    pub fn pair_count(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    pub fn is_subset(&self, other: &Relation) -> bool {
        self.rows.iter().zip(&other.rows).all(|(a, b)| a.is_subset(*b))
    }

    pub fn is_reflexive(&self) -> bool {
        self.rows
            .iter()
            .enumerate()
            .all(|(i, r)| r.contains(ElementId::new(i)))
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows.iter().enumerate().all(|(i, r)| {
            r.iter()
                .all(|j| self.rows[j.index()].contains(ElementId::new(i)))
        })
    }

    pub fn is_transitive(&self) -> bool {
        self.rows
            .iter()
            .all(|r| r.iter().all(|j| self.rows[j.index()].is_subset(*r)))
    }

    pub fn is_equivalence(&self) -> bool {
        self.is_reflexive() && self.is_symmetric() && self.is_transitive()
    }

    /// Distinct rows; the classes when the relation is an equivalence.
    pub fn classes(&self) -> Vec<ElementSet> {
        let mut out: Vec<ElementSet> = Vec::new();
        for &r in &self.rows {
            if !out.contains(&r) {
                out.push(r);
            }
        }
        out
    }

    /// The class of `top`: `{ x : (x, top) in R }`.
    pub fn kernel(&self, top: ElementId) -> ElementSet {
        self.rows
            .iter()
            .enumerate()
            .filter(|(_, r)| r.contains(top))
            .map(|(i, _)| ElementId::new(i))
            .collect()
    }
}

/// `[1]Phi` for the lattice's top.
pub fn kernel(l: &BoundedLattice, phi: &Relation) -> ElementSet {
    phi.kernel(l.top())
}

impl BoundedLattice {
    pub fn is_deductive_system(&self, d: ElementSet) -> bool {
        let imp = OpTable::new(self, Connective::Implies);
        is_ds_with(self, &imp, d)
    }

    /// Upward closed and nonempty.
    pub fn is_order_filter(&self, f: ElementSet) -> bool {
        !f.is_empty() && f.iter().all(|a| self.up_set(a).is_subset(f))
    }

    /// An order filter closed under meets.
    pub fn is_filter(&self, f: ElementSet) -> bool {
        self.is_order_filter(f) && f.iter().all(|a| f.iter().all(|b| f.contains(self.meet(a, b))))
    }

    pub fn theta(&self, d: ElementSet) -> Relation {
        let imp = OpTable::new(self, Connective::Implies);
        theta_with(self, &imp, d)
    }

    pub fn is_meet_congruence(&self, phi: &Relation) -> bool {
        phi.is_equivalence()
            && self.elements().all(|a| {
                phi.row(a).iter().all(|b| {
                    self.elements()
                        .all(|c| phi.contains(self.meet(a, c), self.meet(b, c)))
                })
            })
    }

    /// `(a, b) in Phi` implies `a+ x b+ <= Phi`.
    pub fn has_sp_plus(&self, phi: &Relation) -> bool {
        self.elements().all(|a| {
            phi.row(a).iter().all(|b| {
                let pb = self.complements(b);
                self.complements(a).iter().all(|x| pb.is_subset(phi.row(x)))
            })
        })
    }

    /// `(a, b) in Phi` implies `(a -> c) x (b -> c) <= Phi` for all `c`.
    pub fn has_sp_implies(&self, phi: &Relation) -> bool {
        let imp = OpTable::new(self, Connective::Implies);
        has_sp_implies_with(self, &imp, phi)
    }

    pub fn is_compatible_ds(&self, d: ElementSet) -> bool {
        let imp = OpTable::new(self, Connective::Implies);
        is_ds_with(self, &imp, d) && compatible_with(self, &imp, d)
    }
}

fn is_ds_with(l: &BoundedLattice, imp: &OpTable, d: ElementSet) -> bool {
    d.contains(l.top())
        && d.iter()
            .all(|a| l.elements().all(|b| !imp.get(a, b).is_subset(d) || d.contains(b)))
}

fn theta_with(l: &BoundedLattice, imp: &OpTable, d: ElementSet) -> Relation {
    let mut r = Relation::empty(l.len());
    for x in l.elements() {
        for y in l.elements() {
            if imp.get(x, y).is_subset(d) && imp.get(y, x).is_subset(d) {
                r.insert(x, y);
            }
        }
    }
    r
}

fn has_sp_implies_with(l: &BoundedLattice, imp: &OpTable, phi: &Relation) -> bool {
    l.elements().all(|a| {
        phi.row(a).iter().all(|b| {
            l.elements().all(|c| {
                let right = imp.get(b, c);
                imp.get(a, c).iter().all(|x| right.is_subset(phi.row(x)))
            })
        })
    })
}

/// The two extra closure conditions of a compatible deductive system.
/// `x -> S` for a set `S` is the union of `x -> y` over `y in S`.
fn compatible_with(l: &BoundedLattice, imp: &OpTable, d: ElementSet) -> bool {
    // good[x] = { y : x -> y <= D }, so x -> S <= D iff S <= good[x].
    let good: Vec<ElementSet> = l
        .elements()
        .map(|x| l.elements().filter(|&y| imp.get(x, y).is_subset(d)).collect())
        .collect();
    let inside = |s: ElementSet| s.is_subset(d);

    for a in l.elements() {
        for b in l.elements() {
            let ab = imp.get(a, b);
            if !inside(ab) {
                continue;
            }
            let g = ab
                .iter()
                .fold(l.universe(), |acc, x| acc.intersection(good[x.index()]));
            for c in l.elements() {
                for dd in l.elements() {
                    let cd = imp.get(c, dd);
                    if cd.is_subset(g) && !inside(cd) {
                        return false;
                    }
                }
            }
            if inside(imp.get(b, a)) {
                for c in l.elements() {
                    let bc = imp.get(b, c);
                    if !imp.get(a, c).iter().all(|x| bc.is_subset(good[x.index()])) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Every nonempty upward-closed subset.
pub fn order_filters(l: &BoundedLattice) -> Vec<ElementSet> {
    // Visit elements top-down; an element may join only once its whole
    // up-set is already in.
    let mut order: Vec<ElementId> = l.elements().collect();
    order.sort_by_key(|&a| std::cmp::Reverse(l.down_set(a).len()));
    let mut out = Vec::new();
    fn go(l: &BoundedLattice, order: &[ElementId], i: usize, cur: ElementSet, out: &mut Vec<ElementSet>) {
        if i == order.len() {
            if !cur.is_empty() {
                out.push(cur);
            }
            return;
        }
        let a = order[i];
        go(l, order, i + 1, cur, out);
        let strict_up = l.up_set(a).difference(ElementSet::singleton(a));
        if strict_up.is_subset(cur) {
            go(l, order, i + 1, cur.with(a), out);
        }
    }
    go(l, &order, 0, ElementSet::EMPTY, &mut out);
    out.sort();
    out
}

/// The deductive systems of a lattice ordered by inclusion.
#[derive(Clone, Debug)]
pub struct DsLattice {
    /// Sorted by size, then members. The first entry is `{1}`, the last `L`.
    pub systems: Vec<ElementSet>,
    meet: Vec<usize>,
    join: Vec<usize>,
}

impl DsLattice {
    fn new(l: &BoundedLattice, systems: Vec<ElementSet>) -> Self {
        let k = systems.len();
        let idx = |s: ElementSet| systems.binary_search(&s).ok();
        let mut meet = vec![0; k * k];
        let mut join = vec![k - 1; k * k];
        for i in 0..k {
            for j in 0..k {
                let u = systems[i].union(systems[j]);
                let smallest = systems
                    .iter()
                    .filter(|s| u.is_subset(**s))
                    .fold(l.universe(), |acc, s| acc.intersection(*s));
                join[i * k + j] = idx(smallest).expect("deductive systems are intersection closed");
                meet[i * k + j] =
                    idx(systems[i].intersection(systems[j])).expect("deductive systems are intersection closed");
            }
        }
        DsLattice { systems, meet, join }
    }

    pub fn len(&self) -> usize {
        self.systems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.systems.is_empty()
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.systems[i].is_subset(self.systems[j])
    }

    pub fn meet(&self, i: usize, j: usize) -> usize {
        self.meet[i * self.len() + j]
    }

    pub fn join(&self, i: usize, j: usize) -> usize {
        self.join[i * self.len() + j]
    }

    pub fn index_of(&self, s: ElementSet) -> Option<usize> {
        self.systems.binary_search(&s).ok()
    }

    /// The systems as a [`BoundedLattice`] labelled `D0, D1, ...`.
    pub fn to_lattice(&self, name: &str) -> Result<BoundedLattice> {
        let labels = (0..self.len()).map(|i| format!("D{i}")).collect();
        let up = (0..self.len())
            .map(|i| {
                (0..self.len())
                    .filter(|&j| self.leq(i, j))
                    .map(ElementId::new)
                    .collect()
            })
            .collect();
        BoundedLattice::from_order(name, labels, up)
    }
}

fn check_subset_cap(l: &BoundedLattice, caps: &Caps) -> Result<()> {
    if l.len() > caps.max_subsets {
        return Err(LatticeError::SizeCapExceeded {
            what: "subset enumeration",
            got: l.len(),
            cap: caps.max_subsets,
        });
    }
    Ok(())
}

fn check_partition_cap(l: &BoundedLattice, caps: &Caps) -> Result<()> {
    if l.len() > caps.max_partitions {
        return Err(LatticeError::SizeCapExceeded {
            what: "partition enumeration",
            got: l.len(),
            cap: caps.max_partitions,
        });
    }
    Ok(())
}

/// All deductive systems. Only order filters containing `1` are tested, since
/// every deductive system is one.
pub fn all_deductive_systems(l: &BoundedLattice, caps: &Caps) -> Result<DsLattice> {
    check_subset_cap(l, caps)?;
    let imp = OpTable::new(l, Connective::Implies);
    let systems: Vec<ElementSet> = order_filters(l)
        .into_iter()
        .filter(|&d| is_ds_with(l, &imp, d))
        .collect();
    Ok(DsLattice::new(l, systems))
}

/// Checks that the deductive systems of `M_n` are exactly
/// `A u {1}` for proper `A <= atoms` together with `M_n`, and that this map
/// is an order isomorphism from the powerset of the atoms.
pub fn ds_lattice_is_boolean_2n(l: &BoundedLattice, caps: &Caps) -> Result<bool> {
    if !l.is_mn_shape() {
        return Ok(false);
    }
    let ded = all_deductive_systems(l, caps)?;
    let atoms: Vec<ElementId> = l.atoms().iter().collect();
    let n = atoms.len();
    if ded.len() != 1 << n {
        return Ok(false);
    }
    let all_atoms = l.atoms();
    let image = |mask: usize| -> ElementSet {
        let a: ElementSet = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| atoms[i]).collect();
        if a == all_atoms {
            l.universe()
        } else {
            a.with(l.top())
        }
    };
    let images: Vec<ElementSet> = (0..1usize << n).map(image).collect();
    if images.iter().any(|s| ded.index_of(*s).is_none()) {
        return Ok(false);
    }
    let distinct: HashSet<ElementSet> = images.iter().copied().collect();
    if distinct.len() != images.len() {
        return Ok(false);
    }
    for a in 0..1usize << n {
        for b in 0..1usize << n {
            if (a & !b == 0) != images[a].is_subset(images[b]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Disjoint-set forest used to close equivalences.
struct Partition {
    parent: Vec<usize>,
}

impl Partition {
    fn new(n: usize) -> Self {
        Partition {
            parent: (0..n).collect(),
        }
    }

    fn from_relation(phi: &Relation) -> Self {
        let mut p = Partition::new(phi.size());
        for a in 0..phi.size() {
            for b in phi.rows[a].iter() {
                p.union(a, b.index());
            }
        }
        p
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut x = x;
        while self.parent[x] != r {
            let next = self.parent[x];
            self.parent[x] = r;
            x = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }

    fn merge_set(&mut self, s: ElementSet) -> bool {
        let mut changed = false;
        if let Some(first) = s.first() {
            for x in s.iter() {
                changed |= self.union(first.index(), x.index());
            }
        }
        changed
    }

    fn blocks(&mut self) -> Vec<ElementSet> {
        let n = self.parent.len();
        let mut by_root = vec![ElementSet::EMPTY; n];
        for x in 0..n {
            let r = self.find(x);
            by_root[r].insert(ElementId::new(x));
        }
        by_root.into_iter().filter(|b| !b.is_empty()).collect()
    }

    fn into_relation(mut self) -> Relation {
        let n = self.parent.len();
        Relation::from_blocks(n, &self.blocks())
    }
}

/// Smallest meet-compatible equivalence containing `phi`.
pub fn meet_congruence_closure(l: &BoundedLattice, phi: &Relation) -> Relation {
    let mut p = Partition::from_relation(phi);
    loop {
        let mut changed = false;
        for block in p.blocks() {
            for c in l.elements() {
                changed |= p.merge_set(l.set_meet_el(block, c));
            }
        }
        if !changed {
            return p.into_relation();
        }
    }
}

/// Smallest equivalence containing `phi` with the substitution property for
/// `->`: for each class `K` and each `c`, the union of `a -> c` over `a in K`
/// must fall in one class.
pub fn sp_implies_closure(l: &BoundedLattice, imp: &OpTable, phi: &Relation) -> Relation {
    let mut p = Partition::from_relation(phi);
    loop {
        let mut changed = false;
        for block in p.blocks() {
            for c in l.elements() {
                let u = block
                    .iter()
                    .fold(ElementSet::EMPTY, |acc, a| acc.union(imp.get(a, c)));
                changed |= p.merge_set(u);
            }
        }
        if !changed {
            return p.into_relation();
        }
    }
}

/// Every meet-congruence. Partitions are grown element by element along a
/// linear extension (bottom first) and cut as soon as two related assigned
/// elements have unrelated assigned meets.
pub fn all_meet_congruences(l: &BoundedLattice, caps: &Caps) -> Result<Vec<Relation>> {
    check_partition_cap(l, caps)?;
    let n = l.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&a| l.down_set(ElementId::new(a)).len());
    let mut class = vec![usize::MAX; n];
    let mut out = Vec::new();

    fn consistent(l: &BoundedLattice, class: &[usize], assigned: &[usize]) -> bool {
        for (i, &x) in assigned.iter().enumerate() {
            for &y in &assigned[i + 1..] {
                if class[x] != class[y] {
                    continue;
                }
                for c in l.elements() {
                    let mx = l.meet(ElementId::new(x), c).index();
                    let my = l.meet(ElementId::new(y), c).index();
                    if class[mx] != usize::MAX && class[my] != usize::MAX && class[mx] != class[my] {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn go(
        l: &BoundedLattice,
        order: &[usize],
        k: usize,
        used: usize,
        class: &mut Vec<usize>,
        out: &mut Vec<Relation>,
    ) {
        if k == order.len() {
            let r = Relation::from_classes(class);
            if l.is_meet_congruence(&r) {
                out.push(r);
            }
            return;
        }
        let x = order[k];
        for c in 0..=used {
            class[x] = c;
            if consistent(l, class, &order[..=k]) {
                go(l, order, k + 1, used.max(c + 1), class, out);
            }
        }
        class[x] = usize::MAX;
    }

    go(l, &order, 0, 0, &mut class, &mut out);
    Ok(out)
}

/// Some meet-congruence whose kernel is exactly `d`.
///
/// The meet-congruence generated by collapsing `d` is below every
/// meet-congruence with kernel `d`, so such a congruence exists iff the
/// generated one already has kernel `d`.
pub fn find_meet_congruence_with_kernel(l: &BoundedLattice, d: ElementSet) -> Option<Relation> {
    if !d.contains(l.top()) {
        return None;
    }
    let seed = Relation::from_blocks(l.len(), &[d]);
    let phi = meet_congruence_closure(l, &seed);
    (phi.kernel(l.top()) == d).then_some(phi)
}

/// Every equivalence with the substitution property for `->`, generated
/// exactly as closures of pairs.
pub fn sp_implies_equivalences(l: &BoundedLattice) -> Result<Vec<Relation>> {
    let imp = OpTable::new(l, Connective::Implies);
    let start = sp_implies_closure(l, &imp, &Relation::identity(l.len()));
    let mut seen: HashSet<Relation> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start.clone());
    queue.push_back(start);
    let mut out = Vec::new();
    while let Some(phi) = queue.pop_front() {
        for a in l.elements() {
            for b in l.elements().skip(a.index() + 1) {
                if phi.contains(a, b) {
                    continue;
                }
                let mut grown = phi.clone();
                grown.insert(a, b);
                let next = sp_implies_closure(l, &imp, &grown);
                if seen.insert(next.clone()) {
                    if seen.len() > MAX_GENERATED_EQUIVALENCES {
                        return Err(LatticeError::SizeCapExceeded {
                            what: "SP-> equivalence generation",
                            got: seen.len(),
                            cap: MAX_GENERATED_EQUIVALENCES,
                        });
                    }
                    queue.push_back(next);
                }
            }
        }
        out.push(phi);
    }
    out.sort_by_key(|r| r.pair_count());
    Ok(out)
}

fn first_failing<T>(items: &[T], mut ok: impl FnMut(&T) -> bool, label: impl Fn(&T) -> String) -> Outcome {
    match items.iter().find(|t| !ok(t)) {
        Some(t) => Err(vec![label(t)]),
        None => Ok(()),
    }
}

fn partition_label(l: &BoundedLattice, phi: &Relation) -> String {
    let parts: Vec<String> = phi.classes().into_iter().map(|c| set_label(l, c)).collect();
    parts.join("")
}

/// Deductive systems versus (order) filters: every system is an order
/// filter; a system closed under internal `->` is a filter; on modular
/// lattices every filter is a system.
pub fn check_filters(l: &BoundedLattice, caps: &Caps) -> PropertyReport {
    let mut r = PropertyReport::for_lattice(l);
    let ded = match all_deductive_systems(l, caps) {
        Ok(d) => d,
        Err(e) => {
            r.skip("filters", e.to_string());
            return r;
        }
    };
    let imp = OpTable::new(l, Connective::Implies);
    let kind = kind_if(l.is_complemented());
    r.record(
        "filters.system_is_order_filter",
        kind,
        first_failing(&ded.systems, |&d| l.is_order_filter(d), |&d| set_label(l, d)),
    );
    r.record(
        "filters.internally_closed_system_is_filter",
        kind,
        first_failing(
            &ded.systems,
            |&d| {
                let closed = d.iter().all(|x| d.iter().all(|y| imp.get(x, y).is_subset(d)));
                !closed || l.is_filter(d)
            },
            |&d| set_label(l, d),
        ),
    );
    let filters: Vec<ElementSet> = order_filters(l).into_iter().filter(|&f| l.is_filter(f)).collect();
    r.record(
        "filters.filter_is_system",
        kind_if(l.is_complemented() && l.is_modular()),
        first_failing(&filters, |&f| is_ds_with(l, &imp, f), |&f| set_label(l, f)),
    );
    r
}

/// Kernels of meet-congruences are deductive systems `D` with
/// `Theta(D) <= Phi`. Asserted on complemented modular lattices.
pub fn check_meet_congruence_kernels(l: &BoundedLattice, caps: &Caps) -> PropertyReport {
    let mut r = PropertyReport::for_lattice(l);
    let congruences = match all_meet_congruences(l, caps) {
        Ok(c) => c,
        Err(e) => {
            r.skip("meet_congruence", e.to_string());
            return r;
        }
    };
    let imp = OpTable::new(l, Connective::Implies);
    let kind = kind_if(l.is_complemented() && l.is_modular());
    r.record(
        "meet_congruence.kernel_is_system",
        kind,
        first_failing(&congruences, |phi| is_ds_with(l, &imp, phi.kernel(l.top())), |phi| partition_label(l, phi)),
    )
    .note = Some(format!("{} meet-congruences", congruences.len()));
    r.record(
        "meet_congruence.theta_of_kernel_below",
        kind,
        first_failing(
            &congruences,
            |phi| theta_with(l, &imp, phi.kernel(l.top())).is_subset(phi),
            |phi| partition_label(l, phi),
        ),
    );
    r
}

/// For every equivalence with SP->: it has SP+, its kernel is a deductive
/// system, and it lies below `Theta` of its kernel.
pub fn check_sp_equivalences(l: &BoundedLattice) -> PropertyReport {
    let mut r = PropertyReport::for_lattice(l);
    let eqs = match sp_implies_equivalences(l) {
        Ok(e) => e,
        Err(e) => {
            r.skip("sp_implies", e.to_string());
            return r;
        }
    };
    check_sp_equivalence_list(l, &eqs, &mut r);
    r
}

/// The same three statements over a caller-supplied list of equivalences.
pub fn check_sp_equivalence_list(l: &BoundedLattice, eqs: &[Relation], r: &mut PropertyReport) {
    let imp = OpTable::new(l, Connective::Implies);
    let kind = kind_if(l.is_complemented());
    let sp: Vec<&Relation> = eqs
        .iter()
        .filter(|phi| phi.is_equivalence() && has_sp_implies_with(l, &imp, phi))
        .collect();
    r.record(
        "sp_implies.has_sp_plus",
        kind,
        first_failing(&sp, |phi| l.has_sp_plus(phi), |phi| partition_label(l, phi)),
    )
    .note = Some(format!("{} SP-> equivalences", sp.len()));
    r.record(
        "sp_implies.kernel_is_system",
        kind,
        first_failing(&sp, |phi| is_ds_with(l, &imp, phi.kernel(l.top())), |phi| partition_label(l, phi)),
    );
    r.record(
        "sp_implies.below_theta_of_kernel",
        kind,
        first_failing(
            &sp,
            |phi| phi.is_subset(&theta_with(l, &imp, phi.kernel(l.top()))),
            |phi| partition_label(l, phi),
        ),
    );
}

/// Facts about `Theta` and compatible systems: `Theta(D)` is reflexive and
/// symmetric; for compatible `D` it is an SP-> equivalence with kernel `D`;
/// systems and compatible systems are intersection closed.
pub fn check_compatible_systems(l: &BoundedLattice, caps: &Caps) -> PropertyReport {
    let mut r = PropertyReport::for_lattice(l);
    let ded = match all_deductive_systems(l, caps) {
        Ok(d) => d,
        Err(e) => {
            r.skip("theta", e.to_string());
            return r;
        }
    };
    let imp = OpTable::new(l, Connective::Implies);
    let kind = kind_if(l.is_complemented());
    let thetas: Vec<(ElementSet, Relation)> = ded
        .systems
        .iter()
        .map(|&d| (d, theta_with(l, &imp, d)))
        .collect();

    r.record(
        "theta.reflexive_symmetric",
        kind,
        first_failing(&thetas, |(_, t)| t.is_reflexive() && t.is_symmetric(), |(d, _)| set_label(l, *d)),
    );
    let transitive = thetas.iter().filter(|(_, t)| t.is_transitive()).count();
    r.record("theta.transitive", CheckKind::Observed, Ok(()))
        .note = Some(format!("{transitive} of {} systems give a transitive Theta", thetas.len()));

    let compatible: Vec<&(ElementSet, Relation)> = thetas
        .iter()
        .filter(|(d, _)| compatible_with(l, &imp, *d))
        .collect();
    r.record(
        "compatible.theta_is_sp_equivalence",
        kind,
        first_failing(
            &compatible,
            |(_, t)| t.is_equivalence() && has_sp_implies_with(l, &imp, t),
            |(d, _)| set_label(l, *d),
        ),
    )
    .note = Some(format!("{} compatible systems", compatible.len()));
    r.record(
        "compatible.kernel_of_theta",
        kind,
        first_failing(&compatible, |(d, t)| t.kernel(l.top()) == *d, |(d, _)| set_label(l, *d)),
    );

    let systems = &ded.systems;
    let mut closed: Outcome = Ok(());
    'sys: for &a in systems {
        for &b in systems {
            if ded.index_of(a.intersection(b)).is_none() {
                closed = Err(vec![set_label(l, a), set_label(l, b)]);
                break 'sys;
            }
        }
    }
    r.record("systems.intersection_closed", kind, closed);
    let bounds_ok = systems.first() == Some(&ElementSet::singleton(l.top())) && systems.last() == Some(&l.universe());
    r.record(
        "systems.bounds",
        kind,
        if bounds_ok { Ok(()) } else { Err(vec!["bottom is not {1} or top is not L".into()]) },
    );
    let compat_sets: Vec<ElementSet> = compatible.iter().map(|(d, _)| *d).collect();
    let mut cclosed: Outcome = Ok(());
    'c: for &a in &compat_sets {
        for &b in &compat_sets {
            let m = a.intersection(b);
            if !(is_ds_with(l, &imp, m) && compatible_with(l, &imp, m)) {
                cclosed = Err(vec![set_label(l, a), set_label(l, b)]);
                break 'c;
            }
        }
    }
    r.record("compatible.intersection_closed", kind, cclosed);
    r.record(
        "compatible.contains_carrier",
        kind,
        if compat_sets.contains(&l.universe()) { Ok(()) } else { Err(vec!["L".into()]) },
    );
    r
}
