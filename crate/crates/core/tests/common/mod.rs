//! Slow, direct oracles. Everything here is recomputed from the meet and join
//! tables without the library's caches or pruning.

#![allow(dead_code)]

use std::collections::HashSet;

use latkit::{BoundedLattice, ElementId, ElementSet};

pub fn id(i: usize) -> ElementId {
    ElementId::new(i)
}

/// `{ x : a v x = 1 and a ^ x = 0 for every a in A }`
pub fn naive_plus(l: &BoundedLattice, a: ElementSet) -> ElementSet {
    l.elements()
        .filter(|&x| a.iter().all(|y| l.join(x, y) == l.top() && l.meet(x, y) == l.bottom()))
        .collect()
}

pub fn naive_complements(l: &BoundedLattice, a: ElementId) -> ElementSet {
    naive_plus(l, ElementSet::singleton(a))
}

/// `{ x v (a ^ b) : x a complement of a }`
pub fn naive_implies(l: &BoundedLattice, a: ElementId, b: ElementId) -> ElementSet {
    let m = l.meet(a, b);
    naive_complements(l, a).iter().map(|x| l.join(x, m)).collect()
}

/// `{ b ^ (a v x) : x a complement of b }`
pub fn naive_odot(l: &BoundedLattice, a: ElementId, b: ElementId) -> ElementSet {
    naive_complements(l, b).iter().map(|x| l.meet(b, l.join(a, x))).collect()
}

fn subsets(n: usize) -> impl Iterator<Item = ElementSet> {
    (0u64..1 << n).map(ElementSet::from_bits)
}

/// Every `A` with `A++ = A`, by scanning all `2^n` subsets.
pub fn brute_closed_sets(l: &BoundedLattice) -> Vec<ElementSet> {
    let mut out: Vec<ElementSet> = subsets(l.len())
        .filter(|&a| naive_plus(l, naive_plus(l, a)) == a)
        .collect();
    out.sort();
    out
}

/// Every subset containing `1` and closed under set-valued modus ponens,
/// by scanning all `2^n` subsets.
pub fn brute_deductive_systems(l: &BoundedLattice) -> Vec<ElementSet> {
    let n = l.len();
    let imp: Vec<Vec<ElementSet>> = (0..n)
        .map(|a| (0..n).map(|b| naive_implies(l, id(a), id(b))).collect())
        .collect();
    let mut out: Vec<ElementSet> = subsets(n)
        .filter(|d| {
            d.contains(l.top())
                && d.iter()
                    .all(|a| (0..n).all(|b| !imp[a.index()][b].is_subset(*d) || d.contains(id(b))))
        })
        .collect();
    out.sort();
    out
}

/// Restricted growth strings: every partition of `0..n`.
pub fn all_partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(k: usize, n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == n {
            out.push(cur.clone());
            return;
        }
        for c in 0..=max {
            cur.push(c);
            go(k + 1, n, max.max(c + 1), cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, 0, &mut Vec::new(), &mut out);
    out
}

/// `(a, b) in Phi` implies `(a -> c) x (b -> c) <= Phi` for every `c`.
pub fn naive_sp_implies(l: &BoundedLattice, class: &[usize]) -> bool {
    let n = l.len();
    (0..n).all(|a| {
        (0..n).filter(|&b| class[a] == class[b]).all(|b| {
            (0..n).all(|c| {
                let ra = naive_implies(l, id(a), id(c));
                let rb = naive_implies(l, id(b), id(c));
                ra.iter().all(|x| rb.iter().all(|y| class[x.index()] == class[y.index()]))
            })
        })
    })
}

pub fn naive_meet_compatible(l: &BoundedLattice, class: &[usize]) -> bool {
    let n = l.len();
    (0..n).all(|a| {
        (0..n).filter(|&b| class[a] == class[b]).all(|b| {
            (0..n).all(|c| class[l.meet(id(a), id(c)).index()] == class[l.meet(id(b), id(c)).index()])
        })
    })
}

/// Order of the middle of an `n`-element bounded poset as a bit vector of
/// strict pairs `i < j` over `0..m`.
type Middle = Vec<Vec<bool>>;

fn permutations(m: usize) -> Vec<Vec<usize>> {
    fn go(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                go(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; m], &mut out);
    out
}

/// Smallest relabelled bit string over all permutations.
fn min_key(rel: &Middle, perms: &[Vec<usize>]) -> Vec<bool> {
    let m = rel.len();
    perms
        .iter()
        .map(|p| {
            let mut key = Vec::with_capacity(m * m);
            for i in 0..m {
                for j in 0..m {
                    key.push(rel[p[i]][p[j]]);
                }
            }
            key
        })
        .min()
        .unwrap_or_default()
}

/// Adds the bounds and checks every pair has a least upper bound and a
/// greatest lower bound by direct search.
fn bounded_is_lattice(rel: &Middle) -> bool {
    let m = rel.len();
    let n = m + 2;
    let le = |a: usize, b: usize| -> bool {
        a == b || a == 0 || b == n - 1 || (a > 0 && b > 0 && a < n - 1 && b < n - 1 && rel[a - 1][b - 1])
    };
    for a in 0..n {
        for b in 0..n {
            let ub: Vec<usize> = (0..n).filter(|&u| le(a, u) && le(b, u)).collect();
            if !ub.iter().any(|&u| ub.iter().all(|&v| le(u, v))) {
                return false;
            }
            let lb: Vec<usize> = (0..n).filter(|&u| le(u, a) && le(u, b)).collect();
            if !lb.iter().any(|&u| lb.iter().all(|&v| le(v, u))) {
                return false;
            }
        }
    }
    true
}

/// Isomorphism keys of every `n`-element lattice, found by trying every
/// strict relation on the `n - 2` middle points.
pub fn naive_lattice_keys(n: usize) -> HashSet<Vec<bool>> {
    let m = n - 2;
    let pairs: Vec<(usize, usize)> = (0..m).flat_map(|i| (0..m).map(move |j| (i, j))).filter(|(i, j)| i != j).collect();
    let perms = permutations(m);
    let mut keys = HashSet::new();
    for bits in 0u64..1 << pairs.len() {
        let mut rel = vec![vec![false; m]; m];
        for (k, &(i, j)) in pairs.iter().enumerate() {
            rel[i][j] = bits >> k & 1 == 1;
        }
        let antisymmetric = (0..m).all(|i| (0..m).all(|j| !(rel[i][j] && rel[j][i])));
        let transitive =
            (0..m).all(|i| (0..m).all(|j| (0..m).all(|k| !(rel[i][j] && rel[j][k]) || rel[i][k])));
        if antisymmetric && transitive && bounded_is_lattice(&rel) {
            keys.insert(min_key(&rel, &perms));
        }
    }
    keys
}

/// The same key for a lattice whose bottom is id 0 and top is id `n-1`.
pub fn lattice_key(l: &BoundedLattice) -> Vec<bool> {
    let n = l.len();
    assert!(l.bottom() == id(0) && l.top() == id(n - 1));
    let m = n - 2;
    let rel: Middle = (0..m)
        .map(|i| (0..m).map(|j| i != j && l.leq(id(i + 1), id(j + 1))).collect())
        .collect();
    min_key(&rel, &permutations(m))
}

/// Relabels `l` by `perm` (new id `perm[i]` for old id `i`) with fresh labels.
pub fn relabel(l: &BoundedLattice, perm: &[usize]) -> BoundedLattice {
    let n = l.len();
    let labels: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let mut covers = Vec::new();
    for (lo, hi) in l.covers() {
        covers.push((labels[perm[lo.index()]].clone(), labels[perm[hi.index()]].clone()));
    }
    BoundedLattice::build_from_covers("relabelled", &labels, &covers).unwrap()
}

/// Splits a table row such as `"1 b ac b 0"`.
pub fn cells(row: &str) -> Vec<&str> {
    row.split_whitespace().collect()
}
