//! Canonical forms of finite partial orders.
//!
//! Colour refinement on up/down neighbourhoods followed by
//! individualisation of the first non-singleton class. Each discrete colouring
//! orders the elements; the smallest resulting order code is the canonical
//! form.

use std::collections::BTreeMap;

use crate::lattice::BoundedLattice;
use crate::set::{ElementId, ElementSet};

/// Isomorphism-invariant code of a partial order. Equal codes mean
/// isomorphic orders.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    n: usize,
    // For each position k and each earlier position i, two bits:
    // p[i] <= p[k] and p[k] <= p[i].
    code: Vec<u8>,
}

impl CanonicalForm {
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }
}

/// Canonical form of a lattice's order.
pub fn canonical_form(l: &BoundedLattice) -> CanonicalForm {
    let up: Vec<ElementSet> = l.elements().map(|a| l.up_set(a)).collect();
    canonical_form_of_order(&up)
}

pub fn is_isomorphic(a: &BoundedLattice, b: &BoundedLattice) -> bool {
    a.len() == b.len() && canonical_form(a) == canonical_form(b)
}

/// Canonical form of a partial order given by up-sets (`up[a]` holds every
/// `b` with `a <= b`, including `a`).
pub fn canonical_form_of_order(up: &[ElementSet]) -> CanonicalForm {
    let n = up.len();
    let down: Vec<ElementSet> = (0..n)
        .map(|a| (0..n).filter(|&b| up[b].contains(ElementId::new(a))).map(ElementId::new).collect())
        .collect();
    let order = Order { up, down: &down };
    let mut best: Option<Vec<u8>> = None;
    order.search(order.initial_colours(), &mut best);
    CanonicalForm {
        n,
        code: best.unwrap_or_default(),
    }
}

struct Order<'a> {
    up: &'a [ElementSet],
    down: &'a [ElementSet],
}

impl Order<'_> {
    fn n(&self) -> usize {
        self.up.len()
    }

    fn strict_up(&self, a: usize) -> ElementSet {
        let mut s = self.up[a];
        s.remove(ElementId::new(a));
        s
    }

    fn strict_down(&self, a: usize) -> ElementSet {
        let mut s = self.down[a];
        s.remove(ElementId::new(a));
        s
    }

    fn initial_colours(&self) -> Vec<usize> {
        let heights = crate::lattice::order_heights(self.up);
        let keys: Vec<[usize; 5]> = (0..self.n())
            .map(|a| {
                let su = self.strict_up(a);
                let sd = self.strict_down(a);
                let upper_covers = su
                    .iter()
                    .filter(|&b| self.strict_down(b.index()).intersection(su).is_empty())
                    .count();
                let lower_covers = sd
                    .iter()
                    .filter(|&b| self.strict_up(b.index()).intersection(sd).is_empty())
                    .count();
                [heights[a], sd.len(), su.len(), lower_covers, upper_covers]
            })
            .collect();
        rank(&keys)
    }

    /// Splits colour classes by the multisets of colours strictly above and
    /// strictly below until nothing changes.
    fn refine(&self, mut colours: Vec<usize>) -> Vec<usize> {
        let mut classes = count_classes(&colours);
        loop {
            let keys: Vec<(usize, Vec<usize>, Vec<usize>)> = (0..self.n())
                .map(|a| {
                    let mut above: Vec<usize> = self.strict_up(a).iter().map(|b| colours[b.index()]).collect();
                    let mut below: Vec<usize> = self.strict_down(a).iter().map(|b| colours[b.index()]).collect();
                    above.sort_unstable();
                    below.sort_unstable();
                    (colours[a], above, below)
                })
                .collect();
            colours = rank(&keys);
            let next = count_classes(&colours);
            if next == classes {
                return colours;
            }
            classes = next;
        }
    }

    fn search(&self, colours: Vec<usize>, best: &mut Option<Vec<u8>>) {
        let colours = self.refine(colours);
        let n = self.n();
        let mut members: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (a, &c) in colours.iter().enumerate() {
            members.entry(c).or_default().push(a);
        }
        match members.iter().find(|(_, m)| m.len() > 1) {
            None => {
                let mut perm: Vec<usize> = (0..n).collect();
                perm.sort_by_key(|&a| colours[a]);
                let code = self.code(&perm);
                if best.as_ref().is_none_or(|b| code < *b) {
                    *best = Some(code);
                }
            }
            Some((&c, cell)) => {
                for &v in cell {
                    // v keeps colour c and sorts ahead of the rest of its class.
                    let individualised: Vec<usize> = colours
                        .iter()
                        .enumerate()
                        .map(|(a, &col)| 2 * col + usize::from(col == c && a != v))
                        .collect();
                    self.search(individualised, best);
                }
            }
        }
    }

    fn code(&self, perm: &[usize]) -> Vec<u8> {
        let mut code = Vec::with_capacity(perm.len() * perm.len().saturating_sub(1) / 2);
        for k in 0..perm.len() {
            for &pi in &perm[..k] {
                let below = self.up[pi].contains(ElementId::new(perm[k]));
                let above = self.up[perm[k]].contains(ElementId::new(pi));
                code.push(2 * u8::from(below) + u8::from(above));
            }
        }
        code
    }
}

fn rank<K: Ord + Clone>(keys: &[K]) -> Vec<usize> {
    let mut distinct: Vec<K> = keys.to_vec();
    distinct.sort();
    distinct.dedup();
    keys.iter()
        .map(|k| distinct.binary_search(k).expect("key present"))
        .collect()
}

fn count_classes(colours: &[usize]) -> usize {
    let mut c = colours.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{direct_product, make_boolean, make_chain, make_fig2, make_m3, make_mn, make_n5};

    #[test]
    fn distinguishes_five_element_lattices() {
        let n5 = make_n5();
        let m3 = make_m3();
        let c5 = make_chain(5).unwrap();
        assert!(!is_isomorphic(&n5, &m3));
        assert!(!is_isomorphic(&n5, &c5));
        assert!(!is_isomorphic(&m3, &c5));
        assert!(is_isomorphic(&m3, &make_mn(3).unwrap()));
    }

    #[test]
    fn relabelled_pentagon_matches() {
        let other = BoundedLattice::build_from_covers(
            "n5'",
            &["top", "x", "y", "z", "bot"],
            &[("bot", "z"), ("z", "top"), ("bot", "x"), ("x", "y"), ("y", "top")],
        )
        .unwrap();
        assert_eq!(canonical_form(&other), canonical_form(&make_n5()));
    }

    #[test]
    fn products() {
        let c2 = make_chain(2).unwrap();
        let sq = direct_product(&c2, &c2).unwrap();
        assert!(is_isomorphic(&sq, &make_boolean(2).unwrap()));
        let fig = direct_product(&make_mn(4).unwrap(), &c2).unwrap();
        assert!(is_isomorphic(&fig, &make_fig2()));
        let b3 = direct_product(&sq, &c2).unwrap();
        assert!(is_isomorphic(&b3, &make_boolean(3).unwrap()));
    }

    #[test]
    fn antichain_and_chain_orders() {
        let anti = vec![ElementSet::singleton(ElementId::new(0)), ElementSet::singleton(ElementId::new(1))];
        let chain = vec![ElementSet::full(2), ElementSet::singleton(ElementId::new(1))];
        let rev = vec![ElementSet::singleton(ElementId::new(0)), ElementSet::full(2)];
        assert_ne!(canonical_form_of_order(&anti), canonical_form_of_order(&chain));
        assert_eq!(canonical_form_of_order(&chain), canonical_form_of_order(&rev));
        assert!(canonical_form_of_order(&[]).is_empty());
    }
}
