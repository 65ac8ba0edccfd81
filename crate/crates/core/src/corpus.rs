//! Named lattices, products, and exhaustive enumeration of small lattices.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::canon::{canonical_form_of_order, CanonicalForm};
use crate::error::{LatticeError, Result};
use crate::lattice::BoundedLattice;
use crate::set::{ElementId, ElementSet, MAX_ELEMENTS};

/// Largest `n` accepted by [`enumerate_lattices`].
pub const ENUMERATION_CAP: usize = 7;

/// Predicate tags carried by corpus entries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Tag {
    Complemented,
    Modular,
    Distributive,
    DblplusIdentity,
}

impl Tag {
    pub const ALL: [Tag; 4] = [Tag::Complemented, Tag::Modular, Tag::Distributive, Tag::DblplusIdentity];

    pub fn holds(self, l: &BoundedLattice) -> bool {
        match self {
            Tag::Complemented => l.is_complemented(),
            Tag::Modular => l.is_modular(),
            Tag::Distributive => l.is_distributive(),
            Tag::DblplusIdentity => l.satisfies_dblplus_identity(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Tag::Complemented => "complemented",
            Tag::Modular => "modular",
            Tag::Distributive => "distributive",
            Tag::DblplusIdentity => "dblplus_identity",
        }
    }
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Tag {
    type Err = LatticeError;

    fn from_str(s: &str) -> Result<Self> {
        Tag::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| LatticeError::InvalidParameter(format!("unknown tag '{s}'")))
    }
}

/// Tags that hold on `l`, in declaration order.
pub fn tags_of(l: &BoundedLattice) -> Vec<Tag> {
    Tag::ALL.into_iter().filter(|t| t.holds(l)).collect()
}

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub lattice: BoundedLattice,
    pub tags: Vec<Tag>,
}

impl CorpusEntry {
    pub fn new(lattice: BoundedLattice) -> Self {
        CorpusEntry {
            name: lattice.name().to_string(),
            tags: tags_of(&lattice),
            lattice,
        }
    }

    pub fn has(&self, tag: Tag) -> bool {
        self.tags.contains(&tag)
    }
}

fn build(name: &str, labels: &[&str], covers: &[(&str, &str)]) -> BoundedLattice {
    BoundedLattice::build_from_covers(name, labels, covers).expect("builtin lattice is valid")
}

/// The `k`-element chain `0 < c1 < ... < c(k-2) < 1`.
pub fn make_chain(k: usize) -> Result<BoundedLattice> {
    if k < 2 {
        return Err(LatticeError::InvalidParameter(format!("chain needs at least 2 elements, got {k}")));
    }
    let mut labels = vec!["0".to_string()];
    labels.extend((1..k - 1).map(|i| format!("c{i}")));
    labels.push("1".into());
    let covers: Vec<(String, String)> = labels.windows(2).map(|w| (w[0].clone(), w[1].clone())).collect();
    BoundedLattice::build_from_covers(format!("chain:{k}"), &labels, &covers)
}

/// The Boolean lattice of subsets of `k` atoms. Elements are labelled by
/// their atoms (`a`, `ab`, ...), with `0` and `1` for the bounds.
pub fn make_boolean(k: usize) -> Result<BoundedLattice> {
    if k == 0 {
        return Err(LatticeError::InvalidParameter("Boolean lattice needs at least one atom".into()));
    }
    if k > 6 || 1usize << k > MAX_ELEMENTS {
        return Err(LatticeError::SizeCapExceeded {
            what: "Boolean lattice",
            got: 1usize.checked_shl(k as u32).unwrap_or(usize::MAX),
            cap: MAX_ELEMENTS,
        });
    }
    let full = (1usize << k) - 1;
    let mut masks: Vec<usize> = (0..=full).collect();
    masks.sort_by_key(|&m| (m.count_ones(), (0..k).map(|i| usize::from(m >> i & 1 == 0)).collect::<Vec<_>>()));
    let label = |m: usize| -> String {
        if m == 0 {
            "0".into()
        } else if m == full {
            "1".into()
        } else {
            (0..k).filter(|i| m >> i & 1 == 1).map(|i| (b'a' + i as u8) as char).collect()
        }
    };
    let labels: Vec<String> = masks.iter().map(|&m| label(m)).collect();
    let up = masks
        .iter()
        .map(|&m| {
            masks
                .iter()
                .enumerate()
                .filter(|(_, &o)| m & !o == 0)
                .map(|(j, _)| ElementId::new(j))
                .collect()
        })
        .collect();
    BoundedLattice::from_order(format!("B:{k}"), labels, up)
}

/// `M_n`: `n` pairwise incomparable atoms `a1..an` between `0` and `1`.
pub fn make_mn(n: usize) -> Result<BoundedLattice> {
    if n <= 1 {
        return Err(LatticeError::InvalidParameter(format!("M_n needs n > 1, got {n}")));
    }
    let mut labels = vec!["0".to_string()];
    labels.extend((1..=n).map(|i| format!("a{i}")));
    labels.push("1".into());
    let mut covers = Vec::with_capacity(2 * n);
    for i in 1..=n {
        covers.push(("0".to_string(), format!("a{i}")));
        covers.push((format!("a{i}"), "1".to_string()));
    }
    BoundedLattice::build_from_covers(format!("M:{n}"), &labels, &covers)
}

/// The pentagon: `0 < a < c < 1` and `0 < b < 1`.
pub fn make_n5() -> BoundedLattice {
    build(
        "N5",
        &["0", "a", "b", "c", "1"],
        &[("0", "a"), ("a", "c"), ("c", "1"), ("0", "b"), ("b", "1")],
    )
}

/// The diamond with atoms `a`, `b`, `c`.
pub fn make_m3() -> BoundedLattice {
    build(
        "M3",
        &["0", "a", "b", "c", "1"],
        &[("0", "a"), ("0", "b"), ("0", "c"), ("a", "1"), ("b", "1"), ("c", "1")],
    )
}

/// The twelve-element complemented modular lattice isomorphic to
/// `M_4 x 2`.
pub fn make_fig2() -> BoundedLattice {
    build(
        "fig2",
        &["0", "a", "b", "c", "d", "e", "f", "g", "h", "i", "j", "1"],
        &[
            ("0", "a"),
            ("0", "b"),
            ("0", "c"),
            ("0", "d"),
            ("0", "e"),
            ("a", "f"),
            ("b", "f"),
            ("c", "f"),
            ("d", "f"),
            ("e", "g"),
            ("e", "h"),
            ("e", "i"),
            ("e", "j"),
            ("a", "g"),
            ("b", "h"),
            ("c", "i"),
            ("d", "j"),
            ("f", "1"),
            ("g", "1"),
            ("h", "1"),
            ("i", "1"),
            ("j", "1"),
        ],
    )
}

/// Componentwise product, labelled `(x,y)`.
pub fn direct_product(l1: &BoundedLattice, l2: &BoundedLattice) -> Result<BoundedLattice> {
    let n = l1.len() * l2.len();
    if n > MAX_ELEMENTS {
        return Err(LatticeError::SizeCapExceeded {
            what: "direct product",
            got: n,
            cap: MAX_ELEMENTS,
        });
    }
    let pairs: Vec<(ElementId, ElementId)> = l1.elements().flat_map(|x| l2.elements().map(move |y| (x, y))).collect();
    let labels = pairs
        .iter()
        .map(|&(x, y)| format!("({},{})", l1.label(x), l2.label(y)))
        .collect();
    let up = pairs
        .iter()
        .map(|&(x, y)| {
            pairs
                .iter()
                .enumerate()
                .filter(|(_, &(u, v))| l1.leq(x, u) && l2.leq(y, v))
                .map(|(j, _)| ElementId::new(j))
                .collect()
        })
        .collect();
    BoundedLattice::from_order(format!("{}x{}", l1.name(), l2.name()), labels, up)
}

/// All partial orders on `m` points up to isomorphism, each given by up-sets
/// whose index order is a linear extension.
pub fn enumerate_posets(m: usize) -> Vec<Vec<ElementSet>> {
    let mut level: Vec<Vec<ElementSet>> = vec![Vec::new()];
    for k in 0..m {
        // Every order on k+1 points arises from one on k points by adding a
        // maximal point above an order ideal.
        let candidates: Vec<(CanonicalForm, Vec<ElementSet>)> = level
            .par_iter()
            .flat_map_iter(|p| {
                down_closed_subsets(p)
                    .into_iter()
                    .map(|ideal| {
                        let new = ElementId::new(k);
                        let mut q: Vec<ElementSet> = p
                            .iter()
                            .enumerate()
                            .map(|(i, &row)| if ideal.contains(ElementId::new(i)) { row.with(new) } else { row })
                            .collect();
                        q.push(ElementSet::singleton(new));
                        (canonical_form_of_order(&q), q)
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
        let mut seen = HashSet::new();
        level = candidates
            .into_iter()
            .filter(|(form, _)| seen.insert(form.clone()))
            .map(|(_, q)| q)
            .collect();
    }
    level
}

/// Subsets `I` with `x in I, y <= x => y in I`.
fn down_closed_subsets(up: &[ElementSet]) -> Vec<ElementSet> {
    let m = up.len();
    let down: Vec<ElementSet> = (0..m)
        .map(|a| (0..m).filter(|&b| up[b].contains(ElementId::new(a))).map(ElementId::new).collect())
        .collect();
    ElementSet::all_subsets(m)
        .filter(|s| s.iter().all(|x| down[x.index()].is_subset(*s)))
        .collect()
}

/// Labels `0, a, b, ..., 1` for an `n`-element lattice.
fn alphabetic_labels(n: usize) -> Vec<String> {
    let mut labels = vec!["0".to_string()];
    labels.extend((0..n - 2).map(|i| ((b'a' + i as u8) as char).to_string()));
    labels.push("1".into());
    labels
}

/// Every bounded lattice on `n` elements up to isomorphism whose tags include
/// all of `required`. Lattices are named `L<n>.<i>`.
pub fn enumerate_lattices(n: usize, required: &[Tag]) -> Result<Vec<BoundedLattice>> {
    if n < 2 {
        return Err(LatticeError::InvalidParameter(format!("lattices need at least 2 elements, got {n}")));
    }
    if n > ENUMERATION_CAP {
        return Err(LatticeError::SizeCapExceeded {
            what: "lattice enumeration",
            got: n,
            cap: ENUMERATION_CAP,
        });
    }
    let labels = alphabetic_labels(n);
    let lattices: Vec<BoundedLattice> = enumerate_posets(n - 2)
        .into_par_iter()
        .filter_map(|p| {
            // Shift the middle up by one and add the bounds.
            let top = ElementId::new(n - 1);
            let mut up = vec![ElementSet::full(n)];
            up.extend(
                p.iter()
                    .map(|row| ElementSet::from_bits(row.bits() << 1).with(top)),
            );
            up.push(ElementSet::singleton(top));
            BoundedLattice::from_order("", labels.clone(), up).ok()
        })
        .collect();
    Ok(lattices
        .into_iter()
        .filter(|l| required.iter().all(|t| t.holds(l)))
        .enumerate()
        .map(|(i, l)| l.with_name(format!("L{n}.{i}")))
        .collect())
}

/// Named lattices of the default corpus: `M_n` for `n = 2..6`, the
/// twelve-element lattice, Boolean lattices up to 16 elements, `N5`, `M3`.
pub fn named_lattices() -> Vec<BoundedLattice> {
    let mut out: Vec<BoundedLattice> = (2..=6).map(|n| make_mn(n).expect("n > 1")).collect();
    out.push(make_fig2());
    out.extend((1..=4).map(|k| make_boolean(k).expect("small Boolean lattice")));
    out.push(make_n5());
    out.push(make_m3());
    out
}

/// Complemented lattices with at most `max_n` elements, followed by the
/// named lattices.
pub fn verification_corpus(max_n: usize) -> Result<Vec<CorpusEntry>> {
    let mut out = Vec::new();
    for n in 2..=max_n {
        out.extend(
            enumerate_lattices(n, &[Tag::Complemented])?
                .into_iter()
                .map(CorpusEntry::new),
        );
    }
    out.extend(named_lattices().into_iter().map(CorpusEntry::new));
    Ok(out)
}

/// The default corpus: complemented lattices up to 6 elements plus the named
/// lattices.
pub fn default_corpus() -> Vec<CorpusEntry> {
    verification_corpus(6).expect("6 is within the enumeration cap")
}

/// Looks up a lattice by name: `N5`, `M3`, `fig2`, `M:<n>`, `B:<k>`,
/// `chain:<k>`.
pub fn lookup(name: &str) -> Result<BoundedLattice> {
    let param = |p: &str| -> Result<usize> {
        p.parse()
            .map_err(|_| LatticeError::InvalidParameter(format!("bad size '{p}' in '{name}'")))
    };
    match name {
        "N5" | "n5" => return Ok(make_n5()),
        "M3" | "m3" => return Ok(make_m3()),
        "fig2" => return Ok(make_fig2()),
        _ => {}
    }
    match name.split_once(':') {
        Some(("M", p)) => make_mn(param(p)?),
        Some(("B", p)) => make_boolean(param(p)?),
        Some(("chain", p)) => make_chain(param(p)?),
        _ => Err(LatticeError::UnknownLattice(name.to_string())),
    }
}
