//! Whole-lattice verification: every check, each asserted only when its
//! hypotheses hold.

use rayon::prelude::*;

use crate::complement::{
    check_closure_lattice, check_complement_structure, check_dblplus_characterization, check_galois_laws,
    check_modular_antichains, check_order_reversal, closure_lattice, GaloisScope,
};
use crate::connectives::{
    check_adjointness, check_implication_laws, check_implies_meet, check_modus_laws, check_odot_laws,
    top_without_order,
};
use crate::corpus::CorpusEntry;
use crate::deduction::{
    check_compatible_systems, check_filters, check_meet_congruence_kernels, check_sp_equivalences, Caps,
};
use crate::lattice::BoundedLattice;
use crate::report::{el_labels, PropertyReport};

/// Runs every check on `l`. Non-theorems with a witness on `l` are recorded
/// as pinned entries.
pub fn verify_lattice(l: &BoundedLattice, caps: &Caps) -> PropertyReport {
    let mut r = PropertyReport::for_lattice(l);
    r.extend(check_galois_laws(l, GaloisScope::for_size(l.len())));
    let closed = closure_lattice(l);
    r.extend(check_closure_lattice(l, &closed));
    r.extend(check_complement_structure(l));
    r.extend(check_modular_antichains(l, &closed));
    r.extend(check_order_reversal(l));
    r.extend(check_dblplus_characterization(l));

    r.extend(check_implication_laws(l));
    r.extend(check_implies_meet(l));
    r.extend(check_modus_laws(l));
    r.extend(check_odot_laws(l));
    r.extend(check_adjointness(l));

    r.extend(check_filters(l, caps));
    r.extend(check_meet_congruence_kernels(l, caps));
    if l.len() <= caps.max_partitions {
        r.extend(check_sp_equivalences(l));
    } else {
        r.skip("sp_implies", format!("{} elements exceed the partition cap {}", l.len(), caps.max_partitions));
    }
    r.extend(check_compatible_systems(l, caps));

    if l.is_complemented() {
        if let Some((a, b)) = top_without_order(l) {
            r.pin("pinned.top_without_order", Some(el_labels(l, &[a, b])))
                .note = Some(format!("{}->{} = {{1}} but not {} <= {}", l.label(a), l.label(b), l.label(a), l.label(b)));
        }
        if let Some(a) = l.dblplus_identity_witness() {
            r.pin("pinned.dblplus_identity_fails", Some(el_labels(l, &[a])))
                .note = Some(format!("{}⁺⁺ != {{{}}}", l.label(a), l.label(a)));
        }
    }
    r
}

/// Verifies every entry in parallel, preserving input order.
pub fn verify_corpus(entries: &[CorpusEntry], caps: &Caps) -> Vec<PropertyReport> {
    entries
        .par_iter()
        .map(|e| {
            let mut r = verify_lattice(&e.lattice, caps);
            r.lattice = e.name.clone();
            r
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{make_chain, make_fig2, make_n5};

    #[test]
    fn pentagon_passes_with_pins() {
        let r = verify_lattice(&make_n5(), &Caps::default());
        assert!(r.all_asserted_hold(), "{r}");
        let pin = r.get("pinned.top_without_order").unwrap();
        assert!(pin.holds());
        assert_eq!(pin.witness, ["c", "a"]);
        assert_eq!(r.get("pinned.dblplus_identity_fails").unwrap().witness, ["a"]);
    }

    #[test]
    fn fig2_passes_without_pins() {
        let r = verify_lattice(&make_fig2(), &Caps::default());
        assert!(r.all_asserted_hold(), "{r}");
        assert!(r.get("pinned.top_without_order").is_none());
    }

    #[test]
    fn chain_passes() {
        let r = verify_lattice(&make_chain(3).unwrap(), &Caps::default());
        assert!(r.all_asserted_hold(), "{r}");
    }
}
