//! Finite bounded lattices with the set-valued complement operator `+`,
//! the unsharp connectives `->` and `⊙`, deductive systems, and exhaustive
//! checkers for their laws.
//!
//! ```
//! use latkit::corpus::make_n5;
//!
//! let l = make_n5();
//! assert_eq!(l.complements(l.el("a")), l.ids(&["b"]));
//! assert_eq!(l.double_plus_el(l.el("a")), l.ids(&["a", "c"]));
//! ```

pub mod canon;
pub mod complement;
pub mod connectives;
pub mod corpus;
pub mod deduction;
pub mod error;
pub mod format;
pub mod lattice;
pub mod render;
pub mod report;
pub mod set;
mod set_ops;
pub mod suite;

pub use canon::{canonical_form, is_isomorphic, CanonicalForm};
pub use complement::{closure_lattice, ClosureReport, GaloisScope};
pub use connectives::{op_table, Connective, OpTable};
pub use corpus::{CorpusEntry, Tag};
pub use deduction::{Caps, DsLattice, Relation};
pub use error::{LatticeError, Result};
pub use format::{parse_lattice, to_text};
pub use lattice::{BoundedLattice, Pentagon};
pub use report::{Check, CheckKind, PropertyReport, Verdict};
pub use set::{ElementId, ElementSet, MAX_ELEMENTS};
pub use suite::{verify_corpus, verify_lattice};
