//! Plain-text lattice descriptions.
//!
//! ```text
//! # the pentagon
//! lattice N5
//! elements: 0 a b c 1
//! covers: 0<a a<c c<1 0<b b<1
//! ```
//!
//! Tokens are whitespace separated and lines starting with `#` are ignored.
//! `elements:` and `covers:` may repeat; their tokens accumulate. Elements
//! must be declared before a cover mentions them.

use std::collections::HashSet;

use crate::error::{LatticeError, Result};
use crate::lattice::BoundedLattice;

/// Parses the text format and builds the lattice.
pub fn parse_lattice(src: &str) -> Result<BoundedLattice> {
    let mut name: Option<String> = None;
    let mut labels: Vec<String> = Vec::new();
    let mut covers: Vec<(String, String)> = Vec::new();
    let mut seen: HashSet<String> = HashSet::new();
    let mut saw_elements = false;

    for (i, raw) in src.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |msg: String| LatticeError::Parse { line: line_no, msg };

        if let Some(rest) = line.strip_prefix("elements:") {
            saw_elements = true;
            for tok in rest.split_whitespace() {
                if tok.contains('<') {
                    return Err(err(format!("element name `{tok}` contains `<`")));
                }
                if !seen.insert(tok.to_string()) {
                    return Err(err(format!("duplicate element `{tok}`")));
                }
                labels.push(tok.to_string());
            }
        } else if let Some(rest) = line.strip_prefix("covers:") {
            for tok in rest.split_whitespace() {
                let mut parts = tok.split('<');
                match (parts.next(), parts.next(), parts.next()) {
                    (Some(lo), Some(hi), None) if !lo.is_empty() && !hi.is_empty() => {
                        if let Some(unknown) = [lo, hi].into_iter().find(|x| !seen.contains(*x)) {
                            return Err(err(format!("cover `{tok}` uses undeclared element `{unknown}`")));
                        }
                        covers.push((lo.to_string(), hi.to_string()));
                    }
                    _ => return Err(err(format!("malformed cover `{tok}`, expected `lower<upper`"))),
                }
            }
        } else if let Some(rest) = line.strip_prefix("lattice") {
            if !rest.is_empty() && !rest.starts_with(char::is_whitespace) {
                return Err(err(format!("unrecognised directive `{line}`")));
            }
            if name.is_some() {
                return Err(err("second `lattice` header".into()));
            }
            let mut toks = rest.split_whitespace();
            match (toks.next(), toks.next()) {
                (Some(n), None) => name = Some(n.to_string()),
                _ => return Err(err("expected `lattice <name>`".into())),
            }
        } else {
            return Err(err(format!("unrecognised directive `{line}`")));
        }
    }

    if !saw_elements {
        return Err(LatticeError::Parse {
            line: src.lines().count().max(1),
            msg: "missing `elements:` line".into(),
        });
    }
    BoundedLattice::build_from_covers(name.unwrap_or_else(|| "unnamed".into()), &labels, &covers)
}

/// Writes a lattice in the text format using its Hasse covers.
pub fn to_text(l: &BoundedLattice) -> String {
    let covers: Vec<String> = l
        .covers()
        .into_iter()
        .map(|(a, b)| format!("{}<{}", l.label(a), l.label(b)))
        .collect();
    format!(
        "lattice {}\nelements: {}\ncovers: {}\n",
        l.name(),
        l.labels().join(" "),
        covers.join(" ")
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    const N5: &str = "\
# pentagon
lattice N5
elements: 0 a b c 1
covers: 0<a a<c c<1 0<b b<1
";

    #[test]
    fn parses_pentagon() {
        let l = parse_lattice(N5).unwrap();
        assert_eq!(l.name(), "N5");
        assert_eq!(l.len(), 5);
        assert!(l.leq(l.el("a"), l.el("c")));
        assert!(!l.is_modular());
    }

    #[test]
    fn round_trips_through_text() {
        let l = parse_lattice(N5).unwrap();
        let again = parse_lattice(&to_text(&l)).unwrap();
        assert_eq!(again.labels(), l.labels());
        assert_eq!(again.covers(), l.covers());
    }

    #[test]
    fn repeated_lines_accumulate() {
        let l = parse_lattice("elements: 0 a\nelements: 1\ncovers: 0<a\ncovers: a<1\n").unwrap();
        assert_eq!(l.len(), 3);
        assert_eq!(l.name(), "unnamed");
    }

    #[test]
    fn reports_line_numbers() {
        let err = parse_lattice("lattice x\nelements: 0 1\ncovers: 0-1\n").unwrap_err();
        assert!(matches!(err, LatticeError::Parse { line: 3, .. }), "{err:?}");
        let err = parse_lattice("lattice x\nfoo\n").unwrap_err();
        assert!(matches!(err, LatticeError::Parse { line: 2, .. }));
        let err = parse_lattice("elements: 0 a<b 1\n").unwrap_err();
        assert!(matches!(err, LatticeError::Parse { line: 1, .. }));
        let err = parse_lattice("lattice x\n").unwrap_err();
        assert!(matches!(err, LatticeError::Parse { .. }));
        let err = parse_lattice("elements: 0 a\n\ncovers: 0<b\n").unwrap_err();
        assert!(matches!(err, LatticeError::Parse { line: 3, .. }));
        let err = parse_lattice("elements: 0 a 0\n").unwrap_err();
        assert!(matches!(err, LatticeError::Parse { line: 1, .. }));
    }

    #[test]
    fn structural_errors_pass_through() {
        let err = parse_lattice("elements: 0 a b 1\ncovers: 0<a 0<b 0<1\n").unwrap_err();
        assert_eq!(err, LatticeError::NoBounds("greatest"));
    }
}
