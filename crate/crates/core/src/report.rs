//! Named check results with witnesses.

use std::fmt;

use serde::Serialize;

use crate::lattice::BoundedLattice;
use crate::set::{ElementId, ElementSet};

/// How a check counts toward a suite verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    /// Hypotheses hold on this lattice; a failure is a real failure.
    Asserted,
    /// Evaluated for information only (hypotheses not met, or a bare fact).
    Observed,
    /// A recorded non-theorem: the check passes when the expected witness exists.
    Pinned,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Fails,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub kind: CheckKind,
    pub verdict: Verdict,
    /// First counterexample (or the pinned witness), rendered as labels.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witness: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Check {
    pub fn holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }

    /// Asserted and not holding.
    pub fn is_failure(&self) -> bool {
        self.kind == CheckKind::Asserted && self.verdict == Verdict::Fails
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct PropertyReport {
    pub lattice: String,
    pub checks: Vec<Check>,
}

impl PropertyReport {
    pub fn new(lattice: impl Into<String>) -> Self {
        PropertyReport {
            lattice: lattice.into(),
            checks: Vec::new(),
        }
    }

    pub(crate) fn for_lattice(l: &BoundedLattice) -> Self {
        Self::new(l.name())
    }

    /// Records a check; `outcome` is `Ok(())` or the first counterexample.
    pub fn record(&mut self, name: impl Into<String>, kind: CheckKind, outcome: Outcome) -> &mut Check {
        let (verdict, witness) = match outcome {
            Ok(()) => (Verdict::Holds, Vec::new()),
            Err(w) => (Verdict::Fails, w),
        };
        self.checks.push(Check {
            name: name.into(),
            kind,
            verdict,
            witness,
            note: None,
        });
        self.checks.last_mut().unwrap()
    }

    /// Records a pinned non-theorem: holds when `witness` is present.
    pub fn pin(&mut self, name: impl Into<String>, witness: Option<Witness>) -> &mut Check {
        let (verdict, witness) = match witness {
            Some(w) => (Verdict::Holds, w),
            None => (Verdict::Fails, Vec::new()),
        };
        self.checks.push(Check {
            name: name.into(),
            kind: CheckKind::Pinned,
            verdict,
            witness,
            note: None,
        });
        self.checks.last_mut().unwrap()
    }

    pub fn skip(&mut self, name: impl Into<String>, reason: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            kind: CheckKind::Observed,
            verdict: Verdict::Skipped,
            witness: Vec::new(),
            note: Some(reason.into()),
        });
    }

    pub fn extend(&mut self, other: PropertyReport) {
        self.checks.extend(other.checks);
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Asserted checks that failed.
    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.is_failure())
    }

    pub fn all_asserted_hold(&self) -> bool {
        self.failures().next().is_none()
    }
}

impl fmt::Display for PropertyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "lattice {}", self.lattice)?;
        for c in &self.checks {
            let status = match (c.kind, c.verdict) {
                (_, Verdict::Skipped) => "skip",
                (CheckKind::Asserted, Verdict::Holds) => "ok",
                (CheckKind::Asserted, Verdict::Fails) => "FAIL",
                (CheckKind::Observed, Verdict::Holds) => "true",
                (CheckKind::Observed, Verdict::Fails) => "false",
                (CheckKind::Pinned, Verdict::Holds) => "pinned",
                (CheckKind::Pinned, Verdict::Fails) => "pin-missing",
            };
            write!(f, "  {status:<11} {}", c.name)?;
            if !c.witness.is_empty() {
                write!(f, "  [{}]", c.witness.join(", "))?;
            }
            if let Some(note) = &c.note {
                write!(f, "  ({note})")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Witness labels for a failed or pinned check.
pub type Witness = Vec<String>;
pub type Outcome = Result<(), Witness>;

/// Formats a set as `{a,b}` for witnesses.
pub(crate) fn set_label(l: &BoundedLattice, s: ElementSet) -> String {
    let parts: Vec<&str> = s.iter().map(|a| l.label(a)).collect();
    format!("{{{}}}", parts.join(","))
}

pub(crate) fn el_labels(l: &BoundedLattice, els: &[ElementId]) -> Witness {
    els.iter().map(|&a| l.label(a).to_string()).collect()
}

/// First tuple of elements (in row-major id order) for which `pred` fails.
pub(crate) fn forall_pairs(l: &BoundedLattice, mut pred: impl FnMut(ElementId, ElementId) -> bool) -> Outcome {
    for a in l.elements() {
        for b in l.elements() {
            if !pred(a, b) {
                return Err(el_labels(l, &[a, b]));
            }
        }
    }
    Ok(())
}

pub(crate) fn forall_triples(
    l: &BoundedLattice,
    mut pred: impl FnMut(ElementId, ElementId, ElementId) -> bool,
) -> Outcome {
    for a in l.elements() {
        for b in l.elements() {
            for c in l.elements() {
                if !pred(a, b, c) {
                    return Err(el_labels(l, &[a, b, c]));
                }
            }
        }
    }
    Ok(())
}

pub(crate) fn forall_elements(l: &BoundedLattice, mut pred: impl FnMut(ElementId) -> bool) -> Outcome {
    match l.elements().find(|&a| !pred(a)) {
        Some(a) => Err(el_labels(l, &[a])),
        None => Ok(()),
    }
}

pub(crate) fn kind_if(hypothesis: bool) -> CheckKind {
    if hypothesis {
        CheckKind::Asserted
    } else {
        CheckKind::Observed
    }
}
