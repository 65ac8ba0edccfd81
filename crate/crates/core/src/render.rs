//! Text tables and DOT output.

use std::fmt::Write;

use crate::connectives::{Connective, OpTable};
use crate::lattice::BoundedLattice;
use crate::set::ElementSet;

/// Renders a set as concatenated labels (`ac`) when every label is a single
/// character, else as a bare label for singletons and `{x,y}` otherwise.
/// The empty set is `∅`.
pub fn render_set(l: &BoundedLattice, s: ElementSet) -> String {
    if s.is_empty() {
        return "∅".into();
    }
    let parts: Vec<&str> = s.iter().map(|a| l.label(a)).collect();
    if l.labels().iter().all(|x| x.chars().count() == 1) {
        parts.concat()
    } else if parts.len() == 1 {
        parts[0].to_string()
    } else {
        format!("{{{}}}", parts.join(","))
    }
}

/// Column-aligned grid: a left header column, a rule, right-aligned cells.
fn grid(rows: &[Vec<String>], rule_after_first: bool) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let width = |c: usize| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols).map(width).collect();
    let mut out = String::new();
    for (i, row) in rows.iter().enumerate() {
        let mut line = format!("{:<w$} |", row[0], w = widths[0]);
        for (c, cell) in row.iter().enumerate().skip(1) {
            let pad = widths[c] - cell.chars().count();
            line.push(' ');
            line.push_str(&" ".repeat(pad));
            line.push_str(cell);
        }
        out.push_str(line.trim_end());
        out.push('\n');
        if i == 0 && rule_after_first {
            let total: usize = widths[1..].iter().map(|w| w + 1).sum();
            out.push_str(&format!("{}-+{}\n", "-".repeat(widths[0]), "-".repeat(total)));
        }
    }
    out
}

/// The three-row `x / x⁺ / x⁺⁺` table in element order.
pub fn plus_table(l: &BoundedLattice) -> String {
    let mut rows = vec![vec!["x".to_string()], vec!["x⁺".to_string()], vec!["x⁺⁺".to_string()]];
    for a in l.elements() {
        rows[0].push(l.label(a).to_string());
        rows[1].push(render_set(l, l.complements(a)));
        rows[2].push(render_set(l, l.double_plus_el(a)));
    }
    grid(&rows, true)
}

/// The full operation table; rows are the left operand.
pub fn op_table_text(l: &BoundedLattice, op: Connective) -> String {
    let table = OpTable::new(l, op);
    let mut rows = Vec::with_capacity(l.len() + 1);
    let mut header = vec![op.symbol().to_string()];
    header.extend(l.elements().map(|a| l.label(a).to_string()));
    rows.push(header);
    for a in l.elements() {
        let mut row = vec![l.label(a).to_string()];
        row.extend(l.elements().map(|b| render_set(l, table.get(a, b))));
        rows.push(row);
    }
    grid(&rows, true)
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// The Hasse diagram as a bottom-up DOT digraph. Nodes appear in element
/// order and edges in row-major order.
pub fn to_dot(l: &BoundedLattice) -> String {
    let mut out = String::new();
    writeln!(out, "digraph {} {{", quote(l.name())).unwrap();
    writeln!(out, "  rankdir=BT;").unwrap();
    writeln!(out, "  node [shape=plaintext];").unwrap();
    for a in l.elements() {
        writeln!(out, "  n{} [label={}];", a.index(), quote(l.label(a))).unwrap();
    }
    for (lo, hi) in l.covers() {
        writeln!(out, "  n{} -> n{};", lo.index(), hi.index()).unwrap();
    }
    out.push_str("}\n");
    out
}
