use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn latkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_latkit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = latkit(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    serde_json::from_str(&stdout(&all)).unwrap()
}

#[test]
fn pentagon_plus_table() {
    let expected = "\
x   | 0  a  b  c 1
----+-------------
x⁺  | 1  b ac  b 0
x⁺⁺ | 0 ac  b ac 1
";
    assert_eq!(stdout(&["plus-table", "--lattice", "N5"]), expected);
}

#[test]
fn diamond_plus_table() {
    let expected = "\
x   | 0  a  b  c 1
----+-------------
x⁺  | 1 bc ac ab 0
x⁺⁺ | 0  a  b  c 1
";
    assert_eq!(stdout(&["plus-table", "--lattice", "M3"]), expected);
}

#[test]
fn fig2_plus_table() {
    let expected = "\
x   | 0   a   b   c   d e f   g   h   i   j 1
----+----------------------------------------
x⁺  | 1 hij gij ghj ghi f e bcd acd abd abc 0
x⁺⁺ | 0   a   b   c   d e f   g   h   i   j 1
";
    assert_eq!(stdout(&["plus-table", "--lattice", "fig2"]), expected);
}

#[test]
fn odot_tables() {
    let n5 = "\
⊙ | 0 a b c 1
--+----------
0 | 0 0 0 0 0
a | 0 a 0 c a
b | 0 0 b 0 b
c | 0 a 0 c c
1 | 0 a b c 1
";
    assert_eq!(stdout(&["op-table", "--op", "odot", "--lattice", "N5"]), n5);
    let m3 = "\
⊙ | 0  a  b  c 1
--+-------------
0 | 0  0  0  0 0
a | 0  a 0b 0c a
b | 0 0a  b 0c b
c | 0 0a 0b  c c
1 | 0  a  b  c 1
";
    assert_eq!(stdout(&["op-table", "--op", "odot", "--lattice", "M3"]), m3);
}

#[test]
fn mn_implication_table() {
    let expected = "\
→  |       0      a1      a2      a3 1
---+----------------------------------
0  |       1       1       1       1 1
a1 | {a2,a3}       1 {a2,a3} {a2,a3} 1
a2 | {a1,a3} {a1,a3}       1 {a1,a3} 1
a3 | {a1,a2} {a1,a2} {a1,a2}       1 1
1  |       0      a1      a2      a3 1
";
    assert_eq!(stdout(&["op-table", "--op", "implies", "--lattice", "M:3"]), expected);
}

#[test]
fn op_table_json() {
    let v = json(&["op-table", "--op", "implies", "--lattice", "fig2"]);
    let labels: Vec<&str> = v["labels"].as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect();
    let at = |a: &str, b: &str| {
        let i = labels.iter().position(|x| *x == a).unwrap();
        let j = labels.iter().position(|x| *x == b).unwrap();
        v["table"][i][j].clone()
    };
    assert_eq!(at("a", "b"), serde_json::json!(["h", "i", "j"]));
    assert_eq!(at("a", "f"), serde_json::json!(["1"]));
    assert_eq!(at("f", "e"), serde_json::json!(["e"]));
}

#[test]
fn info_tags() {
    let n5 = stdout(&["info", "--lattice", "N5"]);
    assert!(n5.contains("tags: complemented, non-modular"), "{n5}");
    let fig2 = stdout(&["info", "--lattice", "fig2"]);
    assert!(fig2.contains("tags: complemented, modular, non-distributive, x⁺⁺≈x"), "{fig2}");
    assert!(fig2.contains("covers: 22"));
    let chain = stdout(&["info", "--lattice", "chain:3"]);
    assert!(chain.contains("not complemented"));
    let v = json(&["info", "--lattice", "B:3"]);
    assert_eq!(v["elements"], 8);
    assert_eq!(
        v["tags"],
        serde_json::json!(["complemented", "modular", "distributive", "dblplus_identity"])
    );
}

#[test]
fn verify_pentagon_records_pins() {
    let out = latkit(&["verify", "--lattice", "N5", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let checks = v[0]["checks"].as_array().unwrap();
    let pin = checks.iter().find(|c| c["name"] == "pinned.top_without_order").unwrap();
    assert_eq!(pin["kind"], "pinned");
    assert_eq!(pin["verdict"], "holds");
    assert_eq!(pin["witness"], serde_json::json!(["c", "a"]));
    let dbl = checks.iter().find(|c| c["name"] == "pinned.dblplus_identity_fails").unwrap();
    assert_eq!(dbl["witness"], serde_json::json!(["a"]));
    assert!(checks.iter().all(|c| !(c["kind"] == "asserted" && c["verdict"] == "fails")));
}

#[test]
fn verify_fig2_and_corpus() {
    let out = latkit(&["verify", "--lattice", "fig2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("adjointness"));
    assert!(text.ends_with("0 failure(s)\n"));
    let out = latkit(&["verify", "--corpus", "6"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().contains("lattice fig2: ok"));
}

#[test]
fn deductive_systems_listings() {
    let m3 = stdout(&["deductive-systems", "--lattice", "M:3", "--lattice-of"]);
    assert!(m3.starts_with("deductive systems of M:3: 8\n"), "{m3}");
    assert!(m3.contains("isomorphic to the powerset of atoms: true"));
    let n5 = stdout(&["deductive-systems", "--lattice", "N5"]);
    let expected = "\
deductive systems of N5: 4
  D0 {1}  compatible
  D1 {b,1}  compatible
  D2 {a,c,1}  compatible
  D3 {0,a,b,c,1}  compatible
";
    assert_eq!(n5, expected);
    let chain = json(&["deductive-systems", "--lattice", "chain:2"]);
    assert_eq!(chain["count"], 2);
    assert_eq!(chain["systems"][0]["members"], serde_json::json!(["1"]));
    assert_eq!(chain["systems"][1]["members"], serde_json::json!(["0", "1"]));
}

#[test]
fn closed_sets_listing() {
    let v = json(&["closed-sets", "--lattice", "N5"]);
    assert_eq!(v["count"], 6);
    assert_eq!(v["ortholattice"], true);
    let text = stdout(&["closed-sets", "--lattice", "M3"]);
    assert!(text.starts_with("closed sets of M3: 10\n"), "{text}");
}

#[test]
fn dot_export_counts() {
    for (name, nodes, edges) in [("N5", 5, 5), ("M:4", 6, 8), ("fig2", 12, 22)] {
        let dot = stdout(&["export-dot", "--lattice", name]);
        assert_eq!(dot.matches("[label=").count(), nodes, "{name}");
        assert_eq!(dot.matches(" -> ").count(), edges, "{name}");
        assert!(dot.contains("rankdir=BT"));
        assert_eq!(dot, stdout(&["export-dot", "--lattice", name]));
    }
}

#[test]
fn file_input_and_output() {
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("n5.lat");
    fs::write(&src, "# pentagon\nlattice P\nelements: 0 a b c 1\ncovers: 0<a a<c c<1 0<b b<1\n").unwrap();
    let from_file = stdout(&["plus-table", "--file", src.to_str().unwrap()]);
    assert_eq!(from_file, stdout(&["plus-table", "--lattice", "N5"]));

    let dest = dir.path().join("table.txt");
    stdout(&["plus-table", "--lattice", "M3", "--output", dest.to_str().unwrap()]);
    assert_eq!(fs::read_to_string(&dest).unwrap(), stdout(&["plus-table", "--lattice", "M3"]));
}

#[test]
fn input_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.lat");
    fs::write(&bad, "elements: 0 a 1\ncovers: 0<a\ncovers: a<z\n").unwrap();
    let out = latkit(&["info", "--file", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));

    let not_lattice = dir.path().join("nl.lat");
    fs::write(&not_lattice, "elements: 0 a b c d 1\ncovers: 0<a 0<b a<c b<c a<d b<d c<1 d<1\n").unwrap();
    assert_eq!(latkit(&["info", "--file", not_lattice.to_str().unwrap()]).status.code(), Some(2));

    assert_eq!(latkit(&["info", "--lattice", "Q9"]).status.code(), Some(2));
    assert_eq!(latkit(&["info", "--lattice", "M:1"]).status.code(), Some(2));
    assert_eq!(latkit(&["info"]).status.code(), Some(2));
    assert_eq!(latkit(&["verify", "--corpus", "9"]).status.code(), Some(2));
    assert_eq!(
        latkit(&["deductive-systems", "--lattice", "fig2", "--max-subsets", "8"]).status.code(),
        Some(2)
    );
}

#[test]
fn thread_override() {
    let out = Command::new(env!("CARGO_BIN_EXE_latkit"))
        .args(["verify", "--corpus", "5"])
        .env("LATKIT_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let out = Command::new(env!("CARGO_BIN_EXE_latkit"))
        .args(["info", "--lattice", "N5"])
        .env("LATKIT_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
