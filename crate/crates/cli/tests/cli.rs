use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn phylokit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_phylokit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path
}

fn catalog(dir: &Path, name: &str) -> PathBuf {
    let out = phylokit(&["catalog", name]);
    assert!(out.status.success());
    write(dir, &format!("{name}.txt"), &stdout(&out))
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_str(stdout(out).trim()).unwrap()
}

#[test]
fn compute_reports_and_witness_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let g = catalog(dir.path(), "fig2_G");
    let w = dir.path().join("w.txt");
    let out = phylokit(&["compute", s(&g), "--witness", s(&w)]);
    assert!(out.status.success(), "{}", stderr(&out));
    let report = json(&out);
    assert_eq!(report["kind"], "exact");
    assert_eq!(report["value"], 2);
    assert_eq!(report["graph"]["n"], 6);
    assert!(report.get("elapsed_ms").is_none());
    assert!(fs::read_to_string(&w).unwrap().contains("# base 0..5"));
    assert!(phylokit(&["verify", s(&g), s(&w)]).status.success());

    let g1 = catalog(dir.path(), "fig3_G1");
    let report = json(&phylokit(&["compute", s(&g1)]));
    assert_eq!(report["value"], 4);
    assert!(report["method"].as_str().unwrap().contains("lower bound attained"));
}

#[test]
fn compute_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let g = catalog(dir.path(), "fig4_G2");
    let (w1, w2) = (dir.path().join("a"), dir.path().join("b"));
    let a = phylokit(&["compute", s(&g), "--witness", s(&w1)]);
    let b = phylokit(&["compute", s(&g), "--witness", s(&w2)]);
    assert_eq!(a.stdout.len(), b.stdout.len());
    assert_eq!(stdout(&a).replace(s(&w1), ""), stdout(&b).replace(s(&w2), ""));
    assert_eq!(fs::read(&w1).unwrap(), fs::read(&w2).unwrap());
    let timed = json(&phylokit(&["compute", s(&g), "--timing"]));
    assert!(timed["elapsed_ms"].is_u64());
}

#[test]
fn complete_graph_is_zero() {
    let dir = tempfile::tempdir().unwrap();
    let k4 = write(dir.path(), "k4.txt", "4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n");
    assert_eq!(json(&phylokit(&["compute", s(&k4)]))["value"], 0);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.txt", "3 2\n0 1\n");
    let out = phylokit(&["compute", s(&bad)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("parse error"));
    assert_eq!(phylokit(&["compute", "/nonexistent/file"]).status.code(), Some(2));

    // K_{3,3} plus a triangle on 0, 1, 6 and the edge 3-6: no closed form
    // or bound equality settles it, so the exact search needs all 7 vertices
    let hard = write(
        dir.path(),
        "hard.txt",
        "7 13\n0 3\n0 4\n0 5\n1 3\n1 4\n1 5\n2 3\n2 4\n2 5\n0 1\n1 6\n0 6\n3 6\n",
    );
    let out = phylokit(&["compute", s(&hard), "--size-cap", "5"]);
    assert_eq!(out.status.code(), Some(3), "{}", stdout(&out));
    let forced = phylokit(&["compute", s(&hard), "--size-cap", "5", "--force"]);
    assert!(forced.status.success());
    assert_eq!(json(&forced)["kind"], "exact");

    assert_eq!(phylokit(&["family", "--l", "5", "--out", s(dir.path())]).status.code(), Some(3));
    assert_eq!(phylokit(&["catalog", "fig9"]).status.code(), Some(2));
}

#[test]
fn verify_names_the_violated_clause() {
    let dir = tempfile::tempdir().unwrap();
    let g = catalog(dir.path(), "fig1_G");
    let d = catalog(dir.path(), "fig1_D");
    let ok = phylokit(&["verify", s(&g), s(&d)]);
    assert!(ok.status.success());
    assert!(stdout(&ok).contains("1 extra"));

    // 0 -> 2 -> 3 -> 0 closes a cycle
    let text = fs::read_to_string(&d).unwrap().replacen("7 7", "7 8\n3 0", 1);
    let cyclic = write(dir.path(), "cyclic.txt", &text);
    let out = phylokit(&["verify", s(&g), s(&cyclic)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("NotAcyclic"));

    let empty = write(dir.path(), "empty.txt", "6 0\n");
    let out = phylokit(&["verify", s(&g), s(&empty)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("NotInduced"));

    let into_base = write(dir.path(), "into.txt", "7 1\n6 0\n# base 0..5\n");
    let out = phylokit(&["verify", s(&g), s(&into_base)]);
    assert!(stderr(&out).contains("ArcIntoBase"));
}

#[test]
fn sweep_small_orders() {
    let out = phylokit(&["sweep", "--max-n", "5"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let records: Vec<Value> = stdout(&out).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(records.len(), 1 + 1 + 2 + 6 + 21);
    assert!(records.iter().all(|r| r["ok"] == true));
    assert!(stderr(&out).contains("0 disagreements"));

    let out = phylokit(&["sweep", "--max-n", "3"]);
    let k3 = stdout(&out)
        .lines()
        .map(|l| serde_json::from_str::<Value>(l).unwrap())
        .find(|r| r["n"] == 3 && r["m"] == 3)
        .unwrap();
    assert_eq!((k3["formula_p"].clone(), k3["exact_p"].clone()), (0.into(), 0.into()));

    assert_eq!(phylokit(&["sweep", "--max-n", "9"]).status.code(), Some(2));
}

#[test]
fn sweep_k4free_scope_single_thread() {
    let out = Command::new(env!("CARGO_BIN_EXE_phylokit"))
        .args(["sweep", "--max-n", "6", "--only-k4free-scope"])
        .env("PHYLOKIT_THREADS", "1")
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", stderr(&out));
    for line in stdout(&out).lines() {
        let r: Value = serde_json::from_str(line).unwrap();
        assert_eq!(r["flags"]["k4free_scope"], true);
        assert_eq!(r["agreement"]["sandwich"], true);
    }
}

#[test]
fn sweep_reads_graph6() {
    let dir = tempfile::tempdir().unwrap();
    // C4, K4 and a disconnected pair of edges
    let stream = write(dir.path(), "in.g6", ">>graph6<<Cr\nC~\nCQ\n");
    let out = phylokit(&["sweep", "--graph6", s(&stream)]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert_eq!(stdout(&out).lines().count(), 2);
    assert!(stderr(&out).contains("skipped 1 disconnected"));
    let garbage = write(dir.path(), "bad.g6", "C~\n\u{1}\n");
    assert_eq!(phylokit(&["sweep", "--graph6", s(&garbage)]).status.code(), Some(2));
}

#[test]
fn family_writes_graph() {
    let dir = tempfile::tempdir().unwrap();
    for (l, p) in [(0, 0), (1, 1), (3, 3)] {
        let out = phylokit(&["family", "--l", &l.to_string(), "--out", s(dir.path())]);
        assert!(out.status.success(), "{}", stderr(&out));
        let r = json(&out);
        assert_eq!((r["p"].clone(), r["k"].clone()), (p.into(), 1.into()));
        assert_eq!(r["difference"], l);
        assert_eq!(r["identity_holds"], true);
        assert!(dir.path().join(format!("G_{l}.txt")).exists());
    }
    let g0 = fs::read_to_string(dir.path().join("G_0.txt")).unwrap();
    assert_eq!(g0, "2 1\n0 1\n");
}

#[test]
fn constructions_and_trace() {
    let dir = tempfile::tempdir().unwrap();
    let g = catalog(dir.path(), "fig3_G1");
    let w = dir.path().join("w.txt");
    let out = phylokit(&["construct", s(&g), "--method", "caring", "--out", s(&w)]);
    assert!(out.status.success(), "{}", stderr(&out));
    let r = json(&out);
    assert_eq!((r["extras"].clone(), r["optimal"].clone()), (4.into(), true.into()));
    assert!(phylokit(&["verify", s(&g), s(&w)]).status.success());

    let trace = dir.path().join("trace.json");
    let out = phylokit(&["construct", s(&g), "--method", "k4free", "--out", s(&w), "--trace", s(&trace)]);
    assert!(out.status.success(), "{}", stderr(&out));
    let steps: Value = serde_json::from_str(&fs::read_to_string(&trace).unwrap()).unwrap();
    assert!(!steps["steps"].as_array().unwrap().is_empty());
    assert!(phylokit(&["verify", s(&g), s(&w)]).status.success());

    let out = phylokit(&["construct", s(&g), "--method", "triangle-free", "--out", s(&w)]);
    assert_eq!(out.status.code(), Some(5));
}

#[test]
fn census_bounds_and_dot() {
    let dir = tempfile::tempdir().unwrap();
    let g = catalog(dir.path(), "fig3_G2");
    let c = json(&phylokit(&["census", s(&g)]));
    assert_eq!((c["t"].clone(), c["d"].clone(), c["theta_e"].clone()), (3.into(), 1.into(), 4.into()));
    let b = json(&phylokit(&["bounds", s(&g)]));
    assert_eq!(b["k4free_bounds"]["value"], 0);
    assert_eq!(b["formula"]["kind"], "none");

    let d = catalog(dir.path(), "fig1_D");
    let out = phylokit(&["export-dot", s(&d), "-"]);
    let dot = stdout(&out);
    assert!(dot.starts_with("digraph D {"));
    assert!(dot.contains("6 [shape=box];"));
    let path = dir.path().join("g.dot");
    assert!(phylokit(&["export-dot", s(&g), s(&path)]).status.success());
    assert!(fs::read_to_string(path).unwrap().contains("3 -- 4;"));

    let names = stdout(&phylokit(&["catalog"]));
    assert_eq!(names.lines().count(), 7);
}
