use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn exactsign(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_exactsign"))
        .args(args)
        .output()
        .expect("binary runs")
}

/// Runs with `--out` and returns the parsed report from standard output.
fn report(args: &[&str], out: &Path) -> (Value, i32) {
    let mut all = args.to_vec();
    let out = out.to_str().unwrap();
    all.extend(["--out", out]);
    let o = exactsign(&all);
    let stdout = String::from_utf8(o.stdout).unwrap();
    let mut stream = serde_json::Deserializer::from_str(&stdout).into_iter::<Value>();
    let value = stream.next().expect("report present").expect("report is JSON");
    (value, o.status.code().unwrap())
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn gen_snk_has_expected_size() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("s.txt");
    let (r, code) = report(&["gen", "snk", "5", "3"], &out);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["vertices"], 25);
    assert_eq!(r["results"]["edges"], 30);
    assert!(fs::read_to_string(&out).unwrap().starts_with("p sg 25 30\n"));
}

#[test]
fn gen_without_out_writes_artifact_to_stdout() {
    let o = exactsign(&["gen", "k7"]);
    assert!(o.status.success());
    assert!(String::from_utf8(o.stdout).unwrap().starts_with("p sg 7 "));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("\"tool\": \"exactsign\""));
}

#[test]
fn reports_are_deterministic_apart_from_timings() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.txt");
    let b = dir.path().join("b.txt");
    let (mut ra, _) = report(&["--seed", "9", "gen", "two-tree", "30"], &a);
    let (mut rb, _) = report(&["--seed", "9", "gen", "two-tree", "30"], &b);
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    for r in [&mut ra, &mut rb] {
        r.as_object_mut().unwrap().remove("timings");
        r.as_object_mut().unwrap().remove("command");
    }
    assert_eq!(ra, rb);
}

#[test]
fn k7_gadget_strong_square_union_is_complete() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("k7.txt");
    report(&["gen", "k7"], &g);
    let (r, code) = report(
        &["exactdist", path_str(&g), "-k", "2", "--variant", "some"],
        &dir.path().join("e.txt"),
    );
    assert_eq!(code, 0);
    assert_eq!(r["results"]["union_edges"], 21);
    assert_eq!(r["inputs"][0]["sha256"].as_str().unwrap().len(), 64);
}

#[test]
fn colnum_path_exhaustive() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("p4.txt");
    fs::write(&g, "p edge 4 3\ne 1 2\ne 2 3\ne 3 4\n").unwrap();
    let (r, code) = report(
        &["colnum", path_str(&g), "--kind", "wcol", "-k", "2", "--exhaustive"],
        &dir.path().join("x"),
    );
    assert_eq!(code, 0);
    assert_eq!(r["results"]["value"], 3);
    assert_eq!(r["results"]["exact"], true);
}

#[test]
fn colnum_with_ordering_file() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("p4.txt");
    fs::write(&g, "p edge 4 3\ne 1 2\ne 2 3\ne 3 4\n").unwrap();
    let ord = dir.path().join("ord.txt");
    fs::write(&ord, "2 3 1 4\n").unwrap();
    let (r, _) = report(
        &["colnum", path_str(&g), "--kind", "col", "-k", "1", "--ordering", path_str(&ord)],
        &dir.path().join("x"),
    );
    // col_1 is the degeneracy-style count: 1 plus the earlier neighbours.
    assert_eq!(r["results"]["value"], 2);
}

#[test]
fn tw2_on_k4_is_a_structured_error() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("k4.txt");
    fs::write(&g, "p edge 4 6\ne 1 2\ne 1 3\ne 1 4\ne 2 3\ne 2 4\ne 3 4\n").unwrap();
    let o = exactsign(&["color", path_str(&g), "--tw2"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    let first: Value = serde_json::from_str(err.lines().next().unwrap()).unwrap();
    assert_eq!(first["pass"], false);
    assert!(first["error"][0].as_str().unwrap().contains("treewidth"));
}

#[test]
fn tw2_colours_a_two_tree() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("t.txt");
    report(&["--seed", "4", "gen", "two-tree", "40"], &g);
    let (r, code) = report(&["color", path_str(&g), "--tw2"], &dir.path().join("c.txt"));
    assert_eq!(code, 0);
    assert_eq!(r["results"]["conflicts"], 0);
    assert!(r["results"]["colours_used"].as_u64().unwrap() <= 7);
}

#[test]
fn reduce_then_dcol_on_apollonian_depth_three() {
    let dir = tempfile::tempdir().unwrap();
    let tri = dir.path().join("a.json");
    let red = dir.path().join("r.json");
    let (r, _) = report(&["gen", "apollonian", "3"], &tri);
    assert_eq!(r["results"]["vertices"], 43);
    let (r, code) = report(&["reduce", path_str(&tri)], &red);
    assert_eq!(code, 0, "{r}");
    assert_eq!(r["results"]["violations"].as_array().unwrap().len(), 0);
    let (r, code) = report(
        &["color", path_str(&tri), "--dcol", "-k", "2", "--reduction", path_str(&red)],
        &dir.path().join("c.txt"),
    );
    assert_eq!(code, 0, "{r}");
    assert_eq!(r["results"]["conflicts"], 0);
    assert!(r["results"]["colours_used"].as_u64().unwrap() <= 76);
    let (r, code) = report(
        &["audit", path_str(&tri), "--reduction", path_str(&red)],
        &dir.path().join("audit.txt"),
    );
    assert_eq!(code, 0, "{r}");
    assert!(r["results"]["audit"]["max_dr4"].as_u64().unwrap() <= 76);
}

#[test]
fn verify_quick_suite_passes_and_zero_budget_is_incomplete() {
    let dir = tempfile::tempdir().unwrap();
    let (r, code) = report(&["verify", "gadgets", "--quick"], &dir.path().join("x"));
    assert_eq!(code, 0, "{r}");
    assert_eq!(r["checks"].as_array().unwrap().len(), 3);
    let (r, code) = report(&["verify", "eq1", "--quick", "--budget-ms", "0"], &dir.path().join("y"));
    assert_eq!(code, 1);
    assert_eq!(r["complete"], false);
}

#[test]
fn malformed_input_exits_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("bad.txt");
    fs::write(&g, "p sg 2 1\ne 1 3 -\n").unwrap();
    let o = exactsign(&["exactdist", path_str(&g), "-k", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8(o.stderr).unwrap().contains("line 2"));
}
