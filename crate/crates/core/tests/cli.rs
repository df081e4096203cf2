use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn subpart(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_subpart")).args(args).current_dir(dir).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn formulas_table_and_json() {
    let dir = TempDir::new().unwrap();
    let o = subpart(&["formulas", "--q", "2", "--n", "4..8", "--t", "2"], dir.path());
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).lines().any(|l| l.split_whitespace().take(5).eq(["5", "2", "2", "13", "9"])));

    let o = subpart(&["formulas", "--q", "3", "--n", "5", "--t", "2", "--json"], dir.path());
    let rows: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(rows[0]["sigma"], "37");
    assert_eq!(rows[0]["rho"], "28");

    let o = subpart(&["formulas", "--q", "2", "--n", "3", "--t", "2", "--json"], dir.path());
    let rows: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(rows[0]["sigma"], "open");
    assert_eq!(rows[0]["rho"], "nonexistent");

    assert_eq!(code(&subpart(&["formulas", "--q", "6", "--n", "4", "--t", "2"], dir.path())), 2);
    assert_eq!(code(&subpart(&["formulas", "--q", "2", "--n", "4", "--bogus"], dir.path())), 2);
}

#[test]
fn construct_then_verify() {
    let dir = TempDir::new().unwrap();
    let o = subpart(&["construct", "pi-M", "--n", "5", "--t", "2", "--q", "2", "--out", "pm.json"], dir.path());
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stderr).contains("refine"));
    assert_eq!(code(&subpart(&["verify", "pm.json"], dir.path())), 0);

    let o = subpart(&["verify", "pm.json", "--json"], dir.path());
    let report: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["size"], 13);

    // A duplicated part covers its points twice.
    let mut doc: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("pm.json")).unwrap()).unwrap();
    let first = doc["parts"][0].clone();
    doc["parts"].as_array_mut().unwrap().push(first);
    fs::write(dir.path().join("dup.json"), doc.to_string()).unwrap();
    let o = subpart(&["verify", "dup.json"], dir.path());
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("point"));

    fs::write(dir.path().join("bad.json"), "{\"field\":").unwrap();
    assert_eq!(code(&subpart(&["verify", "bad.json"], dir.path())), 2);
    assert_eq!(code(&subpart(&["verify", "missing.json"], dir.path())), 2);

    for (kind, extra) in [("pi-m", ["--t", "2"]), ("spread", ["--t", "2"]), ("beutelspacher", ["--d", "2"])] {
        let n = if kind == "spread" { "4" } else { "5" };
        let mut args = vec!["construct", kind, "--n", n, "--p", "2", "--e", "1"];
        args.extend(extra);
        let o = subpart(&args, dir.path());
        assert_eq!(code(&o), 0, "{kind}");
        fs::write(dir.path().join("x.json"), o.stdout).unwrap();
        assert_eq!(code(&subpart(&["verify", "x.json"], dir.path())), 0, "{kind}");
    }
}

#[test]
fn spread_commands() {
    let dir = TempDir::new().unwrap();
    let o = subpart(&["construct", "maximal-embed", "--n", "4", "--t", "2", "--q", "2", "--out", "s.json"], dir.path());
    assert_eq!(code(&o), 0);

    let v: Value = serde_json::from_str(&stdout(&subpart(&["spread", "validate", "s.json"], dir.path()))).unwrap();
    assert_eq!(v["size"], 5);
    let v: Value = serde_json::from_str(&stdout(&subpart(&["spread", "holes", "s.json"], dir.path()))).unwrap();
    assert_eq!(v["count"], 16);
    assert_eq!(v["count"], v["expected"]);
    let v: Value = serde_json::from_str(&stdout(&subpart(&["spread", "maximal", "s.json"], dir.path()))).unwrap();
    assert_eq!(v["maximal"], true);
    let v: Value = serde_json::from_str(&stdout(&subpart(&["spread", "block", "s.json"], dir.path()))).unwrap();
    assert_eq!(v["union_is_blocking_set"], true);
    fs::write(dir.path().join("b.json"), v["subspace"].to_string()).unwrap();
    let o = subpart(&["spread", "induce", "s.json", "--block", "b.json", "--out", "pi.json"], dir.path());
    assert_eq!(code(&o), 0);
    assert_eq!(code(&subpart(&["verify", "pi.json"], dir.path())), 0);

    // Dropping a member leaves an extendable spread; completion restores maximality.
    let mut doc: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("s.json")).unwrap()).unwrap();
    doc["parts"].as_array_mut().unwrap().pop();
    fs::write(dir.path().join("s4.json"), doc.to_string()).unwrap();
    let v: Value = serde_json::from_str(&stdout(&subpart(&["spread", "maximal", "s4.json"], dir.path()))).unwrap();
    assert_eq!(v["maximal"], false);
    assert!(v["witness"]["basis"].is_array());
    assert_eq!(code(&subpart(&["spread", "complete", "s4.json", "--out", "c.json"], dir.path())), 0);
    let v: Value = serde_json::from_str(&stdout(&subpart(&["spread", "maximal", "c.json"], dir.path()))).unwrap();
    assert_eq!(v["maximal"], true);

    // Two members sharing a point.
    let mut doc: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("s.json")).unwrap()).unwrap();
    let first = doc["parts"][0].clone();
    doc["parts"].as_array_mut().unwrap().push(first);
    fs::write(dir.path().join("bad.json"), doc.to_string()).unwrap();
    assert_eq!(code(&subpart(&["spread", "validate", "bad.json"], dir.path())), 1);
}

#[test]
fn search_commands() {
    let dir = TempDir::new().unwrap();
    let o = subpart(
        &["search", "sigma", "--n", "4", "--t", "2", "--q", "2", "--certificate-file", "c.json"],
        dir.path(),
    );
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["optimum"], 5);
    assert_eq!(v["status"], "exact");
    assert_eq!(v["certificate_file"], "c.json");
    assert_eq!(code(&subpart(&["verify", "c.json"], dir.path())), 0);

    let o = subpart(&["search", "rho", "--n", "3", "--t", "2", "--q", "2"], dir.path());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["status"], "infeasible");
    assert!(v["optimum"].is_null());

    let o = subpart(
        &["search", "find-maximal", "--n", "5", "--t", "2", "--q", "2", "--target", "5", "--symmetry", "off", "--threads", "2"],
        dir.path(),
    );
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["optimum"], 5);

    let o = subpart(&["search", "max-spread", "--n", "5", "--t", "2", "--q", "2", "--budget-nodes", "10"], dir.path());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["status"], "budget-exceeded");

    assert_eq!(code(&subpart(&["search", "find-maximal", "--n", "5", "--t", "2", "--q", "2"], dir.path())), 2);
    assert_eq!(code(&subpart(&["search", "sigma", "--n", "3", "--t", "3", "--q", "2"], dir.path())), 2);
}

#[test]
fn quick_suite_with_tiny_budget_exits_zero() {
    let dir = TempDir::new().unwrap();
    let o = subpart(&["suite", "--quick", "--budget-nodes", "10"], dir.path());
    let text = stdout(&o);
    assert_eq!(code(&o), 0, "{text}");
    assert!(text.lines().all(|l| l.starts_with("PASS ") || l.starts_with("SKIP ")));
    assert!(text.lines().any(|l| l.starts_with("SKIP ")));
}
