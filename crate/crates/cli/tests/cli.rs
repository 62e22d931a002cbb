use std::process::{Command, Output};

fn quaddyn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quaddyn"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("valid JSON on stdout")
}

#[test]
fn dynatomic_prints_canonical_order() {
    let o = quaddyn(&["dynatomic", "--n", "2"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "z^2 + z + c + 1");
    let o = quaddyn(&["dynatomic", "--n", "1", "--m", "1"]);
    assert_eq!(stdout(&o).trim(), "z^2 + z + c");
    let o = quaddyn(&["dynatomic", "--n", "1", "--c", "-3/4"]);
    assert_eq!(stdout(&o).trim(), "z^2 - z - 3/4");
}

#[test]
fn portrait_json() {
    // the 2-cycle collapses onto a fixed point at c = -3/4
    let v = json(&quaddyn(&["portrait", "--c", "-3/4"]));
    assert_eq!(v["label"], "4(1,1)");
    let v = json(&quaddyn(&[
        "portrait", "--c", "-29/16", "--d", "33", "--nmax", "6",
    ]));
    assert_eq!(v["label"], "14(3,1,1)");
    assert_eq!(v["result"]["search_params"]["n_max"], 6);
}

#[test]
fn enumerate_two_cycle() {
    let v = json(&quaddyn(&[
        "enumerate",
        "--max-vertices",
        "4",
        "--cycles",
        "(2)",
    ]));
    let list = v.as_array().unwrap();
    assert_eq!(list.len(), 1);
    assert_eq!(list[0]["n"], 4);
}

#[test]
fn lift_record() {
    let v = json(&quaddyn(&["lift", "--label", "8(3)", "--x", "3/2"]));
    assert_eq!(v["label"], "8(3)");
    assert_eq!(v["degenerate"], false);
}

#[test]
fn density_text_and_json() {
    let o = quaddyn(&["density", "--poly", "10(3,1,1)", "--limit", "10000"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("893 of 1229"));
    let v = json(&quaddyn(&[
        "--json", "density", "--poly", "10(3,2)", "--limit", "1000",
    ]));
    assert_eq!(v["report"]["kind"], "natural density proxy");
}

#[test]
fn scan_rational_small() {
    let v = json(&quaddyn(&[
        "scan-rational",
        "--height",
        "10",
        "--jobs",
        "2",
        "--json",
    ]));
    assert_eq!(v["scanned"], 127);
    assert_eq!(v["n_max"], 6);
    assert_eq!(v["tally"]["4(2)"], 4);
    assert!(v["unclassified"].as_array().unwrap().is_empty());
}

#[test]
fn scan_curve_flags() {
    let v = json(&quaddyn(&[
        "scan-curve",
        "--label",
        "8(4)",
        "--height",
        "6",
        "--json",
    ]));
    let recs = v["records"].as_array().unwrap();
    assert!(!recs.is_empty());
    assert!(recs.iter().all(|r| r["c_rational"] == true));
    assert_eq!(
        quaddyn(&["scan-curve", "--label", "9(9)"]).status.code(),
        Some(2)
    );
}

#[test]
fn verify_all_filter_and_exit_codes() {
    let o = quaddyn(&["verify-all", "--only", "catalog"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("PASS  catalog-valid"));
    let v = json(&quaddyn(&["verify-all", "--only", "bounds", "--json"]));
    assert_eq!(v["rows"].as_array().unwrap().len(), 1);
    assert_eq!(
        quaddyn(&["verify-all", "--only", "nope"]).status.code(),
        Some(2)
    );
}

#[test]
fn corrupted_catalog_fails_the_catalog_row() {
    let dir = std::env::temp_dir().join(format!("quaddyn-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("catalog.json");
    let text = quaddyn::Catalog::builtin()
        .to_json()
        .replacen("\"8(3)\"", "\"8(9)\"", 1);
    std::fs::write(&path, text).unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_quaddyn"))
        .args(["verify-all", "--only", "catalog"])
        .env("QUADDYN_CATALOG", &path)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL  catalog-valid"));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(quaddyn(&["bogus"]).status.code(), Some(2));
    assert_eq!(quaddyn(&["dynatomic"]).status.code(), Some(2));
    assert_eq!(quaddyn(&["portrait", "--c", "1/0"]).status.code(), Some(2));
    assert_eq!(
        quaddyn(&["density", "--poly", "thm62"]).status.code(),
        Some(2)
    );
}

#[test]
fn unreadable_catalog_is_a_failure() {
    let o = Command::new(env!("CARGO_BIN_EXE_quaddyn"))
        .args(["verify-all", "--only", "catalog"])
        .env("QUADDYN_CATALOG", "/nonexistent/catalog.json")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL  catalog-valid"));
}
