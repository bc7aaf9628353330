use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn finring(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_finring"));
    cmd.args(args).env_remove("FINRING_CAP");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn manifest() -> &'static Path {
    Path::new(env!("CARGO_MANIFEST_DIR"))
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(manifest().join("tests/golden").join(name)).unwrap()
}

#[test]
fn cayley_matches_golden_tables() {
    let o = finring(&["cayley", "sdprod_alg(GF(2), GF(2))"], &[]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), golden("cayley_z2_by_z2.txt"));

    let data = manifest().join("data").join("two_z4_sdprod_z2.json");
    let expr = format!("sdprod_file({:?})", data.display().to_string());
    let o = finring(&["cayley", &expr], &[]);
    assert_eq!(stdout(&o), golden("cayley_2z4_by_z2.txt"));
}

#[test]
fn star_failure_message_and_exit_code() {
    let o = finring(&["star", "Zmod(8)"], &[]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("(★) fails: no subfield exists"));
    let o = finring(&["star", "polyquot(GF(2), [0,0,1])"], &[]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("(★) holds: M = {0, x}, κ = {0, 1}"));
}

#[test]
fn verify_paper_passes() {
    let o = finring(&["verify-paper"], &[]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = stdout(&o);
    assert!(!text.contains("FAIL"));
    assert!(text.trim_end().ends_with("0 failed"));
    let o = finring(&["verify-paper", "--json"], &[]);
    let rows: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(rows.as_array().unwrap().iter().all(|r| r["pass"] == true));
}

#[test]
fn order_cap_from_flag_and_environment() {
    let o = finring(&["analyze", "Zmod(600)"], &[]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("order cap"));
    assert_eq!(finring(&["analyze", "Zmod(600)", "--cap", "1000"], &[]).status.code(), Some(0));
    assert_eq!(finring(&["analyze", "Zmod(600)"], &[("FINRING_CAP", "1000")]).status.code(), Some(0));
    assert_eq!(finring(&["analyze", "Zmod(20)"], &[("FINRING_CAP", "10")]).status.code(), Some(3));
    assert_eq!(finring(&["analyze", "Zmod(20)"], &[("FINRING_CAP", "ten")]).status.code(), Some(2));
}

#[test]
fn seedfile_supplies_expressions() {
    let dir = std::env::temp_dir().join(format!("finring-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let seed: PathBuf = dir.join("pair.txt");
    std::fs::write(&seed, "Zmod(3)\n\nZmod(3)\n").unwrap();
    let o = finring(&["search-actions", "--seedfile", seed.to_str().unwrap()], &[]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("1 action pair(s)"));
    std::fs::write(&seed, "Zmod(4)\n").unwrap();
    let o = finring(&["classify", "--seedfile", seed.to_str().unwrap()], &[]);
    assert!(stdout(&o).contains("class (A): no"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn usage_and_parse_errors() {
    assert_eq!(finring(&[], &[]).status.code(), Some(2));
    assert_eq!(finring(&["cayley", "Zmod(4)", "extra"], &[]).status.code(), Some(2));
    let o = finring(&["cayley", "product(GF(2), GF(2)"], &[]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("expected \")\""));
    assert_eq!(finring(&["cayley", "table_file(\"missing.json\")"], &[]).status.code(), Some(3));
}

#[test]
fn classify_json_for_gf3_squared() {
    let o = finring(&["classify", "sdprod_alg(GF(3), GF(3))", "--json"], &[]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["star"], true);
    assert!(v["class_a"].is_null() && v["class_b"].is_null());
    assert_eq!(v["local"], false);
}
