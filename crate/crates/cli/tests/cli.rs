use std::path::Path;
use std::process::{Command, Output};

fn lbgraph(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lbgraph"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn build_diameter(dir: &Path) {
    let o = lbgraph(dir, &["build", "diameter", "--params", "k=4", "--x", "0x5", "--y", "0xa", "--out", "d.lbg"]);
    assert!(o.status.success(), "{}", stderr(&o));
}

#[test]
fn build_writes_instance_document() {
    let dir = tempfile::tempdir().unwrap();
    build_diameter(dir.path());
    let text = std::fs::read_to_string(dir.path().join("d.lbg")).unwrap();
    assert!(text.starts_with("lbgraph 1\n"));
    assert!(text.contains("meta family diameter"));
}

#[test]
fn build_rejects_bad_k() {
    let dir = tempfile::tempdir().unwrap();
    let o = lbgraph(dir.path(), &["build", "diameter", "--params", "k=3", "--x", "1", "--y", "1"]);
    assert!(!o.status.success());
    assert!(stderr(&o).contains("k must be a power of 2"), "{}", stderr(&o));
}

#[test]
fn build_rejects_all_zero_cycle8_input() {
    let dir = tempfile::tempdir().unwrap();
    let o = lbgraph(dir.path(), &["build", "cycle8", "--params", "k=4", "--x", "0x0", "--y", "0x1"]);
    assert!(!o.status.success());
    assert!(stderr(&o).contains("all-zero x"), "{}", stderr(&o));
}

#[test]
fn verify_exit_code_tracks_outcome() {
    let dir = tempfile::tempdir().unwrap();
    let o = lbgraph(dir.path(), &["verify", "radius", "--params", "k=2", "--out", "r.rep"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("16 pairs, 0 violations"));

    let o = lbgraph(dir.path(), &["report", "r.rep"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("PASS"));
}

#[test]
fn simulate_collect_and_transcript() {
    let dir = tempfile::tempdir().unwrap();
    build_diameter(dir.path());
    let o = lbgraph(dir.path(), &["simulate", "d.lbg", "--program", "collect", "--out", "d.tr"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("matches_expected yes"));

    let o = lbgraph(dir.path(), &["report", "d.tr"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("transcript: 20 nodes"));
}

#[test]
fn simulate_identical_within_round_bound() {
    let dir = tempfile::tempdir().unwrap();
    let o = lbgraph(
        dir.path(),
        &["build", "identical", "--params", "k=4,weight_bits=2", "--x", "0x123", "--y", "0x123", "--out", "i.lbg"],
    );
    assert!(o.status.success(), "{}", stderr(&o));
    let o = lbgraph(dir.path(), &["--seed", "7", "simulate", "i.lbg", "--program", "identical"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let out = stdout(&o);
    assert!(out.contains("seed 7"));
    assert!(out.contains("output true"));
    assert!(out.contains("rounds_within_bound yes"));
}

#[test]
fn simulate_rejects_tiny_bandwidth() {
    let dir = tempfile::tempdir().unwrap();
    build_diameter(dir.path());
    let o = lbgraph(dir.path(), &["--bandwidth-bits", "1", "simulate", "d.lbg"]);
    assert!(!o.status.success());
}

#[test]
fn cutsim_reports_ledger_within_bound() {
    let dir = tempfile::tempdir().unwrap();
    build_diameter(dir.path());
    let o = lbgraph(dir.path(), &["cutsim", "d.lbg"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let out = stdout(&o);
    assert!(out.contains("verdict within bound"));
    assert!(out.contains("bits_alice_to_bob "));
}

#[test]
fn apsp_random_matches_oracle() {
    let dir = tempfile::tempdir().unwrap();
    let o = lbgraph(dir.path(), &["--seed", "3", "apsp", "--random", "16", "--wmax", "50"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("tables match oracle: yes"));
}

#[test]
fn stream_within_bound() {
    let dir = tempfile::tempdir().unwrap();
    build_diameter(dir.path());
    let o = lbgraph(dir.path(), &["stream", "d.lbg", "--passes", "3"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("within_bound yes"));
}

#[test]
fn stream_memory_cap_enforced() {
    let dir = tempfile::tempdir().unwrap();
    build_diameter(dir.path());
    let o = lbgraph(dir.path(), &["stream", "d.lbg", "--memory", "8"]);
    assert!(!o.status.success());
}

#[test]
fn report_rejects_unknown_file() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("junk.txt"), "hello\n").unwrap();
    let o = lbgraph(dir.path(), &["report", "junk.txt"]);
    assert_eq!(o.status.code(), Some(2));
}
