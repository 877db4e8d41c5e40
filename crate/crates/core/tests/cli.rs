use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hypercolor")).args(args).output().expect("binary runs")
}

fn path(dir: &Path, name: &str) -> String {
    dir.join(name).to_string_lossy().into_owned()
}

#[test]
fn gen_color_verify_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let (inst, col) = (path(dir.path(), "g.p3g"), path(dir.path(), "g.col"));
    assert!(run(&["gen", "--n", "60", "--d", "5", "--seed", "3", "--out", &inst]).status.success());
    let out = run(&["color", "--input", &inst, "--colors", "6", "--seed", "1", "--out", &col]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let out = run(&["verify", "--input", &inst, "--coloring", &col]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("pass"));
}

#[test]
fn verify_reports_witness_with_code_3() {
    let dir = tempfile::tempdir().unwrap();
    let (inst, col) = (path(dir.path(), "k.p3g"), path(dir.path(), "k.col"));
    std::fs::write(&inst, "p3g 4 1\n0 1 2\n").unwrap();
    std::fs::write(&col, "0\n0\n0\n1\n").unwrap();
    let out = run(&["verify", "--input", &inst, "--coloring", &col]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("triad"));

    std::fs::write(&col, "0\n1\n0\n0\n# r=2 sizes=3,1\n").unwrap();
    let out = run(&["verify", "--input", &inst, "--coloring", &col]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn malformed_input_exits_5() {
    let dir = tempfile::tempdir().unwrap();
    let (inst, col) = (path(dir.path(), "bad.p3g"), path(dir.path(), "bad.col"));
    std::fs::write(&inst, "p3g 4 2\n0 1 2\n0 1 2\n").unwrap();
    let out = run(&["color", "--input", &inst, "--colors", "3", "--out", &col]);
    assert_eq!(out.status.code(), Some(5));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
}

#[test]
fn too_few_colors_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let (inst, col) = (path(dir.path(), "k6.p3g"), path(dir.path(), "k6.col"));
    assert!(run(&["gen", "--n", "6", "--d", "10", "--complete", "--seed", "0", "--out", &inst]).status.success());
    let out = run(&["color", "--input", &inst, "--colors", "2", "--out", &col]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["color", "--input", &inst, "--colors", "3", "--out", &col]);
    assert!(out.status.success());
}

#[test]
fn forced_pipeline_failure_exits_4() {
    // Too small for a part to reach the absorb threshold.
    let dir = tempfile::tempdir().unwrap();
    let (inst, col) = (path(dir.path(), "s.p3g"), path(dir.path(), "s.col"));
    assert!(run(&["gen", "--n", "60", "--d", "5", "--seed", "2", "--out", &inst]).status.success());
    let out = run(&[
        "color", "--input", &inst, "--colors", "12", "--scale", "1e-6", "--force-pipeline", "--max-retries", "1",
        "--out", &col,
    ]);
    assert_eq!(out.status.code(), Some(4), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn bench_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let inst_dir = dir.path().join("inst");
    std::fs::create_dir(&inst_dir).unwrap();
    for k in 0..2 {
        let p = path(&inst_dir, &format!("g{k}.p3g"));
        assert!(run(&["gen", "--n", "40", "--d", "4", "--seed", &k.to_string(), "--out", &p]).status.success());
    }
    let csv = path(dir.path(), "out.csv");
    let out = run(&["bench", "--dir", &inst_dir.to_string_lossy(), "--colors-rule", "d+1", "--seeds", "3", "--csv", &csv]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().count(), 7);
    assert!(text.lines().skip(1).all(|l| l.ends_with(",pass")));
}

#[test]
fn pipeline_friendly_instance_colors_through_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let (inst, col) = (path(dir.path(), "f.p3g"), path(dir.path(), "f.col"));
    let gen = run(&["gen", "--n", "800", "--d", "16", "--pipeline-friendly", "--colors", "400", "--seed", "4", "--out", &inst]);
    assert!(gen.status.success());
    let out = run(&["color", "--input", &inst, "--colors", "400", "--scale", "1e-6", "--force-pipeline", "--out", &col]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(run(&["verify", "--input", &inst, "--coloring", &col]).status.success());
}
