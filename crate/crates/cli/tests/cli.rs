use std::path::Path;
use std::process::{Command, Output};

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_shift-ramsey"))
        .args(args)
        .current_dir(dir)
        .env_remove("SHIFT_RAMSEY_OUT_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn sseq_and_solvers() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["sseq", "3"]);
    assert_eq!((code(&o), stdout(&o).trim()), (0, "262144"));
    let o = run(dir.path(), &["sseq", "5"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("tower of height 5"));
    let o = run(dir.path(), &["sseq", "--host-size", "1"]);
    assert_eq!(stdout(&o).trim(), "S_4 = 2^262146 (bit length 262147)");

    let o = run(dir.path(), &["chi", "--level", "2"]);
    assert_eq!((code(&o), stdout(&o).trim()), (0, "3"));
    let o = run(dir.path(), &["omega", "--shift", "9,2"]);
    assert_eq!((code(&o), stdout(&o).trim()), (0, "2"));
}

#[test]
fn extract_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(
        dir.path(),
        &["extract", "--lemma1", "--t", "1", "--seed", "42", "--out", "trace.json", "--coloring-out", "col.txt"],
    );
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let o = run(dir.path(), &["verify", "--trace", "trace.json", "--coloring", "col.txt"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("\"verified\": true"));
    let o = run(dir.path(), &["verify", "--trace", "trace.json", "--seed", "42"]);
    assert_eq!(code(&o), 0);

    // a different coloring must not certify this trace
    let bad = (0..50)
        .map(|s| run(dir.path(), &["verify", "--trace", "trace.json", "--seed", &s.to_string()]))
        .filter(|o| code(o) == 1)
        .count();
    assert!(bad > 0);

    let o = run(dir.path(), &["extract", "--opportunistic", "--level", "4", "--adversary", "bit-rise", "--out", "op.json"]);
    assert_eq!(code(&o), 0);
    let o = run(dir.path(), &["verify", "--trace", "op.json", "--adversary", "bit-rise"]);
    assert_eq!(code(&o), 0);
}

#[test]
fn outputs_are_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        &["extract", "--opportunistic", "--level", "5", "--seed", "9"][..],
        &["color", "--shift", "6,3", "--seed", "3"],
        &["generate", "--level", "3", "--format", "json"],
        &["ramsey", "--host", "level:2", "--pattern", "shift:4,2", "--jobs", "2"],
    ] {
        let a = run(dir.path(), args);
        let b = run(dir.path(), args);
        assert_eq!(code(&a), 0, "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
    let json = stdout(&run(dir.path(), &["generate", "--level", "2"]));
    assert!(json.starts_with("{\n  \"schema_version\": 1,"));
}

#[test]
fn color_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["color", "--level", "2", "--seed", "5", "--out", "c.txt"]);
    assert_eq!(code(&o), 0);
    let o = run(dir.path(), &["color", "--file", "c.txt"]);
    assert_eq!(stdout(&o), std::fs::read_to_string(dir.path().join("c.txt")).unwrap());
    let o = run(dir.path(), &["color", "--level", "1", "--all"]);
    assert_eq!(stdout(&o), "c host points=3 arity=2\n[1,2] [2,3] R\n\nc host points=3 arity=2\n[1,2] [2,3] B\n");
}

#[test]
fn out_dir_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let out = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_shift-ramsey"))
        .args(["generate", "--level", "1", "--format", "edge-list", "--out", "g.txt"])
        .current_dir(dir.path())
        .env("SHIFT_RAMSEY_OUT_DIR", out.path())
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
    assert_eq!(std::fs::read_to_string(out.path().join("g.txt")).unwrap(), "p 3\ne 0 2\n");
}

#[test]
fn ramsey_witness_and_classical() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["ramsey", "--classical", "3,3,5", "--witness-out", "w.txt"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("\"forced\": false"));
    let w = std::fs::read_to_string(dir.path().join("w.txt")).unwrap();
    assert!(w.starts_with("c host graph vertices=5\n"));
    let o = run(dir.path(), &["ramsey", "--host", "level:2", "--pattern", "level:1"]);
    assert!(stdout(&o).contains("\"colorings_checked\": 1024"));
    let o = run(dir.path(), &["ramsey", "--host", "level:2", "--pattern", "level:1", "--mode", "sampled", "--count", "5"]);
    assert!(stdout(&o).contains("\"mode\": \"sampled\""));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&run(dir.path(), &["extract", "--nonsense"])), 2);
    assert_eq!(code(&run(dir.path(), &["chi"])), 2);
    assert_eq!(code(&run(dir.path(), &["extract", "--lemma1", "--t", "1", "--level", "3", "--seed", "1"])), 2);
    assert_eq!(code(&run(dir.path(), &["chi", "--level", "3", "--budget", "1"])), 3);
    assert_eq!(code(&run(dir.path(), &["generate", "--level", "20"])), 3);
    assert_eq!(code(&run(dir.path(), &["ramsey", "--host", "level:3", "--pattern", "level:1"])), 3);
    std::fs::write(dir.path().join("bad.txt"), "c host points=3 arity=2\n[1,2] [2,3] G\n").unwrap();
    let o = run(dir.path(), &["color", "--file", "bad.txt"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
}
