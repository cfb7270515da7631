//! End-to-end behavior of the binary: exit codes and output stability.

use std::io::Write;
use std::process::Command;

const O2: &str = r#"{"vertices":["v"],"edges":[
  {"id":"1","src":"v","dst":"v"},{"id":"2","src":"v","dst":"v"}]}"#;
const LOOP_ONLY: &str =
    r#"{"vertices":["v"],"edges":[{"id":"a","src":"v","dst":"v"}]}"#;
const EX2: &str = r#"{"pairs":[
  {"mu":{"anchor":"v","edges":["1","2","2"]},"nu":{"anchor":"v","edges":["1","2","2"]}},
  {"mu":{"anchor":"v","edges":["1","1"]},"nu":{"anchor":"v","edges":["1","2","1"]}},
  {"mu":{"anchor":"v","edges":["1","2","1"]},"nu":{"anchor":"v","edges":["1","1"]}},
  {"mu":{"anchor":"v","edges":["2"]},"nu":{"anchor":"v","edges":["2"]}}]}"#;
const NONPOS: &str = r#"{"pairs":[
  {"mu":{"anchor":"v","edges":["1"]},"nu":{"anchor":"v","edges":["2","1"]}},
  {"mu":{"anchor":"v","edges":["2","1"]},"nu":{"anchor":"v","edges":["2","2"]}},
  {"mu":{"anchor":"v","edges":["2","2"]},"nu":{"anchor":"v","edges":["1"]}}]}"#;
const NOT_UNITARY: &str = r#"{"pairs":[
  {"mu":{"anchor":"v","edges":["1"]},"nu":{"anchor":"v","edges":["1"]}}]}"#;

struct Files {
    dir: std::path::PathBuf,
}

impl Files {
    fn new(tag: &str) -> Files {
        let dir = std::env::temp_dir().join(format!("graphalg-cli-test-{tag}-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        Files { dir }
    }

    fn put(&self, name: &str, contents: &str) -> String {
        let path = self.dir.join(name);
        let mut f = std::fs::File::create(&path).unwrap();
        f.write_all(contents.as_bytes()).unwrap();
        path.to_string_lossy().into_owned()
    }
}

fn graphalg(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_graphalg"))
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn exit_codes_follow_the_contract() {
    let files = Files::new("codes");
    let o2 = files.put("o2.json", O2);
    let loop_only = files.put("loop.json", LOOP_ONLY);
    let ex2 = files.put("ex2.json", EX2);
    let nonpos = files.put("nonpos.json", NONPOS);
    let not_unitary = files.put("notu.json", NOT_UNITARY);

    assert_eq!(graphalg(&["validate", &o2]).status.code(), Some(0));
    let out = graphalg(&["validate", &loop_only]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("cycle_without_exit"));

    assert_eq!(graphalg(&["unitary", "check", &o2, &ex2]).status.code(), Some(0));
    assert_eq!(
        graphalg(&["unitary", "check", &o2, &not_unitary]).status.code(),
        Some(1)
    );

    assert_eq!(graphalg(&["verdict", &o2, &ex2]).status.code(), Some(0));
    let out = graphalg(&["verdict", &o2, &nonpos]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("not_auto_nonpositive_cycle"));

    // Malformed input and missing files are input errors.
    assert_eq!(graphalg(&["validate", "/nonexistent.json"]).status.code(), Some(2));
    let garbage = files.put("garbage.json", "{");
    assert_eq!(graphalg(&["validate", &garbage]).status.code(), Some(2));

    // psi on a non-automorphism is a mathematical negative.
    assert_eq!(
        graphalg(&["psi", "eval", &o2, &nonpos, "--period", "1"]).status.code(),
        Some(1)
    );
}

#[test]
fn examples_run_ex2_prints_the_expected_values() {
    let out = graphalg(&["examples", "run", "ex2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("fixture ex2: PASS"));
    assert!(text.contains("auto"));
    assert!(text.contains("psi((112)^inf) = (121)^inf"));
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    let files = Files::new("det");
    let o2 = files.put("o2.json", O2);
    let ex2 = files.put("ex2.json", EX2);
    for sub in [
        vec!["coding", "build", o2.as_str(), ex2.as_str()],
        vec!["verdict", o2.as_str(), ex2.as_str()],
        vec!["psi", "eval", o2.as_str(), ex2.as_str(), "--period", "1,1,2"],
    ] {
        let a = graphalg(&sub);
        let b = graphalg(&sub);
        assert_eq!(a.stdout, b.stdout, "{sub:?}");
    }

    let dot1 = files.put("a.dot", "");
    let dot2 = files.put("b.dot", "");
    graphalg(&["coding", "build", &o2, &ex2, "--dot", &dot1]);
    graphalg(&["coding", "build", &o2, &ex2, "--dot", &dot2]);
    assert_eq!(
        std::fs::read(&dot1).unwrap(),
        std::fs::read(&dot2).unwrap()
    );
}

#[test]
fn fuel_env_var_is_honored() {
    let files = Files::new("fuel");
    let o2 = files.put("o2.json", O2);
    let ex2 = files.put("ex2.json", EX2);
    // One split is needed; a zero-fuel run must fail as an internal error.
    let out = Command::new(env!("CARGO_BIN_EXE_graphalg"))
        .args(["split", "run", &o2, &ex2])
        .env("GRAPHALG_FUEL", "0")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    // An explicit flag overrides the environment.
    let out = Command::new(env!("CARGO_BIN_EXE_graphalg"))
        .args(["split", "run", &o2, &ex2, "--fuel", "10"])
        .env("GRAPHALG_FUEL", "0")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}
