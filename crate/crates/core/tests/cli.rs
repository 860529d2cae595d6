use std::path::Path;
use std::process::{Command, Output};

fn kh(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kh")).env("KH_CACHE_DIR", cache).args(args).output().expect("run kh")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn compute_hopf_link() {
    let dir = tempfile::tempdir().unwrap();
    let o = kh(dir.path(), &["compute", "--torus", "2", "2", "--ring", "z"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let groups: Vec<(i64, i64)> = v["homology"]["groups"]
        .as_array()
        .unwrap()
        .iter()
        .map(|g| (g["i"].as_i64().unwrap(), g["j"].as_i64().unwrap()))
        .collect();
    assert_eq!(groups, vec![(0, 0), (0, 2), (2, 4), (2, 6)]);
    assert_eq!(v["delta_width"], 2);
}

#[test]
fn cache_hit_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["compute", "--torus", "3", "4", "--ring", "q"];
    let first = stdout(&kh(dir.path(), &args));
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    let second = stdout(&kh(dir.path(), &args));
    let fresh = stdout(&kh(dir.path(), &[&args[..], &["--no-cache"]].concat()));
    assert_eq!(first, second);
    assert_eq!(first, fresh);
    assert!(first.contains(r#""poincare":[{"c":1,"q":5,"t":0},{"c":1,"q":7,"t":0},{"c":1,"q":9,"t":2}"#));
}

#[test]
fn torus_prime_and_formats() {
    let dir = tempfile::tempdir().unwrap();
    let csv = stdout(&kh(dir.path(), &["compute", "--torus-prime", "1", "1", "--ring", "q", "--format", "csv"]));
    assert_eq!(csv, "i,j,free,torsion\n-2,-6,1,\n-2,-4,1,\n0,-2,1,\n0,0,1,\n");
    let text = stdout(&kh(dir.path(), &["compute", "--braid", "1 1 1", "--strands", "2", "--format", "text"]));
    assert!(text.contains("H^{3,7} = Z/2"), "{text}");
    let lee = stdout(&kh(dir.path(), &["compute", "--torus", "2", "4", "--lee", "--format", "csv"]));
    assert_eq!(lee, "i,rank\n0,2\n4,2\n");
}

#[test]
fn verify_and_hk() {
    let dir = tempfile::tempdir().unwrap();
    let o = kh(dir.path(), &["verify", "theorem2", "--k", "2", "--n", "1"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("{20: 1, 22: 3, 24: 2}"));
    let o = kh(dir.path(), &["verify", "center", "--k", "3", "--format", "json"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains(r#""passed":true"#));
    let o = kh(dir.path(), &["hk", "--center", "2", "--format", "csv"]);
    assert_eq!(stdout(&o), "degree,rank\n0,1\n2,3\n4,2\n");
    let o = kh(dir.path(), &["hk", "--matchings", "2", "--format", "text"]);
    assert_eq!(stdout(&o), "(())\n()()\n");
}

#[test]
fn usage_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let o = kh(dir.path(), &["compute", "--torus", "3", "9"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--reduce"));
    assert_eq!(kh(dir.path(), &["verify", "theorem4"]).status.code(), Some(2));
    assert_eq!(kh(dir.path(), &["compute", "--braid", "3", "--strands", "3"]).status.code(), Some(2));
    assert_eq!(kh(dir.path(), &["compute"]).status.code(), Some(2));
    assert_eq!(kh(dir.path(), &["hk", "--center", "5"]).status.code(), Some(2));
}
