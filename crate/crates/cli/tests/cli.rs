use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use tempfile::TempDir;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn run(dir: &Path, args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_cechtower"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs");
    Run {
        code: out.status.code().expect("exited normally"),
        stdout: String::from_utf8(out.stdout).expect("utf-8"),
        stderr: String::from_utf8(out.stderr).expect("utf-8"),
    }
}

fn write(dir: &Path, name: &str, body: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, body).unwrap();
    p
}

fn reserialize(text: &str) -> String {
    let v: serde_json::Value = serde_json::from_str(text).expect("report is JSON");
    let mut s = serde_json::to_string_pretty(&v).unwrap();
    s.push('\n');
    s
}

const CIRCLE3: &str = r#"{"vertices": [0, 1, 2], "simplices": [[0, 1], [1, 2], [0, 2]]}"#;
const SPHERE2: &str = r#"{"simplices": [[0,1,2],[0,1,3],[0,2,3],[1,2,3]]}"#;

#[test]
fn circle_cohomology_from_files() {
    let dir = TempDir::new().unwrap();
    write(dir.path(), "circle3.json", CIRCLE3);
    write(dir.path(), "Z.json", r#"{"free_rank": 1, "torsion": []}"#);
    let r = run(dir.path(), &["cech", "cohomology", "--complex", "circle3.json", "--group", "Z.json", "--degree", "1"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(r.stdout, "H^1 = Z\n");
}

#[test]
fn cohomology_over_a_range_with_basis() {
    let dir = TempDir::new().unwrap();
    let r = run(
        dir.path(),
        &["cech", "cohomology", "--complex", "catalog:rp2_6", "--group", "Z", "--degrees", "0..2"],
    );
    assert_eq!(r.stdout, "H^0 = Z\nH^1 = 0\nH^2 = Z/2\n");
    let r = run(
        dir.path(),
        &["cech", "cohomology", "--complex", "catalog:torus7", "--group", "Z/2", "--degree", "1", "--basis"],
    );
    assert_eq!(r.code, 0);
    assert_eq!(r.stdout.matches("generator").count(), 2);
}

#[test]
fn zero_tower_classifies_to_zero() {
    let dir = TempDir::new().unwrap();
    let tower = format!(r#"{{"complex": {SPHERE2}, "links": ["Z/3"], "cocycles": [{{"degree": 2}}]}}"#);
    write(dir.path(), "zero.json", &tower);
    let r = run(dir.path(), &["tower", "classify", "zero.json"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.contains("class = 0\n"), "{}", r.stdout);
    let r = run(dir.path(), &["tower", "trivial", "zero.json"]);
    assert_eq!(r.stdout, "trivial: true\n");
}

#[test]
fn extend_then_classify() {
    let dir = TempDir::new().unwrap();
    let base = r#"{"complex": "PLACEHOLDER", "links": ["Z"], "cocycles": [{"degree": 2}]}"#;
    let r = run(dir.path(), &["complex", "catalog", "sphere(3)", "--out", "s3.json"]);
    assert_eq!(r.code, 0);
    let s3 = fs::read_to_string(dir.path().join("s3.json")).unwrap();
    write(dir.path(), "base.json", &base.replace("\"PLACEHOLDER\"", &s3));
    let r = run(dir.path(), &["tower", "extend", "base.json", "--link", "Z/3", "--class", "2", "--out", "t.json"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let r = run(dir.path(), &["tower", "classify", "t.json"]);
    assert_eq!(r.stdout, "H^3(X; Z/3) = Z/3\nclass = 2\n");
    let r = run(dir.path(), &["tower", "validate", "t.json"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.stdout.lines().count(), 2);
    let r = run(dir.path(), &["tower", "equivalent", "t.json", "t.json"]);
    assert!(r.stdout.ends_with("equivalent: true\n"));

    // H^3 of a 2-sphere vanishes, so there is no class 1 to realize
    write(dir.path(), "s2.json", &format!(r#"{{"complex": {SPHERE2}, "links": ["Z/3"], "cocycles": [{{"degree": 2}}]}}"#));
    let r = run(dir.path(), &["tower", "extend", "s2.json", "--link", "Z/3", "--class", "1"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("H^3(X; Z/3) = 0"), "{}", r.stderr);
}

#[test]
fn broken_tower_level_is_a_math_failure() {
    let dir = TempDir::new().unwrap();
    let tower = format!(
        r#"{{"complex": {SPHERE2}, "links": ["Z"], "cocycles": [{{"degree": 2, "values": {{"0,1,2": 1}}}}]}}"#
    );
    write(dir.path(), "t.json", &tower);
    let r = run(dir.path(), &["tower", "validate", "t.json"]);
    assert_eq!(r.code, 0, "a single 2-simplex value on a 2-complex is a cocycle");
    let tower = format!(r#"{{"complex": {CIRCLE3}, "links": ["Z"], "cocycles": [{{"degree": 1}}]}}"#);
    write(dir.path(), "wrong.json", &tower);
    let r = run(dir.path(), &["tower", "validate", "wrong.json"]);
    assert_eq!(r.code, 1);
    assert!(r.stdout.contains("FAIL"));
    let r = run(dir.path(), &["tower", "classify", "wrong.json"]);
    assert_eq!(r.code, 1);
}

#[test]
fn input_errors_exit_two() {
    let dir = TempDir::new().unwrap();
    let r = run(dir.path(), &["tower", "classify", "missing.json"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("missing.json"));

    write(dir.path(), "bad.json", "{\n  \"complex\": [1, 2,\n");
    let r = run(dir.path(), &["tower", "classify", "bad.json"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("line 3"), "{}", r.stderr);

    write(dir.path(), "schema.json", r#"{"complex": {"simplices": [[0, 1]]}, "links": ["Z"], "cocycles": [{"degree": "two"}]}"#);
    let r = run(dir.path(), &["tower", "classify", "schema.json"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("cocycles[0].degree"), "{}", r.stderr);

    write(dir.path(), "repeat.json", r#"{"simplices": [[0, 0, 1]]}"#);
    assert_eq!(run(dir.path(), &["complex", "validate", "repeat.json"]).code, 2);
    assert_eq!(run(dir.path(), &["complex", "validate", "catalog:torus"]).code, 2);
    assert_eq!(run(dir.path(), &["cech", "cohomology", "--complex", "catalog:torus7", "--group", "Z/1", "--degree", "1"]).code, 2);
    assert_eq!(run(dir.path(), &["cech", "cohomology", "--complex", "catalog:torus7", "--group", "Z", "--degree", "2..1"]).code, 2);
}

#[test]
fn cochain_checks() {
    let dir = TempDir::new().unwrap();
    // d of the vertex indicator of 0 on the triangle
    write(
        dir.path(),
        "db.json",
        &format!(r#"{{"complex": {CIRCLE3}, "degree": 1, "group": "Z", "values": {{"0,1": -1, "0,2": -1}}}}"#),
    );
    write(dir.path(), "gen.json", r#"{"degree": 1, "group": "Z", "values": {"0,1": 1}}"#);
    let r = run(dir.path(), &["cech", "verify", "--cochain", "db.json", "--coboundary"]);
    assert_eq!(r.code, 0, "{}{}", r.stdout, r.stderr);
    assert!(r.stdout.contains("coboundary: true"));
    let r = run(dir.path(), &["cech", "verify", "--cochain", "gen.json", "--complex", "catalog:circle(3)", "--coboundary"]);
    assert_eq!(r.code, 1);
    let r = run(dir.path(), &["cech", "verify", "--cochain", "gen.json", "--complex", "catalog:circle(3)"]);
    assert_eq!(r.code, 0);
    let r = run(dir.path(), &["cech", "verify", "--cochain", "gen.json"]);
    assert_eq!(r.code, 2, "no complex anywhere");

    write(dir.path(), "v.json", r#"{"degree": 1, "group": "Z/4", "values": {"0,3": 1, "1,2": 3}}"#);
    let r = run(dir.path(), &["cech", "giraud", "--transitions", "v.json", "--complex", "catalog:simplex(3)"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.ends_with("cocycle: true\n"));

    write(
        dir.path(),
        "c.json",
        r#"{"degree": 2, "group": "Z", "values": {"0,1,2": 1}}"#,
    );
    let r = run(dir.path(), &["cech", "contract", "--cochain", "c.json", "--apex", "0", "--complex", "catalog:simplex(3)"]);
    assert_eq!(r.code, 1, "not a cocycle: {}", r.stderr);
    write(dir.path(), "c.json", r#"{"degree": 2, "group": "Z", "values": {"0,1,2": 1, "1,2,3": 1}}"#);
    let r = run(dir.path(), &["cech", "contract", "--cochain", "c.json", "--apex", "0", "--complex", "catalog:simplex(3)"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.ends_with("d(primitive) = input: true\n"));
}

#[test]
fn sequences() {
    let dir = TempDir::new().unwrap();
    let r = run(
        dir.path(),
        &["spectral", "prop31", "--complex", "catalog:sphere(2)", "--l0", "Z", "--ln", "Z/2", "--n", "2", "--degrees", "0..3"],
    );
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(r.stdout.lines().filter(|l| l.ends_with(" exact")).count(), 13);

    write(dir.path(), "ses.json", r#"{"A'": "Z/2", "A": "Z/4", "A''": "Z/2", "inject": [[2]], "project": [[1]]}"#);
    let r = run(dir.path(), &["les", "run", "--complex", "catalog:torus7", "--ses", "ses.json", "--degrees", "0..2"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.ends_with("exact at every node\n"));

    write(dir.path(), "notexact.json", r#"{"A'": "Z", "A": "Z", "A''": "Z/2", "inject": [[4]], "project": [[1]]}"#);
    let r = run(dir.path(), &["les", "run", "--complex", "catalog:torus7", "--ses", "notexact.json", "--degrees", "0..1"]);
    assert_eq!(r.code, 2, "{}", r.stderr);

    let r = run(dir.path(), &["les", "bockstein", "--complex", "catalog:rp2_6", "--p", "2", "--degree", "1"]);
    assert_eq!(r.stdout, "delta: H^1(X; Z/2) = Z/2 -> H^2(X; Z/2) = Z/2\n  generator 1 -> 1\n");

    // Z/2 -> Z/4 -> Z/2 has acyclic middle on a cone only in positive degrees
    let r = run(dir.path(), &["les", "acyclic", "--complex", "catalog:simplex(2)", "--ses", "ses.json", "--degree", "1"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("bijective: true"), "{}", r.stdout);

    let r = run(dir.path(), &["spectral", "pages", "--complex", "catalog:circle(3)", "--stack", "Z,Z/2", "--rmax", "2"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("E_inf:\n  E^(0,0) = Z\n"));
}

#[test]
fn json_reports_round_trip() {
    let dir = TempDir::new().unwrap();
    write(dir.path(), "ses.json", r#"{"A'": "Z", "A": "Z", "A''": "Z/2", "inject": [[2]], "project": [[1]]}"#);
    write(dir.path(), "t.json", &format!(r#"{{"complex": {SPHERE2}, "links": ["Z/3"], "cocycles": [{{"degree": 2}}]}}"#));
    let commands: &[&[&str]] = &[
        &["complex", "catalog"],
        &["complex", "catalog", "klein8"],
        &["complex", "validate", "catalog:torus7"],
        &["cech", "cohomology", "--complex", "catalog:klein8", "--group", "Z^2+Z/4", "--degrees", "0..2", "--basis"],
        &["tower", "validate", "t.json"],
        &["tower", "classify", "t.json"],
        &["tower", "extend", "t.json", "--link", "Z", "--class", ""],
        &["spectral", "pages", "--complex", "catalog:sphere2", "--stack", "Z/2,Z"],
        &["spectral", "prop31", "--complex", "catalog:circle(4)", "--l0", "Z", "--ln", "Z/3", "--n", "1", "--degrees", "0..1"],
        &["les", "run", "--complex", "catalog:rp2_6", "--ses", "ses.json", "--degrees", "0..2"],
        &["les", "bockstein", "--complex", "catalog:rp2_6", "--p", "2", "--degree", "1"],
        &["les", "acyclic", "--complex", "catalog:rp2_6", "--ses", "ses.json", "--degree", "1"],
    ];
    for args in commands {
        let mut args = args.to_vec();
        args.extend(["--format", "json"]);
        let first = run(dir.path(), &args);
        assert_eq!(first.code, 0, "{args:?}: {}", first.stderr);
        assert_eq!(reserialize(&first.stdout), first.stdout, "{args:?}");
        assert_eq!(run(dir.path(), &args).stdout, first.stdout, "{args:?} is not deterministic");
    }
}

#[test]
fn exported_documents_load_back() {
    let dir = TempDir::new().unwrap();
    for name in ["circle(5)", "sphere2", "torus7", "rp2_6", "klein8", "simplex(3)", "sphere(3)"] {
        let r = run(dir.path(), &["complex", "catalog", name, "--out", "x.json"]);
        assert_eq!(r.code, 0);
        let direct = run(dir.path(), &["complex", "validate", &format!("catalog:{name}")]);
        let loaded = run(dir.path(), &["complex", "validate", "x.json"]);
        assert_eq!(direct.stdout, loaded.stdout, "{name}");
    }
}

#[test]
fn selftest_is_reproducible() {
    let dir = TempDir::new().unwrap();
    let a = run(dir.path(), &["selftest", "--seed", "0", "--format", "json"]);
    let b = run(dir.path(), &["selftest", "--seed", "0", "--format", "json"]);
    assert_eq!(a.code, 0, "{}", a.stdout);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(reserialize(&a.stdout), a.stdout);

    let verdicts = |s: &str| -> Vec<bool> {
        let v: serde_json::Value = serde_json::from_str(s).unwrap();
        v["criteria"].as_array().unwrap().iter().map(|c| c["passed"].as_bool().unwrap()).collect()
    };
    let c = run(dir.path(), &["selftest", "--seed", "7", "--format", "json"]);
    assert_eq!(verdicts(&a.stdout), verdicts(&c.stdout));
    assert_eq!(verdicts(&a.stdout).len(), 11);
}
