use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::sync::OnceLock;

fn sparks(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sparks")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Example inputs written once by `selftest --dump-fixtures`.
fn inputs() -> &'static Path {
    static DIR: OnceLock<PathBuf> = OnceLock::new();
    DIR.get_or_init(|| {
        let dir = std::env::temp_dir().join(format!("sparks-cli-{}", std::process::id()));
        let o = sparks(&["selftest", "--dump-fixtures", dir.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
        dir
    })
}

fn input(name: &str) -> String {
    inputs().join(name).display().to_string()
}

#[test]
fn reports_are_deterministic() {
    let args = ["grid", "circle6", "--degree", "0", "--budget", "16", "--seed", "7"];
    let (a, b) = (sparks(&args), sparks(&args));
    assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert!(text.starts_with("command: sparks grid circle6"));
    assert!(text.contains("seed: 7"));
    assert!(text.trim_end().ends_with("status: ok"));
    let other = sparks(&["grid", "circle6", "--degree", "0", "--budget", "16", "--seed", "8"]);
    assert!(stdout(&other).contains("seed: 8"));
}

#[test]
fn cohomology_of_files_and_fixtures() {
    let o = sparks(&["cohomology", "rp2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("H^1 = 0") && text.contains("H^2 = Z/2"), "{text}");
    let f = sparks(&["cohomology", &input("rp2.scx")]);
    assert_eq!(f.status.code(), Some(0));
    assert!(stdout(&f).contains("H^2 = Z/2"));
}

#[test]
fn exit_codes() {
    assert_eq!(sparks(&["cohomology", "no-such-complex"]).status.code(), Some(2));
    assert_eq!(sparks(&["check-axioms", &input("violation_e_is_f.spc")]).status.code(), Some(1));
    assert_eq!(sparks(&["check-axioms", &input("violation_duplicate_index.spc")]).status.code(), Some(1));
    assert_eq!(sparks(&["check-axioms", "circle6"]).status.code(), Some(0));
    assert_eq!(sparks(&["check-cover", "octahedron"]).status.code(), Some(1));
    let bad = inputs().join("bad.scx");
    std::fs::write(&bad, "scx v1\nvertices 3\nsimplex 2 1\n").unwrap();
    let o = sparks(&["cohomology", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("line 3"), "{}", stdout(&o));
}

#[test]
fn witnesses_round_trip_through_files() {
    let wit = inputs().join("half.wit");
    let (a, b) = (input("circle6_half.spk"), input("circle6_three_halves.spk"));
    let o = sparks(&["spark-eq", "circle6", &a, &b, "--out", wit.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("equivalent"));
    let v = sparks(&["spark-eq", "circle6", &a, &b, "--witness", wit.to_str().unwrap()]);
    assert_eq!(v.status.code(), Some(0), "{}", stdout(&v));
    let wrong = sparks(&["spark-eq", "circle6", &a, &a, "--witness", wit.to_str().unwrap()]);
    assert_eq!(wrong.status.code(), Some(1));
}

#[test]
fn bundle_commands() {
    let third = input("circle6_third.lbd");
    let o = sparks(&["bundle", "holonomy", "circle6", &third, "--loop", "0 1 2 3 4 5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("1/3"), "{}", stdout(&o));
    let t = sparks(&["bundle", "tensor", "circle6", &third, &input("circle6_half.lbd")]);
    assert_eq!(t.status.code(), Some(0));
    let c = sparks(&["bundle", "from-chern", "sphere", "--class", "-2"]);
    assert_eq!(c.status.code(), Some(0), "{}", stdout(&c));
}
