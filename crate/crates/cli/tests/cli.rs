use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_pathgeom"))
}

fn example(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn submax_invariants() {
    let o = run(&["invariants", example("submax.geom").to_str().unwrap()]);
    let out = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{out}");
    assert!(out.contains("wilczynski: vanishes"), "{out}");
    assert!(out.contains("fels: nonzero"), "{out}");
    assert!(out.contains("seed: "), "{out}");
}

#[test]
fn beta_dimension_nine() {
    let o = run(&["beta-dim", "--xi", "3=-2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("dimension: 9"));
    let o = run(&["beta-dim", "--xi", "4=1"]);
    assert!(stdout(&o).contains("dimension: 7"));
    let o = run(&["beta-dim", "--xi", "3=1", "--xi", "4=1", "--tail", "1"]);
    assert!(stdout(&o).contains("dimension: 9"), "{}", stdout(&o));
}

#[test]
fn unparsable_expression_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.geom");
    std::fs::write(&p, r#"{"system": {"F": "p0 +* 2", "G": "0"}}"#).unwrap();
    let o = run(&["invariants", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("system.F"), "{err}");
}

#[test]
fn malformed_document_reports_its_location() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.geom");
    std::fs::write(&p, "{\n  \"system\": {\"F\": \"0\",\n  \"G\": }\n}").unwrap();
    let o = run(&["invariants", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 3"), "{err}");
}

#[test]
fn bad_xi_is_an_input_error() {
    assert_eq!(run(&["beta-dim", "--xi", "three"]).status.code(), Some(2));
}

#[test]
fn torsion_is_reported_as_nonzero() {
    let o = run(&["invariants", example("ode_tod.geom").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("wilczynski: nonzero"));
}

#[test]
fn failed_check_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("not_heavenly.geom");
    std::fs::write(&p, r#"{"theta": {"theta": "x^2*y^2"}}"#).unwrap();
    let o = run(&["heavenly", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
}

#[test]
fn every_example_document_analyses_cleanly() {
    let cases = [
        ("submax.geom", "symmetry"),
        ("submax.geom", "twistor"),
        ("submax.geom", "curvature"),
        ("boris.geom", "curvature"),
        ("boris.geom", "twistor"),
        ("fourdexam.geom", "symmetry"),
        ("fourdexam.geom", "twistor"),
        ("ode_sym_4.geom", "symmetry"),
        ("ode_sym_4.geom", "twistor"),
        ("sparling_tod.geom", "curvature"),
        ("quartic_theta.geom", "heavenly"),
        ("quartic_theta.geom", "from-theta"),
        ("quartic_theta.geom", "twistor"),
        ("rational_theta.geom", "from-theta"),
        ("two_d_sym.geom", "finsler"),
        ("flat_finsler.geom", "finsler"),
    ];
    for (file, cmd) in cases {
        let o = run(&[cmd, example(file).to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{cmd} {file}:\n{}", stdout(&o));
    }
}

#[test]
fn fixtures_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    for p in [&a, &b] {
        let o = run(&["fixtures", "--only", "2,9", "--seed", "17", "--json", p.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    }
    let (ta, tb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert!(!ta.is_empty());
    assert_eq!(ta, tb);
}

#[test]
fn unknown_criterion_is_an_input_error() {
    assert_eq!(run(&["fixtures", "--only", "12"]).status.code(), Some(2));
}
