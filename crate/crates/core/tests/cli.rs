use std::fs;
use std::process::{Command, Output};

fn okubo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_okubo"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn printed_outputs_session() {
    let sym = ["--field", "2147483647(b)", "--beta", "b"];
    let run = |cmd: &[&str]| {
        let o = okubo(&[&sym[..], cmd].concat());
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        stdout(&o)
    };
    assert_eq!(
        run(&["mult", "z01 - z11", "z01 - z11"]),
        "{0, 0, 0, 1, 0, 1, 1, 0}\n"
    );
    assert_eq!(
        run(&["mult", "z02 - z22", "z02 - z22"]),
        "{0, 0, b, 0, b, 0, 0, b}\n"
    );
    assert_eq!(
        run(&["norm", "z01 - z11", "(z01 - z11)*(z01 - z11)"]),
        "0\n"
    );
    assert_eq!(
        run(&["norm", "z02 - z22", "(z02 - z22)*(z02 - z22)"]),
        "0\n"
    );
    assert_eq!(
        run(&["norm", "(z01 - z11)*(z01 - z11)", "(z02 - z22)*(z02 - z22)"]),
        "3b^2\n"
    );
    assert!(run(&["verify", "appendix"]).ends_with("verify appendix: PASS\n"));
}

#[test]
fn single_computations() {
    let o = okubo(&["--field", "gf5", "--alpha", "2", "norm", "z10", "z20"]);
    assert_eq!(stdout(&o), "2\n");
    let o = okubo(&["mult", "z10", "z20"]);
    assert_eq!(stdout(&o), "{0, 0, 0, 0, 0, 0, 0, 0}\n");
    let o = okubo(&["--field", "gf7", "mult", "z10", "z01"]);
    assert_eq!(stdout(&o), "{0, 0, 0, 0, 6, 0, 0, 0}\n");
    let o = okubo(&["--field", "gf3", "info"]);
    let info = stdout(&o);
    assert!(
        info.contains("characteristic: 3") && info.contains("zero-divisor lines: 1120"),
        "{info}"
    );
}

#[test]
fn exit_codes() {
    assert_eq!(
        okubo(&["--field", "gf2", "verify", "identities"])
            .status
            .code(),
        Some(0)
    );
    // A zeroed table entry must be caught as a failed check, not a crash.
    let o = okubo(&["--field", "gf5", "--corrupt-table", "verify", "identities"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("counterexample"));

    let o = okubo(&["--field", "gf2", "verify", "section5"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(
        stderr(&o).contains("section5 does not apply"),
        "{}",
        stderr(&o)
    );
    for bad in [
        &["--field", "6", "info"][..],
        &["--alpha", "0", "info"],
        &["mult", "z10 +", "z20"],
        &["--threads", "0", "info"],
        &["frobnicate"],
        &["verify", "nonsense"],
    ] {
        assert_eq!(okubo(bad).status.code(), Some(2), "{bad:?}");
    }
    assert_eq!(okubo(&["--help"]).status.code(), Some(0));
}

#[test]
fn infinite_field_graph_is_rejected() {
    let o = okubo(&["--field", "gf3t", "--beta", "t", "graph", "orth", "report"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("infinite"), "{}", stderr(&o));
}

#[test]
fn gf2_report_and_gf3_dot() {
    let o = okubo(&["--field", "gf2", "graph", "orth", "report"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["vertex_count"], 135);
    assert_eq!(v["component_census"]["Pair"], 36);
    assert_eq!(v["component_census"]["Star"], 9);
    assert_eq!(v["component_census"]["Big"], 0);
    assert_eq!(v["geodesic_trichotomy"], "pass");
    okubo::graphs::validate_report(&v).unwrap();

    let dir = std::env::temp_dir().join(format!("okubo-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let path = dir.join("gf3.dot");
    let o = okubo(&[
        "--field",
        "gf3",
        "--out",
        path.to_str().unwrap(),
        "graph",
        "orth",
        "dot",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let dot = fs::read_to_string(&path).unwrap();
    assert!(dot.starts_with("graph orthogonality {"));
    assert_eq!(dot.matches("[label=").count(), 1120);
    fs::remove_dir_all(&dir).unwrap();

    let o = okubo(&["--field", "gf2", "graph", "orth", "dot", "--component", "0"]);
    assert_eq!(stdout(&o).matches("[label=").count(), 2);
    let o = okubo(&["--field", "gf2", "graph", "zdiv", "dot"]);
    assert!(stdout(&o).starts_with("digraph"));
}

#[test]
fn output_does_not_depend_on_thread_count() {
    for args in [
        &["--field", "gf3", "graph", "orth", "report"][..],
        &["--field", "gf4", "verify", "annihilators"],
    ] {
        let one = okubo(&[&["--threads", "1"][..], args].concat());
        let four = okubo(&[&["--threads", "4"][..], args].concat());
        assert_eq!(one.status.code(), Some(0));
        assert_eq!(one.stdout, four.stdout, "{args:?}");
        assert_eq!(okubo(args).stdout, one.stdout);
    }
}

#[test]
fn same_seed_same_output() {
    let a = okubo(&["--field", "gf3", "--seed", "1", "verify", "annihilators"]);
    let b = okubo(&["--field", "gf3", "--seed", "1", "verify", "annihilators"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.status.code(), Some(0));
}
