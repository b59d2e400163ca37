use std::io::Write;
use std::process::{Command, Output, Stdio};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_star-algebra")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn documented_invocations() {
    assert_eq!(
        stdout(&["symbol", "--n", "1", "--dir", "left", "--input", "z1^2*d1^3"]),
        "x1^3*z1^2 - 6*x1^2*z1 + 6*x1\n"
    );
    assert_eq!(stdout(&["star", "--n", "1", "--t", "0", "--f", "x1", "--g", "z1"]), "x1*z1\n");
    assert_eq!(
        stdout(&["laguerre", "--n", "1", "--alpha", "2", "--k", "0", "--via", "star"]),
        "1/2*z1^2 - 2*z1 + 1\n"
    );
}

#[test]
fn symbol_directions() {
    assert_eq!(stdout(&["symbol", "--n", "1", "--dir", "right", "--input", "d1^3*z1^2"]), "x1^3*z1^2 + 6*x1^2*z1 + 6*x1\n");
    assert_eq!(stdout(&["symbol", "--n", "1", "--dir", "l2r", "--input", "x1*z1"]), "x1*z1 + 1\n");
    assert_eq!(stdout(&["symbol", "--n", "1", "--dir", "r2l", "--input", "x1*z1"]), "x1*z1 - 1\n");
}

#[test]
fn other_subcommands() {
    assert_eq!(stdout(&["star", "--n", "1", "--t", "1", "--f", "x1", "--g", "z1"]), "x1*z1 - 1\n");
    assert_eq!(stdout(&["phi", "--n", "1", "--t", "1", "--f", "x1*z1"]), "x1*z1 + 1\n");
    assert_eq!(stdout(&["phi", "--n", "1", "--t", "1", "--inverse", "--f", "x1*z1 + 1"]), "x1*z1\n");
    assert_eq!(stdout(&["apply", "--n", "1", "--op", "z1^2*d1^3", "--poly", "z1^3"]), "6*z1^2\n");
    assert_eq!(stdout(&["taylor", "--n", "1", "--t", "1", "--f", "x1*z1"]), "alpha=0\t1\nalpha=1\tz1\n");
    assert_eq!(stdout(&["laguerre", "--n", "2", "--alpha", "1,1", "--k", "0,0", "--via", "genfun"]), "z1*z2 - z1 - z2 + 1\n");
}

#[test]
fn negative_t_is_accepted() {
    assert_eq!(stdout(&["star", "--n", "1", "--t", "-2/3", "--f", "x1", "--g", "z1"]), "x1*z1 + 2/3\n");
}

#[test]
fn reads_dash_from_stdin() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_star-algebra"))
        .args(["star", "--n", "1", "--t", "1", "--f", "-", "--g", "z1"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"x1\n").unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "x1*z1 - 1\n");
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["star", "--n", "1", "--t", "1", "--f", "x2", "--g", "z1"]).status.code(), Some(2));
    assert_eq!(run(&["star", "--n", "1", "--t", "1", "--f", "z1^-1", "--g", "z1"]).status.code(), Some(2));
    assert_eq!(run(&["nonsense"]).status.code(), Some(2));
    assert_eq!(run(&["laguerre", "--n", "1", "--alpha", "1,2", "--k", "0"]).status.code(), Some(2));
    assert_eq!(run(&["check", "--suite", "recur"]).status.code(), Some(0));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn check_suites_pass_with_defaults() {
    for suite in ["ortho", "recur", "ode", "genfun", "starexp", "even", "interchange"] {
        let out = stdout(&["check", "--suite", suite]);
        assert!(out.lines().all(|l| l.starts_with("kind=check-summary") && l.contains("verdict=pass")), "{out}");
    }
    let out = stdout(&["check", "--suite", "oracles", "--samples", "20"]);
    assert_eq!(out.lines().count(), 4);
}

#[test]
fn mathieu_records_are_deterministic() {
    let args = ["mathieu", "--oracle", "image", "--n", "1", "--t", "1", "--f", "x1", "--b", "z1^2", "--mmax", "4"];
    let first = stdout(&args);
    assert_eq!(first, stdout(&args));
    let lines: Vec<&str> = first.lines().collect();
    assert_eq!(lines.len(), 5);
    assert_eq!(lines[0], "kind=mathieu\toracle=image_Et\tt=1\tm=1\tpower=member\tverdict=member\tpayload=x1");
    assert!(lines[4].starts_with("kind=mathieu-summary"));
    assert!(lines[4].contains("first_stable_N=1"));

    let out = stdout(&["mathieu", "--oracle", "laguerre", "--n", "1", "--k", "0", "--f", "z1 - 1", "--mmax", "2"]);
    assert!(out.lines().next().unwrap().contains("power=member"));
    assert!(out.lines().nth(1).unwrap().contains("power=non-member"));
}

#[test]
fn mathieu_degree_cap_abort() {
    let out = run(&["mathieu", "--oracle", "image", "--n", "1", "--t", "1", "--f", "x1*z1", "--mmax", "5", "--degree-cap", "6"]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 4);
    assert!(text.lines().last().unwrap().contains("verdict=aborted"));
}
