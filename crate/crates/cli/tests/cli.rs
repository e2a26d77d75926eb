use std::process::{Command, Output};

fn cmaus(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cmaus"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn knit_writes_json_and_dot() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = cmaus(&["knit", "k[x]/(x^3)", "--out", out, "--format", "dot"]);
    assert_eq!(o.status.code(), Some(0));
    let dot = stdout(&o);
    // three indecomposables: k[x]/x^3, k[x]/x^2 and k
    assert_eq!(dot.matches("label=").count(), 3);
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("knit.json")).unwrap())
            .unwrap();
    assert_eq!(json["modules"].as_array().unwrap().len(), 3);
    assert_eq!(json["complete"], true);
    assert!(dir.path().join("knit.dot").exists());
}

#[test]
fn cutoff_exits_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("k.alg");
    std::fs::write(
        &spec,
        "algebra K\n  vertices 1 2\n  arrow a 1 2\n  arrow b 1 2\nend\n",
    )
    .unwrap();
    let o = cmaus(&[
        "knit",
        "K",
        "--spec",
        spec.to_str().unwrap(),
        "--max-modules",
        "10",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn parse_errors_report_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("bad.alg");
    std::fs::write(&spec, "algebra X\n  vertices 1\n  arrow x 1 2\nend\n").unwrap();
    let o = cmaus(&["gp", "X", "--spec", spec.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("line 3"), "{err}");
}

#[test]
fn omega_g_exit_codes() {
    assert_eq!(cmaus(&["omega-g", "kA2"]).status.code(), Some(0));
    assert_eq!(cmaus(&["omega-g", "k[x]/(x^3)"]).status.code(), Some(1));
    let o = cmaus(&[
        "omega-g",
        "G",
        "--spec",
        concat!(env!("CARGO_MANIFEST_DIR"), "/../../specs/gentle.alg"),
    ]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn gp_and_aus_reports() {
    let o = cmaus(&["gp", "T2(k[x]/(x^2))", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["inventory"]["count"], 5);
    assert_eq!(v["profile"]["gdim"], 1);

    let o = cmaus(&["aus", "k[x]/(x^2)"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["dim"], 5);
    let o = cmaus(&["aus", "--stable", "k[x]/(x^3)"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["vertices"], 2);
}

#[test]
fn orbits_and_eta() {
    let o = cmaus(&["orbits", "k[x]/(x^2)", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let o = cmaus(&["eta", "k[x]/(x^2)", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["sequences"].as_array().unwrap().len(), 3);
}

#[test]
fn verify_uses_the_verdict_protocol() {
    let o = cmaus(&["verify", "psi-correspondence"]);
    assert_eq!(o.status.code(), Some(0));
    let o = cmaus(&["verify", "7", "--prime", "3", "--format", "text"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("omega-g-battery"));
    // the injective non-projective Γ-module has a projective τ-translate
    let o = cmaus(&[
        "verify",
        "aus-tau-period",
        "--m",
        "1",
        "--t",
        "2",
        "-p",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(cmaus(&["verify", "no-such-claim"]).status.code(), Some(2));
}

#[test]
fn reports_are_deterministic() {
    let strip = |o: Output| {
        let mut v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
        v["millis"] = serde_json::Value::Null;
        v
    };
    let a = strip(cmaus(&["verify", "eta-almost-split", "--seed", "5"]));
    let b = strip(cmaus(&["verify", "eta-almost-split", "--seed", "5"]));
    assert_eq!(a, b);
    let a = cmaus(&[
        "gp",
        "G",
        "--spec",
        concat!(env!("CARGO_MANIFEST_DIR"), "/../../specs/gentle.alg"),
    ]);
    let b = cmaus(&[
        "gp",
        "G",
        "--spec",
        concat!(env!("CARGO_MANIFEST_DIR"), "/../../specs/gentle.alg"),
    ]);
    assert_eq!(a.stdout, b.stdout);
}
