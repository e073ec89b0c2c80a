use std::path::Path;
use std::process::{Command, Output};

use omega_core::parse::{parse_element, parse_poly};
use omega_core::{Element, Kind, Poly};
use serde_json::Value;

fn omega(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_omega"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let out = omega(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", stderr(&out));
    stdout(&out).trim_end().to_string()
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    serde_json::from_str(&ok(&full)).expect("valid JSON")
}

#[test]
fn loop_bracket_identity() {
    let out = ok(&["bracket", "--algebra", "loop", "L(2,1)", "L(-2,0)"]);
    assert_eq!(out, "-4*L(0,1) + 1/2*C(1)");
}

#[test]
fn loop_action_on_one() {
    let args = [
        "act",
        "--algebra",
        "loop",
        "--lambda",
        "2",
        "--mu",
        "3",
        "--alpha",
        "1",
        "L(1,1)",
        "1",
    ];
    assert_eq!(ok(&args), "3*t - 3");
}

#[test]
fn composition_check_passes() {
    let out = ok(&[
        "check",
        "composition",
        "--lambda",
        "2",
        "--mu",
        "3",
        "--box",
        "2",
        "--max-degree",
        "4",
    ]);
    assert!(out.starts_with("PASS"), "{out}");
    assert_eq!(out.matches("PASS").count(), 4);
    let report = json(&["check", "composition", "--lambda", "2", "--mu", "3"]);
    assert_eq!(report["invariance"]["invariant"], true);
    assert_eq!(report["quotient_trivial"], true);
    assert_eq!(report["intertwiner"], true);
}

#[test]
fn excluded_symbol_is_a_usage_error() {
    let out = omega(&[
        "bracket",
        "--algebra",
        "block",
        "--q",
        "-1",
        "L(0,2)",
        "L(1,0)",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    assert!(err.contains("(0,2) = (0,-2q)"), "{err}");
}

#[test]
fn arity_and_syntax_errors() {
    for args in [
        vec!["bracket", "--algebra", "loop", "L(1)", "L(1,0)"],
        vec!["bracket", "--algebra", "loop", "L(1,0) +", "L(1,0)"],
        vec![
            "act", "--lambda", "2", "--mu", "3", "--alpha", "1", "L(1,1)", "t^",
        ],
        vec!["act", "--lambda", "2", "--mu", "3", "L(1,1)", "t"],
        vec![
            "act", "--lambda", "2", "--mu", "3", "--alpha", "0", "--beta", "1", "L(1,1)", "t",
        ],
        vec![
            "act",
            "--algebra",
            "block",
            "--q",
            "2",
            "--lambda",
            "1",
            "--alpha",
            "0",
            "--beta",
            "1",
            "L(1,0)",
            "t",
        ],
        vec![
            "bracket",
            "--algebra",
            "block",
            "--q",
            "i",
            "L(1,0)",
            "L(1,1)",
        ],
        vec![
            "bracket",
            "--algebra",
            "block-trunc",
            "--q",
            "1",
            "L(1,0)",
            "L(1,1)",
        ],
        vec!["check", "jacobi", "--box", "i=-1..1"],
        vec!["check", "jacobi", "--box", "m=-1..1,i=0..1"],
        vec!["probe", "tensor", "--factors", "2,1;3,1,1"],
        vec!["frobnicate"],
    ] {
        let out = omega(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn gaussian_q_needs_opt_in() {
    let out = ok(&[
        "bracket",
        "--algebra",
        "block",
        "--q",
        "1+i",
        "--allow-gaussian-q",
        "L(1,0)",
        "L(1,1)",
    ]);
    assert_eq!(out, "-L(2,1)");
}

#[test]
fn printed_values_parse_back() {
    let cases: [(Kind, [&str; 2]); 4] = [
        (
            Kind::LoopVirasoro,
            ["1/2*L(3,-1) + i*L(1,2)", "L(-3,1) - 2*C(0)"],
        ),
        (Kind::Virasoro, ["L(2) + 3/4*C", "-i*L(-2)"]),
        (
            Kind::block("-3/2".parse().unwrap()).unwrap(),
            ["L(0,0) + L(2,1)", "L(-2,2)"],
        ),
        (
            Kind::block_hat("-1".parse().unwrap()).unwrap(),
            ["L(1,1)", "L(-1,1)"],
        ),
    ];
    for (kind, [a, b]) in cases {
        let name = kind.name();
        let mut args = vec!["bracket", "--algebra", name];
        let q = kind.q().map(|q| q.to_string());
        if let Some(q) = &q {
            args.extend(["--q", q.as_str()]);
        }
        args.extend([a, b]);
        let printed = ok(&args);
        let x: Element = parse_element(&kind, a).unwrap();
        let y: Element = parse_element(&kind, b).unwrap();
        let back: Element = parse_element(&kind, &printed).unwrap();
        assert_eq!(back, x.bracket(&y).unwrap(), "{printed}");
    }
    let printed = ok(&[
        "act",
        "--lambda",
        "1/2",
        "--mu",
        "i",
        "--alpha",
        "-1/2",
        "2*L(-1,1) + L(2,0)",
        "t^3 - t",
    ]);
    let back: Poly = parse_poly(&printed).unwrap();
    let expected = ok(&[
        "--json",
        "act",
        "--lambda",
        "1/2",
        "--mu",
        "i",
        "--alpha",
        "-1/2",
        "2*L(-1,1) + L(2,0)",
        "t^3 - t",
    ]);
    let expected: Value = serde_json::from_str(&expected).unwrap();
    assert_eq!(
        back,
        parse_poly(expected["image"].as_str().unwrap()).unwrap()
    );
}

#[test]
fn probe_verdicts_agree_between_outputs() {
    for alpha in ["0", "1"] {
        let args = [
            "probe",
            "simplicity",
            "--lambda",
            "2",
            "--mu",
            "3",
            "--alpha",
            alpha,
        ];
        let human = ok(&args);
        let report = json(&args);
        let verdict = report["verdict"].as_str().unwrap();
        assert!(human.starts_with(verdict), "{human} vs {verdict}");
        let dim = report["dim"].as_u64().unwrap();
        assert!(human.starts_with(&format!("{verdict}({dim}")), "{human}");
        assert_eq!(verdict == "FillsWindow", alpha == "1");
    }
    let human = ok(&[
        "probe",
        "tensor",
        "--factors",
        "2,1,1;3,1,1",
        "--max-degree",
        "3",
    ]);
    assert!(human.starts_with("FillsWindow(16)"), "{human}");
}

#[test]
fn block_checks() {
    let out = ok(&[
        "check",
        "center",
        "--algebra",
        "block",
        "--q",
        "-3",
        "--box",
        "4",
    ]);
    assert!(out.starts_with("PASS"), "{out}");
    assert!(out.contains("L(0,3): central"), "{out}");
    let report = json(&["check", "embedding", "--q", "2"]);
    assert_eq!(report["violations"].as_array().unwrap().len(), 0);
    let out = ok(&[
        "check",
        "module",
        "--algebra",
        "block",
        "--q",
        "-1",
        "--lambda",
        "2",
        "--alpha",
        "0",
        "--beta",
        "2",
    ]);
    assert!(out.starts_with("PASS"), "{out}");
    let out = ok(&[
        "check",
        "jacobi",
        "--algebra",
        "block-trunc",
        "--q",
        "-1/2",
        "--k",
        "0",
        "--l",
        "2",
        "--box",
        "m=-2..2,i=0..2",
    ]);
    assert!(out.starts_with("PASS"), "{out}");
}

fn emit(dir: &Path, name: &str, params: &[&str]) -> String {
    let path = dir.join(name).to_string_lossy().into_owned();
    let mut args = vec!["emit-table"];
    args.extend_from_slice(params);
    args.extend(["--out", path.as_str()]);
    ok(&args);
    path
}

#[test]
fn table_round_trip_and_classification() {
    let dir = tempfile::tempdir().unwrap();
    let a = emit(
        dir.path(),
        "a.json",
        &["--lambda", "2", "--mu", "3", "--alpha", "1"],
    );
    let b = emit(
        dir.path(),
        "b.json",
        &["--lambda", "2", "--mu", "3", "--alpha", "2"],
    );

    let derived = json(&["classify", &a]);
    assert_eq!(derived["verdict"], "InFamily");
    assert_eq!(derived["params"]["mu"], "3");

    assert_eq!(ok(&["classify", &a, &a]), "Isomorphic(λ=2, μ=3, α=1)");
    assert_eq!(ok(&["classify", &a, &b]), "Distinct(α: 1 ≠ 2)");
    let report = json(&["classify", &a, &b]);
    assert_eq!(report["verdict"], "Distinct");
    assert_eq!(report["differences"][0]["name"], "alpha");

    // A corrupted entry is reported as a verdict, not an error.
    let text = std::fs::read_to_string(&a)
        .unwrap()
        .replace("\"3*t - 3\"", "\"3*t - 4\"");
    std::fs::write(&a, text).unwrap();
    let out = ok(&["classify", &a, &b]);
    assert!(
        out.starts_with("Distinct(table A is not a module table"),
        "{out}"
    );

    let c = emit(
        dir.path(),
        "c.json",
        &["--algebra", "virasoro", "--lambda", "2", "--alpha", "1"],
    );
    assert_eq!(omega(&["classify", &c, &b]).status.code(), Some(2));
    assert_eq!(
        omega(&["classify", "/nonexistent/table.json"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn emitted_table_goes_to_stdout_without_out() {
    let text = ok(&[
        "emit-table",
        "--algebra",
        "block",
        "--q",
        "1/2",
        "--lambda",
        "-1",
        "--alpha",
        "2",
        "--box",
        "1",
    ]);
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["algebra"], "block");
    assert_eq!(v["q"], "1/2");
}

#[test]
fn help_documents_the_grammars() {
    let help = ok(&["--help"]);
    for word in [
        "scalar",
        "poly",
        "element",
        "box",
        "seeds",
        "factors",
        "Exit status",
    ] {
        assert!(help.contains(word), "--help lacks {word}");
    }
}
