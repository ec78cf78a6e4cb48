//! End-to-end tests against the built binary: golden outputs, the exit-code
//! contract, and the file-producing flags.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ifnorm"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary should run")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is UTF-8")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("stderr is UTF-8")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("terminated by signal")
}

fn temp_path(name: &str) -> std::path::PathBuf {
    std::env::temp_dir().join(format!("ifnorm-cli-test-{}-{name}", std::process::id()))
}

#[test]
fn norm_rewrites_a_tested_if() {
    let out = run(&["norm", "--algo", "norm", "(if (if u v w) y z)"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "(if u (if v y z) (if w y z))\n");
}

#[test]
fn all_algorithms_agree_from_the_command_line() {
    for algo in ["norm", "norm1", "norm2"] {
        let out = run(&["norm", "--algo", algo, "(if (if a b c) b a)"]);
        assert_eq!(code(&out), 0, "{algo} failed: {}", stderr(&out));
        assert_eq!(stdout(&out), "(if a (if b b a) (if c b a))\n", "{algo}");
    }
}

#[test]
fn norm_stats_lines() {
    let out = run(&["norm", "--stats", "(if (if u v w) y z)"]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        stdout(&out),
        "(if u (if v y z) (if w y z))\ncallCount=8\nmaxDepth=3\nm=9\nlex=(1,7)\n",
    );
}

#[test]
fn measure_goldens() {
    for (which, expr, want) in [
        ("m", "a", "1"),
        ("m", "(if (if u v w) y z)", "9"),
        ("lex", "(if (if u v w) y z)", "(1,7)"),
        ("tested-ifs", "(if a b c)", "0"),
        ("size", "(if (if u v w) y z)", "7"),
        ("if-depth", "(if (if u v w) y z)", "2"),
    ] {
        let out = run(&["measure", "--which", which, expr]);
        assert_eq!(code(&out), 0);
        assert_eq!(stdout(&out), format!("{want}\n"), "--which {which} on {expr}");
    }
}

#[test]
fn enum_count_and_listing() {
    let out = run(&["enum", "--max-ifs", "1", "--alphabet", "a", "--count"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "2\n");

    let out = run(&["enum", "--max-ifs", "0", "--alphabet", "a"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "a\n");

    let out = run(&["enum", "--max-ifs", "1", "--alphabet", "a"]);
    assert_eq!(stdout(&out), "a\n(if a a a)\n");
}

#[test]
fn taut_reports_the_first_falsifier() {
    let out = run(&["taut", "a"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "falsifiable a=0\n");

    let out = run(&["taut", "(if (if a b c) a c)"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "falsifiable a=1,b=0,c=0\n");
}

#[test]
fn verify_reports_per_suite_lines() {
    let out = run(&["verify", "--suite", "equivalence", "--max-ifs", "2", "--alphabet", "a"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(
        text.starts_with("suite equivalence: PASS (exprs=5, edges=0)\n"),
        "unexpected report:\n{text}",
    );
    assert!(text.ends_with("verify: PASS\n"), "unexpected report:\n{text}");
}

#[test]
fn verify_trivial_universe() {
    let out = run(&["verify", "--max-ifs", "0", "--alphabet", "a", "--suite", "measure-decrease"]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        stdout(&out),
        "suite measure-decrease: PASS (exprs=1, edges=0)\nverify: PASS\n",
    );
}

#[test]
fn verify_quiet_prints_nothing() {
    let out = run(&["--quiet", "verify", "--max-ifs", "1", "--alphabet", "a", "--suite", "taut-oracle"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "");
}

#[test]
fn exit_code_contract() {
    // 1: parse error
    let out = run(&["norm", "(if a b"]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("parse error"), "{}", stderr(&out));

    // 1: clap usage error
    let out = run(&["norm", "--bogus", "x"]);
    assert_eq!(code(&out), 1);

    // 1: unknown suite
    let out = run(&["verify", "--suite", "nope"]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("unknown suite"), "{}", stderr(&out));

    // 1: config error surfaced from validation
    let out = run(&["verify", "--max-ifs", "9"]);
    assert_eq!(code(&out), 1);

    // 1: trace requested from the algorithm that records none
    let out = run(&["norm", "--algo", "norm1", "--trace", "/dev/null", "a"]);
    assert_eq!(code(&out), 1);

    // 2: fuel exhausted
    let out = run(&["norm", "--fuel", "1", "(if a b c)"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("fuel exhausted"), "{}", stderr(&out));

    // 3: a failing suite (forced by starving every run of fuel)
    let out = run(&["verify", "--fuel", "1", "--max-ifs", "1", "--alphabet", "a", "--suite", "equivalence"]);
    assert_eq!(code(&out), 3);
    assert!(stdout(&out).contains("FAIL"), "{}", stdout(&out));

    // 0: help and version
    assert_eq!(code(&run(&["--help"])), 0);
    assert_eq!(code(&run(&["--version"])), 0);
}

#[test]
fn expression_via_stdin_and_file() {
    let mut child = bin()
        .args(["norm", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .expect("binary should spawn");
    child
        .stdin
        .as_mut()
        .expect("stdin piped")
        .write_all(b"(if a b c)\n")
        .expect("write to child");
    let out = child.wait_with_output().expect("child runs");
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "(if a b c)\n");

    let path = temp_path("expr.txt");
    std::fs::write(&path, "(if (if u v w) y z)").expect("temp file");
    let out = run(&["norm", "--file", path.to_str().expect("utf-8 path")]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "(if u (if v y z) (if w y z))\n");
    let _ = std::fs::remove_file(&path);

    let out = run(&["norm"]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("no expression given"), "{}", stderr(&out));
}

#[test]
fn trace_file_holds_the_call_edges() {
    let path = temp_path("trace.json");
    let out = run(&[
        "norm",
        "--trace",
        path.to_str().expect("utf-8 path"),
        "(if (if u v w) y z)",
    ]);
    assert_eq!(code(&out), 0);
    let body = std::fs::read_to_string(&path).expect("trace written");
    let edges: serde_json::Value = serde_json::from_str(&body).expect("trace is JSON");
    let edges = edges.as_array().expect("trace is an array");
    assert_eq!(edges.len(), 7);
    assert_eq!(edges[0]["seq"], 0);
    assert_eq!(edges[0]["depth"], 0);
    assert_eq!(edges[0]["rule"], "IF_IF");
    assert_eq!(edges[0]["caller"], "(if (if u v w) y z)");
    assert_eq!(edges[0]["callee"], "(if u (if v y z) (if w y z))");
    assert_eq!(edges[6]["rule"], "IF_AT_RIGHT");
    let _ = std::fs::remove_file(&path);
}

#[test]
fn json_report_for_norm() {
    let path = temp_path("norm.json");
    let out = run(&[
        "--json",
        path.to_str().expect("utf-8 path"),
        "norm",
        "(if a b c)",
    ]);
    assert_eq!(code(&out), 0);
    let body = std::fs::read_to_string(&path).expect("report written");
    assert_eq!(
        body,
        concat!(
            "{\n",
            "  \"algo\": \"norm\",\n",
            "  \"callCount\": 3,\n",
            "  \"input\": \"(if a b c)\",\n",
            "  \"maxDepth\": 1,\n",
            "  \"result\": \"(if a b c)\",\n",
            "  \"status\": \"completed\"\n",
            "}\n",
        ),
    );
    let _ = std::fs::remove_file(&path);
}

#[test]
fn json_report_for_verify() {
    let path = temp_path("verify.json");
    let out = run(&[
        "--json",
        path.to_str().expect("utf-8 path"),
        "verify",
        "--max-ifs",
        "1",
        "--alphabet",
        "a",
        "--suite",
        "isn",
    ]);
    assert_eq!(code(&out), 0);
    let body = std::fs::read_to_string(&path).expect("report written");
    let report: serde_json::Value = serde_json::from_str(&body).expect("report is JSON");
    assert_eq!(report["passed"], true);
    assert_eq!(report["config"]["maxIfNodes"], 1);
    assert_eq!(report["config"]["alphabet"], serde_json::json!(["a"]));
    assert_eq!(report["outcomes"][0]["suite"], "isn");
    assert_eq!(report["outcomes"][0]["exprsChecked"], 2);
    assert_eq!(report["outcomes"][0]["passed"], true);
    let _ = std::fs::remove_file(&path);
}
