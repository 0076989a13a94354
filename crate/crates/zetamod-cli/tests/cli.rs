//! End-to-end tests of the `zetamod` binary: each one runs the real
//! executable against the sample documents in `inputs/` and pins both the
//! output text and the exit-code contract (0 pass, 1 usage, 2 failed
//! mathematics, 3 inconclusive, 4 budget).

use std::path::PathBuf;
use std::process::{Command, Output};

fn input(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../inputs").join(name)
}

fn run(args: &[&str]) -> Output {
    run_with_env(args, &[])
}

fn run_with_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_zetamod"));
    cmd.args(args);
    for (key, value) in env {
        cmd.env(key, value);
    }
    cmd.output().expect("the binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is UTF-8")
}

fn stderr_of(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("stderr is UTF-8")
}

fn code_of(out: &Output) -> i32 {
    out.status.code().expect("the binary exits normally")
}

// ---------------------------------------------------------------------------
// zeta
// ---------------------------------------------------------------------------

#[test]
fn zeta_prints_the_line_series() {
    let out = run(&["zeta", input("p1_q2.spectrum").to_str().unwrap()]);
    assert_eq!(code_of(&out), 0, "stderr: {}", stderr_of(&out));
    assert_eq!(stdout_of(&out), "1 + 3t + 7t^2 + 15t^3 + 31t^4\n");
}

#[test]
fn zeta_prints_the_cubic_series_at_order_six() {
    let path = input("ell5.curve");
    let expected = "1 + 9t + 54t^2 + 279t^3 + 1404t^4 + 7029t^5 + 35154t^6\n";

    let out = run(&["zeta", path.to_str().unwrap(), "-D", "6"]);
    assert_eq!(code_of(&out), 0, "stderr: {}", stderr_of(&out));
    assert_eq!(stdout_of(&out), expected);

    // The typed flag accepts the same document.
    let out = run(&["zeta", "--curve", path.to_str().unwrap(), "--order", "6"]);
    assert_eq!(code_of(&out), 0);
    assert_eq!(stdout_of(&out), expected);
}

#[test]
fn zeta_reads_fixed_point_tables_to_their_depth() {
    let out = run(&["zeta", "--table", input("ell5.table").to_str().unwrap()]);
    assert_eq!(code_of(&out), 0, "stderr: {}", stderr_of(&out));
    assert_eq!(stdout_of(&out), "1 + 9t + 54t^2 + 279t^3\n");
}

#[test]
fn zeta_truncates_the_line_spectrum_at_the_requested_order() {
    let out = run(&["zeta", "--spectrum", input("p1_q2.spectrum").to_str().unwrap(), "-D", "3"]);
    assert_eq!(code_of(&out), 0, "stderr: {}", stderr_of(&out));
    assert_eq!(stdout_of(&out), "1 + 3t + 7t^2 + 15t^3\n");
}

#[test]
fn zeta_of_an_empty_spectrum_is_one() {
    let path = std::env::temp_dir().join(format!("zetamod-empty-{}.spectrum", std::process::id()));
    std::fs::write(
        &path,
        "kind = \"spectrum\"\n\n[spectrum]\nbase = 2\nhorizon = 4\ncomplete = true\n",
    )
    .unwrap();
    let out = run(&["zeta", path.to_str().unwrap()]);
    let _ = std::fs::remove_file(&path);
    assert_eq!(code_of(&out), 0, "stderr: {}", stderr_of(&out));
    assert_eq!(stdout_of(&out), "1\n");
}

#[test]
fn zeta_rejects_a_mistyped_document() {
    let out = run(&["zeta", "--curve", input("p1_q2.spectrum").to_str().unwrap()]);
    assert_eq!(code_of(&out), 1);
    assert!(stderr_of(&out).contains("expected a curve document"), "stderr: {}", stderr_of(&out));
}

// ---------------------------------------------------------------------------
// rha
// ---------------------------------------------------------------------------

#[test]
fn rha_holds_for_the_cubic() {
    let out = run(&["rha", input("ell5.curve").to_str().unwrap()]);
    assert_eq!(code_of(&out), 0, "stderr: {}", stderr_of(&out));
    let text = stdout_of(&out);
    assert!(text.contains("quotient: 1 + 3t + 5t^2 over F_5"), "stdout: {text}");
    assert!(text.contains("verdict: Holds"), "stdout: {text}");
    assert!(text.contains("lambda = 0.5"), "stdout: {text}");
    assert!(!text.contains("fail"), "stdout: {text}");
}

#[test]
fn rha_fails_for_the_unbalanced_module() {
    let out = run(&["rha", input("split8.table").to_str().unwrap()]);
    assert_eq!(code_of(&out), 2, "stderr: {}", stderr_of(&out));
    let text = stdout_of(&out);
    assert!(text.contains("quotient: 1 - 5t + 4t^2 over F_8"), "stdout: {text}");
    assert!(text.contains("verdict: Fails"), "stdout: {text}");
    assert!(text.contains("bound r = 1:"), "stdout: {text}");
    assert!(text.contains("fail"), "stdout: {text}");
    assert!(text.contains("not a half-integer"), "stdout: {text}");
}

#[test]
fn rha_holds_off_the_half_integer_ladder() {
    let out = run(&["rha", input("nonproj8.table").to_str().unwrap()]);
    assert_eq!(code_of(&out), 0, "stderr: {}", stderr_of(&out));
    let text = stdout_of(&out);
    assert!(text.contains("quotient: 1 - 4t + 4t^2 over F_8"), "stdout: {text}");
    assert!(text.contains("verdict: Holds"), "stdout: {text}");
    assert!(text.contains("lambda = 0.3333333333333333"), "stdout: {text}");
    assert!(text.contains("not a half-integer"), "stdout: {text}");
}

#[test]
fn rha_reports_shallow_data_as_inconclusive() {
    // Three counts cannot certify a degree-2 quotient with the default
    // tail; an explicit one-coefficient tail can.
    let path = input("ell5.table");
    let out = run(&["rha", path.to_str().unwrap()]);
    assert_eq!(code_of(&out), 3, "stderr: {}", stderr_of(&out));
    assert!(stdout_of(&out).contains("verdict: Inconclusive"));

    let out = run(&["rha", path.to_str().unwrap(), "--tail", "1"]);
    assert_eq!(code_of(&out), 0, "stderr: {}", stderr_of(&out));
    assert!(stdout_of(&out).contains("verdict: Holds"));
}

// ---------------------------------------------------------------------------
// count
// ---------------------------------------------------------------------------

#[test]
fn count_emits_text_and_csv() {
    let path = input("ell5.curve");

    let out = run(&["count", path.to_str().unwrap(), "-r", "4"]);
    assert_eq!(code_of(&out), 0, "stderr: {}", stderr_of(&out));
    assert_eq!(stdout_of(&out), "N_1 = 9\nN_2 = 27\nN_3 = 108\nN_4 = 675\n");

    let out = run(&["count", path.to_str().unwrap(), "-r", "3", "--format", "csv"]);
    assert_eq!(code_of(&out), 0);
    assert_eq!(stdout_of(&out), "r,points\n1,9\n2,27\n3,108\n");
}

#[test]
fn count_requires_a_curve_document() {
    let out = run(&["count", input("klein8.model").to_str().unwrap(), "-r", "2"]);
    assert_eq!(code_of(&out), 1);
    assert!(stderr_of(&out).contains("expected a curve document"));
}

// ---------------------------------------------------------------------------
// restrict
// ---------------------------------------------------------------------------

#[test]
fn restrict_to_the_first_power_reproduces_the_document() {
    let path = input("p1_q2.spectrum");
    let original = std::fs::read_to_string(&path).unwrap();

    let out = run(&["restrict", path.to_str().unwrap(), "-r", "1"]);
    assert_eq!(code_of(&out), 0, "stderr: {}", stderr_of(&out));
    assert_eq!(stdout_of(&out), original);
}

#[test]
fn restrict_writes_the_squared_spectrum_to_a_file() {
    let target = std::env::temp_dir().join(format!("zetamod-restrict-{}", std::process::id()));
    let out = run(&[
        "restrict",
        input("p1_q2.spectrum").to_str().unwrap(),
        "-r",
        "2",
        "-o",
        target.to_str().unwrap(),
    ]);
    assert_eq!(code_of(&out), 0, "stderr: {}", stderr_of(&out));
    assert_eq!(stdout_of(&out), "");

    let written = std::fs::read_to_string(&target).unwrap();
    let _ = std::fs::remove_file(&target);
    // Each degree-m orbit splits into gcd(m, 2) orbits of degree
    // m / gcd(m, 2): the degree-1 count 3 + 2*1 = 5 collects the old
    // degree-1 and degree-2 orbits, the three degree-4 orbits split into
    // six of degree 2, and the two degree-3 orbits survive unchanged.
    assert_eq!(
        written,
        "kind = \"spectrum\"\n\n[spectrum]\nbase = 4\nhorizon = 4\ncomplete = false\n\n\
         [spectrum.counts]\n1 = \"5\"\n2 = \"6\"\n3 = \"2\"\n"
    );
}

// ---------------------------------------------------------------------------
// cover
// ---------------------------------------------------------------------------

#[test]
fn cover_verifies_the_klein_model() {
    let out = run(&["cover", input("klein8.model").to_str().unwrap(), "-r", "4"]);
    assert_eq!(code_of(&out), 0, "stderr: {}", stderr_of(&out));
    let text = stdout_of(&out);
    assert!(text.contains("model: 8 points, group order 4"), "stdout: {text}");
    assert!(text.contains("quotient: 2 points, covering degree 4"), "stdout: {text}");
    assert!(text.contains("inertia: 2 (at 8 points)"), "stdout: {text}");
    assert!(text.contains("all counting identities hold"), "stdout: {text}");
    assert_eq!(text.matches(": pass").count(), 4, "stdout: {text}");
}

// ---------------------------------------------------------------------------
// Usage and budget errors.
// ---------------------------------------------------------------------------

#[test]
fn usage_errors_exit_one_and_help_exits_zero() {
    let out = run(&["zeta", "--frobnicate"]);
    assert_eq!(code_of(&out), 1);

    let out = run(&["count", input("ell5.curve").to_str().unwrap()]);
    assert_eq!(code_of(&out), 1, "missing required -r is a usage error");

    let out = run(&["zeta", "inputs/does-not-exist.curve"]);
    assert_eq!(code_of(&out), 1);
    assert!(stderr_of(&out).contains("cannot read"));

    let out = run(&["--help"]);
    assert_eq!(code_of(&out), 0);
    assert!(stdout_of(&out).contains("zeta"));
}

#[test]
fn budget_exhaustion_exits_four() {
    let path = input("ell5.curve");
    let out =
        run_with_env(&["count", path.to_str().unwrap(), "-r", "2"], &[("ZETAMOD_BUDGET", "10")]);
    assert_eq!(code_of(&out), 4, "stderr: {}", stderr_of(&out));
    assert!(stderr_of(&out).contains("budget"), "stderr: {}", stderr_of(&out));

    let out =
        run_with_env(&["count", path.to_str().unwrap(), "-r", "2"], &[("ZETAMOD_BUDGET", "a lot")]);
    assert_eq!(code_of(&out), 1, "a malformed budget is a usage error");
}
