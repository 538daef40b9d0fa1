use std::io::Write;
use std::process::{Command, Output, Stdio};

fn run(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_milnor-zeta"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    if let Some(text) = stdin {
        child.stdin.take().unwrap().write_all(text.as_bytes()).unwrap();
    } else {
        drop(child.stdin.take());
    }
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn temp_file(name: &str, contents: &str) -> String {
    let path = std::env::temp_dir().join(format!("milnor-zeta-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path.to_string_lossy().into_owned()
}

const MIXED: &str = "z1^3*zbar1 + z2^3*zbar2 + z2^5";

#[test]
fn analyze_mixed_example_with_covering() {
    let file = temp_file("f.txt", MIXED);
    let out = run(&["analyze", "--chi", "covering:3,1", "--samples", "100", &file], None);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema"], "milnor-zeta/1");
    assert_eq!(v["zeta"]["text"], "1");
    assert_eq!(v["warnings"].as_array().unwrap().len(), 0);
    assert!(out.stderr.is_empty());
}

#[test]
fn zeta_of_the_cusp_from_stdin() {
    let out = run(&["zeta"], Some("z1^2+z2^3\n"));
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["text"], "(1-t^2)^-1*(1-t^3)^-1*(1-t^6)^1");
    assert_eq!(v["milnor_number"], 2);
}

#[test]
fn subdivide_refuses_four_variables() {
    let out = run(&["subdivide", "--n", "4", "-e", "z1+z2"], None);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("n >= 4 is unsupported"));
    assert!(out.stdout.is_empty());
}

#[test]
fn strategy_gap_exits_three_with_partial_report() {
    let out = run(
        &["analyze", "--samples", "10", "-e", "z1^3*zbar1 + z2^3*zbar2 + z3^3*zbar3"],
        None,
    );
    assert_eq!(out.status.code(), Some(3));
    let v = json(&out);
    assert_eq!(v["zeta_status"], "strategy-gap");
    assert!(v["zeta"].is_null());
    assert!(!v["facets"].as_array().unwrap().is_empty());
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(!stderr.contains('{'), "stderr must not carry JSON: {stderr}");
}

#[test]
fn parse_errors_exit_two() {
    let out = run(&["zeta", "-e", "z0 + z1"], None);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    let out = run(&["zeta", "-e", "z1*z2 + z1^3"], None);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(run(&["frobnicate"], None).status.code(), Some(1));
    assert_eq!(run(&["zeta", "--chi", "magic", "-e", "z1"], None).status.code(), Some(1));
    assert_eq!(run(&["cover", "--a", "1", "--b", "1", "-e", "z1"], None).status.code(), Some(1));
}

#[test]
fn help_documents_the_grammar() {
    let out = run(&["--help"], None);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("factor := ('z'|'zbar') INDEX ['^' POSINT]"));
    assert!(text.contains("coeff  := DECIMAL | '(' DECIMAL ',' DECIMAL ')'"));
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    let args = ["analyze", "--chi", "curve", "--samples", "200", "--subdivide", "-e", MIXED];
    let a = run(&args, None);
    let b = run(&args, None);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.status.code(), Some(0));
}

#[test]
fn supplied_chi_file() {
    let chi = temp_file("chi.json", r#"[{"I":[1,2],"P":[1,1],"chi":-3}]"#);
    let out = run(
        &[
            "zeta",
            "--samples",
            "50",
            "--chi",
            &format!("supplied:{chi}"),
            "-e",
            "-2*z1^2*zbar1 + z2^2*zbar2 + 2*z1^2*zbar2",
        ],
        None,
    );
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["text"], "(1-t)^1");
    assert_eq!(v["chi_fiber"], -1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("reciprocal"));
}

#[test]
fn cover_chart_chi_and_dot() {
    let out = run(&["cover", "--a", "3", "--b", "1", "-e", "z1+z2"], None);
    let v = json(&out);
    assert_eq!(v["pullback"], "z1^3*zbar1 + z2^3*zbar2");
    assert_eq!(v["degrees"][0]["rdeg_pullback"], 4);
    assert_eq!(v["degrees"][0]["pdeg_pullback"], 2);

    let out = run(&["chart", "--cone", "[[1,1],[0,1]]", "-e", MIXED], None);
    let v = json(&out);
    assert_eq!(v["factor"], "u1^3*ubar1");
    assert_eq!(v["remainder"], serde_json::json!(["u1^2*ubar1^-1*u2^5"]));
    assert_eq!(v["remainder_positive"], true);

    let out = run(&["chi", "--I", "1", "--P", "1", "-e", MIXED], None);
    assert_eq!(json(&out)["chi"], 2);

    let out = run(&["chi", "--I", "1,2", "--P", "1,1", "-e", MIXED], None);
    assert_eq!(out.status.code(), Some(3));

    let out = run(&["subdivide", "--format", "dot", "-e", "z1^2+z2^3"], None);
    let dot = String::from_utf8_lossy(&out.stdout);
    assert!(dot.starts_with("graph divisors {"));
    assert!(dot.contains("\"(3,2)\""));
}
