use std::io::Write;

use scn_cli::{run, EXIT_INCONCLUSIVE, EXIT_OK, EXIT_USAGE, EXIT_VERIFICATION};

struct Output {
    code: i32,
    stdout: String,
    stderr: String,
}

fn scn(args: &[&str]) -> Output {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(std::iter::once("scn").chain(args.iter().copied()), &mut out, &mut err);
    Output {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn write_temp(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

#[test]
fn ne_prints_status_value_and_certificate() {
    let o = scn(&["ne", "S^2 x S^5 x S^7"]);
    assert_eq!(o.code, EXIT_OK);
    assert!(o.stdout.starts_with("EXACT 7\n"), "{}", o.stdout);
    assert!(o.stdout.contains("product-theorem [level 7]"));
    assert!(o.stdout.contains("triangular"));
}

#[test]
fn lower_bounds_exit_two_only_when_exactness_is_required() {
    let o = scn(&["ne", "S^2 x S^2"]);
    assert_eq!(o.code, EXIT_OK);
    assert!(o.stdout.starts_with("LOWER_BOUND 2\n"));
    assert_eq!(scn(&["ne", "S^2 x S^2", "--require-exact"]).code, EXIT_INCONCLUSIVE);
    assert_eq!(scn(&["--require-exact", "ne", "S^2 x S^5"]).code, EXIT_OK);
}

#[test]
fn parse_errors_point_at_the_column() {
    let o = scn(&["ne", "L(4,3)"]);
    assert_eq!(o.code, EXIT_USAGE);
    assert!(o.stderr.contains("column 3"), "{}", o.stderr);
    assert!(o.stderr.contains("\n    ^"), "{}", o.stderr);
    assert_eq!(scn(&["ne", "S^2 y S^3"]).code, EXIT_USAGE);
    assert_eq!(scn(&["frobnicate"]).code, EXIT_USAGE);
    assert_eq!(scn(&["ne"]).code, EXIT_USAGE);
}

#[test]
fn help_goes_to_stdout_with_success() {
    let o = scn(&["--help"]);
    assert_eq!(o.code, EXIT_OK);
    assert!(o.stdout.contains("Usage"));
}

#[test]
fn json_results_verify_and_round_trip() {
    for expr in ["CP^2 x CP^3", "M(Z/2,2) x M(Z,4) x M(Z/12,7)", "S^2 x S^2"] {
        let o = scn(&["ne", expr, "--json"]);
        assert_eq!(o.code, EXIT_OK);
        let result: scn_core::EngineResult = serde_json::from_str(&o.stdout).unwrap();
        assert_eq!(serde_json::to_string_pretty(&result).unwrap() + "\n", o.stdout);
        let file = write_temp(&o.stdout);
        let v = scn(&["verify", file.path().to_str().unwrap()]);
        assert_eq!(v.code, EXIT_OK, "{expr}: {}", v.stderr);
        assert!(v.stdout.starts_with("valid:"));
    }
}

#[test]
fn bare_certificates_verify() {
    let o = scn(&["ne", "HP^2 x HP^3", "--json"]);
    let value: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
    let file = write_temp(&value["certificate"].to_string());
    assert_eq!(scn(&["verify", file.path().to_str().unwrap()]).code, EXIT_OK);
}

#[test]
fn tampered_premises_are_named() {
    let o = scn(&["ne", "S^2 x S^5 x S^7", "--json"]);
    let mut value: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
    let premise = &mut value["certificate"]["premises"][3]["sub"]["premises"][0]["fact"];
    premise["degree"] = serde_json::json!(2);
    let file = write_temp(&value.to_string());
    let v = scn(&["verify", file.path().to_str().unwrap()]);
    assert_eq!(v.code, EXIT_VERIFICATION);
    assert!(v.stderr.contains("premises[3].sub.premises[0]"), "{}", v.stderr);

    let j = scn(&["verify", "--json", file.path().to_str().unwrap()]);
    assert_eq!(j.code, EXIT_VERIFICATION);
    let report: serde_json::Value = serde_json::from_str(&j.stdout).unwrap();
    assert_eq!(report["valid"], false);
}

#[test]
fn verify_rejects_garbage_and_missing_files() {
    let file = write_temp("{\"hello\": 1}");
    assert_eq!(scn(&["verify", file.path().to_str().unwrap()]).code, EXIT_VERIFICATION);
    assert_eq!(scn(&["verify", "/nonexistent/cert.json"]).code, EXIT_USAGE);
}

#[test]
fn table_override_by_flag_and_bad_tables() {
    let table = scn_core::SphereTable::default();
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../core/data/sphere_table.txt")).unwrap();
    assert_eq!(scn_core::SphereTable::parse(&text).unwrap(), table);
    let good = write_temp(&text);
    assert_eq!(scn(&["ne", "S^3 x S^5", "--table", good.path().to_str().unwrap()]).code, EXIT_OK);
    let bad = write_temp("version 1\n3 4 Z/\n");
    let o = scn(&["ne", "S^3 x S^5", "--table", bad.path().to_str().unwrap()]);
    assert_eq!(o.code, EXIT_USAGE);
    assert!(o.stderr.contains("line 2"), "{}", o.stderr);
}

#[test]
fn labs_report_and_pass() {
    for args in [
        &["lab", "qr", "Z/2+Z/4"][..],
        &["lab", "nj", "Z/2+Z/4"],
        &["lab", "bcm", "Z/2", "Z/4"],
        &["lab", "bcm", "Z/2", "Z/2"],
        &["lab", "lu", "Z/2", "Z/4"],
    ] {
        let o = scn(args);
        assert_eq!(o.code, EXIT_OK, "{args:?}: {}{}", o.stdout, o.stderr);
        assert!(o.stdout.ends_with("PASS\n"), "{}", o.stdout);
    }
    let o = scn(&["lab", "bcm", "Z/3", "Z/9", "--json"]);
    let report: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(report["violations"], 0);
}

#[test]
fn lab_arguments_are_checked() {
    assert_eq!(scn(&["lab", "nj", "Z/6"]).code, EXIT_USAGE);
    assert_eq!(scn(&["lab", "qr", "Z"]).code, EXIT_USAGE);
    assert_eq!(scn(&["lab", "qr", "Z/"]).code, EXIT_USAGE);
    assert_eq!(scn(&["lab", "lu", "Z/2"]).code, EXIT_USAGE);
    assert_eq!(scn(&["lab", "qr", "Z/2+Z/2+Z/2+Z/2+Z/2"]).code, EXIT_USAGE);
    assert_eq!(scn(&["lab", "qr", "Z/128", "--max-order", "64"]).code, EXIT_USAGE);
}

#[test]
fn binary_honours_the_table_environment_variable() {
    let bin = env!("CARGO_BIN_EXE_scn");
    let ok = std::process::Command::new(bin).args(["ne", "S^3 x S^5"]).env_remove("SCN_SPHERE_TABLE").output().unwrap();
    assert_eq!(ok.status.code(), Some(EXIT_OK));
    let bad = write_temp("version 7\n");
    let o = std::process::Command::new(bin)
        .args(["ne", "S^3 x S^5"])
        .env("SCN_SPHERE_TABLE", bad.path())
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(EXIT_USAGE), "{}", String::from_utf8_lossy(&o.stderr));
}
