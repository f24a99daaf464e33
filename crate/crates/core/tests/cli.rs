use std::path::Path;
use std::process::Command;

use serde_json::Value;

const SQRT5: &str = r#"{"p":5,"modulus":"-5,0,1","certificate":{"kind":"eisenstein"}}"#;

fn normext(args: &[&str], dir: &Path) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_normext"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn workdir() -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("ext.json"), SQRT5).unwrap();
    dir
}

#[test]
fn golden_transcripts() {
    let dir = workdir();
    let d = dir.path();
    assert_eq!(normext(&["vp", "--p", "5", "50"], d), (0, "{\"valuation\":\"2\"}\n".into(), String::new()));
    assert_eq!(
        normext(&["spectral-value", "--p", "5", "--poly", "5,-7,1"], d).1,
        "{\"magnitude\":{\"factors\":{}}}\n"
    );
    assert_eq!(
        normext(&["ext-norm", "--ext", "ext.json", "--element", "0,1"], d).1,
        "{\"magnitude\":{\"factors\":{\"5\":\"-1/2\"}}}\n"
    );
}

#[test]
fn negative_positionals_and_approx() {
    let d = workdir();
    let (code, out, _) = normext(&["norm", "--p", "5", "-3/250", "--approx"], d.path());
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["magnitude"]["factors"]["5"], "3");
    assert_eq!(v["magnitude"]["approx"], 125.0);
}

#[test]
fn extension_subcommands() {
    let dir = workdir();
    let d = dir.path();
    let (code, out, err) = normext(&["basis-norm", "--ext", "ext.json", "--element", "1/5,3"], d);
    assert_eq!(code, 0, "{err}");
    assert_eq!(out, "{\"bound\":{\"factors\":{}},\"magnitude\":{\"factors\":{\"5\":\"1\"}}}\n");
    let (code, out, err) = normext(
        &["galois-norm", "--ext", "ext.json", "--element", "1,1", "--aut", "0,-1"],
        d,
    );
    assert_eq!(code, 0, "{err}");
    assert_eq!(out, "{\"magnitude\":{\"factors\":{}}}\n");
    let (code, _, err) = normext(&["galois-norm", "--ext", "ext.json", "--element", "1,1", "--aut", "0,2"], d);
    assert_eq!(code, 1);
    assert!(err.contains("\"error\":\"certificate\""), "{err}");
    let (code, out, _) = normext(&["newton", "--p", "5", "--poly", "5,-7,1"], d);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["root_magnitudes"].as_array().unwrap().len(), 2);
}

#[test]
fn seminorm_subcommands() {
    let dir = workdir();
    let d = dir.path();
    std::fs::write(d.join("scaled.json"), r#"{"kind":"scaled","c":"2","p":5}"#).unwrap();
    std::fs::write(d.join("maxpow.json"), r#"{"kind":"max_pow","p":5,"k":2}"#).unwrap();
    std::fs::write(
        d.join("z4.json"),
        r#"{"kind":"table","n":4,"values":{"0":{"zero":true},"1":"2","2":"2","3":"2"}}"#,
    )
    .unwrap();
    std::fs::write(d.join("residues.json"), "[0, 1, 2, 3]").unwrap();
    std::fs::write(d.join("rationals.json"), r#"["5", "75/8", 3, "-1/25"]"#).unwrap();

    let (code, out, err) = normext(&["smooth", "--seminorm", "scaled.json", "--element", "5", "--max-n", "64"], d);
    assert_eq!(code, 0, "{err}");
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["terms_evaluated"], 7);
    assert_eq!(v["stabilized"], false);
    assert_eq!(v["last_term"]["factors"]["2"], "1/64");

    let (code, out, _) = normext(
        &["from-const", "--seminorm", "maxpow.json", "--y", "1/5", "--element", "5", "--max-n", "8"],
        d,
    );
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["stabilized"], true);
    assert_eq!(v["last_term"]["factors"]["5"], "-2");

    let (code, out, _) = normext(&["from-bounded", "--seminorm", "z4.json"], d);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["seminorm"]["values"]["2"], serde_json::json!({"factors": {}}));
    let (_, out, _) = normext(&["from-bounded", "--seminorm", "z4.json", "--element", "2"], d);
    assert_eq!(out, "{\"magnitude\":{\"factors\":{}}}\n");

    let (code, out, _) = normext(
        &["check", "--seminorm", "z4.json", "--samples", "residues.json", "--profile", "seminorm,nonarch"],
        d,
    );
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["all_passed"], false);
    assert!(v["verdicts"][0]["witness"].as_str().unwrap().contains("f(1)"));

    let (code, out, _) = normext(
        &["check", "--seminorm", "scaled.json", "--samples", "rationals.json", "--profile", "nonarch,mult,bounded_mult"],
        d,
    );
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["verdicts"][0]["passed"], true);
    assert_eq!(v["verdicts"][1]["passed"], false);
    assert_eq!(v["verdicts"][2]["bound"]["factors"]["2"], "-1");
}

#[test]
fn errors_are_json_with_exit_codes() {
    let dir = workdir();
    let d = dir.path();
    for (args, code, kind) in [
        (vec!["vp", "--p", "6", "50"], 2, "input"),
        (vec!["vp", "--p", "5", "1/0"], 2, "parse"),
        (vec!["vp", "50"], 2, "usage"),
        (vec!["ext-norm", "--ext", "missing.json", "--element", "1"], 2, "input"),
        (vec!["spectral-value", "--p", "5", "--poly", ""], 2, "parse"),
        (vec!["newton", "--p", "5", "--poly", "3"], 1, "domain"),
        (vec!["ext-norm", "--ext", "ext.json", "--element", "1,2,3"], 2, "input"),
    ] {
        let (got, out, err) = normext(&args, d);
        assert_eq!(got, code, "{args:?}: {err}");
        assert!(out.is_empty());
        let v: Value = serde_json::from_str(err.trim()).unwrap();
        assert_eq!(v["error"], kind, "{args:?}");
        assert!(v["message"].is_string());
    }
}
