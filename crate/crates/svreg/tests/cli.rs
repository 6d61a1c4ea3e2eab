//! End-to-end checks of the svreg binary: subcommands, manifest I/O, the
//! report format, and the exit-code contract (0 pass / 1 fail / 2 usage).

use std::process::Command;

fn svreg() -> Command {
    Command::new(env!("CARGO_BIN_EXE_svreg"))
}

fn write_manifest(dir: &std::path::Path, name: &str, body: &str) -> std::path::PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path
}

#[test]
fn eval_pmod_catalan() {
    let out = svreg()
        .args(["eval-pmod", "--n", "2", "--z", "0+1i"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("9.159655941772"), "{text}");
    assert!(text.contains("twist"), "{text}");
}

#[test]
fn relation_five_term_passes_both_modes() {
    let out = svreg()
        .args([
            "relation",
            "--relation",
            "five_term(x=t, y=1/2)",
            "--n",
            "2",
            "--mode",
            "both",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("PASS"), "{text}");
}

#[test]
fn lemma419_reports_term_count() {
    let out = svreg().args(["lemma419", "--n", "4"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("terms"), "{text}");
}

#[test]
fn exit_codes_follow_the_contract() {
    // verdict failure -> 1
    let dir = std::env::temp_dir().join("svreg-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let bad = write_manifest(
        &dir,
        "not-a-cocycle.json",
        r#"{
            "weight": 4, "variant": "Mtilde",
            "terms": [{"coeff": "1", "order": 3, "arg": "t", "wedge": ["t-3"]}]
        }"#,
    );
    let out = svreg()
        .args(["check-cocycle", "--manifest", bad.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    // usage error -> 2
    let out = svreg()
        .args(["eval-pmod", "--n", "2", "--z", "not-a-number"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn manifest_driven_cocycle_check_with_pool() {
    let dir = std::env::temp_dir().join("svreg-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = write_manifest(
        &dir,
        "pair-m-pool.json",
        r#"{
            "weight": 4, "variant": "M",
            "terms": [
                {"coeff": "1", "order": 3, "arg": "t", "wedge": ["t-3"]},
                {"coeff": "1", "order": 3, "arg": "t^-1", "wedge": ["t/(t-3)"]}
            ],
            "relation_pool": ["inversion(x=t)"]
        }"#,
    );
    let report_path = dir.join("report.json");
    let out = svreg()
        .args([
            "check-cocycle",
            "--manifest",
            path.to_str().unwrap(),
            "--report",
            report_path.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report_path).unwrap()).unwrap();
    assert_eq!(report["format"], "svreg-report-v1");
    assert_eq!(report["verdicts"][0]["pass"], true);
}

#[test]
fn strict_manifest_rejects_unknown_fields_lenient_warns() {
    let dir = std::env::temp_dir().join("svreg-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = write_manifest(
        &dir,
        "unknown-field.json",
        r#"{
            "weight": 4, "variant": "Mtilde",
            "terms": [{"coeff": "1", "order": 3, "arg": "t", "wedge": ["t"]}],
            "surprise": true
        }"#,
    );
    let out = svreg()
        .args(["check-cocycle", "--manifest", path.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = svreg()
        .args([
            "--lenient",
            "check-cocycle",
            "--manifest",
            path.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("warning"));
}

#[test]
fn boundary_and_is_global_commands() {
    let dir = std::env::temp_dir().join("svreg-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = write_manifest(
        &dir,
        "single-term.json",
        r#"{
            "weight": 4, "variant": "Mtilde",
            "terms": [{"coeff": "1", "order": 3, "arg": "t", "wedge": ["t-3"]}]
        }"#,
    );
    let out = svreg()
        .args(["boundary", "--manifest", path.to_str().unwrap(), "--place", "t-3"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("[3 mod (t-3)]_3"), "{text}");

    // the cocycle pair is global; the single term is not
    let pair = write_manifest(
        &dir,
        "pair.json",
        r#"{
            "weight": 4, "variant": "Mtilde",
            "terms": [
                {"coeff": "1", "order": 3, "arg": "t", "wedge": ["t-3"]},
                {"coeff": "1", "order": 3, "arg": "t^-1", "wedge": ["t/(t-3)"]}
            ]
        }"#,
    );
    let out = svreg()
        .args(["is-global", "--manifest", pair.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn standard_integral_and_reg_det_commands() {
    let out = svreg()
        .args(["standard-integral", "--which", "bump", "--c", "2"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));

    let out = svreg()
        .args([
            "reg-det",
            "--r-matrix",
            r#"[["0+2i"]]"#,
            "--t-matrix",
            r#"[["1"]]"#,
            "--n",
            "1",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("c_{n+1}"), "{text}");
}
