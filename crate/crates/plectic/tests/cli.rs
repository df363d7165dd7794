use std::path::PathBuf;

use plectic::cli::{run, Outcome};
use plectic::io::{parse, Document};
use plectic::repcore::tate;
use serde_json::Value;

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn plectic(args: &[&str]) -> Outcome {
    run(std::iter::once("plectic").chain(args.iter().copied()))
}

fn json(o: &Outcome) -> Value {
    serde_json::from_str(&o.stdout).unwrap_or_else(|e| panic!("not JSON ({e}): {}", o.stdout))
}

#[test]
fn validate_exit_codes() {
    let cases = [
        ("cone_of_identity.json", 0),
        ("counter_two_weights.json", 2),
        ("mhs_extension.json", 0),
        ("mhs_split_two_weights.json", 0),
        ("mhs_wrong_weight.json", 2),
        ("non_mhs2_pmhs.json", 2),
        ("non_mhs2_weak.json", 0),
        ("real_extension.json", 0),
        ("swapped_pieces_bad.json", 2),
        ("tate_1_0.json", 0),
        ("tate_pmhs_1_2.json", 0),
        ("tate_r_1.json", 0),
        ("tate_r_1_1.json", 0),
    ];
    for (name, code) in cases {
        let o = plectic(&["validate", &fixture(name)]);
        assert_eq!(o.code, code, "{name}: {}", o.stdout);
        assert_eq!(json(&o)["valid"], Value::Bool(code == 0), "{name}");
    }
}

#[test]
fn counterexample_reason_names_empty_subset() {
    let o = plectic(&["validate", &fixture("counter_two_weights.json")]);
    let reason = json(&o)["reason"].as_str().expect("reason").to_string();
    assert!(reason.contains("(a_∅)"), "{reason}");
}

#[test]
fn pmhs_mismatch_reason() {
    let o = plectic(&["validate", &fixture("non_mhs2_pmhs.json")]);
    let reason = json(&o)["reason"].as_str().expect("reason").to_string();
    assert!(reason.contains("W^{{2},1}_0") && reason.contains("W^{∅,1}_0"), "{reason}");
}

#[test]
fn ext_of_tate_objects() {
    let o = plectic(&["ext", &fixture("tate_r_1.json")]);
    assert_eq!(o.code, 0);
    assert_eq!(json(&o), serde_json::json!({"0": 0, "1": 1}));
    let o = plectic(&["ext", &fixture("tate_r_1_1.json")]);
    assert_eq!(json(&o), serde_json::json!({"0": 0, "1": 0, "2": 1}));
    // A non-split extension of ℝ(0) by ℝ(1) kills both groups.
    let o = plectic(&["ext", &fixture("real_extension.json")]);
    assert_eq!(json(&o), serde_json::json!({"0": 0, "1": 0}));
    let o = plectic(&["ext", &fixture("cone_of_identity.json")]);
    assert!(json(&o).as_object().expect("table").values().all(|d| d == 0));
}

#[test]
fn convert_round_trip() {
    let dir = std::env::temp_dir().join(format!("plectic-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let src = fixture("tate_1_0.json");
    let orth = plectic(&["convert", &src, "--to", "orth"]);
    assert_eq!(orth.code, 0, "{}", orth.stdout);
    let orth_path = dir.join("orth.json");
    std::fs::write(&orth_path, &orth.stdout).unwrap();
    let back = plectic(&["convert", orth_path.to_str().unwrap(), "--to", "rep"]);
    assert_eq!(back.code, 0, "{}", back.stdout);
    let doc = parse(back.stdout.as_bytes()).unwrap();
    assert_eq!(doc.to_rep().unwrap(), tate(&[1, 0]));
    let pmhs = plectic(&["convert", &src, "--to", "pmhs"]);
    let pmhs_path = dir.join("pmhs.json");
    std::fs::write(&pmhs_path, &pmhs.stdout).unwrap();
    assert_eq!(plectic(&["validate", pmhs_path.to_str().unwrap()]).code, 0);
    let back = plectic(&["convert", pmhs_path.to_str().unwrap(), "--to", "rep"]);
    assert_eq!(parse(back.stdout.as_bytes()).unwrap().to_rep().unwrap(), tate(&[1, 0]));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn tate_command_matches_library() {
    let o = plectic(&["tate", "--n", "1,-1"]);
    assert_eq!(o.code, 0);
    let doc = parse(o.stdout.as_bytes()).unwrap();
    assert_eq!(doc, Document::from_rep(&tate(&[1, -1])));
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["validate".to_string(), fixture("counter_two_weights.json")],
        vec!["splitting".to_string(), fixture("mhs_extension.json")],
        vec!["ext".to_string(), fixture("real_extension.json"), "--cocycles".to_string()],
        vec!["convert".to_string(), fixture("tate_pmhs_1_2.json"), "--to".to_string(), "orth".to_string()],
    ] {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let a = plectic(&args);
        let b = plectic(&args);
        assert_eq!(a, b, "{args:?}");
    }
}

#[test]
fn errors_exit_one() {
    let o = plectic(&["validate", "/nonexistent/file.json"]);
    assert_eq!(o.code, 1);
    assert_eq!(json(&o)["error"]["kind"], "parse");
    assert_eq!(plectic(&["frobnicate"]).code, 1);
    let o = plectic(&["gamma", &fixture("tate_r_1.json"), "--mu", "5"]);
    assert_eq!(o.code, 1, "{}", o.stdout);
}

#[test]
fn table_format() {
    let o = plectic(&["--format", "table", "validate", &fixture("mhs_wrong_weight.json")]);
    assert_eq!(o.code, 2);
    assert!(o.stdout.starts_with("kind   pmhs\nvalid  no\nreason "), "{}", o.stdout);
}
