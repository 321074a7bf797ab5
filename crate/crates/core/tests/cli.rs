//! End-to-end tests of the command line through `artin::cli::run`.

use artin::cli::run;
use serde_json::{json, Value};

fn artin(args: &[&str]) -> (i32, Value, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(std::iter::once("artin").chain(args.iter().copied()), &mut out, &mut err);
    let out = String::from_utf8(out).unwrap();
    let value = if out.trim().is_empty() { Value::Null } else { serde_json::from_str(&out).unwrap() };
    (code, value, String::from_utf8(err).unwrap())
}

fn error_code(err: &str) -> String {
    let v: Value = serde_json::from_str(err.trim()).unwrap();
    v["error"]["code"].as_str().unwrap().to_string()
}

const C263: [&str; 6] = ["--h", "2", "--s", "6", "--t", "3"];

fn with(base: &[&str], extra: &[&str]) -> Vec<String> {
    base.iter().chain(extra).map(|s| s.to_string()).collect()
}

fn call(sub: &str, extra: &[&str]) -> (i32, Value, String) {
    let mut args = vec![sub.to_string()];
    args.extend(with(&C263, extra));
    let refs: Vec<&str> = args.iter().map(|s| s.as_str()).collect();
    artin(&refs)
}

#[test]
fn classify_zero_is_the_top_sporadic_model() {
    let (code, v, _) = call("classify", &["--a", "0"]);
    assert_eq!(code, 0);
    assert_eq!(v["label"]["kind"], json!("sporadic"));
    assert_eq!(v["label"]["r"], json!(2));
    assert_eq!(v["verified"], json!(true));
}

#[test]
fn classify_output_round_trips_through_verify() {
    for a in ["0", "1", "-2 + x2", "x1 + x2", "2*x1 + x1^2", "x1^2 + 3*x1*x2"] {
        let (code, v, _) = call("classify", &["--a", a]);
        assert_eq!(code, 0, "classify {}", a);
        let label = v["label"]["text"].as_str().unwrap().to_string();
        let subst: Vec<String> = v["certificate"]["substitution"]
            .as_array()
            .unwrap()
            .iter()
            .map(|t| t.as_str().unwrap().to_string())
            .collect();
        let ideal = format!("x2^2 - ({})*x1*x2 - x1^4; x1^3*x2", a);
        let (code, v, err) = call("verify", &["--model", &label, "--subst", &subst.join(", "), "--ideal", &ideal]);
        assert_eq!(code, 0, "verify {}: {}", a, err);
        assert_eq!(v, json!({"verified": true}));
    }
}

#[test]
fn verify_rejects_a_wrong_certificate() {
    let (code, v, err) = call(
        "verify",
        &["--model", "sporadic:0", "--subst", "x1, x2", "--ideal", "x2^2 - x1^4; x1^3*x2"],
    );
    assert_eq!(code, 4);
    assert_eq!(v, json!({"verified": false}));
    assert_eq!(error_code(&err), "E_VERIFY");
}

#[test]
fn hilbert_and_invariants() {
    let (code, v, _) = call("hilbert", &["--ideal", "(x2^2 - x1^4; x1^3*x2)"]);
    assert_eq!(code, 0);
    assert_eq!(v, json!({"hilbert": [1, 2, 2, 2, 1, 1, 1], "dim": 10, "type_ok": true}));

    let (code, v, _) = call("invariants", &["--ideal", "x2^2 - x1^2*x2 - 2*x1^4; x1^3*x2"]);
    assert_eq!(code, 0);
    assert_eq!(v["sigma"], json!(3));
    assert_eq!(v["locus"]["points"].as_array().unwrap().len(), 1);

    let (code, v, _) = artin(&["invariants", "--h", "3", "--s", "8", "--t", "4", "--ideal", "x1*x3; x2*x3; x3^2 - x1^8; x2^2 - x1*x2 - x1^5; x1^4*x2"]);
    assert_eq!(code, 0);
    assert_eq!(v["sigma"], Value::Null);
}

#[test]
fn models_lists_symbolic_families() {
    let (code, v, _) = call("models", &[]);
    assert_eq!(code, 0);
    let models = v["models"].as_array().unwrap();
    assert_eq!(models.len(), 3);
    assert_eq!(models[2]["generators"][0], json!("x2^2 - x1^2*x2 - c*x1^4"));
    assert_eq!(v["params"]["r_star"], json!(1));
}

#[test]
fn exit_codes_and_error_json() {
    let (code, _, err) = call("classify", &["--a", "x1 +* 2"]);
    assert_eq!((code, error_code(&err).as_str()), (2, "E_PARSE"));
    let (code, _, err) = artin(&["classify", "--h", "2", "--s", "4", "--t", "3", "--a", "x1"]);
    assert_eq!((code, error_code(&err).as_str()), (3, "E_OUT_OF_THEOREM"));
    let (code, _, err) = artin(&["classify", "--h", "2", "--s", "10", "--t", "5", "--a", "2"]);
    assert_eq!((code, error_code(&err).as_str()), (3, "E_ROOT_MISMATCH"));
    let (code, _, err) = call("hilbert", &["--ideal", "x2^2; x1^4"]);
    assert_eq!(code, 0, "{}", err);
    let (code, _, err) = artin(&["models", "--h", "2", "--s", "3", "--t", "3"]);
    assert_eq!((code, error_code(&err).as_str()), (2, "E_PARAMS"));
    let (code, _, _) = artin(&["classify", "--h", "2"]);
    assert_eq!(code, 2);
}

#[test]
fn output_is_deterministic_and_pretty_flag_only_changes_layout() {
    let (_, a, _) = call("classify", &["--a", "x1 + x2"]);
    let (_, b, _) = call("classify", &["--a", "x1 + x2"]);
    assert_eq!(a, b);
    let mut out = Vec::new();
    let mut err = Vec::new();
    run(["artin", "--json-pretty", "hilbert", "--h", "2", "--s", "6", "--t", "3", "--ideal", "x2^2 - x1^4; x1^3*x2"], &mut out, &mut err);
    let text = String::from_utf8(out).unwrap();
    assert!(text.contains("\n  "));
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["dim"], json!(10));
}

#[test]
fn demo_suite_passes() {
    let (code, v, _) = artin(&["demo-paper"]);
    assert_eq!(code, 0);
    assert_eq!(v["all_passed"], json!(true));
}
