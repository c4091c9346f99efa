use std::collections::BTreeSet;
use std::io::Write;

use serde_json::Value;
use tempfile::NamedTempFile;

use plurigenus::cli::{run, CliOutput};

fn cli(args: &[&str]) -> CliOutput {
    let mut argv = vec!["plurigenus"];
    argv.extend_from_slice(args);
    run(argv)
}

fn machine(args: &[&str]) -> (i32, Value) {
    let mut full = args.to_vec();
    full.extend_from_slice(&["--format", "machine"]);
    let out = cli(&full);
    let doc: Value = serde_json::from_str(&out.stdout).expect("machine output is JSON");
    (out.code, doc)
}

fn document(json: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(json.as_bytes()).unwrap();
    f
}

const ONE_26: &str = r#"{"chi_O": 1, "K3": "1/26", "basket": [{"r": 26, "a": 1, "count": 1}]}"#;
const SMOOTH: &str = r#"{"chi_O": -1, "K3": "2", "basket": []}"#;

#[test]
fn documented_examples() {
    let out = cli(&["bounds", "certificate", "--C", "1"]);
    assert_eq!(out.code, 0);
    assert!(
        out.stdout.starts_with("lower_bound = 3/2, ok"),
        "{}",
        out.stdout
    );

    let out = cli(&["l", "--r", "26", "--a", "1", "--m", "13"]);
    assert_eq!(out.stdout, "53/2\n");

    let (code, doc) = machine(&["bounds", "birationality", "--C", "1"]);
    assert_eq!(code, 0);
    assert_eq!(doc["result"]["R"], "26771144400");
    assert_eq!(doc["result"]["m"], "15848517485244");
    assert_eq!(doc["result"]["m_digits"], 14);
}

#[test]
fn every_form_is_selectable() {
    for form in ["direct", "closed", "onewave"] {
        let out = cli(&["l", "--r", "3", "--a", "2", "--m", "5", "--form", form]);
        assert_eq!(out.stdout, "1\n", "{form}");
    }
    let out = cli(&["l", "--r", "7", "--a", "2", "--m", "5", "--form", "onewave"]);
    assert_eq!(out.code, 1);
    let out = cli(&["l", "--r", "7", "--a", "2", "--m", "5", "--form", "nope"]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("available: closed, direct, onewave"));
}

#[test]
fn document_commands() {
    let f = document(ONE_26);
    let p = f.path().to_str().unwrap();
    assert_eq!(
        cli(&["chi", "--input", p, "--m", "13"]).stdout,
        "chi(13K) = 14\n"
    );
    assert_eq!(
        cli(&["plurigenus", "--input", p, "--m", "13"]).stdout,
        "P_13 = 14\n"
    );
    assert_eq!(
        cli(&["plurigenus", "--input", p, "--m", "13", "--drop-k3"]).stdout,
        "P_13 >= 2 (K3 term dropped)\n"
    );
    assert_eq!(cli(&["index", "--input", p]).stdout, "index = 26\n");
    let out = cli(&["hilbert", "--input", p]);
    assert!(
        out.stdout.starts_with("c3 = 338/3\nc2 = -13/2\n"),
        "{}",
        out.stdout
    );

    let out = cli(&["validate", "--input", p]);
    assert_eq!(out.code, 1);
    assert_eq!(out.stdout, "fail: chi(2K) = -5/2 is not an integer\n");

    let g = document(SMOOTH);
    let q = g.path().to_str().unwrap();
    let out = cli(&["validate", "--input", q]);
    assert_eq!((out.code, out.stdout.as_str()), (0, "pass\n"));
    let out = cli(&["plurigenus", "--input", q, "--m", "1"]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("must be at least 2"));
}

#[test]
fn malformed_documents_exit_2_with_location() {
    let cases = [
        (r#"{"chi_O": 1, "K3": 0.5, "basket": []}"#, "K3"),
        (
            r#"{"chi_O": 1, "K3": "1/2", "basket": [{"r": 4, "a": 2, "count": 1}]}"#,
            "basket",
        ),
        (
            r#"{"chi_O": 1, "K3": "1/2", "basket": [{"r": 4, "a": 1}]}"#,
            "basket[0]",
        ),
        (r#"{"chi_O": 1, "K3": "-1"}"#, "must be positive"),
        (r#"{"chi_O": 1, "K3": "1/2", "extra": 3}"#, "extra"),
        ("{not json", "line 1"),
    ];
    for (json, needle) in cases {
        let f = document(json);
        let out = cli(&["index", "--input", f.path().to_str().unwrap()]);
        assert_eq!(out.code, 2, "{json}: {out:?}");
        assert!(out.stderr.contains(needle), "{json}: {}", out.stderr);
    }
    let out = cli(&["index", "--input", "/definitely/not/here.json"]);
    assert_eq!(out.code, 2);
}

#[test]
fn exit_codes() {
    assert_eq!(cli(&["frobnicate"]).code, 2);
    assert_eq!(cli(&["bounds", "hanamura", "--r", "x"]).code, 2);
    assert_eq!(cli(&["bounds", "hanamura", "--r", "0"]).code, 1);
    assert_eq!(cli(&["bounds", "kollar", "--l", "0"]).code, 1);
    assert_eq!(
        cli(&["mapping-bounds", "--r", "26", "--K3", "1/26", "--p", "52"]).code,
        1
    );
    assert_eq!(
        cli(&[
            "defranchis",
            "--s",
            "2",
            "--K3",
            "2",
            "--c1c2",
            "-24",
            "--c3",
            "6",
            "--chi",
            "3"
        ])
        .code,
        1
    );
    assert_eq!(cli(&["verify", "--check", "nope"]).code, 2);
    assert_eq!(cli(&["--help"]).code, 0);

    let (code, doc) = machine(&["bounds", "hanamura", "--r", "0"]);
    assert_eq!(code, 1);
    assert_eq!(doc["errors"][0]["kind"], "domain");
    assert_eq!(doc["errors"][0]["code"], 1);
    assert!(doc["result"].is_null());
}

#[test]
fn bound_rendering() {
    let args = [
        "defranchis",
        "--s",
        "2",
        "--K3",
        "2",
        "--c1c2",
        "-24",
        "--c3",
        "6",
        "--chi",
        "-1",
    ];
    assert_eq!(cli(&args).stdout, "178^15 (34 digits)\n");
    let mut expanded = args.to_vec();
    expanded.extend_from_slice(&["--expand-threshold", "40"]);
    let out = cli(&expanded);
    assert_eq!(
        out.stdout,
        "178^15 = 5705583093710824596689154731180032 (34 digits)\n"
    );
}

#[test]
fn small_commands() {
    assert_eq!(
        cli(&["dual-degree", "--n", "1", "--v", "0,3"]).stdout,
        "deg = 6\n"
    );
    assert_eq!(
        cli(&["dual-degree", "--n", "1", "--v", "-4,4"]).stdout,
        "deg = 12\n"
    );
    assert_eq!(
        cli(&["bezout", "--a", "2", "--d", "3", "--i", "2"]).stdout,
        "18\n"
    );
    assert_eq!(
        cli(&["chi-bound", "--n", "4", "--h", "1,0,5"]).stdout,
        "6\n"
    );
    assert_eq!(
        cli(&["mapping-bounds", "--r", "1", "--K3", "2", "--p", "9"]).stdout,
        "N_max = 1461\ndegX_max = 1458\ndegY_max = 1458\ngraph_deg_max = 11664\n"
    );
    assert_eq!(
        cli(&["bounds", "hanamura", "--r", "10"]).stdout,
        "m0 = 43\n"
    );
    assert_eq!(cli(&["bounds", "kollar", "--l", "13"]).stdout, "m = 148\n");
}

#[test]
fn verify_single_check() {
    let out = cli(&["verify", "--check", "lcm-factorization"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.starts_with("PASS lcm-factorization"));
    let (code, doc) = machine(&["verify", "--check", "chi-identities", "--seed", "11"]);
    assert_eq!(code, 0);
    assert_eq!(doc["result"]["reports"][0]["seed"], 11);
}

/// Integer and fraction tokens in `s`.
fn numeric_tokens(s: &str) -> BTreeSet<String> {
    s.split(|c: char| !(c.is_ascii_digit() || c == '/' || c == '-'))
        .map(|t| t.trim_matches('/'))
        .filter(|t| t.chars().any(|c| c.is_ascii_digit()))
        .map(str::to_string)
        .collect()
}

fn json_leaves(v: &Value, out: &mut BTreeSet<String>) {
    match v {
        Value::String(s) => {
            out.extend(numeric_tokens(s));
        }
        Value::Number(n) => {
            out.insert(n.to_string());
        }
        Value::Array(xs) => xs.iter().for_each(|x| json_leaves(x, out)),
        Value::Object(m) => m.values().for_each(|x| json_leaves(x, out)),
        _ => {}
    }
}

#[test]
fn text_and_machine_agree() {
    let f = document(ONE_26);
    let p = f.path().to_str().unwrap().to_string();
    let invocations: Vec<Vec<&str>> = vec![
        vec!["l", "--r", "26", "--a", "1", "--m", "13"],
        vec!["bounds", "certificate", "--C", "2"],
        vec!["bounds", "birationality", "--C", "2"],
        vec!["hilbert", "--input", &p],
        vec!["chi", "--input", &p, "--m", "13"],
        vec!["mapping-bounds", "--r", "26", "--K3", "1/26", "--p", "234"],
        vec![
            "defranchis",
            "--s",
            "2",
            "--K3",
            "2",
            "--c1c2",
            "-24",
            "--c3",
            "6",
            "--chi",
            "-1",
            "--expand-threshold",
            "50",
        ],
        vec!["dual-degree", "--n", "2", "--v", "4,4,2"],
    ];
    for args in invocations {
        let text = cli(&args);
        let (code, doc) = machine(&args);
        assert_eq!(text.code, code);
        let mut machine_values = BTreeSet::new();
        json_leaves(&doc["result"], &mut machine_values);
        json_leaves(&doc["inputs"], &mut machine_values);
        // Text adds labels like "chi(13K)" and "P_13"; those come from inputs.
        let text_values: BTreeSet<String> = numeric_tokens(&text.stdout);
        let missing: Vec<_> = text_values.difference(&machine_values).collect();
        let allowed = ["3", "2", "0", "1", "4"]; // exponents in labels such as c3/c2, N_max
        assert!(
            missing.iter().all(|m| allowed.contains(&m.as_str())),
            "{args:?}: text has {missing:?} not in machine output"
        );
    }
}
