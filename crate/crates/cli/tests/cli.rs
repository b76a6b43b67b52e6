use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).to_string_lossy().into_owned()
}

fn qdelta(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qdelta")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> (i32, serde_json::Value) {
    let out = qdelta(args);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stderr)));
    (out.status.code().unwrap(), v)
}

fn temp_doc(name: &str, body: &str) -> String {
    let p = std::env::temp_dir().join(format!("qdelta-cli-{}-{name}.json", std::process::id()));
    std::fs::write(&p, body).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn invariants_of_fam1() {
    let (code, v) = json(&["invariants", &data("fam1_p3.json"), "--json"]);
    assert_eq!(code, 0);
    assert_eq!((v["q"].as_u64(), v["delta"].as_u64(), v["genus_step"].as_u64()), (Some(2), Some(1), Some(3)));
    assert_eq!(v["oracle"]["lattice"].as_u64(), Some(1));
}

#[test]
fn jacobian_of_fam1() {
    let (code, v) = json(&["jacobian", &data("fam1_p3.json"), "--json"]);
    assert_eq!(code, 0);
    assert_eq!(v["jacobian"]["jac"].as_u64(), Some(9));
    assert_eq!(v["genus_change"].as_u64(), Some(3));
    assert_eq!(v["headline"].as_bool(), Some(true));
    assert_eq!(v["kernels"]["total"].as_u64(), Some(9));
}

#[test]
fn smooth_and_unit_jacobian() {
    let doc = temp_doc("smooth", r#"{"p": 3, "vars": ["t"], "ring": {"names": ["S", "Y"], "relations": ["Y^3 - t - S"]}, "x": "t"}"#);
    let (code, v) = json(&["invariants", &doc, "--json"]);
    assert_eq!((code, v["delta"].as_u64()), (0, Some(0)));
    let (code, v) = json(&["jacobian", &doc, "--json"]);
    assert_eq!((code, v["jacobian"]["jac"].as_u64()), (0, Some(0)));
}

#[test]
fn normalize_reports_case_and_presentation() {
    let (code, v) = json(&["normalize", &data("fam4_p3.json"), "--json"]);
    assert_eq!(code, 0);
    assert_eq!(v["analysis"]["case"].as_u64(), Some(4));
    assert_eq!((v["analysis"]["q1"].as_u64(), v["analysis"]["q2"].as_u64()), (Some(6), Some(2)));
    assert_eq!(v["normalization"]["vars"][0], "t_1");
    assert!(v["normalization"]["ring"]["truncated_at"].is_u64());
}

#[test]
fn verify_document_fixture_and_table() {
    for doc in ["fam1_p3.json", "fam4_p3.json", "f4.json"] {
        let out = qdelta(&["verify", &data(doc)]);
        assert_eq!(out.status.code(), Some(0), "{doc}: {}", String::from_utf8_lossy(&out.stdout));
    }
    let (code, v) = json(&["verify", "--fixture", "fam3prime", "--p", "3", "--json"]);
    assert_eq!(code, 0);
    assert_eq!((v["instances"][0]["values"]["q1"].as_u64(), v["instances"][0]["values"]["q2"].as_u64()), (Some(27), Some(3)));
    let out = qdelta(&["verify", "--fixture", "fam1", "--p", "5", "--n", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("all 1 instances pass"));
}

#[test]
fn exit_codes() {
    // unknown fixture id and malformed polynomials are input errors
    assert_eq!(qdelta(&["verify", "--fixture", "fam9"]).status.code(), Some(2));
    let bad = temp_doc("bad", r#"{"p": 3, "vars": ["t"], "ring": {"names": ["S", "Y"], "relations": ["Y^9 - t -* S^2"]}, "x": "t"}"#);
    let out = qdelta(&["invariants", &bad]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("relations[0]") && err.contains("position 9"), "{err}");
    let unknown = temp_doc("unknown", r#"{"p": 3, "vars": ["t"], "ring": {"names": ["S", "Y"], "relations": ["Y^9 - u"]}}"#);
    assert_eq!(qdelta(&["jacobian", &unknown]).status.code(), Some(2));
    let schema = temp_doc("schema", r#"{"p": 3, "vars": ["t"], "ring": {"names": ["S", "Y"]}, "colour": 1}"#);
    assert_eq!(qdelta(&["jacobian", &schema]).status.code(), Some(2));
    // q = 20 cannot be certified below S^8
    let deep = temp_doc("deep", r#"{"p": 3, "vars": ["t"], "ring": {"names": ["S", "Y"], "relations": ["Y^9 - t - S^20"]}, "x": "t"}"#);
    assert_eq!(qdelta(&["invariants", &deep, "--precision", "4", "--cap", "8"]).status.code(), Some(3));
    assert_eq!(qdelta(&["invariants", &deep]).status.code(), Some(0));
    // Ω of K[[S]] ⊗ K(t^{1/3}) has rank 2 over K: diagnosed, not answered
    let rank = temp_doc("rank", r#"{"p": 3, "vars": ["t"], "ring": {"names": ["S", "Y"], "relations": ["Y^3 - t"]}}"#);
    let out = qdelta(&["jacobian", &rank, "--cap", "32"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("rank deficiency"));
}

#[test]
fn stdin_and_trace() {
    use std::io::Write;
    let mut child = Command::new(env!("CARGO_BIN_EXE_qdelta"))
        .args(["invariants", "-", "--trace"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .stderr(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(std::fs::read(data("fam1_p3.json")).unwrap().as_slice()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("q = 2"));
    assert!(String::from_utf8_lossy(&out.stderr).contains("loaded"));
}
