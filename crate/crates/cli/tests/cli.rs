use std::fs;
use std::process::{Command, Output};

fn latoffoli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_latoffoli"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

#[test]
fn synth_qasm_uses_native_gates_only() {
    let out = latoffoli(&["synth", "--layout", "tlike5", "--n", "3", "--format", "qasm"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let body: Vec<&str> = text.lines().skip(3).collect();
    let single = body.iter().filter(|l| l.starts_with("rz(") || l.starts_with("sx ")).count();
    let double = body.iter().filter(|l| l.starts_with("cx ")).count();
    assert_eq!((single, double, body.len()), (8, 3, 11));
}

#[test]
fn capacity_overflow_exits_with_invalid_input() {
    let out = latoffoli(&["synth", "--layout", "linear5", "--n", "9"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("n exceeds layout capacity"));
    assert!(out.stdout.is_empty());
}

#[test]
fn synth_json_embeds_report() {
    let out = latoffoli(&["synth", "--layout", "ilike7", "--n", "4", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["report"]["tqc"], 38);
    assert_eq!(doc["report"]["xc"], 0);
    assert_eq!(doc["class"], "optimal-n");
    assert!(doc["qasm"].as_str().unwrap().starts_with("OPENQASM 2.0;"));
}

#[test]
fn json_output_is_deterministic() {
    let args = ["cost", "--layout", "linear5", "--n", "5", "--format", "json"];
    let a = latoffoli(&args);
    let b = latoffoli(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn verify_three_qubit_gate_on_every_preset() {
    for layout in ["linear5", "tlike5", "ilike7"] {
        let out = latoffoli(&["verify", "--layout", layout, "--n", "3", "--format", "csv"]);
        assert_eq!(code(&out), 0, "{layout}");
        let text = stdout(&out);
        let rows: Vec<&str> = text.lines().skip(1).collect();
        assert_eq!(rows.len(), 4, "{layout}");
        assert!(rows.iter().all(|r| r.ends_with(",true")), "{layout}: {text}");
    }
}

#[test]
fn verify_routed_critical_case() {
    let out = latoffoli(&["verify", "--layout", "tlike5", "--n", "5", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["rows"].as_array().unwrap().len(), 16);
    assert_eq!(doc["passed"], true);
}

#[test]
fn verify_flags_a_corrupted_circuit() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("toffoli.qasm");
    let synth = latoffoli(&["synth", "--layout", "tlike5", "--n", "3", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&synth), 0);
    assert!(synth.stdout.is_empty());

    let good = latoffoli(&["verify", "--circuit", path.to_str().unwrap(), "--placement", "1,0,2"]);
    assert_eq!(code(&good), 0, "{}", stdout(&good));

    let text = fs::read_to_string(&path).unwrap();
    let corrupted = text.replacen("rz(-pi/4)", "rz(pi/4)", 1);
    assert_ne!(corrupted, text);
    fs::write(&path, corrupted).unwrap();
    let bad = latoffoli(&["verify", "--circuit", path.to_str().unwrap(), "--placement", "1,0,2"]);
    assert_eq!(code(&bad), 1);
    assert!(stdout(&bad).contains("FAIL"));
}

#[test]
fn malformed_qasm_is_invalid_input() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.qasm");
    fs::write(&path, "OPENQASM 2.0;\nqreg q[3];\nccx q[0],q[1],q[2];\n").unwrap();
    let out = latoffoli(&["verify", "--circuit", path.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
}

#[test]
fn layout_file_is_accepted() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("star.json");
    fs::write(&path, r#"{"name": "star4", "num_qubits": 4, "edges": [[0, 1], [0, 2], [0, 3]]}"#).unwrap();
    let out = latoffoli(&["cost", "--layout", path.to_str().unwrap(), "--n", "4", "--format", "csv"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.lines().nth(1).unwrap().starts_with("star4,4,layout-aware,optimal-n,12,7,0,19,38,"), "{text}");

    fs::write(&path, r#"{"name": "split", "num_qubits": 4, "edges": [[0, 1], [2, 3]]}"#).unwrap();
    let out = latoffoli(&["layouts", "--layout", path.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
}

#[test]
fn bad_placement_is_invalid_input() {
    let out = latoffoli(&["cost", "--layout", "linear5", "--n", "3", "--placement", "1,1,2"]);
    assert_eq!(code(&out), 2);
    let out = latoffoli(&["cost", "--layout", "linear5", "--n", "3", "--placement", "1,x"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn configuration_table() {
    let out = latoffoli(&["table", "3", "--format", "csv"]);
    assert_eq!(code(&out), 0);
    let counts: Vec<String> = stdout(&out)
        .lines()
        .skip(1)
        .map(|l| l.rsplit(',').next().unwrap().to_string())
        .collect();
    assert_eq!(counts, ["6", "", "8", "6", "14", "12"]);
    assert!(stdout(&latoffoli(&["table", "3"])).contains("N.A."));
}

#[test]
fn layout_aware_cost_table() {
    let out = latoffoli(&["table", "4-layout-aware", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let rows: Vec<serde_json::Value> = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(rows.len(), 11);
    let find = |layout: &str, n: u64| rows.iter().find(|r| r["layout"] == layout && r["n"] == n).unwrap();
    assert_eq!(find("ilike7", 3)["status"], "exact");
    assert_eq!(find("tlike5", 4)["tqc"], 38);
    assert_eq!(find("linear5", 4)["tqc"], 46);
    assert_eq!(find("tlike5", 5)["published_tqc"], 78);
}

#[test]
fn conventional_table_marks_cited_rows() {
    let out = latoffoli(&["table", "4-conventional", "--format", "json"]);
    let rows: Vec<serde_json::Value> = serde_json::from_str(&stdout(&out)).unwrap();
    for row in &rows {
        if row["n"] == 3 {
            assert!(row["tqc"].is_u64());
        } else {
            assert_eq!(row["status"], "external");
            assert!(row["tqc"].is_null());
        }
    }
}

#[test]
fn conventional_mode_is_limited_to_three_qubits() {
    let ok = latoffoli(&["verify", "--layout", "tlike5", "--n", "3", "--mode", "conventional"]);
    assert_eq!(code(&ok), 0);
    let err = latoffoli(&["cost", "--layout", "tlike5", "--n", "4", "--mode", "conventional"]);
    assert_eq!(code(&err), 2);
}
