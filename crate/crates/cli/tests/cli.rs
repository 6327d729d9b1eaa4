use std::process::{Command, Output};

use serde_json::Value;

fn qeslab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qeslab")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = qeslab(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid json")
}

fn values(doc: &Value) -> Vec<String> {
    doc["lines"].as_array().unwrap().iter().map(|l| l["value"].as_str().unwrap().to_string()).collect()
}

#[test]
fn f1_spectrum() {
    let doc = json(&["spectrum", "--n", "1", "--k", "1", "--gamma", "0,0", "--a", "-5/8"]);
    assert_eq!(values(&doc), ["1/4", "-5/4"]);
    assert_eq!(doc["dimension"], 2);
}

#[test]
fn f2_spectrum() {
    let doc = json(&["spectrum", "--n", "2", "--k", "1", "--a", "1/2"]);
    assert_eq!(values(&doc), ["-1/2", "-1", "-3/2"]);
}

#[test]
fn es_spectrum_levels() {
    let doc = json(&["spectrum", "--operator", "es", "--n", "2", "--k", "1"]);
    // -j(j + G + (n-1)/2) at G = 0: 0 once, -3/2 twice.
    assert_eq!(values(&doc), ["0", "-3/2"]);
    assert_eq!(doc["lines"][1]["multiplicity"], 2);
}

#[test]
fn separate_matches_spectrum() {
    let doc = json(&["separate", "--n", "2", "--k", "1", "--a", "1/2", "--completeness"]);
    let mut e: Vec<String> = doc["chains"]
        .as_array()
        .unwrap()
        .iter()
        .flat_map(|c| c["E"].as_array().unwrap().iter().map(|l| l["value"].as_str().unwrap().to_string()))
        .collect();
    e.sort();
    assert_eq!(e, ["-1", "-1/2", "-3/2"]);
    assert_eq!(doc["completeness"]["complete"], true);
}

#[test]
fn exit_codes() {
    let code = |a: &[&str]| qeslab(a).status.code();
    assert_eq!(code(&["spectrum", "--n", "2", "--gamma", "0,0"]), Some(2));
    assert_eq!(code(&["spectrum", "--n", "1", "--a", "1/0"]), Some(2));
    assert_eq!(code(&["separate", "--n", "1"]), Some(2));
    assert_eq!(code(&["verify", "--suite", "bogus"]), Some(2));
    assert_eq!(code(&["spectrum", "--precision", "2", "--n", "1"]), Some(2));
    assert_eq!(code(&["contract", "--space", "euclid", "--n", "2", "--eps", "0"]), Some(3));
    assert_eq!(code(&["frobnicate"]), Some(2));
    assert_eq!(code(&["verify", "--suite", "geometry"]), Some(0));
}

#[test]
fn verify_is_deterministic() {
    let args = ["verify", "--suite", "closedforms", "--n", "2", "--k", "1", "--draws", "2", "--seed", "11"];
    let a = qeslab(&args);
    let b = qeslab(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let items: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert!(items.as_array().unwrap().iter().all(|i| i["seed"] == 11));
}

#[test]
fn csv_agrees_with_json() {
    let base = ["spectrum", "--n", "2", "--k", "2", "--gamma", "1/3,0,-1/5", "--a", "2/7"];
    let doc = json(&base);
    let csv_out = qeslab(&[&base[..], &["--format", "csv"]].concat());
    let mut r = csv::Reader::from_reader(csv_out.stdout.as_slice());
    let headers = r.headers().unwrap().clone();
    let rows: Vec<csv::StringRecord> = r.records().map(|x| x.unwrap()).collect();
    let lines = doc["lines"].as_array().unwrap();
    assert_eq!(rows.len(), lines.len());
    for (row, line) in rows.iter().zip(lines) {
        for (h, cell) in headers.iter().zip(row.iter()) {
            let want = match &line[h] {
                Value::Null => String::new(),
                Value::String(s) => s.clone(),
                v => v.to_string(),
            };
            assert_eq!(cell, want, "column {h}");
        }
    }
}

#[test]
fn config_file_with_flag_override() {
    let dir = std::env::temp_dir().join(format!("qeslab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("f1.toml");
    std::fs::write(&cfg, "n = 1\nk = 3\ngamma = \"0,0\"\na = \"-5/8\"\n").unwrap();
    let out = dir.join("out.json");
    let cfg_s = cfg.to_str().unwrap();
    let out_s = out.to_str().unwrap();
    let st = qeslab(&["spectrum", "--config", cfg_s, "--k", "1", "--out", out_s]);
    assert!(st.status.success());
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(values(&doc), ["1/4", "-5/4"]);
    std::fs::write(&cfg, "n = 1\nwidth = 3\n").unwrap();
    assert_eq!(qeslab(&["spectrum", "--config", cfg_s]).status.code(), Some(2));
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn contraction_orders() {
    let doc = json(&["contract", "--space", "euclid", "--n", "2", "--k", "1", "--omega", "1", "--b", "1/3"]);
    let reports = doc["reports"].as_array().unwrap();
    assert_eq!(reports[0]["map"], "listed");
    assert_eq!(reports[0]["converges"], false);
    assert_eq!(reports[1]["map"], "corrected");
    assert_eq!(reports[1]["converges"], true);
    for o in reports[1]["orders"].as_array().unwrap() {
        assert!((o.as_f64().unwrap() - 2.0).abs() < 1e-9);
    }
}
