use std::collections::HashMap;
use std::process::{Command, Output};
use std::sync::Arc;

use serde_json::Value;
use zmw_core::scalar::to_f64;
use zmw_core::spectral_group::{builtin, z_from_ints};
use zmw_core::wreath::{ewens_type_distribution, DEFAULT_ENUMERATION_BOUND};
use zmw_core::zmeasure::{irrep_labels, zmeasure_table};

fn zmw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zmw"))
        .args(args)
        .env_remove("ZMW_PRECISION")
        .output()
        .expect("run zmw")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_lines(o: &Output) -> Vec<Value> {
    stdout(o).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

fn write_temp(dir: &tempfile::TempDir, name: &str, body: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn zmeasure_table_z2_n1() {
    let o = zmw(&["zmeasure", "table", "--model", "z2", "--z", "3,1", "--n", "1"]);
    assert_eq!(code(&o), 0);
    let mut rd = csv::ReaderBuilder::new().from_reader(o.stdout.as_slice());
    assert_eq!(rd.headers().unwrap().iter().collect::<Vec<_>>(), ["family", "M", "DIM", "phi"]);
    let rows: Vec<Vec<String>> = rd.records().map(|r| r.unwrap().iter().map(String::from).collect()).collect();
    assert_eq!(rows[0][..2], [r#"{"triv":[1]}"#.to_string(), "4/5".into()]);
    assert_eq!(rows[1][..2], [r#"{"sgn":[1]}"#.to_string(), "1/5".into()]);
    assert_eq!(rows[2][..2], ["checksum".to_string(), "1".into()]);
    assert_eq!(rows.len(), 3);
}

#[test]
fn zmeasure_table_n0_is_one_row() {
    let o = zmw(&["--format", "json", "zmeasure", "table", "--model", "z2", "--z", "3,1", "--n", "0"]);
    assert_eq!(code(&o), 0);
    let lines = json_lines(&o);
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0], serde_json::json!({"family": {}, "M": "1", "DIM": "1", "phi": "1"}));
    assert_eq!(lines[1]["checksum"], "1");
}

#[test]
fn malformed_model_exits_2_naming_the_invariant() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write_temp(
        &dir,
        "bad.json",
        r#"{"kind":"finite","order":2,"classes":[{"label":"e","size":1},{"label":"s","size":1}],
            "irreps":[{"label":"triv","dim":1},{"label":"x","dim":2}],"char_table":[[1,1],[2,0]]}"#,
    );
    let o = zmw(&["zmeasure", "table", "--model", &bad, "--z", "1,1", "--n", "1"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("sum of squared irrep dimensions"));
    assert!(o.stdout.is_empty());

    let garbage = write_temp(&dir, "garbage.json", "{not json");
    assert_eq!(code(&zmw(&["zmeasure", "table", "--model", &garbage, "--z", "1,1", "--n", "1"])), 2);
    assert_eq!(code(&zmw(&["zmeasure", "table", "--model", "z2", "--z", "1,2,3", "--n", "1"])), 2);
}

#[test]
fn corrupted_character_table_fails_orthogonality() {
    let dir = tempfile::tempdir().unwrap();
    let model = write_temp(
        &dir,
        "z2bad.json",
        r#"{"kind":"finite","order":2,"classes":[{"label":"e","size":1},{"label":"s","size":1}],
            "irreps":[{"label":"triv","dim":1},{"label":"sgn","dim":1}],"char_table":[[1,1],[1,1]]}"#,
    );
    let o = zmw(&["verify", "characters", "--model", &model, "--n", "2"]);
    assert_eq!(code(&o), 1);
    let lines = json_lines(&o);
    assert!(lines.iter().any(|l| l["check"] == "orthogonality" && l["ok"] == false));
    assert_eq!(lines.last().unwrap()["check"], "summary");
    assert_eq!(lines.last().unwrap()["ok"], false);
}

#[test]
fn verify_suites_pass_on_builtins() {
    let cases: &[&[&str]] = &[
        &["verify", "normalization", "--model", "z2", "--z", "3,1", "--n", "6"],
        &["verify", "characters", "--model", "s3", "--n", "2"],
        &["verify", "characters", "--model", "z2", "--z", "3,1", "--n", "3"],
        &["verify", "harmonicity", "--model", "s3", "--z", "6,2,0", "--n", "4"],
        &["verify", "ewens", "--model", "s3", "--z", "2,1,3", "--n", "3"],
        &["verify", "projection", "--model", "z2", "--z", "3,1", "--n", "3"],
        &["verify", "parseval", "--model", "z3", "--z", "3,1,1"],
    ];
    for args in cases {
        let o = zmw(args);
        assert_eq!(code(&o), 0, "{args:?}: {}", stdout(&o));
        let lines = json_lines(&o);
        assert!(lines.len() > 1);
        for l in &lines {
            assert_eq!(l["ok"], true, "{args:?}: {l}");
            assert!(l.get("lhs").is_some() && l.get("rhs").is_some());
        }
    }
}

#[test]
fn verify_u1_from_model_file() {
    let dir = tempfile::tempdir().unwrap();
    let model = write_temp(&dir, "u1.json", r#"{"kind":"u1","L":1,"coeffs":{"-1":["1/2",0],"0":[1,0],"1":[0,1]}}"#);
    for suite in ["u1", "parseval", "normalization"] {
        let o = zmw(&["verify", suite, "--model", &model, "--n", "3"]);
        assert_eq!(code(&o), 0, "{suite}: {}", stdout(&o));
    }
}

#[test]
fn same_seed_same_stream() {
    for target in ["ewens", "family", "thoma"] {
        let args = ["sample", target, "--model", "z2", "--z", "3,1", "--n", "4", "--count", "5000", "--seed", "11"];
        let a = zmw(&args);
        let b = zmw(&args);
        let c = zmw(&[&["--sequential"], &args[..]].concat());
        assert_eq!(code(&a), 0);
        assert_eq!(a.stdout, b.stdout, "{target}");
        assert_eq!(a.stdout, c.stdout, "{target} sequential");
        let header = &json_lines(&a)[0];
        assert_eq!(header["generator"], "ChaCha8Rng");
        assert_eq!(header["seed"], 11);
        assert_eq!(stdout(&a).lines().count(), 5001);
    }
    let d = zmw(&["sample", "ewens", "--model", "z2", "--z", "3,1", "--n", "4", "--count", "50", "--seed", "12"]);
    let e = zmw(&["sample", "ewens", "--model", "z2", "--z", "3,1", "--n", "4", "--count", "50", "--seed", "11"]);
    assert_ne!(d.stdout, e.stdout);
}

#[test]
fn resource_bound_exits_3() {
    let o = zmw(&["ewens", "sum", "--model", "s3", "--z", "2,1,3", "--n", "6"]);
    assert_eq!(code(&o), 3);
    let o = zmw(&["--bound", "10", "verify", "ewens", "--model", "z2", "--z", "3,1", "--n", "3"]);
    assert_eq!(code(&o), 3);
}

#[test]
fn precision_below_15_exits_2() {
    assert_eq!(code(&zmw(&["--precision", "14", "ewens", "sum", "--model", "z2", "--z", "3,1", "--n", "1"])), 2);
    let o = Command::new(env!("CARGO_BIN_EXE_zmw"))
        .args(["ewens", "sum", "--model", "z2", "--z", "3,1", "--n", "1"])
        .env("ZMW_PRECISION", "8")
        .output()
        .unwrap();
    assert_eq!(code(&o), 2);
    let o = Command::new(env!("CARGO_BIN_EXE_zmw"))
        .args(["ewens", "sum", "--model", "z2", "--z", "3,1", "--n", "1"])
        .env("ZMW_PRECISION", "40")
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
}

fn tv(empirical: &HashMap<String, u64>, exact: &HashMap<String, f64>, count: u64) -> f64 {
    let mut keys: Vec<&String> = empirical.keys().chain(exact.keys()).collect();
    keys.sort();
    keys.dedup();
    0.5 * keys
        .into_iter()
        .map(|k| (empirical.get(k).copied().unwrap_or(0) as f64 / count as f64 - exact.get(k).copied().unwrap_or(0.0)).abs())
        .sum::<f64>()
}

#[test]
fn ewens_sample_matches_type_distribution() {
    const COUNT: u64 = 1_000_000;
    let o = zmw(&["sample", "ewens", "--model", "z2", "--z", "3,1", "--n", "5", "--count", "1000000", "--seed", "7"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let mut counts: HashMap<String, u64> = HashMap::new();
    for line in text.lines().skip(1) {
        let v: Value = serde_json::from_str(line).unwrap();
        *counts.entry(v["type"].to_string()).or_default() += 1;
    }
    let model = Arc::new(builtin("z2", 64).unwrap());
    let labels: Vec<String> = model.classes().iter().map(|c| c.label.clone()).collect();
    let z = z_from_ints(&model, &[3, 1]).unwrap();
    let exact: HashMap<String, f64> = ewens_type_distribution(&z, 5, DEFAULT_ENUMERATION_BOUND)
        .unwrap()
        .into_iter()
        .map(|(t, p)| (t.to_json(&labels).to_string(), to_f64(&p)))
        .collect();
    let d = tv(&counts, &exact, COUNT);
    assert!(d <= 0.01, "TV = {d}");
}

#[test]
fn family_sample_matches_zmeasure_table() {
    const COUNT: u64 = 100_000;
    let o = zmw(&["sample", "family", "--model", "s3", "--z", "6,2,0", "--n", "3", "--count", "100000", "--seed", "3"]);
    assert_eq!(code(&o), 0);
    let mut counts: HashMap<String, u64> = HashMap::new();
    for line in stdout(&o).lines().skip(1) {
        let v: Value = serde_json::from_str(line).unwrap();
        *counts.entry(v["family"].to_string()).or_default() += 1;
    }
    let model = Arc::new(builtin("s3", 64).unwrap());
    let labels = irrep_labels(&model);
    let z = z_from_ints(&model, &[6, 2, 0]).unwrap();
    let exact: HashMap<String, f64> = zmeasure_table(&z, 3)
        .unwrap()
        .into_iter()
        .map(|(f, p)| (f.to_json(&labels).to_string(), to_f64(&p)))
        .collect();
    let d = tv(&counts, &exact, COUNT);
    assert!(d <= 0.01, "TV = {d}");
}

#[test]
fn csv_sample_header_is_a_comment() {
    let o = zmw(&["--format", "csv", "sample", "family", "--model", "z2", "--z", "3,1", "--n", "2", "--count", "3"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("# generator=ChaCha8Rng seed=0"));
    assert_eq!(lines.next().unwrap(), "family");
    assert_eq!(lines.count(), 3);
}

#[test]
fn thoma_kernel_from_files() {
    let dir = tempfile::tempdir().unwrap();
    let family = write_temp(&dir, "f.json", r#"{"triv":[1]}"#);
    let omega = write_temp(
        &dir,
        "w.json",
        r#"{"blocks":{"triv":{"alpha":["1/2"],"beta":[],"delta":"1/2"},"sgn":{"alpha":[],"beta":["1/4"],"delta":"1/2"}}}"#,
    );
    let o = zmw(&["thoma", "kernel", "--model", "z2", "--family", &family, "--omega", &omega]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v = &json_lines(&o)[0];
    assert!(v["exact"].is_string());
    let bad = write_temp(&dir, "bad.json", r#"{"blocks":{"triv":{"alpha":["3/4"],"beta":[],"delta":"1/2"}}}"#);
    assert_eq!(code(&zmw(&["thoma", "kernel", "--model", "z2", "--family", &family, "--omega", &bad])), 2);
}
