use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn symscope(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_symscope"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = symscope(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid json")
}

fn temp_file(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn decompose_running_example() {
    let (cnf, gens) = (data("xyz.cnf"), data("xyz.gens"));
    let v = json(&[
        "decompose",
        cnf.to_str().unwrap(),
        "--gens",
        gens.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert_eq!(v["schema_version"], 1);
    let d = &v["decomposition"];
    assert_eq!(d["factors"].as_array().unwrap().len(), 3);
    assert_eq!(d["factors"][1]["points"], serde_json::json!(["7", "-7", "8", "-8"]));
    assert_eq!(d["orbit_graph_edges"].as_array().unwrap().len(), 5);
    assert!(v.get("action").is_none() && v.get("orbits").is_none());
}

#[test]
fn graph_domain_generators_give_the_same_decomposition() {
    let dir = tempfile::tempdir().unwrap();
    let gens = temp_file(
        &dir,
        "graph.gens",
        "(1,3,5)(2,4,6)(7,9,11)(8,10,12)(17,18,19)\n(1,3)(2,4)(7,9)(8,10)(17,18)\n(13,15)(14,16)\n",
    );
    let cnf = data("xyz.cnf");
    let graph = json(&[
        "decompose",
        cnf.to_str().unwrap(),
        "--gens",
        &gens,
        "--graph-domain",
        "--format",
        "json",
    ]);
    let lit = data("xyz.gens");
    let literal = json(&[
        "decompose",
        cnf.to_str().unwrap(),
        "--gens",
        lit.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert_eq!(graph["decomposition"]["factors"].as_array().unwrap().len(), 3);
    let points = |v: &Value| -> Vec<Value> {
        v["decomposition"]["factors"]
            .as_array()
            .unwrap()
            .iter()
            .map(|f| f["points"].clone())
            .collect()
    };
    assert_eq!(points(&graph), points(&literal));
}

#[test]
fn empty_generator_file_gives_singletons() {
    let dir = tempfile::tempdir().unwrap();
    let gens = temp_file(&dir, "empty.gens", "");
    let cnf = data("xyz.cnf");
    let v = json(&["orbits", cnf.to_str().unwrap(), "--gens", &gens, "--format", "json"]);
    let lits = v["orbits"]["literal"].as_array().unwrap();
    assert_eq!(lits.len(), 16);
    assert!(lits.iter().all(|o| o["points"].as_array().unwrap().len() == 1));
    assert_eq!(v["orbits"]["graph"].as_array().unwrap().len(), 20);
}

#[test]
fn check_partition_verdicts() {
    let cnf = data("xyz.cnf");
    let gens = data("xyz.gens");
    let args = |p: &str| {
        json(&[
            "check-partition",
            cnf.to_str().unwrap(),
            data(p).to_str().unwrap(),
            "--gens",
            gens.to_str().unwrap(),
            "--format",
            "json",
        ])
    };
    let ok = args("xyz.partition");
    assert_eq!(ok["accepted"], true);
    assert_eq!(ok["schema_version"], 1);
    let split = args("xyz_rows_split.partition");
    assert_eq!(split["accepted"], false);
    assert_eq!(split["rejection"]["reason"], "product_mismatch");
}

#[test]
fn same_seed_is_byte_identical() {
    let cnf = data("xyz.cnf");
    let gens = data("xyz.gens");
    let args = [
        "analyze",
        cnf.to_str().unwrap(),
        "--gens",
        gens.to_str().unwrap(),
        "--seed",
        "7",
        "--format",
        "json",
    ];
    let a = symscope(&args);
    let b = symscope(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    let again: Value = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
    assert_eq!(v, again);
    assert!(v.get("timings").is_none());
}

#[test]
fn text_and_json_agree() {
    let cnf = data("xyz.cnf");
    let gens = data("xyz.gens");
    let base = [
        "analyze",
        cnf.to_str().unwrap(),
        "--gens",
        gens.to_str().unwrap(),
        "--oracle",
    ];
    let v = json(&[&base[..], &["--format", "json"]].concat());
    let text = String::from_utf8(symscope(&base).stdout).unwrap();
    let enc = v["generators"]["encoding_size"].as_u64().unwrap();
    assert!(text.contains(&format!("encoding size {enc}")));
    let factors = v["decomposition"]["factors"].as_array().unwrap().len();
    assert!(text.contains(&format!("factors: {factors}")));
    for entry in v["action"]["orbits"].as_array().unwrap() {
        let line = format!(
            "orbit {} size {}: {}",
            entry["orbit"],
            entry["size"],
            entry["verdict"].as_str().unwrap()
        );
        assert!(text.contains(&line), "missing {line}");
    }
    for m in v["row_matrices"].as_array().unwrap() {
        for row in m["rows"].as_array().unwrap() {
            let row: Vec<String> = row.as_array().unwrap().iter().map(|x| x.to_string()).collect();
            assert!(text.contains(&row.join(" ")));
        }
    }
    assert_eq!(v["oracle"]["automorphism_group_order"], 12);
    assert!(text.contains("automorphism group order 12"));
}

#[test]
fn timings_only_on_request() {
    let cnf = data("xyz.cnf");
    let gens = data("xyz.gens");
    let v = json(&[
        "rowsym",
        cnf.to_str().unwrap(),
        "--gens",
        gens.to_str().unwrap(),
        "--timings",
        "--format",
        "json",
    ]);
    assert!(v["timings"]["rows_ms"].is_number());
    assert_eq!(v["row_matrices"][0]["rows"], serde_json::json!([[1, 2, 3], [4, 5, 6]]));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let cnf = data("xyz.cnf");
    let cnf = cnf.to_str().unwrap();
    let code = |args: &[&str]| symscope(args).status.code().unwrap();

    let bad_header = temp_file(&dir, "bad.cnf", "p cnf x 1\n1 0\n");
    assert_eq!(code(&["orbits", &bad_header]), 2);
    let bad_cycles = temp_file(&dir, "bad.gens", "(1,2\n");
    assert_eq!(code(&["orbits", cnf, "--gens", &bad_cycles]), 2);
    assert_eq!(
        code(&[
            "action",
            cnf,
            "--gens",
            data("xyz.gens").to_str().unwrap(),
            "--giant-c",
            "1.0"
        ]),
        2
    );

    let not_symmetry = temp_file(&dir, "wrong.gens", "(1,7)(-1,-7)\n");
    assert_eq!(code(&["orbits", cnf, "--gens", &not_symmetry]), 3);

    assert_eq!(code(&["orbits", "/nonexistent/input.cnf"]), 1);
    assert_eq!(code(&["orbits", cnf, "--oracle-max-vertices", "5"]), 4);
    assert_eq!(code(&["equiv", cnf]), 0);
}

#[test]
fn oracle_fallback_without_generators() {
    let cnf = data("xyz.cnf");
    let v = json(&["analyze", cnf.to_str().unwrap(), "--oracle", "--format", "json"]);
    assert_eq!(v["generators"]["source"], "oracle");
    let o = &v["oracle"];
    for key in [
        "generators_generate",
        "orbits_match",
        "decomposition_match",
        "equivalence_match",
        "literal_partition_match",
    ] {
        assert_eq!(o[key], true, "{key}");
    }
}
