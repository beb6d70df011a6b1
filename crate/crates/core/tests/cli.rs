mod common;

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn hypavg(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hypavg"))
        .args(args)
        .current_dir(dir)
        .env("HYPAVG_THREADS", "2")
        .output()
        .unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

/// Checks `value` against the subset of JSON Schema used by the shipped schemas.
fn validate(value: &Value, schema: &Value, root: &Value, path: &str) -> Result<(), String> {
    if let Some(r) = schema["$ref"].as_str() {
        let name = r.trim_start_matches("#/$defs/");
        return validate(value, &root["$defs"][name], root, path);
    }
    if let Some(c) = schema.get("const") {
        if c != value {
            return Err(format!("{path}: expected {c}"));
        }
    }
    let ok = match schema["type"].as_str() {
        Some("object") => value.is_object(),
        Some("array") => value.is_array(),
        Some("string") => value.is_string(),
        Some("integer") => value.is_u64() || value.is_i64(),
        Some("number") => value.is_number(),
        _ => true,
    };
    if !ok {
        return Err(format!("{path}: wrong type"));
    }
    if let Some(min) = schema["minimum"].as_f64() {
        if value.as_f64().unwrap() < min {
            return Err(format!("{path}: below minimum"));
        }
    }
    for key in schema["required"].as_array().into_iter().flatten() {
        if value.get(key.as_str().unwrap()).is_none() {
            return Err(format!("{path}: missing {key}"));
        }
    }
    if let Some(props) = schema["properties"].as_object() {
        for (k, s) in props {
            if let Some(v) = value.get(k) {
                validate(v, s, root, &format!("{path}.{k}"))?;
            }
        }
    }
    if let (Some(items), Some(arr)) = (schema.get("items"), value.as_array()) {
        if let Some(n) = schema["minItems"].as_u64() {
            if (arr.len() as u64) < n {
                return Err(format!("{path}: too few items"));
            }
        }
        for (i, v) in arr.iter().enumerate() {
            validate(v, items, root, &format!("{path}[{i}]"))?;
        }
    }
    Ok(())
}

fn check_schema(doc: &Value, file: &str) {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("schema")
        .join(file);
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    validate(doc, &schema, &schema, "$").unwrap();
}

#[test]
fn gen_writes_families() {
    let dir = tempfile::tempdir().unwrap();
    let o = hypavg(
        &["gen", "--family", "gn", "--n", "9", "--out", "g.edges"],
        dir.path(),
    );
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stdout).contains("261 vertices"));
    let g =
        hypavg::metric::load_graph(&std::fs::read_to_string(dir.path().join("g.edges")).unwrap())
            .unwrap();
    assert_eq!(g.vertex_count(), 261);
    assert!(std::fs::read_to_string(dir.path().join("g.labels"))
        .unwrap()
        .starts_with("0 a_1\n"));

    let o = hypavg(
        &["gen", "--family", "rrg", "--n", "5", "--d", "3"],
        dir.path(),
    );
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("n·d must be even"));

    for name in ["a.edges", "b.edges"] {
        let o = hypavg(
            &[
                "gen", "--family", "er", "--n", "400", "--lambda", "3", "--seed", "8", "--out",
                name,
            ],
            dir.path(),
        );
        assert_eq!(code(&o), 0);
    }
    assert_eq!(
        std::fs::read(dir.path().join("a.edges")).unwrap(),
        std::fs::read(dir.path().join("b.edges")).unwrap()
    );

    let o = hypavg(
        &[
            "gen", "--family", "gauss", "--count", "5", "--dim", "3", "--out", "p.csv",
        ],
        dir.path(),
    );
    assert_eq!(code(&o), 0);
    let csv = std::fs::read_to_string(dir.path().join("p.csv")).unwrap();
    assert_eq!(csv.lines().next(), Some("x0,x1,x2"));
    assert_eq!(csv.lines().count(), 6);
}

#[test]
fn estimate_reports() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("tree.edges"), "0 1\n1 2\n1 3\n3 4\n").unwrap();
    let o = hypavg(&["estimate", "tree.edges", "--samples", "500"], dir.path());
    assert_eq!(code(&o), 0);
    let doc: Value = serde_json::from_slice(&o.stdout).unwrap();
    check_schema(&doc, "avg_report.v1.json");
    for k in ["hyp", "slim", "thin", "minsize", "insize"] {
        assert_eq!(doc[k]["mean"], 0.0);
    }

    std::fs::write(dir.path().join("c4.edges"), "0 1\n1 2\n2 3\n3 0\n").unwrap();
    let o = hypavg(
        &["estimate", "c4.edges", "--exact", "--json", "r.json"],
        dir.path(),
    );
    assert_eq!(code(&o), 0);
    let doc: Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("r.json")).unwrap()).unwrap();
    check_schema(&doc, "avg_report.v1.json");
    assert_eq!(doc["exact"]["hyp"]["rational"], "3/32");

    std::fs::write(dir.path().join("w.txt"), "0 1\n2 1\n").unwrap();
    let o = hypavg(
        &[
            "estimate",
            "c4.edges",
            "--dist",
            "w.txt",
            "--exact",
            "--samples",
            "100",
        ],
        dir.path(),
    );
    assert_eq!(code(&o), 0);
    let doc: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["exact"]["hyp"]["rational"], "0");

    std::fs::write(dir.path().join("two.edges"), "0 1\n2 3\n3 4\n").unwrap();
    let o = hypavg(&["estimate", "two.edges"], dir.path());
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("2 components"));
    let o = hypavg(
        &["estimate", "two.edges", "--giant", "--samples", "50"],
        dir.path(),
    );
    assert_eq!(code(&o), 0);

    let o = hypavg(&["estimate", "missing.edges"], dir.path());
    assert_eq!(code(&o), 2);
}

#[test]
fn audit_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let fixtures = common::fixtures();
    let c6 = fixtures.join("graphs/c6.edges");
    let petersen = fixtures.join("graphs/petersen.edges");
    let (c6, petersen) = (c6.to_str().unwrap(), petersen.to_str().unwrap());

    let o = hypavg(
        &[
            "audit",
            c6,
            petersen,
            "--samples",
            "500",
            "--json",
            "a.json",
        ],
        dir.path(),
    );
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    let doc: Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("a.json")).unwrap()).unwrap();
    check_schema(&doc, "audit_report.v1.json");

    let o = hypavg(
        &[
            "audit",
            c6,
            "--samples",
            "200",
            "--corrupt-distances",
            "--json",
            "bad.json",
        ],
        dir.path(),
    );
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stdout).contains("witness for"));
    let doc: Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("bad.json")).unwrap())
            .unwrap();
    check_schema(&doc, "audit_report.v1.json");

    let o = hypavg(&["audit", "--exhaustive-small", "5"], dir.path());
    assert_eq!(code(&o), 0);
    let o = hypavg(&["audit"], dir.path());
    assert_eq!(code(&o), 2);
}

#[test]
fn experiment_and_witness() {
    let dir = tempfile::tempdir().unwrap();
    let run = |out: &str| {
        hypavg(
            &[
                "experiment",
                "gn-scan",
                "--n",
                "4,5",
                "--samples",
                "200",
                "--quad-samples",
                "200",
                "--out",
                out,
            ],
            dir.path(),
        )
    };
    assert_eq!(code(&run("x.csv")), 0);
    let csv = std::fs::read_to_string(dir.path().join("x.csv")).unwrap();
    assert_eq!(csv.lines().count(), 3);
    assert!(csv.lines().skip(1).all(|l| l.ends_with(',')));

    let o = hypavg(&["experiment", "nope"], dir.path());
    assert_eq!(code(&o), 2);

    let o = hypavg(
        &["witness", "--kind", "fat-insize1-6", "--out", "w"],
        dir.path(),
    );
    assert_eq!(code(&o), 0);
    assert!(dir.path().join("w/fat-insize1-6.json").exists());
    let o = hypavg(
        &[
            "witness",
            "--kind",
            "fat-insize1-6",
            "--budget",
            "2",
            "--out",
            "w",
        ],
        dir.path(),
    );
    assert_eq!(code(&o), 4);
}
