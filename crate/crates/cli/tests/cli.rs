use std::fs;
use std::process::{Command, Output};

use descent_poset::{perm_to_word, Permutation, Word};
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_descent-poset"))
        .args(args)
        .env_remove("DESCENT_POSET_MAX_LEN")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn json(out: &Output) -> Value {
    assert_eq!(
        code(out),
        0,
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("one JSON record")
}

fn json_lines(text: &str) -> Vec<Value> {
    text.lines()
        .map(|l| serde_json::from_str(l).expect("JSON line"))
        .collect()
}

#[test]
fn mobius_examples() {
    let v = json(&run(&[
        "mobius",
        "--bottom",
        "21",
        "--top",
        "3412",
        "--method",
        "recursive",
    ]));
    assert_eq!(v["value"], 1);
    assert_eq!(v["method_used"], "recursive");
    assert_eq!(v["cross_checked"], true);

    let v = json(&run(&[
        "mobius",
        "--bottom",
        "1",
        "--top",
        "246135",
        "--method",
        "classifier",
    ]));
    assert_eq!(v["value"], -6);
    assert_eq!(v["case"], "no-adjacency-even-M");

    let out = run(&[
        "mobius",
        "--bottom",
        "213",
        "--top",
        "2143",
        "--method",
        "normal-embedding",
    ]);
    assert_eq!(code(&out), 2);
}

#[test]
fn every_method_agrees_where_it_applies() {
    for method in ["auto", "recursive", "normal-embedding", "closed-form"] {
        let v = json(&run(&[
            "mobius", "--bottom", "21", "--top", "246135", "--method", method,
        ]));
        assert_eq!(v["value"], 6, "{method}");
    }
    let v = json(&run(&["mobius", "--bottom", "1", "--top", "246135"]));
    assert_eq!(v["method_used"], "classifier");
    let v = json(&run(&["mobius", "--bottom", "132", "--top", "213"]));
    assert_eq!(v["value"], 0);
}

#[test]
fn precondition_and_parse_exit_codes() {
    assert_eq!(
        code(&run(&[
            "mobius",
            "--bottom",
            "12",
            "--top",
            "3412",
            "--method",
            "classifier"
        ])),
        2
    );
    assert_eq!(
        code(&run(&[
            "mobius",
            "--bottom",
            "21",
            "--top",
            "3412",
            "--method",
            "closed-form"
        ])),
        2
    );
    assert_eq!(
        code(&run(&["mobius", "--bottom", "2x", "--top", "3412"])),
        1
    );
    assert_eq!(
        code(&run(&["mobius", "--bottom", "11", "--top", "3412"])),
        1
    );
    assert_eq!(code(&run(&["mobius", "--top", "3412"])), 1);
    assert_eq!(code(&run(&["verify", "--suite", "nope"])), 1);
    assert_eq!(code(&run(&["bijection", "--to-perm", "1121343"])), 2);
    assert_eq!(code(&run(&["classify-one-descent", "--perm", "2143"])), 2);
    assert_eq!(code(&run(&["--help"])), 0);
}

#[test]
fn env_var_caps_interval_size() {
    let out = Command::new(env!("CARGO_BIN_EXE_descent-poset"))
        .args([
            "mobius",
            "--bottom",
            "1",
            "--top",
            "246135",
            "--method",
            "recursive",
        ])
        .env("DESCENT_POSET_MAX_LEN", "5")
        .output()
        .unwrap();
    assert_eq!(code(&out), 2);
    let out = Command::new(env!("CARGO_BIN_EXE_descent-poset"))
        .args(["mobius", "--bottom", "1", "--top", "24513"])
        .env("DESCENT_POSET_MAX_LEN", "5")
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
}

#[test]
fn bijection_round_trip() {
    let v = json(&run(&["bijection", "--to-word", "263415"]));
    assert_eq!(v["word"], "312231");
    let v = json(&run(&["bijection", "--to-perm", "214321"]));
    assert_eq!(v["perm"], "261543");
    let v = json(&run(&["bijection", "--to-perm", "312231"]));
    assert_eq!(v["perm"], "263415");
}

#[test]
fn enumerate_listings_are_images() {
    let perms = json(&run(&["enumerate", "--length", "4", "--descents", "1"]));
    let words = json(&run(&[
        "enumerate",
        "--length",
        "4",
        "--descents",
        "1",
        "--words",
    ]));
    assert_eq!(perms["count"], 11);
    assert_eq!(words["count"], 11);
    let mut images: Vec<String> = perms["items"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| {
            let p: Permutation = p.as_str().unwrap().parse().unwrap();
            perm_to_word(&p).to_string()
        })
        .collect();
    images.sort();
    let mut listed: Vec<String> = words["items"]
        .as_array()
        .unwrap()
        .iter()
        .map(|w| w.as_str().unwrap().parse::<Word>().unwrap().to_string())
        .collect();
    listed.sort();
    assert_eq!(images, listed);

    let v = json(&run(&["enumerate", "--length", "3", "--descents", "0"]));
    assert_eq!(v["items"], serde_json::json!(["123"]));

    let text = run(&[
        "enumerate",
        "--length",
        "4",
        "--descents",
        "1",
        "--format",
        "text",
    ]);
    let text = String::from_utf8(text.stdout).unwrap();
    assert_eq!(text.lines().last(), Some("count 11"));
    assert_eq!(
        code(&run(&["enumerate", "--length", "3", "--descents", "3"])),
        2
    );
}

#[test]
fn verify_suites() {
    for (suite, n) in [("prop-mob", "7"), ("thm-main", "9"), ("euler", "6")] {
        let out = run(&["verify", "--suite", suite, "--max-length", n]);
        let v = json(&out);
        assert_eq!(v["passed"], true, "{suite}");
        assert!(v["checked"].as_u64().unwrap() > 0);
    }
    let out = run(&["verify", "--suite", "all", "--max-length", "5"]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        json_lines(&String::from_utf8(out.stdout).unwrap()).len(),
        13
    );
}

#[test]
fn complex_reports_topology() {
    let v = json(&run(&[
        "complex", "--bottom", "21", "--top", "3412", "--euler", "--betti",
    ]));
    assert_eq!(v["euler"], 1);
    assert_eq!(v["mobius"], 1);
    assert_eq!(v["reduced_betti"], serde_json::json!([0, 1]));
    assert_eq!(v["connected"], false);
}

#[test]
fn scan_disconnected_finds_obstructions() {
    for top in ["456123", "356124"] {
        let v = json(&run(&["scan-disconnected", "--top", top]));
        let found = v["subintervals"].as_array().unwrap();
        assert!(found
            .iter()
            .any(|d| d["bottom"] == "123" && d["top"] == top && d["rank"] == 3));
    }
}

#[test]
fn scan_resumes_after_interruption() {
    let dir = tempfile::tempdir().unwrap();
    let full = dir.path().join("full.jsonl");
    let partial = dir.path().join("partial.jsonl");
    let args = |path: &std::path::Path| {
        vec![
            "scan-conjecture".to_string(),
            "--max-length".into(),
            "7".into(),
            "--out".into(),
            path.display().to_string(),
        ]
    };
    let out = run(&args(&full).iter().map(String::as_str).collect::<Vec<_>>());
    assert_eq!(code(&out), 0);
    let complete = fs::read_to_string(&full).unwrap();
    let lines: Vec<&str> = complete.lines().collect();
    assert_eq!(lines.len(), 218);

    // Keep 50 whole records and half of the next one.
    let mut torn: String = lines[..50].iter().map(|l| format!("{l}\n")).collect();
    torn.push_str(&lines[50][..lines[50].len() / 2]);
    fs::write(&partial, torn).unwrap();

    let mut resume = args(&partial);
    resume.push("--resume".into());
    let out = run(&resume.iter().map(String::as_str).collect::<Vec<_>>());
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stderr).contains("50 already recorded"));
    assert_eq!(fs::read_to_string(&partial).unwrap(), complete);
}

#[test]
fn scan_csv_matches_json() {
    let dir = tempfile::tempdir().unwrap();
    let json_path = dir.path().join("scan.jsonl");
    let csv_path = dir.path().join("scan.csv");
    for (path, format) in [(&json_path, "json"), (&csv_path, "csv")] {
        let out = run(&[
            "scan-conjecture",
            "--max-length",
            "7",
            "--betti",
            "--format",
            format,
            "--out",
            path.to_str().unwrap(),
        ]);
        assert_eq!(code(&out), 0);
    }
    let records = json_lines(&fs::read_to_string(&json_path).unwrap());
    let mut reader = csv::Reader::from_path(&csv_path).unwrap();
    let header = reader.headers().unwrap().clone();
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), records.len());
    let mut obstructed = 0;
    for (record, row) in records.iter().zip(&rows) {
        assert_eq!(record["subject"], row[0]);
        let q = record["quantities"].as_object().unwrap();
        assert_eq!(q.len() + 1, header.len());
        for (name, cell) in header.iter().zip(row.iter()).skip(1) {
            let expected = match &q[name] {
                Value::String(s) => s.clone(),
                Value::Array(items) => items
                    .iter()
                    .map(|i| match i {
                        Value::String(s) => s.clone(),
                        other => other.to_string(),
                    })
                    .collect::<Vec<_>>()
                    .join(";"),
                other => other.to_string(),
            };
            assert_eq!(cell, expected, "{} {name}", &row[0]);
        }
        if q["avoids_obstructions"] == false {
            obstructed += 1;
            assert!(q["disconnected_count"].as_u64().unwrap() > 0);
        }
    }
    assert!(obstructed > 0);
}

#[test]
fn output_is_deterministic_across_widths() {
    let a = run(&["scan-disconnected", "--top", "3561247", "--jobs", "1"]);
    let b = run(&["scan-disconnected", "--top", "3561247", "--jobs", "3"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}
