use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn apery(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_apery"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json_lines(out: &Output) -> Vec<Value> {
    stdout(out)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

fn values(out: &Output) -> Vec<String> {
    json_lines(out)
        .iter()
        .map(|r| r["value"].as_str().unwrap().to_string())
        .collect()
}

#[test]
fn terms_examples() {
    let out = apery(&["terms", "D", "--n-max", "4", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(values(&out), ["1", "3", "19", "147", "1251"]);

    let out = apery(&["terms", "gamma", "--n-max", "1", "--format", "json"]);
    assert_eq!(values(&out), ["1", "5"]);

    let out = apery(&[
        "terms",
        "s18",
        "--source",
        "recurrence",
        "--n-max",
        "3",
        "--format",
        "json",
    ]);
    assert_eq!(values(&out), ["1", "6", "54", "564"]);

    let out = apery(&["terms", "s18", "--n-max", "3", "--format", "json"]);
    assert_eq!(values(&out), ["1", "12", "108", "1128"]);

    let out = apery(&[
        "--eta-normalization",
        "recurrence",
        "terms",
        "eta",
        "--n-max",
        "3",
        "--format",
        "json",
    ]);
    assert_eq!(values(&out), ["1", "5", "35", "275"]);

    for record in json_lines(&out) {
        assert_eq!(record["schema_version"], 1);
    }
}

#[test]
fn transform_example() {
    let out = apery(&[
        "transform",
        "D",
        "--alpha",
        "3",
        "--n-max",
        "4",
        "--format",
        "json",
    ]);
    assert_eq!(values(&out), ["1", "0", "10", "30", "270"]);
    let out = apery(&["transform", "gamma", "--n-max", "2", "--format", "csv"]);
    assert_eq!(
        stdout(&out),
        "sequence,alpha,n,value\ngamma,5,0,1\ngamma,5,1,0\ngamma,5,2,48\n"
    );
}

#[test]
fn certify_examples() {
    let out = apery(&["certify", "D", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let r = &json_lines(&out)[0];
    assert_eq!(
        (r["M"].as_str(), r["alpha"].as_str(), r["status"].as_str()),
        (Some("10"), Some("3"), Some("pass"))
    );

    let out = apery(&["certify", "gamma", "--alpha", "5", "--format", "json"]);
    let records = json_lines(&out);
    assert_eq!(records.len(), 2);
    assert_eq!(records[1]["M"], "24");
    assert_eq!(records[1]["modulus"], "6");
    assert_eq!(records[1]["status"], "pass");

    let out = apery(&["certify", "s10", "--format", "json"]);
    assert_eq!(json_lines(&out)[0]["M"], "2");
}

#[test]
fn tables_full_match() {
    let out = apery(&["tables", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let rows = json_lines(&out);
    assert_eq!(rows.len(), 15);
    assert!(rows.iter().all(|r| r["matches"] == true));
    assert_eq!(
        (rows[0]["u1"].as_str(), rows[0]["N"].as_str()),
        (Some("2"), Some("6"))
    );
    assert_eq!(rows[6]["sequence"], "delta");
    assert_eq!(
        (rows[6]["u1"].as_str(), rows[6]["N"].as_str()),
        (Some("3"), Some("24"))
    );

    let out = apery(&[
        "--eta-normalization",
        "recurrence",
        "tables",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let eta = &json_lines(&out)[7];
    assert_eq!(
        (eta["u1"].as_str(), eta["N"].as_str()),
        (Some("5"), Some("10"))
    );
}

#[test]
fn recurrence_examples() {
    let out = apery(&["recurrence", "D", "--alpha", "3"]);
    assert_eq!(
        stdout(&out).trim(),
        "n^2*v[n] + (-2*n^2 + 2*n)*v[n-1] + (-40*n^2 + 80*n - 40)*v[n-2] + (-75*n^2 + 225*n - 150)*v[n-3] = 0"
    );
    let out = apery(&["recurrence", "D"]);
    assert_eq!(
        stdout(&out).trim(),
        "n^2*v[n] + (-11*n^2 + 11*n - 3)*v[n-1] + (-n^2 + 2*n - 1)*v[n-2] = 0"
    );

    let out = apery(&["recurrence", "gamma", "--alpha", "5", "--format", "json"]);
    let r = &json_lines(&out)[0];
    assert_eq!(r["recurrence"]["order"], 4);
    assert_eq!(
        r["recurrence"]["coefficients"][0],
        serde_json::json!(["0", "0", "0", "1"])
    );
}

#[test]
fn gauss_subset() {
    let out = apery(&[
        "gauss", "A", "--alpha", "2", "--n-max", "300", "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r = &json_lines(&out)[0];
    assert_eq!(r["status"], "pass");
    assert_eq!(r["primes"], serde_json::json!([2, 3, 5]));
}

#[test]
fn verify_filters_and_is_deterministic() {
    let args = [
        "verify",
        "--quick",
        "--only",
        "gauss,tables",
        "--format",
        "json",
    ];
    let a = apery(&args);
    let b = apery(&[
        "--parallelism",
        "3",
        "verify",
        "--quick",
        "--only",
        "gauss,tables",
        "--format",
        "json",
    ]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let records = json_lines(&a);
    assert_eq!(records.len(), 15 + 30);
    assert!(records
        .iter()
        .all(|r| r["schema_version"] == 1 && r["status"] == "pass"));
    assert!(records
        .iter()
        .all(|r| r["group"] == "gauss" || r["group"] == "tables"));

    let out = apery(&[
        "verify",
        "--quick",
        "--only",
        "operators",
        "--timings",
        "--format",
        "json",
    ]);
    let records = json_lines(&out);
    assert!(records.iter().all(|r| r["duration_ms"].is_u64()));
    assert_eq!(records.iter().filter(|r| r["status"] == "info").count(), 2);

    let out = apery(&[
        "verify",
        "--quick",
        "--eta-normalization",
        "recurrence",
        "--only",
        "operators",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(json_lines(&out).iter().all(|r| r["status"] == "pass"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(apery(&["terms", "nope"]).status.code(), Some(2));
    assert_eq!(
        apery(&["terms", "D", "--n-max", "100001"]).status.code(),
        Some(2)
    );
    assert_eq!(
        apery(&["--max-n", "5", "terms", "D", "--n-max", "6"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(apery(&["verify", "--only", "bogus"]).status.code(), Some(2));
    assert_eq!(
        apery(&["gauss", "A", "--primes", "4"]).status.code(),
        Some(2)
    );
    assert_eq!(
        apery(&["certify", "D", "--n-max", "3"]).status.code(),
        Some(2)
    );
    assert_eq!(apery(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn cache_round_trip_and_integrity() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("terms.csv");
    let cache_s = cache.to_str().unwrap();

    let first = apery(&[
        "--cache", cache_s, "terms", "D", "--n-max", "40", "--format", "json",
    ]);
    assert_eq!(first.status.code(), Some(0));
    let text = fs::read_to_string(&cache).unwrap();
    assert!(text.starts_with("D,formula,0,1\nD,formula,1,3\n"));
    assert_eq!(text.lines().count(), 41);

    let second = apery(&[
        "--cache", cache_s, "terms", "D", "--n-max", "10", "--format", "json",
    ]);
    assert_eq!(values(&second), values(&first)[..=10]);

    // a wrong term deep in the table slips past the prefix check but fails certification
    let deep: String = text
        .lines()
        .map(|l| {
            if l.starts_with("D,formula,30,") {
                "D,formula,30,7".to_string()
            } else {
                l.to_string()
            }
        })
        .collect::<Vec<_>>()
        .join("\n");
    fs::write(&cache, deep).unwrap();
    let out = apery(&[
        "--cache", cache_s, "certify", "D", "--n-max", "40", "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json_lines(&out)[0]["status"], "fail");

    // a wrong early term is an integrity violation
    let early = text.replace("D,formula,2,19", "D,formula,2,20");
    fs::write(&cache, early).unwrap();
    assert_eq!(
        apery(&["--cache", cache_s, "terms", "D", "--n-max", "5"])
            .status
            .code(),
        Some(3)
    );

    fs::write(&cache, "D,formula,0,1\nD,formula,2,19\n").unwrap();
    assert_eq!(
        apery(&["--cache", cache_s, "terms", "D", "--n-max", "5"])
            .status
            .code(),
        Some(2)
    );
}
