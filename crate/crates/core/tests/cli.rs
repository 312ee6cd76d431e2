use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn permtri(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_permtri"))
        .args(args)
        .env_remove("PERMTRI_BUDGET")
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn schema(name: &str) -> Value {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("schemas").join(format!("{name}.schema.json"));
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn assert_valid(name: &str, doc: &Value) {
    let s = schema(name);
    let v = jsonschema::validator_for(&s).expect("schema compiles");
    let errors: Vec<String> = v.iter_errors(doc).map(|e| format!("{e} at {}", e.instance_path())).collect();
    assert!(errors.is_empty(), "{name}: {errors:?}");
}

#[test]
fn pp_check_permutation() {
    let out = permtri(&["pp-check", "--p", "11", "--k", "2", "--alpha", "-1"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json_of(&out);
    assert_eq!(doc["verdict"], "permutation");
    assert_valid("pp-check", &doc);
}

#[test]
fn certify_fails_for_non_permutation() {
    let out = permtri(&["pp-check", "--p", "11", "--k", "2", "--alpha", "1", "--certify"]);
    assert_eq!(out.status.code(), Some(1));
    let doc = json_of(&out);
    assert_eq!(doc["verdict"], "not_permutation");
    assert_eq!(doc["witness_verified"], true);
    let plain = permtri(&["pp-check", "--p", "11", "--k", "2", "--alpha", "1"]);
    assert_eq!(plain.status.code(), Some(0));
}

#[test]
fn census_reports_522() {
    let out = permtri(&["census", "--p", "11"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json_of(&out);
    assert_eq!(doc["qualifying_count"], 522);
    assert_valid("census", &doc);
    let wide = json_of(&permtri(&["census", "--p", "11", "--conditions", "zeta_nonresidue,l_nonresidue"]));
    assert_eq!(wide["qualifying_count"], 529);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["lintri", "--p", "11", "--l", "3", "--n", "1", "--A", "1,x", "--B", "2"][..],
        &["lintri", "--p", "11", "--l", "3", "--n", "1", "--A", "1,2,3,4", "--B", "2"],
        &["pp-check", "--p", "12", "--alpha", "1"],
        &["pp-check", "--p", "11"],
        &["census", "--p", "11", "--conditions", "bogus"],
        &["frobnicate"],
    ] {
        let out = permtri(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    }
}

#[test]
fn every_subcommand_matches_its_schema() {
    let cases: [(&str, &[&str]); 9] = [
        ("pp-check", &["pp-check", "--p", "7", "--k", "2", "--alpha", "1"]),
        ("mu-check", &["mu-check", "--p", "7", "--k", "3", "--alpha", "2"]),
        ("lintri", &["lintri", "--p", "7", "--l", "3", "--n", "1", "--A", "0,1,1", "--B", "6,1,3"]),
        ("charsum", &["charsum", "--p", "7", "--k", "2"]),
        ("curve-count", &["curve-count", "--p", "7", "--k", "2", "--alpha", "1", "--alpha", "3"]),
        ("census", &["census", "--p", "7"]),
        ("k2-unique", &["k2-unique", "--p", "7", "--samples", "3"]),
        ("k2-witness", &["k2-witness", "--p", "7", "--alpha", "1", "--alpha", "0,1"]),
        ("conjecture-table", &["conjecture-table", "--p", "7", "--k", "1,2"]),
    ];
    for (name, args) in cases {
        let out = permtri(args);
        assert_eq!(out.status.code(), Some(0), "{name}: {}", String::from_utf8_lossy(&out.stderr));
        assert_valid(name, &json_of(&out));
    }
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["k2-unique", "--p", "7", "--samples", "4", "--seed", "9"][..],
        &["conjecture-table", "--p", "7", "--k", "1,2,3", "--format", "csv"],
        &["charsum", "--p", "7", "--k", "3", "--format", "text"],
    ] {
        let mut one = args.to_vec();
        one.extend(["--workers", "1"]);
        let mut four = args.to_vec();
        four.extend(["--workers", "4"]);
        let a = permtri(&one);
        let b = permtri(&four);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.stdout, permtri(&one).stdout);
    }
    let s1 = permtri(&["k2-unique", "--p", "7", "--samples", "4", "--seed", "1"]);
    let s2 = permtri(&["k2-unique", "--p", "7", "--samples", "4", "--seed", "2"]);
    assert_ne!(s1.stdout, s2.stdout);
}

#[test]
fn csv_is_rectangular() {
    let out = permtri(&["conjecture-table", "--p", "7", "--k", "1,2", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("p,k,alpha,verdict,method,witness,elapsed_ms"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 6 + 48);
    assert!(rows.iter().all(|r| r.split(',').count() == 7 && !r.contains('"')));

    let out = permtri(&["k2-witness", "--p", "7", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let width = text.lines().next().unwrap().split(',').count();
    assert!(text.lines().all(|l| l.split(',').count() == width));
}

#[test]
fn budget_env_switches_method() {
    let run = |budget: &str| {
        let out = Command::new(env!("CARGO_BIN_EXE_permtri"))
            .args(["pp-check", "--p", "7", "--k", "2", "--alpha", "1"])
            .env("PERMTRI_BUDGET", budget)
            .output()
            .unwrap();
        json_of(&out)["method"].as_str().unwrap().to_string()
    };
    assert_eq!(run("0"), "mu_collision");
    assert_eq!(run("100000"), "exhaustive");
}

#[test]
fn output_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("permtri-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("census.json");
    let out = permtri(&["census", "--p", "7", "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_valid("census", &doc);
    std::fs::remove_dir_all(dir).unwrap();
}
