//! End-to-end tests driving the compiled binary: exit codes, the JSON
//! decision documents, file round trips, and fast-vs-oracle agreement.

use std::fs;
use std::path::Path;
use std::process::Command;

use serde_json::Value;
use tempfile::TempDir;

/// Path 1-2-3; agent 1 wants to walk right, agent 2 is happy where it is,
/// agent 3 wants object 2.
const I1: &str = r#"{ "n": 3, "graph": { "edges": [[1,2],[2,3]] }, "preferences": [[3,2,1],[1,2,3],[2,3,1]] }"#;
/// Two objects, one edge, nobody wants to trade.
const I2: &str = r#"{ "n": 2, "graph": { "edges": [[1,2]] }, "preferences": [[1,2],[2,1]] }"#;
/// One variable in three clauses (x1, x1, not-x1); unsatisfiable.
const F1: &str = "p cnf 1 3\n1 0\n1 0\n-1 0\n";
/// Two variables in three clauses; satisfiable by setting both true.
const F2: &str = "p cnf 2 3\n1 2 0\n1 -2 0\n-1 2 0\n";

fn run(dir: &Path, args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_swapnet"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("the binary runs");
    (
        out.status.code().expect("the binary exits normally"),
        String::from_utf8(out.stdout).expect("stdout is UTF-8"),
        String::from_utf8(out.stderr).expect("stderr is UTF-8"),
    )
}

fn run_json(dir: &Path, args: &[&str]) -> (i32, Value) {
    let (code, stdout, stderr) = run(dir, args);
    let doc = serde_json::from_str(&stdout).unwrap_or_else(|e| {
        panic!("stdout is one JSON object ({e});\nstdout: {stdout}\nstderr: {stderr}")
    });
    (code, doc)
}

fn write(dir: &Path, name: &str, contents: &str) {
    fs::write(dir.join(name), contents).expect("fixture write");
}

#[test]
fn path_object_query_round_trips_through_verify() {
    let tmp = TempDir::new().unwrap();
    let dir = tmp.path();
    write(dir, "i1.json", I1);

    let (code, doc) = run_json(
        dir,
        &["solve", "ro", "-i", "i1.json", "--agent", "1", "--object", "3", "--witness", "w.json"],
    );
    assert_eq!(code, 0);
    assert_eq!(doc["answer"], "yes");
    assert_eq!(doc["class"], "path");
    assert_eq!(doc["method"], "fast");
    assert_eq!(doc["witness_len"], 2);

    let (code, doc) = run_json(dir, &["verify", "-i", "i1.json", "-w", "w.json"]);
    assert_eq!(code, 0);
    assert_eq!(doc["valid"], true);
    assert_eq!(doc["final"], serde_json::json!([3, 1, 2]));

    write(dir, "good.json", r#"{ "matching": [3,1,2] }"#);
    let (code, doc) =
        run_json(dir, &["verify", "-i", "i1.json", "-w", "w.json", "--target", "good.json"]);
    assert_eq!(code, 0);
    assert_eq!(doc["matches_target"], true);

    write(dir, "bad.json", r#"{ "matching": [1,2,3] }"#);
    let (code, doc) =
        run_json(dir, &["verify", "-i", "i1.json", "-w", "w.json", "--target", "bad.json"]);
    assert_eq!(code, 1);
    assert_eq!(doc["matches_target"], false);
}

#[test]
fn no_answers_exit_one_and_write_no_witness() {
    let tmp = TempDir::new().unwrap();
    let dir = tmp.path();
    write(dir, "i1.json", I1);
    // Agent 2 ranks object 3 last, so it can never improve onto it.
    let (code, doc) = run_json(
        dir,
        &["solve", "ro", "-i", "i1.json", "--agent", "2", "--object", "3", "--witness", "w.json"],
    );
    assert_eq!(code, 1);
    assert_eq!(doc["answer"], "no");
    assert!(!dir.join("w.json").exists());
}

#[test]
fn pareto_on_a_fixed_point_is_the_endowment() {
    let tmp = TempDir::new().unwrap();
    let dir = tmp.path();
    write(dir, "i2.json", I2);
    let (code, doc) = run_json(dir, &["solve", "pe", "-i", "i2.json"]);
    assert_eq!(code, 0);
    assert_eq!(doc["matching"], serde_json::json!([1, 2]));
    assert_eq!(doc["witness_len"], 0);
}

#[test]
fn fast_and_oracle_methods_agree() {
    let tmp = TempDir::new().unwrap();
    let dir = tmp.path();
    write(dir, "i1.json", I1);
    for agent in ["1", "2", "3"] {
        for object in ["1", "2", "3"] {
            let base = ["solve", "ro", "-i", "i1.json", "--agent", agent, "--object", object];
            let (fast_code, fast_doc) =
                run_json(dir, &[&base[..], &["--method", "fast"]].concat());
            let (oracle_code, oracle_doc) =
                run_json(dir, &[&base[..], &["--method", "oracle"]].concat());
            assert_eq!(fast_code, oracle_code, "query ({agent}, {object})");
            assert_eq!(fast_doc["answer"], oracle_doc["answer"]);
        }
    }
    let (_, fast_pe) = run_json(dir, &["solve", "pe", "-i", "i1.json", "--method", "fast"]);
    let (_, oracle_pe) = run_json(dir, &["solve", "pe", "-i", "i1.json", "--method", "oracle"]);
    assert_eq!(fast_pe["matching"], oracle_pe["matching"]);
}

#[test]
fn matching_queries_decide_and_replay() {
    let tmp = TempDir::new().unwrap();
    let dir = tmp.path();
    write(dir, "i1.json", I1);

    write(dir, "reach.json", r#"{ "matching": [2,1,3] }"#);
    let (code, doc) = run_json(
        dir,
        &["solve", "rm", "-i", "i1.json", "--target", "reach.json", "--witness", "w.json"],
    );
    assert_eq!(code, 0);
    assert_eq!(doc["answer"], "yes");
    let (code, _) =
        run_json(dir, &["verify", "-i", "i1.json", "-w", "w.json", "--target", "reach.json"]);
    assert_eq!(code, 0);

    // Agent 2 would end below its endowment; rational swaps cannot get there.
    write(dir, "unreach.json", r#"{ "matching": [1,3,2] }"#);
    let (code, doc) =
        run_json(dir, &["solve", "rm", "-i", "i1.json", "--target", "unreach.json"]);
    assert_eq!(code, 1);
    assert_eq!(doc["answer"], "no");
}

#[test]
fn generated_instances_reclassify_to_the_requested_class() {
    let tmp = TempDir::new().unwrap();
    let dir = tmp.path();
    for (class, n) in [("path", "7"), ("star", "7"), ("genstar", "8"), ("tree", "7"), ("clique", "6")]
    {
        let name = format!("{class}.json");
        let (code, _) = run_json(
            dir,
            &["gen", "instance", "--class", class, "--n", n, "--seed", "5", "-o", &name],
        );
        assert_eq!(code, 0);
        let (code, doc) = run_json(dir, &["classify", "-i", &name]);
        assert_eq!(code, 0);
        assert_eq!(doc["class"], class, "generated {class} instance");

        // Same seed, same bytes.
        let again = format!("{class}-again.json");
        run_json(dir, &["gen", "instance", "--class", class, "--n", n, "--seed", "5", "-o", &again]);
        assert_eq!(
            fs::read_to_string(dir.join(&name)).unwrap(),
            fs::read_to_string(dir.join(&again)).unwrap()
        );
    }
}

#[test]
fn formula_reductions_match_satisfiability() {
    let tmp = TempDir::new().unwrap();
    let dir = tmp.path();
    write(dir, "f1.cnf", F1);
    write(dir, "f2.cnf", F2);
    // (formula, expected RO exit, objects from sat2clique, from sat2genstar)
    let cases = [("f1.cnf", 1, 11, 12), ("f2.cnf", 0, 13, 17)];
    for (formula, expect, clique_n, genstar_n) in cases {
        for (encoding, n) in [("sat2clique", clique_n), ("sat2genstar", genstar_n)] {
            let out = format!("{encoding}-{formula}.json");
            let (code, doc) = run_json(dir, &["reduce", encoding, "-i", formula, "-o", &out]);
            assert_eq!(code, 0);
            assert_eq!(doc["n"], n, "{encoding} on {formula}");
            let agent = doc["agent"].to_string();
            let object = doc["object"].to_string();
            let (code, _) = run_json(
                dir,
                &["solve", "ro", "-i", &out, "--agent", &agent, "--object", &object],
            );
            assert_eq!(code, expect, "{encoding} on {formula}");
        }
    }
}

#[test]
fn query_folding_preserves_the_decision() {
    let tmp = TempDir::new().unwrap();
    let dir = tmp.path();
    write(dir, "i1.json", I1);
    for (agent, object, expect) in [("1", "3", 0), ("2", "3", 1)] {
        let (code, _) = run_json(
            dir,
            &[
                "reduce", "ro2rm", "-i", "i1.json", "--agent", agent, "--object", object,
                "-o", "rm.json", "--target-out", "t.json",
            ],
        );
        assert_eq!(code, 0);
        let (code, _) = run_json(dir, &["solve", "rm", "-i", "rm.json", "--target", "t.json"]);
        assert_eq!(code, expect, "folded query ({agent}, {object})");
    }
}

#[test]
fn usage_errors_exit_two() {
    let tmp = TempDir::new().unwrap();
    let dir = tmp.path();
    write(dir, "i1.json", I1);

    let (code, _, stderr) =
        run(dir, &["solve", "ro", "-i", "i1.json", "--agent", "9", "--object", "1"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("out of range"), "stderr: {stderr}");

    run_json(dir, &["gen", "instance", "--class", "clique", "--n", "5", "-o", "c.json"]);
    let (code, _, stderr) = run(dir, &["solve", "pe", "-i", "c.json", "--method", "fast"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("no fast"), "stderr: {stderr}");

    let (code, _, _) = run(dir, &["classify", "-i", "missing.json"]);
    assert_eq!(code, 2);

    let (code, _, _) = run(dir, &["frobnicate"]);
    assert_eq!(code, 2);
}

#[test]
fn enumeration_reports_size_and_front() {
    let tmp = TempDir::new().unwrap();
    let dir = tmp.path();
    write(dir, "i1.json", I1);

    let (code, doc) = run_json(dir, &["oracle", "enum", "-i", "i1.json"]);
    assert_eq!(code, 0);
    assert_eq!(doc["size"], 3);
    assert_eq!(doc["front_size"], 1);
    assert_eq!(doc["truncated"], false);

    let (code, doc) = run_json(dir, &["oracle", "enum", "-i", "i1.json", "--limit", "2"]);
    assert_eq!(code, 3);
    assert_eq!(doc["truncated"], true);
    assert!(doc.get("front_size").is_none());
}

#[test]
fn tsv_output_flattens_the_document() {
    let tmp = TempDir::new().unwrap();
    let dir = tmp.path();
    write(dir, "i1.json", I1);
    let (code, stdout, _) = run(dir, &["classify", "-i", "i1.json", "--format", "tsv"]);
    assert_eq!(code, 0);
    assert!(stdout.lines().any(|l| l == "class\tpath"), "stdout: {stdout}");
    assert!(stdout.lines().all(|l| l.matches('\t').count() == 1));
}

#[test]
fn slack_strategy_matches_bisect() {
    let tmp = TempDir::new().unwrap();
    let dir = tmp.path();
    run_json(
        dir,
        &["gen", "instance", "--class", "path", "--n", "30", "--seed", "13", "-o", "p.json"],
    );
    let (_, bisect) = run_json(dir, &["solve", "pe", "-i", "p.json", "--strategy", "bisect"]);
    let (_, slack) = run_json(dir, &["solve", "pe", "-i", "p.json", "--strategy", "slack"]);
    assert_eq!(bisect["matching"], slack["matching"]);
}
