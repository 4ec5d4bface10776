//! CLI behavior: exit codes, exact output shapes, warnings, and the JSON
//! round trip.

use std::process::{Command, Output};

use ffprime::counting::SweepRow;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ffprime"))
        .args(args)
        .env_remove("FFPRIME_BUDGET")
        .output()
        .expect("binary runs")
}

fn run_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ffprime"))
        .args(args)
        .env(key, value)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

#[test]
fn goldbach_count_example() {
    let out = run(&["goldbach", "count", "--p", "3", "--n", "2", "--poly", "t^2"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "problem=goldbach q=3 n=2 F=0,0,1 count=1\n");
}

#[test]
fn goldbach_count_with_witnesses() {
    let out = run(&[
        "goldbach", "count", "--p", "3", "--poly", "t^2", "--witnesses",
    ]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out),
        "problem=goldbach q=3 n=2 F=0,0,1 count=1\nwitness=1,1\n"
    );
}

#[test]
fn twin_count_example() {
    let out = run(&["twin", "count", "--p", "3", "--n", "2", "--a", "t"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "problem=twin q=3 n=2 A=0,1 count=1\n");
}

#[test]
fn usage_errors_exit_1() {
    // n < 2
    let out = run(&["goldbach", "count", "--p", "3", "--poly", "t"]);
    assert_eq!(out.status.code(), Some(1));
    // unknown flag
    let out = run(&["goldbach", "count", "--p", "3", "--poly", "t^2", "--nope"]);
    assert_eq!(out.status.code(), Some(1));
    // unknown subcommand
    let out = run(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(1));
    // unparseable polynomial
    let out = run(&["goldbach", "count", "--p", "3", "--poly", "t^+"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("parse error"));
    // invalid field
    let out = run(&["goldbach", "count", "--p", "4", "--poly", "t^2"]);
    assert_eq!(out.status.code(), Some(1));
    // --n disagreeing with the polynomial degree
    let out = run(&["goldbach", "count", "--p", "3", "--n", "3", "--poly", "t^2"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn budget_exceeded_exits_2() {
    let out = run(&[
        "goldbach", "count", "--p", "3", "--poly", "t^9+t+1", "--budget", "10",
    ]);
    assert_eq!(out.status.code(), Some(2));
    // the environment variable drives the same path
    let out = run_env(
        &["goldbach", "count", "--p", "3", "--poly", "t^9+t+1"],
        "FFPRIME_BUDGET",
        "10",
    );
    assert_eq!(out.status.code(), Some(2));
    // an explicit flag overrides the environment
    let out = run_env(
        &[
            "goldbach", "count", "--p", "3", "--poly", "t^4+t+2", "--budget", "1000000",
        ],
        "FFPRIME_BUDGET",
        "10",
    );
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn empty_sweep_emits_header_only() {
    let out = run(&["goldbach", "sweep", "--n", "2", "--q-list", ""]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out),
        "problem,q,n,input,count,main_term,series_value,series_err,ratio,err_t1,err_t2,elapsed_ms\n"
    );
}

#[test]
fn one_row_sweep_has_12_columns() {
    let out = run(&[
        "twin", "sweep", "--n", "1", "--q-list", "3", "--sample", "random:1", "--seed", "5",
        "--trunc-D", "4",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let headers = rdr.headers().unwrap().clone();
    assert_eq!(headers.len(), 12);
    let rows: Vec<csv::StringRecord> = rdr.records().map(|r| r.unwrap()).collect();
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0].len(), 12);
    assert_eq!(&rows[0][0], "twin");
    assert_eq!(&rows[0][4], "3"); // every monic linear is irreducible
    assert_eq!(&rows[0][11], "0"); // timings are zeroed by default
}

#[test]
fn sweep_json_round_trips() {
    let out = run(&[
        "goldbach", "sweep", "--n", "2", "--q-list", "3,5", "--trunc-D", "4", "--format", "json",
    ]);
    assert!(out.status.success());
    let rows: Vec<SweepRow> = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(rows.len(), 9 + 25);
    for row in &rows {
        assert_eq!(row.n, 2);
        assert_eq!(row.count, Some((row.q - 1) / 2));
        assert!(row.error.is_none());
        assert_eq!(row.elapsed_ms, 0);
    }
    // structural round trip: serialize again and compare
    let again = serde_json::to_string_pretty(&rows).unwrap();
    let reparsed: Vec<SweepRow> = serde_json::from_str(&again).unwrap();
    assert_eq!(rows, reparsed);
}

#[test]
fn count_json_round_trips() {
    let out = run(&[
        "twin", "count", "--p", "3", "--n", "2", "--a", "t", "--witnesses", "--format", "json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["problem"], "twin");
    assert_eq!(v["q"], 3);
    assert_eq!(v["count"], 1);
    assert_eq!(v["witnesses"][0], "2,1,1");
    assert_eq!(v["elapsed_ms"], 0);
}

#[test]
fn even_q_warning_and_computation_proceeds() {
    let out = run(&["goldbach", "sweep", "--n", "2", "--q-list", "4", "--trunc-D", "4"]);
    assert!(out.status.success());
    let err = stderr(&out);
    assert!(err.contains("q=4 is even"), "stderr: {}", err);
    assert!(err.contains("characteristic 2 with n=2"), "stderr: {}", err);
    // rows are still produced
    assert_eq!(stdout(&out).lines().count(), 1 + 16);

    let out = run(&[
        "heuristic", "twin", "--p", "2", "--k", "2", "--n", "2", "--a", "1",
    ]);
    assert!(out.status.success());
    assert!(stderr(&out).contains("q=4 is even"));
}

#[test]
fn heuristic_zero_flag_case() {
    let out = run(&[
        "heuristic", "twin", "--p", "2", "--n", "2", "--a", "1", "--count", "--trunc-D", "3",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("series_zero_flag=true"), "{}", text);
    assert!(text.contains("count=0"), "{}", text);
    assert!(text.contains("ratio=NA"), "{}", text);
}

#[test]
fn heuristic_partial_product_example() {
    let out = run(&[
        "heuristic", "goldbach", "--p", "3", "--poly", "t^2", "--trunc-D", "1",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("main_term=3/2"), "{}", text);
    // 27/32 with 15 significant digits
    assert!(text.contains("series_value=8.43750000000000e-1"), "{}", text);
}

#[test]
fn irr_count_and_list() {
    let out = run(&["irr", "count", "--p", "3", "--n", "2"]);
    assert_eq!(stdout(&out), "q=3 n=2 count=3\n");

    let out = run(&["irr", "list", "--p", "3", "--n", "2", "--irreducible"]);
    assert_eq!(stdout(&out), "1,0,1\n2,1,1\n2,2,1\n");

    let out = run(&["irr", "count", "--p", "2", "--k", "4", "--n", "4"]);
    assert_eq!(stdout(&out), "q=16 n=4 count=16320\n");
}

#[test]
fn explicit_modulus_is_honored() {
    // t^2 + 2t + 2 is irreducible over GF(3); multiplication differs from
    // the canonical modulus but field behavior stays consistent
    let out = run(&[
        "twin", "count", "--p", "3", "--k", "2", "--modulus", "2,2,1", "--n", "1", "--a", "1",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "problem=twin q=9 n=1 A=1 count=9\n");
    // reducible modulus rejected
    let out = run(&[
        "twin", "count", "--p", "3", "--k", "2", "--modulus", "2,0,1", "--n", "1", "--a", "1",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn loose_summand_mode() {
    let strict = run(&["goldbach", "count", "--p", "5", "--poly", "t^3+2t+1"]);
    let loose = run(&[
        "goldbach", "count", "--p", "5", "--poly", "t^3+2t+1", "--loose-summand",
    ]);
    assert!(strict.status.success() && loose.status.success());
    let parse_count = |s: &str| -> u64 {
        s.split("count=").nth(1).unwrap().trim().parse().unwrap()
    };
    assert!(parse_count(&stdout(&loose)) >= parse_count(&stdout(&strict)));
}

#[test]
fn verify_double_count_output() {
    let out = run(&[
        "verify", "double-count", "--p", "3", "--problem", "goldbach", "--poly", "t^2",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("PASS double-count"), "{}", text);
    assert!(text.contains("lhs=9 rhs=9"), "{}", text);
    assert!(text.contains("PASS count-consistency"), "{}", text);

    let out = run(&[
        "verify", "double-count", "--p", "3", "--problem", "twin", "--n", "2", "--a", "t",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("lhs=81 rhs=81"));
}

#[test]
fn sweep_file_output() {
    let dir = std::env::temp_dir().join(format!("ffprime-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("sweep.csv");
    let out = run(&[
        "goldbach", "sweep", "--n", "2", "--q-list", "3", "--trunc-D", "4", "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert_eq!(written.lines().count(), 1 + 9);
    std::fs::remove_dir_all(&dir).unwrap();
}
