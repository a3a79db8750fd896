//! End-to-end tests against the built binary.

use std::path::Path;
use std::process::{Command, Output};

fn subnorm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_subnorm"))
        .args(args)
        .env_remove("SUBNORM_CENSUS")
        .output()
        .expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn spr_of_a5_prints_one_sixth() {
    let out = subnorm(&["spr", "--name", "A5"]);
    assert!(out.status.success());
    assert_eq!(stdout_of(&out), "1/6\n");
}

#[test]
fn order_of_trivial_prints_one() {
    let out = subnorm(&["order", "--name", "trivial"]);
    assert!(out.status.success());
    assert_eq!(stdout_of(&out), "1\n");
}

#[test]
fn spr_element_on_a_three_cycle() {
    let out = subnorm(&["spr-element", "-x", "2 3 1 4 5", "--name", "A5"]);
    assert!(out.status.success());
    assert_eq!(stdout_of(&out), "1/10\n");
}

#[test]
fn subnormalizer_lists_the_element_set() {
    let out = subnorm(&["subnormalizer", "-x", "2 3 1 4 5", "--name", "A5"]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("order 6"));
    assert_eq!(lines.count(), 6);
    let out = subnorm(&[
        "subnormalizer",
        "-x",
        "2 3 1 4 5",
        "--name",
        "A5",
        "--order-only",
    ]);
    assert_eq!(stdout_of(&out), "order 6\n");
}

#[test]
fn count_and_sylow_output() {
    let out = subnorm(&["count", "-p", "2", "--name", "A5"]);
    assert!(out.status.success());
    assert_eq!(stdout_of(&out), "count 16\np-part 4\nratio 4\n");
    let out = subnorm(&["sylow", "-p", "2", "--name", "A5"]);
    let text = stdout_of(&out);
    assert!(text.starts_with("order 4\ncount 5\nnormalizer 12\ndegree 5\n"));
}

#[test]
fn phi_of_a5_with_s5() {
    let out = subnorm(&["phi", "--aut", "S5", "--name", "A5"]);
    assert!(out.status.success());
    assert_eq!(stdout_of(&out), "2\n");
}

#[test]
fn classes_are_deterministic() {
    let a = subnorm(&["classes", "--name", "S4"]);
    let b = subnorm(&["classes", "--name", "S4"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(stdout_of(&a).lines().count(), 5);
}

#[test]
fn unknown_flags_and_commands_exit_2() {
    let out = subnorm(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    let out = subnorm(&["order", "--nonsense"]);
    assert_eq!(out.status.code(), Some(2));
    let out = subnorm(&["order"]); // no group given
    assert_eq!(out.status.code(), Some(2));
    let out = subnorm(&["order", "--name", "NoSuchGroup"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn non_prime_p_exits_2() {
    for p in ["1", "4"] {
        let out = subnorm(&["sylow", "-p", p, "--name", "A5"]);
        assert_eq!(out.status.code(), Some(2), "p = {}", p);
        let out = subnorm(&["count", "-p", p, "--name", "A5"]);
        assert_eq!(out.status.code(), Some(2), "p = {}", p);
    }
}

#[test]
fn cap_errors_exit_2_and_name_the_cap() {
    let out = subnorm(&["order", "--name", "A5", "--max-order", "30"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("60") && err.contains("30"), "{}", err);
}

#[test]
fn group_files_round_trip_through_the_cli() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c3.grp");
    std::fs::write(&path, "# the 3-cycle\ndegree 3\n2 3 1\n").unwrap();
    let out = subnorm(&["order", "--file", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(stdout_of(&out), "3\n");
    // malformed row: exit 2 with the line number
    std::fs::write(&path, "degree 3\n1 1 2\n").unwrap();
    let out = subnorm(&["order", "--file", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("line 2"));
}

fn census_line_without_timestamp(line: &str) -> String {
    let mut fields: Vec<&str> = line.split('\t').collect();
    assert_eq!(fields.len(), 8, "line: {}", line);
    fields.truncate(7);
    fields.join("\t")
}

#[test]
fn census_appends_and_reads_back() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("census.tsv");
    let path_str = path.to_str().unwrap();
    let first = subnorm(&["census", "--name", "A5", "--census-file", path_str]);
    assert!(first.status.success(), "{:?}", first);
    let second = subnorm(&["census", "--name", "A5", "--census-file", path_str]);
    assert!(second.status.success());
    // identical mathematical fields, timestamp excepted
    assert_eq!(
        census_line_without_timestamp(stdout_of(&first).trim_end()),
        census_line_without_timestamp(stdout_of(&second).trim_end())
    );
    let line = stdout_of(&first);
    assert!(line.starts_with("A5\t60\t1/6\t"), "{}", line);
    assert!(line.contains("casolo=true"));
    assert!(line.contains("lyons=true"));
    // corrupt one line, then read back: two records plus a warning
    let mut content = std::fs::read_to_string(&path).unwrap();
    content.push_str("definitely not a census line\n");
    std::fs::write(&path, content).unwrap();
    let out = subnorm(&["census", "--show", "--census-file", path_str, "--name", "A5"]);
    assert!(out.status.success());
    assert_eq!(stdout_of(&out).lines().count(), 2);
    assert!(String::from_utf8(out.stderr)
        .unwrap()
        .contains("1 malformed"));
}

#[test]
fn census_with_aut_records_phi() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("census.tsv");
    let out = subnorm(&[
        "census",
        "--name",
        "A5",
        "--aut",
        "S5",
        "--census-file",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{:?}", out);
    let line = stdout_of(&out);
    let fields: Vec<&str> = line.trim_end().split('\t').collect();
    assert_eq!(fields[4], "2"); // phi column
    // json-lines format round-trips through --show
    let out = subnorm(&[
        "census",
        "--name",
        "S4",
        "--census-file",
        path.to_str().unwrap(),
        "--format",
        "json-lines",
    ]);
    assert!(out.status.success());
    assert!(stdout_of(&out).starts_with("{"));
    let out = subnorm(&[
        "census",
        "--show",
        "--census-file",
        path.to_str().unwrap(),
        "--format",
        "json-lines",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout_of(&out).lines().count(), 2);
}

#[test]
fn spr_full_supports_json_lines() {
    let out = subnorm(&["spr", "--full", "--name", "A5", "--format", "json-lines"]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    let first = text.lines().next().unwrap();
    let row: serde_json::Value = serde_json::from_str(first).unwrap();
    assert_eq!(row["order"], 1);
    assert_eq!(row["spr"], "1");
    assert!(text.contains("spr 1/6"));
}

#[test]
fn census_respects_the_environment_variable() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("env-census.tsv");
    let out = Command::new(env!("CARGO_BIN_EXE_subnorm"))
        .args(["census", "--name", "S4"])
        .env("SUBNORM_CENSUS", path.to_str().unwrap())
        .output()
        .unwrap();
    assert!(out.status.success(), "{:?}", out);
    assert!(Path::new(&path).exists());
    // no path anywhere: exit 2
    let out = subnorm(&["census", "--name", "S4"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn jobs_flag_never_changes_output_bytes() {
    let a = subnorm(&["spr", "--full", "--name", "S4", "--jobs", "1"]);
    let b = subnorm(&["spr", "--full", "--name", "S4", "--jobs", "2"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn verify_paper_subset_passes() {
    let out = subnorm(&["verify-paper", "--only", "1,8,10"]);
    assert!(out.status.success(), "{:?}", out);
    let text = stdout_of(&out);
    assert_eq!(text.lines().count(), 4); // three criteria + summary
    assert!(text.contains("criterion 01 [PASS]"));
    assert!(text.contains("all 3 criteria passed"));
    // invalid id: usage error
    let out = subnorm(&["verify-paper", "--only", "12"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_paper_full_run_is_green() {
    let out = subnorm(&["verify-paper"]);
    assert!(out.status.success(), "{:?}", out);
    let text = stdout_of(&out);
    assert_eq!(text.matches("[PASS]").count(), 11);
    assert!(text.contains("all 11 criteria passed"));
}
