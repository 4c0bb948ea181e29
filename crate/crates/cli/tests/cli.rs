use peakset_cli::{run, Outcome, EXIT_INPUT, EXIT_OK, EXIT_RESOURCE, EXIT_USAGE};

fn peakset(args: &[&str]) -> Outcome {
    run(std::iter::once("peakset").chain(args.iter().copied()))
}

fn data(name: &str) -> String {
    format!("{}/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn count_golden_cycle() {
    let out = peakset(&["count", "--family", "cycle:5", "--peaks", "1,3"]);
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(out.stdout, "16\n");
}

#[test]
fn count_from_file_and_inline_agree() {
    let file = peakset(&["count", "--graph", &data("c5.txt"), "--peaks", "1,3"]);
    let inline = peakset(&[
        "count",
        "--inline",
        "n 5; e 1 2; e 2 3; e 3 4; e 4 5; e 5 1",
        "--peaks",
        "1,3",
    ]);
    assert_eq!(file.stdout, "16\n");
    assert_eq!(inline.stdout, "16\n");
}

#[test]
fn enumerate_csv_has_eight_rows() {
    let out = peakset(&[
        "enumerate",
        "--graph",
        &data("fig2.txt"),
        "--peaks",
        "1",
        "--format",
        "csv",
    ]);
    assert_eq!(out.code, EXIT_OK);
    let rows: Vec<&str> = out.stdout.lines().collect();
    assert_eq!(rows.len(), 8);
    assert_eq!(rows[0], "4,3,2,1");
    assert!(rows.contains(&"3,1,2,4"));
}

#[test]
fn formula_star_centre() {
    let out = peakset(&["formula", "--family", "star:8", "--peaks", "1"]);
    assert_eq!((out.code, out.stdout.as_str()), (EXIT_OK, "5040\n"));
    let checked = peakset(&["formula", "--family", "star:8", "--peaks", "", "--check"]);
    assert_eq!(checked.stdout, "35280\nenumeration: 35280 (agree)\n");
}

#[test]
fn formula_uncovered_case_is_reported() {
    let out = peakset(&[
        "formula", "--family", "wheel:5", "--peaks", "2,4", "--check", "--format", "json",
    ]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.contains("\"count\":null"), "{}", out.stdout);
    assert!(out.stdout.contains("\"agrees\":null"));
}

#[test]
fn count_matches_enumeration_length() {
    for (family, peaks) in [
        ("cycle:7", "1,4"),
        ("path:8", "2,5"),
        ("fan:3,3", "4"),
        ("wheel:5", "1"),
    ] {
        let count = peakset(&["count", "--family", family, "--peaks", peaks]);
        let listing = peakset(&[
            "enumerate",
            "--family",
            family,
            "--peaks",
            peaks,
            "--max-output",
            "1000000",
        ]);
        assert_eq!(
            count.stdout.trim(),
            listing.stdout.lines().count().to_string(),
            "{family} {peaks}"
        );
    }
}

#[test]
fn enumerate_marks_truncation() {
    let out = peakset(&[
        "enumerate",
        "--family",
        "cycle:5",
        "--peaks",
        "1,3",
        "--max-output",
        "5",
        "--format",
        "json",
    ]);
    assert!(out.stdout.contains("\"count\":\"5\""));
    assert!(out.stdout.trim_end().ends_with("\"truncated\":true}"));
}

#[test]
fn memo_flag_does_not_change_counts() {
    let memo = peakset(&["count", "--family", "path:12", "--peaks", "2,6"]);
    let plain = peakset(&[
        "count",
        "--family",
        "path:12",
        "--peaks",
        "2,6",
        "--no-memo",
    ]);
    assert_eq!(memo, plain);
}

#[test]
fn free_set_widens_the_target() {
    // With L = V the result is every labeling whose peaks contain S.
    let out = peakset(&[
        "count", "--family", "path:4", "--peaks", "", "--free", "1,2,3,4",
    ]);
    assert_eq!(out.stdout, "24\n");
    let missing = peakset(&["count", "--family", "path:4", "--free", "2"]);
    assert_eq!(missing.code, EXIT_INPUT);
}

#[test]
fn distribution_sums_to_factorial() {
    let out = peakset(&["distribution", "--family", "cycle:5", "--format", "json"]);
    assert!(out.stdout.contains("\"total\":\"120\""), "{}", out.stdout);
}

#[test]
fn admissible_and_distribution_list_the_same_sets() {
    let a = peakset(&["admissible", "--family", "complete_bipartite:2,3"]);
    let d = peakset(&["distribution", "--family", "complete_bipartite:2,3"]);
    assert_eq!(a.stdout, d.stdout);
}

#[test]
fn oracle_lists_in_lexicographic_order() {
    let out = peakset(&["oracle", "--graph", &data("fig2.txt"), "--peaks", "1"]);
    let rows: Vec<&str> = out.stdout.lines().collect();
    assert_eq!(rows.len(), 8);
    assert_eq!(rows.first(), Some(&"3 1 2 4"));
    assert_eq!(rows.last(), Some(&"4 3 2 1"));
}

#[test]
fn polynomial_output() {
    assert_eq!(peakset(&["polynomial", "--peaks", "2"]).stdout, "x - 2\n");
    let at = peakset(&["polynomial", "--peaks", "2", "--at", "20"]);
    assert_eq!(at.stdout, "x - 2\ncount on path:20: 4718592\n");
    let json = peakset(&["polynomial", "--peaks", "3", "--format", "json"]);
    assert_eq!(
        json.stdout,
        "{\"peaks\":[3],\"degree\":2,\"coefficients\":[\"0\",\"-3/2\",\"1/2\"]}\n"
    );
    let bad = peakset(&["polynomial", "--peaks", "2,3"]);
    assert_eq!(bad.code, EXIT_INPUT);
}

#[test]
fn verify_single_graph() {
    let out = peakset(&["verify", "--family", "wheel:4"]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.starts_with("ok   wheel:4"), "{}", out.stdout);
    assert!(out.stdout.ends_with("1 graphs checked, 0 mismatches\n"));
}

#[test]
fn verify_output_independent_of_threads() {
    let one = peakset(&["verify", "--threads", "1"]);
    let three = peakset(&["verify", "--threads", "3"]);
    assert_eq!(one.code, EXIT_OK);
    assert_eq!(one, three);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["count"],
        vec!["count", "--family", "cycle:5", "--graph", "x.txt"],
        vec!["count", "--family", "cycle:5", "--format", "xml"],
        vec!["count", "--family", "cycle:5", "--threads", "0"],
        vec!["launch"],
    ] {
        let out = peakset(&args);
        assert_eq!(out.code, EXIT_USAGE, "{args:?}");
        assert!(out.stdout.is_empty());
    }
}

#[test]
fn help_and_version_exit_zero() {
    let help = peakset(&["--help"]);
    assert_eq!(help.code, EXIT_OK);
    assert!(help.stdout.contains("enumerate"));
    assert_eq!(peakset(&["--version"]).code, EXIT_OK);
}

#[test]
fn input_errors_exit_three() {
    for args in [
        vec!["count", "--inline", "n 3; e 1 1"],
        vec!["count", "--inline", "e 1 2"],
        vec!["count", "--family", "cycle:2"],
        vec!["count", "--family", "cycle:5", "--peaks", "1,9"],
        vec!["count", "--graph", "/nonexistent/graph.txt"],
        vec!["formula", "--family", "teapot:3"],
    ] {
        let out = peakset(&args);
        assert_eq!(out.code, EXIT_INPUT, "{args:?}: {}", out.stderr);
        assert!(out.stderr.starts_with("error: "));
    }
}

#[test]
fn resource_limits_exit_four() {
    let oracle = peakset(&["distribution", "--family", "path:11"]);
    assert_eq!(oracle.code, EXIT_RESOURCE);
    let raised = peakset(&["oracle", "--family", "path:3", "--oracle-limit", "2"]);
    assert_eq!(raised.code, EXIT_RESOURCE);
    let admissible = peakset(&["admissible", "--family", "path:17"]);
    assert_eq!(admissible.code, EXIT_RESOURCE);
    assert_eq!(
        peakset(&["admissible", "--family", "path:17", "--bound", "17"]).code,
        EXIT_OK
    );
}
