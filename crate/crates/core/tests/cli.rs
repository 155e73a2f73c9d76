//! End-to-end tests of the command-line interface, driving the compiled
//! binary the way a user would.

use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_inertol"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 stdout")
}

fn stderr(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("utf-8 stderr")
}

/// Machine-section rows: everything after the marker, split on commas.
fn machine_rows(text: &str) -> Vec<Vec<String>> {
    let marker = text
        .lines()
        .position(|l| l.starts_with("--- machine-readable"))
        .expect("machine marker present");
    text.lines()
        .skip(marker + 1)
        .filter(|l| !l.is_empty())
        .map(|l| l.split(',').map(|s| s.to_string()).collect())
        .collect()
}

fn find_row<'a>(rows: &'a [Vec<String>], prefix: &[&str]) -> Option<&'a Vec<String>> {
    rows.iter()
        .find(|r| r.len() >= prefix.len() && r.iter().zip(prefix).all(|(a, b)| a == b))
}

#[test]
fn compare_reproduces_the_reference_table() {
    let output = run(&["compare", "--spec", &fixture("five_part_gap.toml")]);
    assert!(output.status.success(), "{}", stderr(&output));
    let text = stdout(&output);

    // Three-decimal display values of the six methods.
    let expect = [
        ("worst-case", "0.200", "0.033", "-"),
        ("statistical", "0.447", "0.075", "-"),
        ("inflated(f=1.5)", "0.298", "0.050", "-"),
        ("inertial-h1", "-", "0.033", "0.033"),
        ("inertial-h2", "-", "0.075", "0.075"),
        ("corrected", "-", "0.060", "0.060"),
    ];
    for (method, r_xi, sigma_max, i_xi) in expect {
        let line = text
            .lines()
            .find(|l| l.trim_start().starts_with(method))
            .unwrap_or_else(|| panic!("row for {method} missing in:\n{text}"));
        let fields: Vec<&str> = line.split_whitespace().collect();
        let tail = &fields[fields.len() - 3..];
        assert_eq!(tail, [r_xi, sigma_max, i_xi], "row {method}: {line}");
    }
    // The corrected row displays the coefficient at two decimals.
    assert!(text.contains("corrected (icc=1.25)"), "{text}");

    // Full-precision machine rows agree with the closed forms.
    let rows = machine_rows(&text);
    let cases = [
        ("worst-case", 0.2),
        ("statistical", 1.0 / 5.0_f64.sqrt()),
        ("inflated(f=1.5)", 1.0 / (1.5 * 5.0_f64.sqrt())),
        ("inertial-h1", 1.0 / 30.0),
        ("inertial-h2", 1.0 / 6.0 / 5.0_f64.sqrt()),
    ];
    for (method, expected) in cases {
        let row = find_row(&rows, &["row", method, "x1"]).expect(method);
        let value: f64 = row[3].parse().or_else(|_| row[4].parse()).unwrap();
        let value = if row[3] == "-" {
            row[4].parse().unwrap()
        } else {
            value
        };
        assert!(
            (value - expected).abs() < 1e-14,
            "{method}: {value} vs {expected}"
        );
    }
    let icc_expected = (1.0_f64 + 5.0 / 9.0).sqrt();
    let icc_row = find_row(&rows, &["corrected_icc"]).unwrap();
    let icc: f64 = icc_row[1].parse().unwrap();
    assert!((icc - icc_expected).abs() < 1e-14);
    let corrected_row = find_row(&rows, &["row", "corrected", "x1"]).unwrap();
    let i_xi: f64 = corrected_row[4].parse().unwrap();
    assert!((i_xi - 1.0 / (6.0 * icc_expected * 5.0_f64.sqrt())).abs() < 1e-14);
}

#[test]
fn compare_with_unit_factor_merges_statistical_rows() {
    let output = run(&[
        "compare",
        "--spec",
        &fixture("five_part_gap.toml"),
        "--f",
        "1",
    ]);
    assert!(output.status.success());
    let rows = machine_rows(&stdout(&output));
    let stat: f64 = find_row(&rows, &["row", "statistical", "x1"]).unwrap()[3]
        .parse()
        .unwrap();
    let infl: f64 = find_row(&rows, &["row", "inflated(f=1)", "x1"]).unwrap()[3]
        .parse()
        .unwrap();
    assert_eq!(stat, infl);
}

#[test]
fn compare_single_component_chain_agreement() {
    // With f = 1 every interval method hands the whole width to the single
    // component, and both plain inertial methods hand it width / 6.
    let output = run(&["compare", "--spec", &fixture("pocket.toml"), "--f", "1"]);
    assert!(output.status.success());
    let rows = machine_rows(&stdout(&output));
    for method in ["worst-case", "statistical", "inflated(f=1)"] {
        let width: f64 = find_row(&rows, &["row", method, "depth"]).unwrap()[3]
            .parse()
            .unwrap();
        assert!((width - 0.36).abs() < 1e-15, "{method}: {width}");
    }
    for method in ["inertial-h1", "inertial-h2"] {
        let inertia: f64 = find_row(&rows, &["row", method, "depth"]).unwrap()[4]
            .parse()
            .unwrap();
        assert!((inertia - 0.06).abs() < 1e-15, "{method}: {inertia}");
    }
}

#[test]
fn compare_rejects_inertia_specs() {
    let output = run(&["compare", "--spec", &fixture("shaft_stack.toml")]);
    assert_eq!(output.status.code(), Some(7));
    assert!(stderr(&output).contains("error[unsupported]"));
}

#[test]
fn allocate_corrected_reports_coefficient_and_floor() {
    let output = run(&[
        "allocate",
        "--spec",
        &fixture("five_part_gap.toml"),
        "--method",
        "corrected",
        "--cpk",
        "1",
    ]);
    assert!(output.status.success(), "{}", stderr(&output));
    let text = stdout(&output);
    assert!(text.contains("corrected (icc = 1.25)"), "{text}");
    assert!(text.contains("0.0597614"), "{text}");
    let rows = machine_rows(&text);
    let icc: f64 = find_row(&rows, &["icc"]).unwrap()[1].parse().unwrap();
    assert!((icc - (14.0_f64 / 9.0).sqrt()).abs() < 1e-14);
    let floor: f64 = find_row(&rows, &["guaranteed_cpk_min"]).unwrap()[1]
        .parse()
        .unwrap();
    assert!((floor - 1.0).abs() < 1e-12, "round trip through the floor");
    // Closure: the centered resultant capability recomposes the coefficient.
    let closure = find_row(&rows, &["closure"]).unwrap();
    let recomposed: f64 = closure[1].parse().unwrap();
    assert!((recomposed - icc).abs() < 1e-12);
}

#[test]
fn allocate_worst_case_uniform_share() {
    let output = run(&[
        "allocate",
        "--spec",
        &fixture("five_part_gap.toml"),
        "--method",
        "worst-case",
    ]);
    assert!(output.status.success());
    let rows = machine_rows(&stdout(&output));
    for name in ["x1", "x2", "x3", "x4", "x5"] {
        let row = find_row(&rows, &["component", name]).unwrap();
        let budget: f64 = row[4].parse().unwrap();
        assert!((budget - 0.2).abs() < 1e-15);
    }
}

#[test]
fn allocate_inertial_bridges_interval_specs() {
    let output = run(&[
        "allocate",
        "--spec",
        &fixture("five_part_gap.toml"),
        "--method",
        "inertial-h2",
    ]);
    assert!(output.status.success());
    let text = stdout(&output);
    assert!(text.contains("/ 6"), "bridge noted: {text}");
    let rows = machine_rows(&text);
    let row = find_row(&rows, &["component", "x1"]).unwrap();
    let budget: f64 = row[4].parse().unwrap();
    assert!((budget - 1.0 / 6.0 / 5.0_f64.sqrt()).abs() < 1e-15);
}

#[test]
fn allocate_uses_direct_inertia_budgets() {
    let output = run(&[
        "allocate",
        "--spec",
        &fixture("shaft_stack.toml"),
        "--method",
        "inertial-h4",
        "--k",
        "1",
        "--m",
        "2",
    ]);
    assert!(output.status.success(), "{}", stderr(&output));
    let rows = machine_rows(&stdout(&output));
    let budget: f64 = find_row(&rows, &["component", "a"]).unwrap()[4]
        .parse()
        .unwrap();
    // n = 3, m = 2, k = 1: 0.15 * sqrt(2 / 8).
    assert!((budget - 0.15 * (0.25_f64).sqrt()).abs() < 1e-15);
    let closure = find_row(&rows, &["closure"]).unwrap();
    let recomposed: f64 = closure[1].parse().unwrap();
    assert!((recomposed - 0.15).abs() < 1e-12 * 0.15);
}

#[test]
fn allocate_shift_hypotheses_need_uniform_chains() {
    let output = run(&[
        "allocate",
        "--spec",
        &fixture("five_part_gap.toml"),
        "--method",
        "inertial-h3",
        "--k",
        "1",
    ]);
    assert_eq!(output.status.code(), Some(5));
    assert!(stderr(&output).contains("error[unsupported-hypothesis]"));
}

#[test]
fn allocate_missing_parameters_are_usage_errors() {
    let output = run(&[
        "allocate",
        "--spec",
        &fixture("five_part_gap.toml"),
        "--method",
        "inflated",
    ]);
    assert_eq!(output.status.code(), Some(2));
    assert!(stderr(&output).contains("error[usage]"));
    assert!(stderr(&output).contains("--f"));

    let output = run(&[
        "allocate",
        "--spec",
        &fixture("shaft_stack.toml"),
        "--method",
        "inertial-h4",
        "--k",
        "1",
    ]);
    assert_eq!(output.status.code(), Some(2));
    assert!(stderr(&output).contains("--m"));

    let output = run(&[
        "allocate",
        "--spec",
        &fixture("five_part_gap.toml"),
        "--method",
        "corrected",
    ]);
    assert_eq!(output.status.code(), Some(2));

    let output = run(&[
        "allocate",
        "--spec",
        &fixture("five_part_gap.toml"),
        "--method",
        "corrected",
        "--icc",
        "1.25",
        "--cpk",
        "1",
    ]);
    assert_eq!(output.status.code(), Some(2));
    assert!(stderr(&output).contains("exclusive"));
}

#[test]
fn allocate_writes_reports_and_curves_to_files() {
    let dir = tempfile::tempdir().unwrap();
    let report_path = dir.path().join("report.txt");
    let curve_path = dir.path().join("profile.dat");
    let output = run(&[
        "allocate",
        "--spec",
        &fixture("five_part_gap.toml"),
        "--method",
        "corrected",
        "--icc",
        "1.25",
        "--out",
        report_path.to_str().unwrap(),
        "--curve",
        curve_path.to_str().unwrap(),
        "--curve-points",
        "51",
    ]);
    assert!(output.status.success(), "{}", stderr(&output));
    assert!(stdout(&output).is_empty());
    let report = std::fs::read_to_string(&report_path).unwrap();
    assert!(report.contains("corrected"));
    let curve = std::fs::read_to_string(&curve_path).unwrap();
    assert!(curve.contains("# columns: delta cpk"));
    let data_lines: Vec<&str> = curve.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(data_lines.len(), 51);
    let first: Vec<f64> = data_lines[0]
        .split_whitespace()
        .map(|v| v.parse().unwrap())
        .collect();
    assert_eq!(first[0], 0.0);
    assert!((first[1] - 1.25).abs() < 1e-12);
}

#[test]
fn capability_scores_components_and_resultant() {
    let output = run(&[
        "capability",
        "--spec",
        &fixture("pocket.toml"),
        "--data",
        &fixture("pocket_batch.csv"),
        "--method",
        "corrected",
        "--icc",
        "1",
    ]);
    assert!(output.status.success(), "{}", stderr(&output));
    let text = stdout(&output);
    let rows = machine_rows(&text);
    let row = find_row(&rows, &["component", "depth"]).unwrap();
    // name, count, delta, sigma, inertia, i_max, cp, cpi
    assert_eq!(row[2], "2");
    let delta: f64 = row[3].parse().unwrap();
    let sigma: f64 = row[4].parse().unwrap();
    let inertia: f64 = row[5].parse().unwrap();
    let i_max: f64 = row[6].parse().unwrap();
    let cp: f64 = row[7].parse().unwrap();
    let cpi: f64 = row[8].parse().unwrap();
    assert!((delta - 0.04).abs() < 1e-9);
    assert!((sigma - 0.03).abs() < 1e-9);
    assert!((inertia - 0.05).abs() < 1e-9);
    assert!((i_max - 0.06).abs() < 1e-15);
    assert!((cp - 2.0).abs() < 1e-7);
    assert!((cpi - 1.2).abs() < 1e-7);

    let resultant = find_row(&rows, &["resultant"]).unwrap();
    let delta_y: f64 = resultant[1].parse().unwrap();
    assert!((delta_y - 0.04).abs() < 1e-9);
    let cpk: f64 = find_row(&rows, &["resultant_cpk"]).unwrap()[1]
        .parse()
        .unwrap();
    assert!((cpk - (0.18 - 0.04) / (3.0 * 0.03)).abs() < 1e-7);
}

#[test]
fn capability_of_centered_data_at_the_allocation_limit() {
    // Dispersion exactly at the allocated inertia, centered: both indices 1.
    let dir = tempfile::tempdir().unwrap();
    let data_path = dir.path().join("limit.csv");
    std::fs::write(&data_path, "depth\n10.06\n9.94\n").unwrap();
    let output = run(&[
        "capability",
        "--spec",
        &fixture("pocket.toml"),
        "--data",
        data_path.to_str().unwrap(),
        "--icc",
        "1",
    ]);
    assert!(output.status.success(), "{}", stderr(&output));
    let rows = machine_rows(&stdout(&output));
    let row = find_row(&rows, &["component", "depth"]).unwrap();
    let cp: f64 = row[7].parse().unwrap();
    let cpi: f64 = row[8].parse().unwrap();
    assert!((cp - 1.0).abs() < 1e-9, "{cp}");
    assert!((cpi - 1.0).abs() < 1e-9, "{cpi}");
}

#[test]
fn capability_flags_perfect_batches() {
    let dir = tempfile::tempdir().unwrap();
    let data_path = dir.path().join("perfect.csv");
    std::fs::write(&data_path, "depth\n10.0\n10.0\n10.0\n").unwrap();
    let output = run(&[
        "capability",
        "--spec",
        &fixture("pocket.toml"),
        "--data",
        data_path.to_str().unwrap(),
    ]);
    assert!(output.status.success(), "{}", stderr(&output));
    let text = stdout(&output);
    assert!(text.contains("perfect (undefined)"), "{text}");
    let rows = machine_rows(&text);
    let row = find_row(&rows, &["component", "depth"]).unwrap();
    assert_eq!(row[7], "undefined");
    assert_eq!(row[8], "undefined");
}

#[test]
fn capability_rejects_mismatched_columns() {
    let dir = tempfile::tempdir().unwrap();
    let data_path = dir.path().join("bad.csv");
    std::fs::write(&data_path, "width\n1.0\n").unwrap();
    let output = run(&[
        "capability",
        "--spec",
        &fixture("pocket.toml"),
        "--data",
        data_path.to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(4));
    assert!(stderr(&output).contains("error[data]"));
}

#[test]
fn abacus_emits_monotone_grid() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("abacus.csv");
    let curves_dir = dir.path().join("curves");
    let output = run(&[
        "abacus",
        "--n-max",
        "9",
        "--cpk",
        "0,1,1.5",
        "--out",
        out_path.to_str().unwrap(),
        "--curves",
        curves_dir.to_str().unwrap(),
    ]);
    assert!(output.status.success(), "{}", stderr(&output));
    let csv_text = std::fs::read_to_string(&out_path).unwrap();
    let mut lines = csv_text.lines();
    assert_eq!(lines.next(), Some("n,cpk_target,icc"));
    let rows: Vec<(usize, f64, f64)> = lines
        .map(|l| {
            let parts: Vec<&str> = l.split(',').collect();
            (
                parts[0].parse().unwrap(),
                parts[1].parse().unwrap(),
                parts[2].parse().unwrap(),
            )
        })
        .collect();
    assert_eq!(rows.len(), 27);
    let at = |n: usize, t: f64| rows.iter().find(|r| r.0 == n && r.1 == t).unwrap().2;
    assert!((at(5, 1.0) - 1.2472).abs() < 1e-4);
    assert_eq!(at(9, 0.0), 1.0);
    for t in [0.0, 1.0, 1.5] {
        let column: Vec<f64> = rows.iter().filter(|r| r.1 == t).map(|r| r.2).collect();
        for pair in column.windows(2) {
            assert!(pair[1] > pair[0], "icc not increasing in n at target {t}");
        }
    }
    let curve = std::fs::read_to_string(curves_dir.join("icc_vs_n_cpk_1.dat")).unwrap();
    assert!(curve.lines().any(|l| l.starts_with("5 1.247")), "{curve}");
}

#[test]
fn abacus_propagates_io_errors() {
    let output = run(&[
        "abacus",
        "--n-max",
        "5",
        "--out",
        "/nonexistent-dir/abacus.csv",
    ]);
    assert_eq!(output.status.code(), Some(6));
    assert!(stderr(&output).contains("error[io]"));
}

#[test]
fn verify_grid_passes_and_reports() {
    let output = run(&[
        "verify",
        "--mode",
        "grid",
        "--n",
        "2",
        "--icc",
        "1",
        "--resolution",
        "201",
    ]);
    assert!(output.status.success(), "{}", stderr(&output));
    let text = stdout(&output);
    assert!(text.contains("result: PASS"), "{text}");
    let rows = machine_rows(&text);
    let row = find_row(&rows, &["check", "min_cpk"]).unwrap();
    let found: f64 = row[2].parse().unwrap();
    let analytic: f64 = row[3].parse().unwrap();
    assert!((analytic - (7.0_f64).sqrt() / 3.0).abs() < 1e-12);
    assert!((found - analytic).abs() < 1e-2);
}

#[test]
fn verify_grid_rejects_long_chains() {
    let output = run(&["verify", "--mode", "grid", "--n", "5", "--icc", "1"]);
    assert_eq!(output.status.code(), Some(5));
    assert!(stderr(&output).contains("error[unsupported-size]"));
}

#[test]
fn verify_monte_carlo_is_byte_identical_across_runs() {
    let args = [
        "verify",
        "--mode",
        "monte-carlo",
        "--spec",
        &fixture("five_part_gap.toml"),
        "--samples",
        "20000",
        "--seed",
        "42",
    ];
    let first = run(&args);
    assert!(first.status.success(), "{}", stderr(&first));
    assert!(stdout(&first).contains("result: PASS"));
    let second = run(&args);
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn verify_derivative_passes() {
    let output = run(&[
        "verify",
        "--mode",
        "derivative",
        "--n",
        "3",
        "--icc",
        "1",
        "--points",
        "100",
    ]);
    assert!(output.status.success(), "{}", stderr(&output));
    assert!(stdout(&output).contains("result: PASS"));
}

#[test]
fn missing_spec_file_is_an_io_error() {
    let output = run(&["compare", "--spec", "/no/such/file.toml"]);
    assert_eq!(output.status.code(), Some(6));
    assert!(stderr(&output).contains("error[io]"));
}

#[test]
fn malformed_spec_is_a_parse_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.toml");
    std::fs::write(&path, "name = \"x\"\n[resultant\n").unwrap();
    let output = run(&["compare", "--spec", path.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(3));
    let err = stderr(&output);
    assert!(err.contains("error[parse]"), "{err}");
    assert!(err.contains("line"), "{err}");
}

#[test]
fn config_controls_display_precision() {
    let dir = tempfile::tempdir().unwrap();
    let config_path = dir.path().join("display.toml");
    std::fs::write(&config_path, "sig_digits = 3\n").unwrap();
    let output = run(&[
        "allocate",
        "--spec",
        &fixture("five_part_gap.toml"),
        "--method",
        "statistical",
        "--config",
        config_path.to_str().unwrap(),
    ]);
    assert!(output.status.success(), "{}", stderr(&output));
    let text = stdout(&output);
    // Three significant digits in the human table.
    assert!(text.contains("0.447"), "{text}");
    assert!(!text.contains("0.447214"), "{text}");
    // Machine rows keep full precision regardless.
    let rows = machine_rows(&text);
    let budget: f64 = find_row(&rows, &["component", "x1"]).unwrap()[4]
        .parse()
        .unwrap();
    assert!((budget - 1.0 / 5.0_f64.sqrt()).abs() < 1e-15);
}
