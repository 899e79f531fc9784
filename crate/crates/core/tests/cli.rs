use std::f64::consts::PI;
use std::process::{Command, Output};

fn ffpe(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ffpe"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn parse_rows(csv: &str) -> Vec<Vec<f64>> {
    csv.lines()
        .skip(1)
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect()
}

#[test]
fn solve_zero_problem_is_all_zero() {
    let o = ffpe(&[
        "solve",
        "--problem",
        "zero",
        "--n-list",
        "5",
        "--l-list",
        "7",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.starts_with("n,t,x,w\n"));
    let rows = parse_rows(&text);
    assert_eq!(rows.len(), 8 * 7);
    assert!(rows.iter().all(|r| r[3] == 0.0));
}

#[test]
fn solve_example41_tracks_exact_profile() {
    let o = ffpe(&[
        "solve",
        "--problem",
        "example41",
        "--alpha",
        "0.5",
        "--n-list",
        "9",
        "--l-list",
        "100",
        "--final-only",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let rows = parse_rows(&stdout(&o));
    assert_eq!(rows.len(), 11);
    for r in &rows {
        assert!((r[1] - (PI * r[0]).cos()).abs() < 0.3, "{r:?}");
    }
    // boundary values are exact
    assert!((rows[0][1] - 1.0).abs() < 1e-15);
    assert!((rows[10][1] + 1.0).abs() < 1e-15);
    assert!(stderr(&o).contains("max_l1="));
}

#[test]
fn unknown_problem_is_a_config_error() {
    let o = ffpe(&[
        "solve",
        "--problem",
        "nope",
        "--n-list",
        "3",
        "--l-list",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("nope"));
}

#[test]
fn repeated_sweep_sizes_are_rejected() {
    let o = ffpe(&[
        "convergence-space",
        "--problem",
        "example41",
        "--n-list",
        "9,9",
        "--l-list",
        "10",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn bad_alpha_is_a_config_error() {
    let o = ffpe(&[
        "solve",
        "--problem",
        "example41",
        "--alpha",
        "1.5",
        "--n-list",
        "3",
        "--l-list",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn check_mmatrix_passes_and_detects_injection() {
    let args = [
        "check-mmatrix",
        "--problem",
        "example41",
        "--n-list",
        "3,9,79",
        "--l-list",
        "10,1000",
    ];
    let o = ffpe(&args);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).matches("is_m_matrix=true").count(), 6);

    let mut bad = args.to_vec();
    bad.push("--inject-positive-offdiag");
    let o = ffpe(&bad);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("is_m_matrix=false"));
}

#[test]
fn convergence_time_csv_layout() {
    let o = ffpe(&[
        "convergence-time",
        "--problem",
        "example41",
        "--n-list",
        "200",
        "--l-list",
        "10,20",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<_> = text.lines().collect();
    assert_eq!(lines[0], "L,10,20");
    assert!(lines[1].starts_with("max_inf,"));
    assert!(lines[2].starts_with("max_l1,"));
    assert!(lines[3].starts_with("rate,,"));
}

#[test]
fn compare_fd_reports_flags() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cmp.csv");
    let o = ffpe(&[
        "compare-fd",
        "--problem",
        "example42_case1",
        "--n-list",
        "4",
        "--l-list",
        "200",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let report = stdout(&o);
    assert!(report.contains("fv_oscillation_count=0"));
    assert!(report.contains("fd_oscillation_count=4"));
    let csv = std::fs::read_to_string(&path).unwrap();
    assert!(csv.starts_with("x,fv,fd\n"));
    assert_eq!(csv.lines().count(), 7);
}

#[test]
fn oracle_check_passes() {
    let o = ffpe(&[
        "oracle-check",
        "--problem",
        "example42_case1",
        "--n-list",
        "4,17",
        "--l-list",
        "30",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(stdout(&o).matches("ok=true").count(), 2);
}

#[test]
fn oracle_check_rejects_large_grids() {
    let o = ffpe(&[
        "oracle-check",
        "--problem",
        "zero",
        "--n-list",
        "65",
        "--l-list",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(
        &cfg,
        "# constant run\nproblem = constant\nconstant = 2.5\nn_list = 4\nl_list = 6\nfinal_only = true\n",
    )
    .unwrap();
    let o = ffpe(&["solve", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let rows = parse_rows(&stdout(&o));
    assert_eq!(rows.len(), 6);
    assert!(rows.iter().all(|r| (r[1] - 2.5).abs() < 1e-12));

    let o = ffpe(&[
        "solve",
        "--config",
        cfg.to_str().unwrap(),
        "--constant",
        "-1",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(parse_rows(&stdout(&o))
        .iter()
        .all(|r| (r[1] + 1.0).abs() < 1e-12));
}

#[test]
fn config_file_unknown_key() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "problem = zero\ncolour = blue\n").unwrap();
    let o = ffpe(&[
        "solve",
        "--config",
        cfg.to_str().unwrap(),
        "--n-list",
        "2",
        "--l-list",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn in_process_entry_point() {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = ffpe_fv::cli::run_with_io(
        [
            "ffpe",
            "solve",
            "--problem",
            "zero",
            "--n-list",
            "1",
            "--l-list",
            "1",
            "--final-only",
        ],
        &mut out,
        &mut err,
    );
    assert_eq!(code, ffpe_fv::cli::EXIT_OK);
    assert_eq!(String::from_utf8(out).unwrap().lines().count(), 4);
}
