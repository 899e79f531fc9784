//! Command-line front end.
//!
//! Settings come from flags and, optionally, a flat `key = value` file given
//! with `--config`; flags win. Exit codes: 0 success, 1 failed check, 2 bad
//! configuration, 3 solver failure.

use std::collections::HashMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::assembly::verify_m_matrix;
use crate::error::Error;
use crate::problem::Polynomial;
use crate::stepper::{finite_volume_scheme, run};
use crate::verification::{
    compare_fd, convergence_study, default_drift, dense_oracle_run, error_summary, lookup,
    residual_check, Axis, CatalogParams, CatalogProblem, ConvergenceTable, ORACLE_MAX_INTERIOR,
    ORACLE_MAX_STEPS,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_SOLVER: i32 = 3;

/// Relative tolerance for `oracle-check`.
pub const ORACLE_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Parser)]
#[command(
    name = "ffpe",
    about = "Monotone finite volume solver for time-fractional Fokker-Planck problems"
)]
struct Cli {
    #[command(subcommand)]
    mode: Mode,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Mode {
    /// Solve one problem and dump the solution as CSV.
    Solve,
    /// Error table over a sweep of N.
    ConvergenceSpace,
    /// Error table over a sweep of L.
    ConvergenceTime,
    /// Final-time FV and FD profiles with positivity and oscillation flags.
    CompareFd,
    /// Check the M-matrix property of the FV system for every (N, L).
    CheckMmatrix,
    /// Compare the banded solver with the dense oracle.
    OracleCheck,
}

#[derive(Debug, Default, Args)]
struct Opts {
    /// Catalog problem name.
    #[arg(long, global = true)]
    problem: Option<String>,
    #[arg(long, global = true)]
    alpha: Option<f64>,
    #[arg(long = "k-alpha", global = true)]
    k_alpha: Option<f64>,
    /// Drift f(x) = c0 + c1 x + c2 x^2; unset coefficients keep the problem's own.
    #[arg(long = "drift-c0", global = true, allow_hyphen_values = true)]
    drift_c0: Option<f64>,
    #[arg(long = "drift-c1", global = true, allow_hyphen_values = true)]
    drift_c1: Option<f64>,
    #[arg(long = "drift-c2", global = true, allow_hyphen_values = true)]
    drift_c2: Option<f64>,
    /// Comma-separated interior node counts N (the grid has N + 1 cells).
    #[arg(long = "n-list", global = true)]
    n_list: Option<String>,
    /// Comma-separated time step counts L.
    #[arg(long = "l-list", global = true)]
    l_list: Option<String>,
    /// Output CSV path (standard output when absent).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Concurrent grid runs.
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Flat key = value configuration file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Level of the `constant` problem.
    #[arg(long, global = true, allow_hyphen_values = true)]
    constant: Option<f64>,
    /// `solve` only: write the final-time profile instead of the full history.
    #[arg(long = "final-only", global = true)]
    final_only: bool,
    /// Test hook for `check-mmatrix`: flip the sign of one off-diagonal.
    #[arg(long = "inject-positive-offdiag", global = true, hide = true)]
    inject_positive_offdiag: bool,
}

/// Fully resolved settings for one invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub mode: Mode,
    pub problem: String,
    pub params: CatalogParams,
    pub n_list: Vec<usize>,
    pub l_list: Vec<usize>,
    pub out: Option<PathBuf>,
    pub workers: usize,
    pub final_only: bool,
    pub inject_positive_offdiag: bool,
}

#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn config(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_CONFIG,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::SingularPivot { .. } => EXIT_SOLVER,
            _ => EXIT_CONFIG,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

/// Parses a strictly increasing list of positive integers.
pub fn parse_sweep(text: &str) -> Result<Vec<usize>, String> {
    let values = text
        .split(',')
        .map(|s| {
            let s = s.trim();
            s.parse::<usize>()
                .ok()
                .filter(|&v| v > 0)
                .ok_or_else(|| format!("'{s}' is not a positive integer"))
        })
        .collect::<Result<Vec<_>, _>>()?;
    if values.windows(2).any(|w| w[0] >= w[1]) {
        return Err(format!("sweep '{text}' must be strictly increasing"));
    }
    Ok(values)
}

/// Reads `key = value` lines; `#` starts a comment. Keys accept `-` or `_`.
pub fn parse_config_file(text: &str) -> Result<HashMap<String, String>, String> {
    let mut map = HashMap::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| format!("line {}: expected key = value", lineno + 1))?;
        map.insert(key.trim().replace('_', "-"), value.trim().to_string());
    }
    Ok(map)
}

const CONFIG_KEYS: &[&str] = &[
    "problem",
    "alpha",
    "k-alpha",
    "drift-c0",
    "drift-c1",
    "drift-c2",
    "n-list",
    "l-list",
    "out",
    "workers",
    "constant",
    "final-only",
];

fn resolve(mode: Mode, opts: Opts) -> Result<RunConfig, Failure> {
    let file = match &opts.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::config(format!("cannot read {}: {e}", path.display())))?;
            parse_config_file(&text).map_err(Failure::config)?
        }
        None => HashMap::new(),
    };
    if let Some(key) = file.keys().find(|k| !CONFIG_KEYS.contains(&k.as_str())) {
        return Err(Failure::config(format!(
            "unknown configuration key '{key}'"
        )));
    }
    let num = |flag: Option<f64>, key: &str| -> Result<Option<f64>, Failure> {
        match (flag, file.get(key)) {
            (Some(v), _) => Ok(Some(v)),
            (None, Some(s)) => s
                .parse()
                .map(Some)
                .map_err(|_| Failure::config(format!("{key}: '{s}' is not a number"))),
            (None, None) => Ok(None),
        }
    };
    let text = |flag: Option<String>, key: &str| flag.or_else(|| file.get(key).cloned());

    let problem = text(opts.problem, "problem").unwrap_or_else(|| "example41".into());
    let base_drift = default_drift(&problem)
        .ok_or_else(|| Failure::config(format!("unknown problem '{problem}'")))?;
    let c0 = num(opts.drift_c0, "drift-c0")?;
    let c1 = num(opts.drift_c1, "drift-c1")?;
    let c2 = num(opts.drift_c2, "drift-c2")?;
    let drift = if c0.is_some() || c1.is_some() || c2.is_some() {
        Some(Polynomial::new(
            c0.unwrap_or(base_drift.c0),
            c1.unwrap_or(base_drift.c1),
            c2.unwrap_or(base_drift.c2),
        ))
    } else {
        None
    };
    let params = CatalogParams {
        alpha: num(opts.alpha, "alpha")?,
        k_alpha: num(opts.k_alpha, "k-alpha")?,
        drift,
        constant: num(opts.constant, "constant")?.unwrap_or(1.0),
    };

    let sweep = |flag: Option<String>, key: &str, default: &str| {
        let s = text(flag, key).unwrap_or_else(|| default.to_string());
        parse_sweep(&s).map_err(|e| Failure::config(format!("--{key}: {e}")))
    };
    let n_list = sweep(opts.n_list, "n-list", "9")?;
    let l_list = sweep(opts.l_list, "l-list", "100")?;

    let workers = match (opts.workers, file.get("workers")) {
        (Some(w), _) => w,
        (None, Some(s)) => s
            .parse()
            .map_err(|_| Failure::config(format!("workers: '{s}' is not an integer")))?,
        (None, None) => std::thread::available_parallelism().map_or(1, |n| n.get()),
    };
    if workers == 0 {
        return Err(Failure::config("workers must be at least 1"));
    }
    let final_only = opts.final_only
        || matches!(
            file.get("final-only").map(String::as_str),
            Some("true" | "1" | "yes")
        );

    Ok(RunConfig {
        mode,
        problem,
        params,
        n_list,
        l_list,
        out: text(opts.out.map(|p| p.display().to_string()), "out").map(PathBuf::from),
        workers,
        final_only,
        inject_positive_offdiag: opts.inject_positive_offdiag,
    })
}

fn sci(v: f64) -> String {
    format!("{v:.3e}")
}

fn raw(v: f64) -> String {
    format!("{v:.16e}")
}

fn single(list: &[usize], what: &str) -> Result<usize, Failure> {
    match list {
        [v] => Ok(*v),
        _ => Err(Failure::config(format!(
            "{what} must be a single value for this command"
        ))),
    }
}

/// CSV text and a human-readable report.
struct Output {
    csv: Option<String>,
    report: String,
    code: i32,
}

fn load_problem(cfg: &RunConfig) -> Result<CatalogProblem, Failure> {
    Ok(lookup(&cfg.problem, &cfg.params)?)
}

fn cmd_solve(cfg: &RunConfig) -> Result<Output, Failure> {
    let problem = load_problem(cfg)?;
    let grid = problem.spec.grid(
        single(&cfg.n_list, "n-list")?,
        single(&cfg.l_list, "l-list")?,
    )?;
    let field = run(&problem.spec, &grid)?;
    let mut csv = String::new();
    if cfg.final_only {
        csv.push_str("x,w\n");
        for (x, w) in grid.nodes.iter().zip(field.final_row()) {
            writeln!(csv, "{},{}", raw(*x), raw(*w)).unwrap();
        }
    } else {
        csv.push_str("n,t,x,w\n");
        for (n, row) in field.iter_rows().enumerate() {
            for (x, w) in grid.nodes.iter().zip(row) {
                writeln!(csv, "{n},{},{},{}", raw(grid.times[n]), raw(*x), raw(*w)).unwrap();
            }
        }
    }
    let mut report = format!(
        "problem={} N={} L={} min={}\n",
        problem.name,
        grid.interior,
        grid.steps,
        sci(field.min_value())
    );
    if let Some(exact) = &problem.exact {
        let s = error_summary(&field, exact);
        writeln!(
            report,
            "max_inf={} max_l1={}",
            sci(s.max_inf),
            sci(s.max_l1)
        )
        .unwrap();
    }
    Ok(Output {
        csv: Some(csv),
        report,
        code: EXIT_OK,
    })
}

/// CSV layout: one column per grid, rows for both norms and the rates.
pub fn convergence_csv(table: &ConvergenceTable) -> String {
    let label = match table.axis {
        Axis::Space => "N+1",
        Axis::Time => "L",
    };
    let mut csv = String::from(label);
    for j in 0..table.grids.len() {
        write!(csv, ",{}", table.size(j)).unwrap();
    }
    csv.push('\n');
    for (name, values) in [("max_inf", &table.max_inf), ("max_l1", &table.max_l1)] {
        csv.push_str(name);
        for v in values.iter() {
            write!(csv, ",{}", sci(*v)).unwrap();
        }
        csv.push('\n');
    }
    csv.push_str("rate,");
    for r in &table.rates {
        write!(csv, ",{r:.3}").unwrap();
    }
    csv.push('\n');
    csv
}

fn cmd_convergence(cfg: &RunConfig, axis: Axis) -> Result<Output, Failure> {
    let problem = load_problem(cfg)?;
    let grids: Vec<(usize, usize)> = match axis {
        Axis::Space => {
            let l = single(&cfg.l_list, "l-list")?;
            cfg.n_list.iter().map(|&n| (n, l)).collect()
        }
        Axis::Time => {
            let n = single(&cfg.n_list, "n-list")?;
            cfg.l_list.iter().map(|&l| (n, l)).collect()
        }
    };
    if grids.len() < 2 {
        return Err(Failure::config(
            "a convergence sweep needs at least two grid sizes",
        ));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| Failure::config(e.to_string()))?;
    let table = pool.install(|| convergence_study(&problem, axis, &grids))?;
    let csv = convergence_csv(&table);
    Ok(Output {
        report: csv.clone(),
        csv: Some(csv),
        code: EXIT_OK,
    })
}

fn cmd_compare_fd(cfg: &RunConfig) -> Result<Output, Failure> {
    let problem = load_problem(cfg)?;
    let grid = problem.spec.grid(
        single(&cfg.n_list, "n-list")?,
        single(&cfg.l_list, "l-list")?,
    )?;
    let cmp = compare_fd(&problem.spec, &grid)?;
    let mut csv = String::from("x,fv,fd\n");
    for ((x, a), b) in grid
        .nodes
        .iter()
        .zip(cmp.fv.final_row())
        .zip(cmp.fd.final_row())
    {
        writeln!(csv, "{},{},{}", raw(*x), raw(*a), raw(*b)).unwrap();
    }
    let report = format!(
        "fv_min={}\nfd_min={}\nfv_oscillation_count={}\nfd_oscillation_count={}\n",
        sci(cmp.fv_min),
        sci(cmp.fd_min),
        cmp.fv_oscillations,
        cmp.fd_oscillations
    );
    Ok(Output {
        csv: Some(csv),
        report,
        code: EXIT_OK,
    })
}

fn cmd_check_mmatrix(cfg: &RunConfig) -> Result<Output, Failure> {
    let problem = load_problem(cfg)?;
    let mut report = String::new();
    let mut all_ok = true;
    for &n in &cfg.n_list {
        for &l in &cfg.l_list {
            let grid = problem.spec.grid(n, l)?;
            let mut system = finite_volume_scheme(&problem.spec, &grid)?.system;
            if cfg.inject_positive_offdiag {
                match system.upper.first_mut() {
                    Some(v) => *v = v.abs() + 1.0,
                    None => system.diag[0] = -1.0,
                }
            }
            let r = verify_m_matrix(&system);
            all_ok &= r.is_m_matrix;
            writeln!(
                report,
                "N={n} L={l} is_m_matrix={} min_column_slack={} offending_indices={:?}",
                r.is_m_matrix,
                sci(r.min_column_slack),
                r.offending_indices
            )
            .unwrap();
        }
    }
    Ok(Output {
        csv: None,
        report,
        code: if all_ok { EXIT_OK } else { EXIT_CHECK_FAILED },
    })
}

fn cmd_oracle_check(cfg: &RunConfig) -> Result<Output, Failure> {
    let problem = load_problem(cfg)?;
    let mut report = String::new();
    let mut all_ok = true;
    for &n in &cfg.n_list {
        for &l in &cfg.l_list {
            if n > ORACLE_MAX_INTERIOR || l > ORACLE_MAX_STEPS {
                return Err(Failure::config(format!(
                    "oracle-check supports N <= {ORACLE_MAX_INTERIOR} and L <= {ORACLE_MAX_STEPS}"
                )));
            }
            let grid = problem.spec.grid(n, l)?;
            let banded = run(&problem.spec, &grid)?;
            let dense = dense_oracle_run(&problem.spec, &grid)?;
            let diff = banded
                .iter_rows()
                .flatten()
                .zip(dense.iter_rows().flatten())
                .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
            let scale = dense
                .iter_rows()
                .flatten()
                .fold(0.0f64, |m, v| m.max(v.abs()));
            let rel = if scale > 0.0 { diff / scale } else { diff };
            let res = residual_check(&banded, &problem.spec, &grid);
            let ok = rel <= ORACLE_TOLERANCE && res.max_relative <= ORACLE_TOLERANCE;
            all_ok &= ok;
            writeln!(
                report,
                "N={n} L={l} relative_difference={} residual_relative={} ok={ok}",
                sci(rel),
                sci(res.max_relative)
            )
            .unwrap();
        }
    }
    Ok(Output {
        csv: None,
        report,
        code: if all_ok { EXIT_OK } else { EXIT_CHECK_FAILED },
    })
}

pub fn execute(cfg: &RunConfig, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let result = match cfg.mode {
        Mode::Solve => cmd_solve(cfg),
        Mode::ConvergenceSpace => cmd_convergence(cfg, Axis::Space),
        Mode::ConvergenceTime => cmd_convergence(cfg, Axis::Time),
        Mode::CompareFd => cmd_compare_fd(cfg),
        Mode::CheckMmatrix => cmd_check_mmatrix(cfg),
        Mode::OracleCheck => cmd_oracle_check(cfg),
    };
    match result {
        Ok(output) => match emit(&output, cfg.out.as_deref(), stdout, stderr) {
            Ok(()) => output.code,
            Err(e) => {
                let _ = writeln!(stderr, "error: {e}");
                EXIT_CONFIG
            }
        },
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

/// CSV goes to `out` when given (report to stdout), otherwise CSV to stdout
/// and the report to stderr.
fn emit(
    output: &Output,
    out: Option<&Path>,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> std::io::Result<()> {
    match (&output.csv, out) {
        (Some(csv), Some(path)) => {
            std::fs::write(path, csv)?;
            stdout.write_all(output.report.as_bytes())
        }
        (Some(csv), None) => {
            stdout.write_all(csv.as_bytes())?;
            // Convergence reports repeat the CSV; no need to print it twice.
            if output.report != *csv {
                stderr.write_all(output.report.as_bytes())?;
            }
            Ok(())
        }
        (None, _) => stdout.write_all(output.report.as_bytes()),
    }
}

/// Parses arguments (program name first) into a resolved configuration.
pub fn parse_args<I, T>(args: I) -> Result<RunConfig, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(args)?;
    resolve(cli.mode, cli.opts).map_err(|f| {
        clap::Error::raw(
            clap::error::ErrorKind::ValueValidation,
            format!("{}\n", f.message),
        )
    })
}

/// Entry point used by the `ffpe` binary; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with_io(args, &mut stdout.lock(), &mut stderr.lock())
}

/// Like [`main_with_args`] with explicit output streams.
pub fn run_with_io<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match parse_args(args) {
        Ok(cfg) => execute(&cfg, stdout, stderr),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(text.as_bytes())
            } else {
                stdout.write_all(text.as_bytes())
            };
            code
        }
    }
}
