//! Error measurement, convergence studies, the problem catalog and the
//! independent dense oracle.

mod catalog;
mod compare;
mod convergence;
mod oracle;

pub use catalog::{
    catalog, constant, default_drift, example41, example42_case1, example42_case2,
    example42_case2_demo, example42_case2_outflow, lookup, manufactured_cosine, zero,
    CatalogParams, CatalogProblem, PROBLEM_NAMES,
};
pub use compare::{compare_fd, oscillation_count, FvFdComparison};
pub use convergence::{convergence_study, Axis, ConvergenceTable};
pub use oracle::{
    dense_oracle_run, residual_check, ResidualReport, ORACLE_MAX_INTERIOR, ORACLE_MAX_STEPS,
};

use crate::error::{Error, Result};
use crate::problem::FieldFn;
use crate::stepper::SolutionField;

/// `sum_i h |v_i|`.
pub fn discrete_l1_norm(v: &[f64], h: f64) -> f64 {
    v.iter().map(|x| h * x.abs()).sum()
}

pub fn max_norm(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

/// Maxima over `n = 1..L` of the interior error norms.
#[derive(Debug, Clone, PartialEq)]
pub struct ErrorSummary {
    pub max_l1: f64,
    pub max_inf: f64,
    /// `||e^n||_1` for `n = 1..=L`.
    pub per_step_l1: Vec<f64>,
    /// `||e^n||_inf` for `n = 1..=L`.
    pub per_step_inf: Vec<f64>,
}

/// Errors `e_i^n = w(x_i, t_n) - W_i^n` on the interior nodes.
pub fn error_summary(field: &SolutionField, exact: &FieldFn) -> ErrorSummary {
    let grid = field.grid();
    let mut err = vec![0.0; grid.interior];
    let mut per_step_l1 = Vec::with_capacity(grid.steps);
    let mut per_step_inf = Vec::with_capacity(grid.steps);
    for n in 1..=grid.steps {
        let t = grid.times[n];
        for ((e, &w), &x) in err
            .iter_mut()
            .zip(field.interior(n))
            .zip(grid.interior_nodes())
        {
            *e = exact(x, t) - w;
        }
        per_step_l1.push(discrete_l1_norm(&err, grid.h));
        per_step_inf.push(max_norm(&err));
    }
    ErrorSummary {
        max_l1: per_step_l1.iter().copied().fold(0.0, f64::max),
        max_inf: per_step_inf.iter().copied().fold(0.0, f64::max),
        per_step_l1,
        per_step_inf,
    }
}

/// Observed order `|ln(err_fine / err_coarse) / ln(size_fine / size_coarse)|`.
///
/// `size` is `N + 1` for spatial studies and `L` for temporal ones.
pub fn convergence_rate(
    err_coarse: f64,
    err_fine: f64,
    size_coarse: f64,
    size_fine: f64,
) -> Result<f64> {
    if !(err_coarse > 0.0 && err_fine > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "errors must be positive, got {err_coarse} and {err_fine}"
        )));
    }
    if !(size_coarse > 0.0 && size_fine > 0.0) || size_coarse == size_fine {
        return Err(Error::InvalidParameter(format!(
            "grid sizes must be positive and distinct, got {size_coarse} and {size_fine}"
        )));
    }
    Ok(((err_fine / err_coarse).ln() / (size_fine / size_coarse).ln()).abs())
}
