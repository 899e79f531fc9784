use rayon::prelude::*;

use super::{convergence_rate, error_summary, CatalogProblem};
use crate::error::{Error, Result};
use crate::stepper::run;

/// Which grid parameter a study refines.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    /// Refine `N`; the size used in rates is `N + 1`.
    Space,
    /// Refine `L`.
    Time,
}

/// Error norms per grid and observed rates between neighbouring grids.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceTable {
    pub axis: Axis,
    /// `(N, L)` per column, in sweep order.
    pub grids: Vec<(usize, usize)>,
    pub max_inf: Vec<f64>,
    pub max_l1: Vec<f64>,
    /// `rates[j]` compares columns `j` and `j + 1` in the L1 norm.
    pub rates: Vec<f64>,
}

impl ConvergenceTable {
    /// Size used in the rate formula for column `j`.
    pub fn size(&self, j: usize) -> usize {
        match self.axis {
            Axis::Space => self.grids[j].0 + 1,
            Axis::Time => self.grids[j].1,
        }
    }
}

/// Runs every grid concurrently and collects the table in sweep order.
///
/// The refined parameter must strictly increase along `grids`.
pub fn convergence_study(
    problem: &CatalogProblem,
    axis: Axis,
    grids: &[(usize, usize)],
) -> Result<ConvergenceTable> {
    let exact = problem.exact.as_ref().ok_or_else(|| {
        Error::InvalidParameter(format!("problem '{}' has no exact solution", problem.name))
    })?;
    if grids.len() < 2 {
        return Err(Error::InvalidParameter(
            "a convergence study needs at least two grids".into(),
        ));
    }
    let refined = |g: &(usize, usize)| match axis {
        Axis::Space => g.0,
        Axis::Time => g.1,
    };
    if grids.windows(2).any(|w| refined(&w[0]) >= refined(&w[1])) {
        return Err(Error::InvalidParameter(
            "sweep sizes must be strictly increasing".into(),
        ));
    }

    let summaries = grids
        .par_iter()
        .map(|&(n, l)| {
            let grid = problem.spec.grid(n, l)?;
            let field = run(&problem.spec, &grid)?;
            Ok(error_summary(&field, exact))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut table = ConvergenceTable {
        axis,
        grids: grids.to_vec(),
        max_inf: summaries.iter().map(|s| s.max_inf).collect(),
        max_l1: summaries.iter().map(|s| s.max_l1).collect(),
        rates: Vec::with_capacity(grids.len() - 1),
    };
    for j in 0..grids.len() - 1 {
        let rate = convergence_rate(
            table.max_l1[j],
            table.max_l1[j + 1],
            table.size(j) as f64,
            table.size(j + 1) as f64,
        )?;
        table.rates.push(rate);
    }
    Ok(table)
}
