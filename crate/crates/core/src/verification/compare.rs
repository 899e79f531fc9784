use crate::error::Result;
use crate::fd::run_fd;
use crate::problem::{Grid, ProblemSpec};
use crate::stepper::{run, SolutionField};

/// Number of sign changes between successive differences of `profile`.
/// Flat segments are skipped, so a monotone profile scores 0.
pub fn oscillation_count(profile: &[f64]) -> usize {
    let mut count = 0;
    let mut last_sign = 0.0;
    for w in profile.windows(2) {
        let d = w[1] - w[0];
        if d == 0.0 {
            continue;
        }
        let s = d.signum();
        if last_sign != 0.0 && s != last_sign {
            count += 1;
        }
        last_sign = s;
    }
    count
}

/// Side-by-side FV and FD solutions of the same problem.
#[derive(Debug, Clone)]
pub struct FvFdComparison {
    pub fv: SolutionField,
    pub fd: SolutionField,
    /// Minimum over the whole FV field, boundary columns included.
    pub fv_min: f64,
    pub fd_min: f64,
    /// Oscillation counts of the final-time profiles (boundary values included).
    pub fv_oscillations: usize,
    pub fd_oscillations: usize,
}

pub fn compare_fd(spec: &ProblemSpec, grid: &Grid) -> Result<FvFdComparison> {
    let fv = run(spec, grid)?;
    let fd = run_fd(spec, grid)?;
    Ok(FvFdComparison {
        fv_min: fv.min_value(),
        fd_min: fd.min_value(),
        fv_oscillations: oscillation_count(fv.final_row()),
        fd_oscillations: oscillation_count(fd.final_row()),
        fv,
        fd,
    })
}
