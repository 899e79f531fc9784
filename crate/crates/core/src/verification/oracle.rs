//! Dense reference implementation of the finite volume scheme.
//!
//! Rows are assembled from the cell fluxes directly rather than from the
//! banded entry formulas used by the production path, and the systems are
//! solved by LU with partial pivoting. Agreement between the two is the main
//! guard against transcription mistakes in the banded assembly.

use nalgebra::{DMatrix, DVector};
use statrs::function::gamma::gamma;

use crate::error::{Error, Result};
use crate::problem::{Grid, ProblemSpec};
use crate::stepper::SolutionField;

pub const ORACLE_MAX_INTERIOR: usize = 64;
pub const ORACLE_MAX_STEPS: usize = 256;

/// Coefficients of the spatial operator in cell `i` (1-based) on nodes
/// `i-1, i, i+1`: diffusion `-k (W_{i+1} - 2 W_i + W_{i-1}) / h` plus
/// the flux difference `F_{i+1/2} - F_{i-1/2}`. The third entry bounds the
/// size of the pieces summed into each coefficient, which matters when they
/// cancel (a saturated central part against the diffusion).
fn cell_stencil(spec: &ProblemSpec, h: f64, i: usize) -> [(usize, f64, f64); 3] {
    let k = spec.k_alpha;
    let c = 2.0 * k / h;
    // F_{p+1/2} = fm (W_p + W_{p+1}) / 2 + fu W_p + fl W_{p+1}
    let flux = |p: usize| {
        let f = (spec.drift)(spec.a + (p as f64 + 0.5) * h);
        let fu = if f - c > 0.0 { f - c } else { 0.0 };
        let fl = if f + c < 0.0 { f + c } else { 0.0 };
        let fm = f - fu - fl;
        (0.5 * fm + fu, 0.5 * fm + fl)
    };
    let (east_own, east_next) = flux(i);
    let (west_prev, west_own) = flux(i - 1);
    [
        (i - 1, -k / h - west_prev, k / h + west_prev.abs()),
        (
            i,
            2.0 * k / h + east_own - west_own,
            2.0 * k / h + east_own.abs() + west_own.abs(),
        ),
        (i + 1, -k / h + east_next, k / h + east_next.abs()),
    ]
}

fn l1_weight(alpha: f64, k: usize) -> f64 {
    let k = k as f64;
    (k + 1.0).powf(1.0 - alpha) - k.powf(1.0 - alpha)
}

/// Unscaled L1 history term for node `i` at step `n`, summed literally.
fn history_term(field: &SolutionField, alpha: f64, n: usize, i: usize) -> f64 {
    let mut s = l1_weight(alpha, n - 1) * field.value(0, i);
    for k in 1..n {
        s += (l1_weight(alpha, n - k - 1) - l1_weight(alpha, n - k)) * field.value(k, i);
    }
    s
}

/// Same scheme as [`crate::stepper::run`] with dense matrices.
///
/// Limited to `N <= 64` and `L <= 256`.
pub fn dense_oracle_run(spec: &ProblemSpec, grid: &Grid) -> Result<SolutionField> {
    let n_int = grid.interior;
    if n_int > ORACLE_MAX_INTERIOR || grid.steps > ORACLE_MAX_STEPS {
        return Err(Error::InvalidParameter(format!(
            "oracle limited to N <= {ORACLE_MAX_INTERIOR}, L <= {ORACLE_MAX_STEPS}"
        )));
    }
    let h = (grid.b - grid.a) / (n_int + 1) as f64;
    let dt = grid.horizon / grid.steps as f64;
    let sigma = h * dt.powf(-spec.alpha) / gamma(2.0 - spec.alpha);
    let x = |i: usize| spec.a + i as f64 * h;

    let mut m = DMatrix::<f64>::zeros(n_int, n_int);
    let mut left = 0.0;
    let mut right = 0.0;
    for i in 1..=n_int {
        m[(i - 1, i - 1)] += sigma;
        for (node, coef, _) in cell_stencil(spec, h, i) {
            if node == 0 {
                left -= coef;
            } else if node == n_int + 1 {
                right -= coef;
            } else {
                m[(i - 1, node - 1)] += coef;
            }
        }
    }
    let lu = m.lu();

    let mut field = SolutionField::zeros(grid);
    for i in 0..=n_int + 1 {
        field.row_mut(0)[i] = match i {
            0 => (spec.boundary_left)(0.0),
            i if i == n_int + 1 => (spec.boundary_right)(0.0),
            i => (spec.initial)(x(i)),
        };
    }
    for n in 1..=grid.steps {
        let t = n as f64 * dt;
        let g1 = (spec.boundary_left)(t);
        let g2 = (spec.boundary_right)(t);
        let mut rhs = DVector::<f64>::zeros(n_int);
        for i in 1..=n_int {
            let mut r = sigma * history_term(&field, spec.alpha, n, i);
            if let Some(g) = &spec.source {
                r += h * g(x(i), t);
            }
            rhs[i - 1] = r;
        }
        rhs[0] += left * g1;
        rhs[n_int - 1] += right * g2;
        let w = lu
            .solve(&rhs)
            .ok_or(Error::SingularPivot { row: 0, pivot: 0.0 })?;
        let row = field.row_mut(n);
        row[0] = g1;
        row[n_int + 1] = g2;
        row[1..=n_int].copy_from_slice(w.as_slice());
    }
    Ok(field)
}

/// Largest residual of the discrete equations over all cells and steps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidualReport {
    pub max_abs: f64,
    /// Largest residual divided by the largest term magnitude in its row.
    pub max_relative: f64,
    /// `(n, i)` of the largest absolute residual.
    pub worst: (usize, usize),
}

/// Substitutes `field` into the scheme (boundary columns as stored).
pub fn residual_check(field: &SolutionField, spec: &ProblemSpec, grid: &Grid) -> ResidualReport {
    let n_int = grid.interior;
    let h = grid.h;
    let sigma = h * grid.dt.powf(-spec.alpha) / gamma(2.0 - spec.alpha);
    let stencils: Vec<_> = (1..=n_int).map(|i| cell_stencil(spec, h, i)).collect();
    let mut report = ResidualReport {
        max_abs: 0.0,
        max_relative: 0.0,
        worst: (0, 0),
    };
    for n in 1..=grid.steps {
        let t = grid.times[n];
        for i in 1..=n_int {
            let own = sigma * field.value(n, i);
            let history = sigma * history_term(field, spec.alpha, n, i);
            let mut res = own - history;
            let mut scale = own.abs().max(history.abs());
            for &(node, coef, size) in &stencils[i - 1] {
                res += coef * field.value(n, node);
                scale = scale.max((size * field.value(n, node)).abs());
            }
            if let Some(g) = &spec.source {
                let s = h * g(grid.nodes[i], t);
                res -= s;
                scale = scale.max(s.abs());
            }
            let res = res.abs();
            if res > report.max_abs {
                report.max_abs = res;
                report.worst = (n, i);
            }
            if scale > 0.0 {
                report.max_relative = report.max_relative.max(res / scale);
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::{build_grid, scalar_fn};
    use crate::stepper::run;
    use crate::verification::{example41, zero};

    #[test]
    fn single_cell_hand_value() {
        let spec = ProblemSpec::new(0.5, 1.0, 0.0, 1.0, 1.0)
            .unwrap()
            .with_initial(scalar_fn(|_| 1.0));
        let grid = build_grid(0.0, 1.0, 1.0, 1, 1).unwrap();
        let f = dense_oracle_run(&spec, &grid).unwrap();
        assert!((f.value(1, 1) - 0.12361221487850867).abs() < 1e-12);
    }

    #[test]
    fn zero_problem_has_zero_residual() {
        let p = zero(0.5).unwrap();
        let grid = p.spec.grid(5, 6).unwrap();
        let field = SolutionField::zeros(&grid);
        let r = residual_check(&field, &p.spec, &grid);
        assert_eq!(r.max_abs, 0.0);
    }

    #[test]
    fn corrupted_entry_is_detected() {
        let p = example41(0.5).unwrap();
        let grid = p.spec.grid(9, 20).unwrap();
        let mut field = run(&p.spec, &grid).unwrap();
        let clean = residual_check(&field, &p.spec, &grid);
        assert!(clean.max_relative <= 1e-10, "{clean:?}");
        field.row_mut(7)[4] += 1.0;
        let sigma = grid.h * grid.dt.powf(-0.5) / gamma(1.5);
        let r = residual_check(&field, &p.spec, &grid);
        assert!(r.max_abs >= sigma, "{r:?}");
        assert_eq!(r.worst.0, 7);
    }

    #[test]
    fn rejects_oversized_grids() {
        let p = zero(0.5).unwrap();
        assert!(dense_oracle_run(&p.spec, &p.spec.grid(65, 10).unwrap()).is_err());
        assert!(dense_oracle_run(&p.spec, &p.spec.grid(10, 257).unwrap()).is_err());
    }
}
