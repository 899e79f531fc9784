//! Implicit time marching for schemes of the form
//! `M W^n = sigma * history^n + d^n + h g(x_i, t_n)`.
//!
//! The matrix `M`, the L1 weights and the boundary multipliers do not depend
//! on `n`, so they are built once; each step only forms a right-hand side and
//! runs one tridiagonal solve.

use rayon::prelude::*;

use crate::assembly::{
    assemble_diffusion, assemble_drift, system_matrix, verify_m_matrix, BoundaryCoefficients,
};
use crate::drift::split_drift;
use crate::error::{Error, Result};
use crate::l1::{accumulate_history, caputo_scale, l1_weights, L1Weights};
use crate::problem::{sample_initial, FieldFn, Grid, ProblemSpec};
use crate::tridiag::{solve_tridiagonal_in_place, TridiagonalMatrix};

/// Interior sizes at or above this split the history sum across threads.
const PARALLEL_MIN_INTERIOR: usize = 256;
const HISTORY_CHUNK: usize = 128;

/// Full space-time solution, boundary columns included.
///
/// Row `n` holds `(W_0^n, ..., W_{N+1}^n)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SolutionField {
    grid: Grid,
    values: Vec<f64>,
}

impl SolutionField {
    pub fn zeros(grid: &Grid) -> Self {
        let width = grid.interior + 2;
        Self {
            grid: grid.clone(),
            values: vec![0.0; width * (grid.steps + 1)],
        }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    /// Row width `N + 2`.
    pub fn width(&self) -> usize {
        self.grid.interior + 2
    }

    pub fn steps(&self) -> usize {
        self.grid.steps
    }

    pub fn row(&self, n: usize) -> &[f64] {
        let w = self.width();
        &self.values[n * w..(n + 1) * w]
    }

    pub fn row_mut(&mut self, n: usize) -> &mut [f64] {
        let w = self.width();
        &mut self.values[n * w..(n + 1) * w]
    }

    /// `W^n = (W_1^n, ..., W_N^n)`.
    pub fn interior(&self, n: usize) -> &[f64] {
        let row = self.row(n);
        &row[1..row.len() - 1]
    }

    pub fn interior_mut(&mut self, n: usize) -> &mut [f64] {
        let row = self.row_mut(n);
        let last = row.len() - 1;
        &mut row[1..last]
    }

    pub fn value(&self, n: usize, i: usize) -> f64 {
        self.values[n * self.width() + i]
    }

    pub fn final_row(&self) -> &[f64] {
        self.row(self.grid.steps)
    }

    pub fn iter_rows(&self) -> impl Iterator<Item = &[f64]> {
        self.values.chunks_exact(self.width())
    }

    pub fn min_value(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }
}

/// A linear implicit scheme: the constant system matrix and the multipliers
/// applied to the Dirichlet data in the first and last rows.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearScheme {
    pub system: TridiagonalMatrix,
    pub boundary: BoundaryCoefficients,
}

/// The finite volume scheme for `spec` on `grid`.
pub fn finite_volume_scheme(spec: &ProblemSpec, grid: &Grid) -> Result<LinearScheme> {
    let n = grid.interior;
    let split = split_drift(&*spec.drift, spec.k_alpha, grid);
    let sigma = caputo_scale(grid.h, grid.dt, spec.alpha);
    let system = system_matrix(
        sigma,
        &assemble_diffusion(spec.k_alpha, grid.h, n),
        &assemble_drift(&split, n)?,
    )?;
    Ok(LinearScheme {
        system,
        boundary: BoundaryCoefficients::from_split(&split, spec.k_alpha, grid.h),
    })
}

/// Source contribution `h g(x_i, t)` over the interior nodes.
fn add_source(rhs: &mut [f64], source: &FieldFn, grid: &Grid, t: f64) {
    for (r, &x) in rhs.iter_mut().zip(grid.interior_nodes()) {
        *r += grid.h * source(x, t);
    }
}

/// Computes `W^n` from rows `0..n` of `history`.
///
/// Solves `system W^n = sigma * H^n + load + h g(x_i, t_n)` where `H^n` is the
/// unscaled L1 history combination and the source term is added only when
/// `source` is given.
pub fn step(
    history: &SolutionField,
    n: usize,
    system: &TridiagonalMatrix,
    weights: &L1Weights,
    sigma: f64,
    load: &[f64],
    source: Option<&FieldFn>,
) -> Result<Vec<f64>> {
    let grid = history.grid();
    if n == 0 || n > grid.steps || n > weights.len() {
        return Err(Error::InvalidParameter(format!(
            "step index {n} out of range"
        )));
    }
    let order = grid.interior;
    for len in [system.order(), load.len()] {
        if len != order {
            return Err(Error::DimensionMismatch {
                expected: order,
                found: len,
            });
        }
    }
    let coeffs = weights.history_coefficients(n);
    let mut rhs = vec![0.0; order];
    accumulate_history(&mut rhs, &coeffs, |k| history.interior(k), 0);
    for (r, &d) in rhs.iter_mut().zip(load) {
        *r = sigma * *r + d;
    }
    if let Some(g) = source {
        add_source(&mut rhs, g, grid, grid.times[n]);
    }
    let mut scratch = vec![0.0; order];
    solve_tridiagonal_in_place(system, &mut rhs, &mut scratch)?;
    Ok(rhs)
}

/// Time integrator for one problem on one grid.
#[derive(Debug, Clone)]
pub struct Stepper {
    spec: ProblemSpec,
    grid: Grid,
    scheme: LinearScheme,
    weights: L1Weights,
    sigma: f64,
    parallel: bool,
}

impl Stepper {
    /// Finite volume integrator. The system matrix is checked to be an
    /// M-matrix in debug builds.
    pub fn finite_volume(spec: &ProblemSpec, grid: &Grid) -> Result<Self> {
        let scheme = finite_volume_scheme(spec, grid)?;
        debug_assert!(
            verify_m_matrix(&scheme.system).is_m_matrix,
            "finite volume system is not an M-matrix: {:?}",
            verify_m_matrix(&scheme.system)
        );
        Self::with_scheme(spec, grid, scheme)
    }

    /// Integrator for an arbitrary linear scheme sharing the L1 time discretization.
    pub fn with_scheme(spec: &ProblemSpec, grid: &Grid, scheme: LinearScheme) -> Result<Self> {
        if scheme.system.order() != grid.interior {
            return Err(Error::DimensionMismatch {
                expected: grid.interior,
                found: scheme.system.order(),
            });
        }
        Ok(Self {
            spec: spec.clone(),
            grid: grid.clone(),
            weights: l1_weights(spec.alpha, grid.steps)?,
            sigma: caputo_scale(grid.h, grid.dt, spec.alpha),
            scheme,
            parallel: grid.interior >= PARALLEL_MIN_INTERIOR,
        })
    }

    /// Forces a single-threaded history sum. Results are bitwise identical
    /// either way; this only affects scheduling.
    pub fn serial(mut self) -> Self {
        self.parallel = false;
        self
    }

    pub fn scheme(&self) -> &LinearScheme {
        &self.scheme
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn weights(&self) -> &L1Weights {
        &self.weights
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    /// Marches from `W^0 = phi(x_i)`.
    pub fn run(&self) -> Result<SolutionField> {
        self.run_from(&sample_initial(&self.spec, &self.grid))
    }

    /// Marches from an explicit interior initial vector.
    pub fn run_from(&self, initial: &[f64]) -> Result<SolutionField> {
        let grid = &self.grid;
        let order = grid.interior;
        if initial.len() != order {
            return Err(Error::DimensionMismatch {
                expected: order,
                found: initial.len(),
            });
        }
        let spec = &self.spec;
        let mut field = SolutionField::zeros(grid);
        {
            let row = field.row_mut(0);
            row[0] = (spec.boundary_left)(grid.times[0]);
            row[1..=order].copy_from_slice(initial);
            row[order + 1] = (spec.boundary_right)(grid.times[0]);
        }

        let mut rhs = vec![0.0; order];
        let mut scratch = vec![0.0; order];
        for n in 1..=grid.steps {
            let t = grid.times[n];
            let coeffs = self.weights.history_coefficients(n);
            self.history_into(&field, &coeffs, &mut rhs);
            for r in rhs.iter_mut() {
                *r *= self.sigma;
            }
            let g1 = (spec.boundary_left)(t);
            let g2 = (spec.boundary_right)(t);
            self.scheme.boundary.apply(&mut rhs, g1, g2);
            if let Some(g) = &spec.source {
                add_source(&mut rhs, g, grid, t);
            }
            solve_tridiagonal_in_place(&self.scheme.system, &mut rhs, &mut scratch)?;

            let row = field.row_mut(n);
            row[0] = g1;
            row[1..=order].copy_from_slice(&rhs);
            row[order + 1] = g2;
        }
        Ok(field)
    }

    fn history_into(&self, field: &SolutionField, coeffs: &[f64], out: &mut [f64]) {
        if self.parallel {
            out.par_chunks_mut(HISTORY_CHUNK)
                .enumerate()
                .for_each(|(c, chunk)| {
                    accumulate_history(chunk, coeffs, |k| field.interior(k), c * HISTORY_CHUNK)
                });
        } else {
            accumulate_history(out, coeffs, |k| field.interior(k), 0);
        }
    }
}

/// Finite volume solution of `spec` on `grid`.
pub fn run(spec: &ProblemSpec, grid: &Grid) -> Result<SolutionField> {
    Stepper::finite_volume(spec, grid)?.run()
}
