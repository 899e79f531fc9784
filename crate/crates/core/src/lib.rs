//! Monotone finite volume solver for the time-fractional Fokker-Planck equation
//!
//! ```text
//! D_t^alpha w = k_alpha w_xx - (f(x) w)_x + g(x, t)
//! ```
//!
//! on an interval with Dirichlet data, where `D_t^alpha` is the Caputo
//! derivative of order `0 < alpha < 1`.
//!
//! Time is discretized with the L1 formula. In space the equation is integrated
//! over control volumes; the drift is split into a central part bounded by
//! `2 k_alpha / h` and two upwinded remainders. The resulting system matrix is
//! an M-matrix for every `h` and `dt`, which makes the scheme monotone
//! (non-negative data give non-negative solutions) and unconditionally stable
//! in the discrete L1 norm. Convergence is first order in space on coarse grids
//! and second order once `h max|f| <= 2 k_alpha`, and order `2 - alpha` in time.
//!
//! ```
//! use ffpe_fv::{run, verification::{error_summary, example41}};
//!
//! let problem = example41(0.5).unwrap();
//! let grid = problem.spec.grid(9, 100).unwrap();
//! let field = run(&problem.spec, &grid).unwrap();
//! let err = error_summary(&field, problem.exact.as_ref().unwrap());
//! assert!(err.max_l1 < 0.1);
//! assert!(field.min_value().is_finite());
//! ```
//!
//! A centered finite difference scheme with the same time discretization is
//! included for comparison ([`fd::run_fd`]), together with a dense reference
//! implementation and residual checks in [`verification`].

// `!(x > 0.0)` style checks are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod assembly;
pub mod cli;
pub mod drift;
pub mod error;
pub mod fd;
pub mod l1;
pub mod problem;
pub mod stepper;
pub mod tridiag;
pub mod verification;

pub use assembly::{
    assemble_diffusion, assemble_drift, boundary_load, system_matrix, verify_m_matrix,
    BoundaryCoefficients, MMatrixReport,
};
pub use drift::{split_drift, SplitDrift};
pub use error::{Error, Result};
pub use fd::run_fd;
pub use l1::{caputo_scale, history_combination, l1_weights, L1Weights};
pub use problem::{build_grid, sample_initial, Grid, Polynomial, ProblemSpec};
pub use stepper::{run, step, LinearScheme, SolutionField, Stepper};
pub use tridiag::{solve_tridiagonal, TridiagonalMatrix};
