//! Matrix form of the finite volume scheme.
//!
//! Each time step solves
//!
//! ```text
//! (sigma I + A + B) W^n = sigma * history^n + d^n (+ h g(x_i, t_n))
//! ```
//!
//! where `A` is the diffusion operator, `B` the split drift operator and
//! `d^n` carries the Dirichlet data. The cell flux through `x_{i+1/2}` is
//!
//! ```text
//! F_{i+1/2} = fm_{i+1/2} (W_i + W_{i+1}) / 2 + fu_{i+1/2} W_i + fl_{i+1/2} W_{i+1}
//! ```
//!
//! and row `i` of `B` collects the coefficients of `F_{i+1/2} - F_{i-1/2}`.

use crate::drift::SplitDrift;
use crate::error::{Error, Result};
use crate::tridiag::TridiagonalMatrix;

/// `A`: `2 k/h` on the diagonal, `-k/h` on both off-diagonals.
pub fn assemble_diffusion(k_alpha: f64, h: f64, order: usize) -> TridiagonalMatrix {
    let off = -k_alpha / h;
    TridiagonalMatrix {
        lower: vec![off; order.saturating_sub(1)],
        diag: vec![2.0 * k_alpha / h; order],
        upper: vec![off; order.saturating_sub(1)],
    }
}

/// `B` from the split drift sampled at half-points `0..=N`.
///
/// Half-point `r` sits at `x_{r+1/2}`, so 0-based row `r` is bounded by
/// half-points `r` (left) and `r + 1` (right).
pub fn assemble_drift(split: &SplitDrift, order: usize) -> Result<TridiagonalMatrix> {
    if split.len() != order + 1 {
        return Err(Error::DimensionMismatch {
            expected: order + 1,
            found: split.len(),
        });
    }
    let (fm, fu, fl) = (&split.fm, &split.fu, &split.fl);
    let diag = (0..order)
        .map(|r| -fm[r] / 2.0 + fm[r + 1] / 2.0 + (-fl[r]) + fu[r + 1])
        .collect();
    // Entry (r+1, r): inflow into cell r+1 from cell r through x_{r+3/2}.
    let lower = (0..order.saturating_sub(1))
        .map(|r| -fm[r + 1] / 2.0 - fu[r + 1])
        .collect();
    // Entry (r, r+1): outflow of cell r towards cell r+1 through x_{r+3/2}.
    let upper = (0..order.saturating_sub(1))
        .map(|r| fm[r + 1] / 2.0 - (-fl[r + 1]))
        .collect();
    Ok(TridiagonalMatrix { lower, diag, upper })
}

/// Multipliers of `g1(t_n)` in row 1 and of `g2(t_n)` in row `N`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryCoefficients {
    pub left: f64,
    pub right: f64,
}

impl BoundaryCoefficients {
    pub fn from_split(split: &SplitDrift, k_alpha: f64, h: f64) -> Self {
        let last = split.len() - 1;
        Self {
            left: split.fm[0] / 2.0 + split.fu[0] + k_alpha / h,
            right: -split.fm[last] / 2.0 + (-split.fl[last]) + k_alpha / h,
        }
    }

    /// Adds `d^n` into `rhs` (both ends land in the same entry when `N = 1`).
    pub fn apply(&self, rhs: &mut [f64], g1: f64, g2: f64) {
        let last = rhs.len() - 1;
        rhs[0] += self.left * g1;
        rhs[last] += self.right * g2;
    }
}

/// The load vector `d^n` for boundary values `g1_val = g1(t_n)`, `g2_val = g2(t_n)`.
pub fn boundary_load(
    split: &SplitDrift,
    k_alpha: f64,
    h: f64,
    g1_val: f64,
    g2_val: f64,
) -> Vec<f64> {
    let mut d = vec![0.0; split.len() - 1];
    BoundaryCoefficients::from_split(split, k_alpha, h).apply(&mut d, g1_val, g2_val);
    d
}

/// `sigma I + A + B`.
pub fn system_matrix(
    sigma: f64,
    diffusion: &TridiagonalMatrix,
    drift: &TridiagonalMatrix,
) -> Result<TridiagonalMatrix> {
    let mut m = diffusion.add(drift)?;
    for d in &mut m.diag {
        *d += sigma;
    }
    Ok(m)
}

/// Outcome of the sufficient M-matrix test: positive diagonal, non-positive
/// off-diagonals and strict column diagonal dominance.
#[derive(Debug, Clone, PartialEq)]
pub struct MMatrixReport {
    pub is_m_matrix: bool,
    /// Minimum over columns of `m_jj - sum_{i != j} |m_ij|`.
    pub min_column_slack: f64,
    /// Columns violating any of the three conditions, ascending.
    pub offending_indices: Vec<usize>,
}

pub fn verify_m_matrix(m: &TridiagonalMatrix) -> MMatrixReport {
    let n = m.order();
    let mut min_slack = f64::INFINITY;
    let mut offending = Vec::new();
    for j in 0..n {
        let above = if j > 0 { Some(m.upper[j - 1]) } else { None };
        let below = if j + 1 < n { Some(m.lower[j]) } else { None };
        let off_abs: f64 = above.iter().chain(below.iter()).map(|v| v.abs()).sum();
        let slack = m.diag[j] - off_abs;
        min_slack = min_slack.min(slack);
        let sign_ok = above.iter().chain(below.iter()).all(|&v| v <= 0.0);
        if !(m.diag[j] > 0.0) || !sign_ok || !(slack > 0.0) {
            offending.push(j);
        }
    }
    MMatrixReport {
        is_m_matrix: offending.is_empty(),
        min_column_slack: min_slack,
        offending_indices: offending,
    }
}
