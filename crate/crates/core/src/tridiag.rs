//! Row-wise tridiagonal storage and the Thomas algorithm.

use crate::error::{Error, Result};

/// Pivots smaller than this in magnitude abort the elimination.
pub const PIVOT_FLOOR: f64 = 1e-300;

/// Square tridiagonal matrix of order `N`.
///
/// `lower[i]` is entry `(i + 1, i)`, `upper[i]` is entry `(i, i + 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TridiagonalMatrix {
    pub lower: Vec<f64>,
    pub diag: Vec<f64>,
    pub upper: Vec<f64>,
}

impl TridiagonalMatrix {
    pub fn new(lower: Vec<f64>, diag: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        let n = diag.len();
        if n == 0 {
            return Err(Error::InvalidParameter(
                "matrix order must be at least 1".into(),
            ));
        }
        for band in [&lower, &upper] {
            if band.len() != n - 1 {
                return Err(Error::DimensionMismatch {
                    expected: n - 1,
                    found: band.len(),
                });
            }
        }
        Ok(Self { lower, diag, upper })
    }

    pub fn zeros(order: usize) -> Self {
        assert!(order >= 1);
        Self {
            lower: vec![0.0; order - 1],
            diag: vec![0.0; order],
            upper: vec![0.0; order - 1],
        }
    }

    pub fn identity(order: usize) -> Self {
        let mut m = Self::zeros(order);
        m.diag.fill(1.0);
        m
    }

    pub fn order(&self) -> usize {
        self.diag.len()
    }

    /// Entry `(row, col)`; zero outside the three bands.
    pub fn get(&self, row: usize, col: usize) -> f64 {
        if row == col {
            self.diag[row]
        } else if row == col + 1 {
            self.lower[col]
        } else if col == row + 1 {
            self.upper[row]
        } else {
            0.0
        }
    }

    /// Dense row-major copy.
    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        let n = self.order();
        (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j)).collect())
            .collect()
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        let n = self.order();
        assert_eq!(x.len(), n);
        (0..n)
            .map(|i| {
                let mut s = self.diag[i] * x[i];
                if i > 0 {
                    s += self.lower[i - 1] * x[i - 1];
                }
                if i + 1 < n {
                    s += self.upper[i] * x[i + 1];
                }
                s
            })
            .collect()
    }

    /// Maximum absolute row sum.
    pub fn norm_inf(&self) -> f64 {
        let n = self.order();
        (0..n)
            .map(|i| {
                let mut s = self.diag[i].abs();
                if i > 0 {
                    s += self.lower[i - 1].abs();
                }
                if i + 1 < n {
                    s += self.upper[i].abs();
                }
                s
            })
            .fold(0.0, f64::max)
    }

    /// Sum of column `j`.
    pub fn column_sum(&self, j: usize) -> f64 {
        let mut s = self.diag[j];
        if j > 0 {
            s += self.upper[j - 1];
        }
        if j + 1 < self.order() {
            s += self.lower[j];
        }
        s
    }

    /// Entrywise sum.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.order() != other.order() {
            return Err(Error::DimensionMismatch {
                expected: self.order(),
                found: other.order(),
            });
        }
        let zip = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x + y).collect();
        Ok(Self {
            lower: zip(&self.lower, &other.lower),
            diag: zip(&self.diag, &other.diag),
            upper: zip(&self.upper, &other.upper),
        })
    }
}

/// Solves `m x = rhs` by forward elimination and back substitution without pivoting.
///
/// Stable for diagonally dominant matrices; anything else may hit
/// [`Error::SingularPivot`].
pub fn solve_tridiagonal(m: &TridiagonalMatrix, rhs: &[f64]) -> Result<Vec<f64>> {
    let mut x = rhs.to_vec();
    let mut scratch = vec![0.0; m.order()];
    solve_tridiagonal_in_place(m, &mut x, &mut scratch)?;
    Ok(x)
}

/// In-place variant: `x` holds the right-hand side on entry and the solution on
/// exit. `scratch` must have length `N`.
pub fn solve_tridiagonal_in_place(
    m: &TridiagonalMatrix,
    x: &mut [f64],
    scratch: &mut [f64],
) -> Result<()> {
    let n = m.order();
    if x.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: x.len(),
        });
    }
    if scratch.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: scratch.len(),
        });
    }

    // scratch[i] holds the eliminated upper coefficient c'_i.
    let mut pivot = m.diag[0];
    if !(pivot.abs() >= PIVOT_FLOOR) {
        return Err(Error::SingularPivot { row: 0, pivot });
    }
    x[0] /= pivot;
    for i in 1..n {
        scratch[i - 1] = m.upper[i - 1] / pivot;
        let l = m.lower[i - 1];
        pivot = m.diag[i] - l * scratch[i - 1];
        if !(pivot.abs() >= PIVOT_FLOOR) {
            return Err(Error::SingularPivot { row: i, pivot });
        }
        x[i] = (x[i] - l * x[i - 1]) / pivot;
    }
    for i in (0..n - 1).rev() {
        x[i] -= scratch[i] * x[i + 1];
    }
    Ok(())
}
