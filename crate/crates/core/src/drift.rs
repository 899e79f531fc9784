//! Splitting of the drift into a bounded central part and two upwind parts.
//!
//! With threshold `c = 2 k_alpha / h`:
//! `f_u = max(f - c, 0)`, `f_l = min(f + c, 0)`, `f_m = f - f_u - f_l`,
//! so that `f_u >= 0`, `f_l <= 0` and `|f_m| <= c`. The parts are only ever
//! sampled at the half-points `x_{i+1/2}`.

use crate::problem::Grid;

#[derive(Debug, Clone, PartialEq)]
pub struct SplitDrift {
    /// Central part at half-points `0..=N`.
    pub fm: Vec<f64>,
    /// Non-negative part, discretized with the left state.
    pub fu: Vec<f64>,
    /// Non-positive part, discretized with the right state.
    pub fl: Vec<f64>,
    pub threshold: f64,
}

impl SplitDrift {
    pub fn len(&self) -> usize {
        self.fm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fm.is_empty()
    }

    /// True when both upwind parts vanish, i.e. `h |f| <= 2 k_alpha` at every half-point.
    pub fn is_central(&self) -> bool {
        self.fu.iter().all(|&v| v == 0.0) && self.fl.iter().all(|&v| v == 0.0)
    }
}

/// Splits one drift sample against the threshold `c`; returns `(fm, fu, fl)`.
///
/// A saturated central part is set to `±c` directly instead of `f - f_u - f_l`,
/// which can round past the bound when `f` is large compared to `c`.
pub fn split_value(f: f64, threshold: f64) -> (f64, f64, f64) {
    let fu = (f - threshold).max(0.0);
    let fl = (f + threshold).min(0.0);
    let fm = if fu > 0.0 {
        threshold
    } else if fl < 0.0 {
        -threshold
    } else {
        f
    };
    (fm, fu, fl)
}

pub fn split_drift<F>(drift: F, k_alpha: f64, grid: &Grid) -> SplitDrift
where
    F: Fn(f64) -> f64,
{
    let threshold = 2.0 * k_alpha / grid.h;
    let n = grid.half_points.len();
    let mut split = SplitDrift {
        fm: Vec::with_capacity(n),
        fu: Vec::with_capacity(n),
        fl: Vec::with_capacity(n),
        threshold,
    };
    for &x in &grid.half_points {
        let (fm, fu, fl) = split_value(drift(x), threshold);
        split.fm.push(fm);
        split.fu.push(fu);
        split.fl.push(fl);
    }
    split
}
