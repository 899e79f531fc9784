//! L1 discretization of the Caputo derivative.
//!
//! On a uniform step `dt`, integrating over one control volume of width `h`
//! gives
//!
//! ```text
//! h D^alpha w(t_n) ~ sigma * ( W^n - sum_{k=1}^{n-1} (a_{n-k-1} - a_{n-k}) W^k - a_{n-1} W^0 )
//! sigma = h dt^{-alpha} / Gamma(2 - alpha),   a_k = (k+1)^{1-alpha} - k^{1-alpha}
//! ```

use statrs::function::gamma::gamma;

use crate::error::{Error, Result};

/// Precomputed L1 weights `a_0..a_{count-1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct L1Weights {
    alpha: f64,
    weights: Vec<f64>,
}

impl L1Weights {
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// `a_k`.
    pub fn get(&self, k: usize) -> f64 {
        self.weights[k]
    }

    /// Coefficients of the history sum at step `n`: entry `k` multiplies `W^k`
    /// for `k = 0..n`. Entry 0 is `a_{n-1}`, entry `k >= 1` is
    /// `a_{n-k-1} - a_{n-k}`.
    pub fn history_coefficients(&self, n: usize) -> Vec<f64> {
        assert!(n >= 1 && n <= self.weights.len(), "step {n} out of range");
        let a = &self.weights;
        let mut coeffs = Vec::with_capacity(n);
        coeffs.push(a[n - 1]);
        coeffs.extend((1..n).map(|k| a[n - k - 1] - a[n - k]));
        coeffs
    }
}

pub fn l1_weights(alpha: f64, count: usize) -> Result<L1Weights> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "alpha must lie in (0, 1), got {alpha}"
        )));
    }
    if count == 0 {
        return Err(Error::InvalidParameter(
            "need at least one L1 weight".into(),
        ));
    }
    let p = 1.0 - alpha;
    let weights = (0..count)
        .map(|k| {
            let k = k as f64;
            (k + 1.0).powf(p) - k.powf(p)
        })
        .collect();
    Ok(L1Weights { alpha, weights })
}

/// `h dt^{-alpha} / Gamma(2 - alpha)`.
pub fn caputo_scale(h: f64, dt: f64, alpha: f64) -> f64 {
    h * dt.powf(-alpha) / gamma(2.0 - alpha)
}

/// Unscaled L1 history term at step `n`:
/// `sum_{k=1}^{n-1} (a_{n-k-1} - a_{n-k}) W^k + a_{n-1} W^0`.
///
/// `history[k]` is `W^k`; only the first `n` entries are read.
pub fn history_combination<V: AsRef<[f64]>>(
    history: &[V],
    weights: &L1Weights,
    n: usize,
) -> Result<Vec<f64>> {
    if n == 0 || n > weights.len() {
        return Err(Error::InvalidParameter(format!(
            "step index {n} outside 1..={}",
            weights.len()
        )));
    }
    if history.len() < n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: history.len(),
        });
    }
    let width = history[0].as_ref().len();
    for row in &history[..n] {
        let len = row.as_ref().len();
        if len != width {
            return Err(Error::DimensionMismatch {
                expected: width,
                found: len,
            });
        }
    }
    let coeffs = weights.history_coefficients(n);
    let mut out = vec![0.0; width];
    accumulate_history(&mut out, &coeffs, |k| history[k].as_ref(), 0);
    Ok(out)
}

/// `out[j] = sum_k coeffs[k] * row(k)[offset + j]`, summed in increasing `k`.
///
/// The summation order per output entry is fixed, so splitting `out` into
/// chunks (with matching offsets) gives bitwise identical results.
pub(crate) fn accumulate_history<'a, R>(out: &mut [f64], coeffs: &[f64], row: R, offset: usize)
where
    R: Fn(usize) -> &'a [f64],
{
    out.fill(0.0);
    let width = out.len();
    for (k, &c) in coeffs.iter().enumerate() {
        let src = &row(k)[offset..offset + width];
        for (o, &w) in out.iter_mut().zip(src) {
            *o += c * w;
        }
    }
}

#[cfg(test)]
#[allow(clippy::excessive_precision)] // reference digits from mpmath
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn first_weight_is_one() {
        for &alpha in &[0.01, 0.2, 0.5, 0.8, 0.99] {
            assert_eq!(l1_weights(alpha, 5).unwrap().get(0), 1.0);
        }
    }

    #[test]
    fn closed_form_values() {
        // 2^0.5 - 1 and 3^0.8 - 2^0.8, evaluated at 30 digits.
        let w = l1_weights(0.5, 3).unwrap();
        assert_relative_eq!(
            w.get(1),
            0.414213562373095048801688724,
            max_relative = 1e-14
        );
        let w = l1_weights(0.2, 3).unwrap();
        assert_relative_eq!(
            w.get(2),
            0.667123558688443768012968579,
            max_relative = 1e-14
        );
    }

    #[test]
    fn rejects_bad_alpha() {
        assert!(l1_weights(0.0, 3).is_err());
        assert!(l1_weights(1.0, 3).is_err());
        assert!(l1_weights(-0.5, 3).is_err());
        assert!(l1_weights(0.5, 0).is_err());
    }

    #[test]
    fn gamma_reference_points() {
        assert_relative_eq!(
            gamma(1.5),
            std::f64::consts::PI.sqrt() / 2.0,
            max_relative = 1e-13
        );
        assert_relative_eq!(gamma(1.0), 1.0, max_relative = 1e-13);
        assert_relative_eq!(gamma(2.0), 1.0, max_relative = 1e-13);
        // Gamma(1.2), Gamma(1.8) to 20 digits.
        assert_relative_eq!(gamma(1.2), 0.91816874239976061064, max_relative = 1e-13);
        assert_relative_eq!(gamma(1.8), 0.93138377098024269891, max_relative = 1e-13);
    }

    #[test]
    fn scale_values() {
        // 1 / Gamma(1.5) = 2 / sqrt(pi)
        let inv = 2.0 / std::f64::consts::PI.sqrt();
        assert_relative_eq!(caputo_scale(1.0, 1.0, 0.5), inv, max_relative = 1e-13);
        assert_relative_eq!(
            caputo_scale(0.1, 1.0, 0.5),
            0.11283791670955126,
            max_relative = 1e-13
        );
        for &alpha in &[0.2, 0.5, 0.8] {
            let ratio = caputo_scale(1.0, 0.05, alpha) / caputo_scale(1.0, 0.1, alpha);
            assert_relative_eq!(ratio, 2f64.powf(alpha), max_relative = 1e-14);
        }
    }

    #[test]
    fn first_step_returns_initial() {
        let w = l1_weights(0.3, 4).unwrap();
        let hist = vec![vec![1.5, -2.0, 3.25]];
        assert_eq!(history_combination(&hist, &w, 1).unwrap(), hist[0]);
    }

    #[test]
    fn constant_history_is_preserved() {
        let w = l1_weights(0.7, 50).unwrap();
        let hist = vec![vec![2.5; 4]; 50];
        for n in 1..=50 {
            let out = history_combination(&hist, &w, n).unwrap();
            for v in out {
                assert_relative_eq!(v, 2.5, max_relative = 1e-13);
            }
        }
    }

    #[test]
    fn three_step_hand_value() {
        let w = l1_weights(0.5, 3).unwrap();
        let hist = vec![vec![1.0], vec![0.0], vec![1.0]];
        let out = history_combination(&hist, &w, 3).unwrap();
        // 1 - (sqrt2 - 1) + (sqrt3 - sqrt2)
        let brute: f64 = {
            let a = |k: f64| (k + 1.0).sqrt() - k.sqrt();
            (a(0.0) - a(1.0)) * 1.0 + (a(1.0) - a(2.0)) * 0.0 + a(2.0) * 1.0
        };
        assert_relative_eq!(out[0], brute, max_relative = 1e-15);
        assert_relative_eq!(out[0], 0.903623682822687196, max_relative = 1e-14);
    }

    #[test]
    fn rejects_ragged_history() {
        let w = l1_weights(0.5, 3).unwrap();
        let hist = vec![vec![1.0, 2.0], vec![0.0]];
        assert!(matches!(
            history_combination(&hist, &w, 2),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(history_combination(&hist, &w, 0).is_err());
        assert!(history_combination(&hist, &w, 3).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn weights_positive_and_decreasing(alpha in 0.01f64..0.99, count in 2usize..2000) {
                let w = l1_weights(alpha, count).unwrap();
                for pair in w.as_slice().windows(2) {
                    prop_assert!(pair[1] > 0.0);
                    prop_assert!(pair[0] > pair[1]);
                }
            }

            #[test]
            fn coefficients_positive_and_telescoping(alpha in 0.01f64..0.99, n in 1usize..600) {
                let w = l1_weights(alpha, n).unwrap();
                let c = w.history_coefficients(n);
                prop_assert!(c.iter().all(|&v| v > 0.0));
                let sum: f64 = c.iter().sum();
                prop_assert!((sum - 1.0).abs() <= 4.0 * n as f64 * f64::EPSILON);
            }

            #[test]
            fn combination_is_linear(
                alpha in 0.05f64..0.95,
                scale in -5.0f64..5.0,
                rows in proptest::collection::vec(proptest::collection::vec(-3.0f64..3.0, 3), 1..20),
            ) {
                let n = rows.len();
                let w = l1_weights(alpha, n).unwrap();
                let scaled: Vec<Vec<f64>> =
                    rows.iter().map(|r| r.iter().map(|v| v * scale).collect()).collect();
                let base = history_combination(&rows, &w, n).unwrap();
                let out = history_combination(&scaled, &w, n).unwrap();
                for (o, b) in out.iter().zip(&base) {
                    prop_assert!((o - scale * b).abs() <= 1e-12 * (1.0 + b.abs() * scale.abs()));
                }
            }
        }
    }
}
