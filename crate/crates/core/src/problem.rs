//! Continuous problem data and the uniform space-time grid.
//!
//! The solved equation is the Caputo form
//!
//! ```text
//! D_t^alpha w = k_alpha w_xx - (f(x) w)_x + g(x, t),   a <= x <= b, 0 < t <= T
//! w(x, 0) = phi(x),  w(a, t) = g1(t),  w(b, t) = g2(t)
//! ```
//!
//! with the source `g` optional.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Real function of one variable (drift, initial data, boundary traces).
pub type ScalarFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Real function of `(x, t)` (source terms, exact solutions).
pub type FieldFn = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;

/// Wraps a closure as a [`ScalarFn`].
pub fn scalar_fn<F>(f: F) -> ScalarFn
where
    F: Fn(f64) -> f64 + Send + Sync + 'static,
{
    Arc::new(f)
}

/// Wraps a closure as a [`FieldFn`].
pub fn field_fn<F>(f: F) -> FieldFn
where
    F: Fn(f64, f64) -> f64 + Send + Sync + 'static,
{
    Arc::new(f)
}

/// Quadratic drift `c0 + c1 x + c2 x^2`. Both catalog drifts have this form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Polynomial {
    pub c0: f64,
    pub c1: f64,
    pub c2: f64,
}

impl Polynomial {
    pub const ZERO: Polynomial = Polynomial {
        c0: 0.0,
        c1: 0.0,
        c2: 0.0,
    };

    pub fn new(c0: f64, c1: f64, c2: f64) -> Self {
        Self { c0, c1, c2 }
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.c0 + x * (self.c1 + x * self.c2)
    }

    pub fn derivative(&self, x: f64) -> f64 {
        self.c1 + 2.0 * self.c2 * x
    }

    pub fn to_fn(self) -> ScalarFn {
        scalar_fn(move |x| self.eval(x))
    }
}

/// Coefficients and data of one initial-boundary value problem.
#[derive(Clone)]
pub struct ProblemSpec {
    pub alpha: f64,
    pub k_alpha: f64,
    pub drift: ScalarFn,
    pub initial: ScalarFn,
    pub boundary_left: ScalarFn,
    pub boundary_right: ScalarFn,
    pub source: Option<FieldFn>,
    pub a: f64,
    pub b: f64,
    pub horizon: f64,
}

impl ProblemSpec {
    /// Problem on `[a, b] x [0, horizon]` with zero drift and homogeneous data.
    pub fn new(alpha: f64, k_alpha: f64, a: f64, b: f64, horizon: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "alpha must lie in (0, 1), got {alpha}"
            )));
        }
        if !(k_alpha > 0.0 && k_alpha.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "k_alpha must be positive, got {k_alpha}"
            )));
        }
        if !(a < b) || !a.is_finite() || !b.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "domain requires a < b, got [{a}, {b}]"
            )));
        }
        if !(horizon > 0.0 && horizon.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "time horizon must be positive, got {horizon}"
            )));
        }
        let zero = scalar_fn(|_| 0.0);
        Ok(Self {
            alpha,
            k_alpha,
            drift: zero.clone(),
            initial: zero.clone(),
            boundary_left: zero.clone(),
            boundary_right: zero,
            source: None,
            a,
            b,
            horizon,
        })
    }

    pub fn with_drift(mut self, drift: ScalarFn) -> Self {
        self.drift = drift;
        self
    }

    pub fn with_initial(mut self, initial: ScalarFn) -> Self {
        self.initial = initial;
        self
    }

    pub fn with_boundaries(mut self, left: ScalarFn, right: ScalarFn) -> Self {
        self.boundary_left = left;
        self.boundary_right = right;
        self
    }

    pub fn with_source(mut self, source: FieldFn) -> Self {
        self.source = Some(source);
        self
    }

    pub fn without_source(mut self) -> Self {
        self.source = None;
        self
    }

    /// Grid on this problem's domain and horizon.
    pub fn grid(&self, interior: usize, steps: usize) -> Result<Grid> {
        build_grid(self.a, self.b, self.horizon, interior, steps)
    }
}

impl fmt::Debug for ProblemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ProblemSpec")
            .field("alpha", &self.alpha)
            .field("k_alpha", &self.k_alpha)
            .field("a", &self.a)
            .field("b", &self.b)
            .field("horizon", &self.horizon)
            .field("has_source", &self.source.is_some())
            .finish_non_exhaustive()
    }
}

/// Uniform mesh: `N` interior nodes, `L` time steps.
///
/// Node `i` sits at `a + i h` for `i = 0..=N+1`; half-point `i` is
/// `x_{i+1/2} = a + (i + 1/2) h` for `i = 0..=N`. Control volume `i`
/// (`1 <= i <= N`) is bounded by half-points `i - 1` and `i`.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    pub interior: usize,
    pub steps: usize,
    pub a: f64,
    pub b: f64,
    pub horizon: f64,
    pub h: f64,
    pub dt: f64,
    pub nodes: Vec<f64>,
    pub half_points: Vec<f64>,
    pub times: Vec<f64>,
}

impl Grid {
    /// Number of cells, `N + 1`.
    pub fn cells(&self) -> usize {
        self.interior + 1
    }

    /// Interior nodes `x_1..x_N`.
    pub fn interior_nodes(&self) -> &[f64] {
        &self.nodes[1..=self.interior]
    }
}

pub fn build_grid(a: f64, b: f64, horizon: f64, interior: usize, steps: usize) -> Result<Grid> {
    if interior == 0 {
        return Err(Error::InvalidGrid("need at least one interior node".into()));
    }
    if steps == 0 {
        return Err(Error::InvalidGrid("need at least one time step".into()));
    }
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(Error::InvalidGrid(format!(
            "domain requires a < b, got [{a}, {b}]"
        )));
    }
    if !(horizon > 0.0 && horizon.is_finite()) {
        return Err(Error::InvalidGrid(format!(
            "horizon must be positive, got {horizon}"
        )));
    }

    let cells = interior + 1;
    let h = (b - a) / cells as f64;
    let dt = horizon / steps as f64;

    let mut nodes: Vec<f64> = (0..=cells).map(|i| a + i as f64 * h).collect();
    // Pin the right endpoint; a + (N+1) h can miss b by an ulp.
    nodes[cells] = b;
    let half_points = (0..cells).map(|i| a + (i as f64 + 0.5) * h).collect();
    let mut times: Vec<f64> = (0..=steps).map(|k| k as f64 * dt).collect();
    times[steps] = horizon;

    Ok(Grid {
        interior,
        steps,
        a,
        b,
        horizon,
        h,
        dt,
        nodes,
        half_points,
        times,
    })
}

/// Initial vector `W^0 = (phi(x_1), ..., phi(x_N))`.
pub fn sample_initial(spec: &ProblemSpec, grid: &Grid) -> Vec<f64> {
    grid.interior_nodes()
        .iter()
        .map(|&x| (spec.initial)(x))
        .collect()
}
