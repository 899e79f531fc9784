//! The FV system matrix is an M-matrix whatever the drift and mesh size.
//! Drift columns sum to zero away from the boundary, so the smallest column
//! slack is the time term sigma and does not depend on the drift.
//!
//! cargo run --example m_matrix_check

use ffpe_fv::stepper::finite_volume_scheme;
use ffpe_fv::{verify_m_matrix, Polynomial, ProblemSpec};

fn main() -> ffpe_fv::Result<()> {
    for peak in [1.0, 1e2, 1e4] {
        for drift in [
            Polynomial::new(peak, 0.0, 0.0),
            Polynomial::new(-peak, 2.0 * peak, 0.0),
        ] {
            let spec = ProblemSpec::new(0.5, 1.0, 0.0, 1.0, 1.0)?.with_drift(drift.to_fn());
            for n in [3, 31] {
                let grid = spec.grid(n, 100)?;
                let scheme = finite_volume_scheme(&spec, &grid)?;
                let r = verify_m_matrix(&scheme.system);
                println!(
                    "f = {:+.0e} + {:+.0e} x, h = {:.4}: M-matrix {}, min column slack {:.3e}",
                    drift.c0, drift.c1, grid.h, r.is_m_matrix, r.min_column_slack
                );
            }
        }
    }

    // flipping one off-diagonal breaks the property
    let spec = ProblemSpec::new(0.5, 1.0, 0.0, 1.0, 1.0)?;
    let mut system = finite_volume_scheme(&spec, &spec.grid(5, 10)?)?.system;
    system.upper[2] = 1.0;
    println!("corrupted: {:?}", verify_m_matrix(&system));
    Ok(())
}
