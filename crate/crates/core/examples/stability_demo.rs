//! A signed perturbation of the initial data never grows in the discrete L1
//! norm, for any step size.
//!
//! cargo run --example stability_demo

use ffpe_fv::verification::discrete_l1_norm;
use ffpe_fv::{Polynomial, ProblemSpec, Stepper};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> ffpe_fv::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let spec = ProblemSpec::new(0.3, 0.5, 0.0, 1.0, 2.0)?
        .with_drift(Polynomial::new(250.0, -400.0, 100.0).to_fn());
    for steps in [4, 64, 1024] {
        let grid = spec.grid(50, steps)?;
        let e0: Vec<f64> = (0..grid.interior)
            .map(|_| rng.random_range(-1.0..1.0))
            .collect();
        let field = Stepper::finite_volume(&spec, &grid)?.run_from(&e0)?;
        let norms: Vec<f64> = (0..=steps)
            .map(|n| discrete_l1_norm(field.interior(n), grid.h))
            .collect();
        let grew = norms.iter().any(|&v| v > norms[0] + 1e-12);
        println!(
            "L = {steps:>4}: |e^0|_1 = {:.4}, |e^L|_1 = {:.4e}, max over n = {:.4}, grew: {grew}",
            norms[0],
            norms[steps],
            norms.iter().cloned().fold(0.0, f64::max)
        );
    }
    Ok(())
}
