//! Building a problem from scratch: a pulse released into a drift on
//! [-1, 2], with a time-dependent inflow.
//!
//! cargo run --example custom_problem

use ffpe_fv::problem::{field_fn, scalar_fn};
use ffpe_fv::{run, verification::discrete_l1_norm, ProblemSpec};

fn main() -> ffpe_fv::Result<()> {
    let spec = ProblemSpec::new(0.7, 0.05, -1.0, 2.0, 3.0)?
        .with_drift(scalar_fn(|x| 1.0 + 0.5 * (3.0 * x).sin()))
        .with_initial(scalar_fn(|x| (-40.0 * x * x).exp()))
        .with_boundaries(scalar_fn(|t| 0.2 * (1.0 - (-t).exp())), scalar_fn(|_| 0.0))
        .with_source(field_fn(|x, t| {
            if (0.9..1.1).contains(&x) {
                0.1 * t
            } else {
                0.0
            }
        }));
    let grid = spec.grid(149, 300)?;
    let field = run(&spec, &grid)?;

    println!("min over the whole field: {:.3e}", field.min_value());
    for n in [0, 30, 100, 300] {
        let row = field.row(n);
        let (imax, wmax) =
            row.iter()
                .enumerate()
                .fold((0, f64::MIN), |b, (i, &w)| if w > b.1 { (i, w) } else { b });
        println!(
            "t = {:.2}: mass {:.4}, peak {wmax:.4} at x = {:.3}",
            grid.times[n],
            discrete_l1_norm(field.interior(n), grid.h),
            grid.nodes[imax]
        );
    }
    Ok(())
}
