//! Cross-checks the banded solver against the dense reference and the
//! substituted residual.
//!
//! cargo run --example oracle_check

use ffpe_fv::run;
use ffpe_fv::verification::{
    dense_oracle_run, lookup, residual_check, CatalogParams, PROBLEM_NAMES,
};

fn main() -> ffpe_fv::Result<()> {
    for name in PROBLEM_NAMES {
        let p = lookup(name, &CatalogParams::default())?;
        let grid = p.spec.grid(24, 60)?;
        let banded = run(&p.spec, &grid)?;
        let dense = dense_oracle_run(&p.spec, &grid)?;
        let diff = banded
            .iter_rows()
            .flatten()
            .zip(dense.iter_rows().flatten())
            .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
        let res = residual_check(&banded, &p.spec, &grid);
        println!(
            "{name:<24} max |banded - dense| = {diff:.2e}, relative residual = {:.2e}",
            res.max_relative
        );
    }
    Ok(())
}
