//! Spatial refinement study. With drift around 400 the scheme is first order
//! until h max|f| <= 2 k_alpha, then second order.
//!
//! cargo run --release --example space_convergence

use ffpe_fv::verification::{convergence_study, example41, Axis};

fn main() -> ffpe_fv::Result<()> {
    let problem = example41(0.5)?;
    // a moderate L keeps this quick; the time error stays well below the spatial one
    let grids: Vec<_> = [9, 19, 39, 79, 159, 319]
        .iter()
        .map(|&n| (n, 2000))
        .collect();
    let table = convergence_study(&problem, Axis::Space, &grids)?;
    println!(
        "{:>6} {:>12} {:>12} {:>7}",
        "N+1", "max inf", "max L1", "rate"
    );
    for j in 0..grids.len() {
        let rate = if j == 0 {
            String::new()
        } else {
            format!("{:.3}", table.rates[j - 1])
        };
        println!(
            "{:>6} {:>12.3e} {:>12.3e} {:>7}",
            table.size(j),
            table.max_inf[j],
            table.max_l1[j],
            rate
        );
    }
    Ok(())
}
