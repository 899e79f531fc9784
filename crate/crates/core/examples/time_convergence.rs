//! Temporal refinement study for several orders; the observed rate
//! approaches 2 - alpha.
//!
//! cargo run --release --example time_convergence

use ffpe_fv::verification::{convergence_study, example41, Axis};

fn main() -> ffpe_fv::Result<()> {
    let steps = [10, 20, 40, 80, 160];
    // small alpha needs a finer mesh to keep the spatial error out of the way
    for (alpha, n) in [(0.2, 15000), (0.5, 5000), (0.8, 5000)] {
        let problem = example41(alpha)?;
        let grids: Vec<_> = steps.iter().map(|&l| (n, l)).collect();
        let table = convergence_study(&problem, Axis::Time, &grids)?;
        let rates: Vec<_> = table.rates.iter().map(|r| format!("{r:.3}")).collect();
        println!(
            "alpha = {alpha}: max L1 at L = 160 is {:.3e}, rates {} (2 - alpha = {:.1})",
            table.max_l1[steps.len() - 1],
            rates.join(" "),
            2.0 - alpha
        );
    }
    Ok(())
}
