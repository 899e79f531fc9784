//! Solves the manufactured cosine problem and prints the final profile next
//! to the exact solution.
//!
//! cargo run --example solve_example41 -- [alpha] [N] [L]

use ffpe_fv::run;
use ffpe_fv::verification::{error_summary, example41};

fn main() -> ffpe_fv::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let alpha = args.first().map_or(0.5, |s| s.parse().expect("alpha"));
    let n = args.get(1).map_or(39, |s| s.parse().expect("N"));
    let l = args.get(2).map_or(400, |s| s.parse().expect("L"));

    let problem = example41(alpha)?;
    let exact = problem.exact.as_ref().unwrap();
    let grid = problem.spec.grid(n, l)?;
    let field = run(&problem.spec, &grid)?;

    println!("{:>8} {:>14} {:>14}", "x", "W(x, 1)", "exact");
    let stride = (grid.nodes.len() / 10).max(1);
    for (i, (&x, &w)) in grid.nodes.iter().zip(field.final_row()).enumerate() {
        if i % stride == 0 || i == grid.nodes.len() - 1 {
            println!("{x:>8.4} {w:>14.6e} {:>14.6e}", exact(x, 1.0));
        }
    }
    let s = error_summary(&field, exact);
    println!(
        "max_n |e|_inf = {:.3e}, max_n |e|_1 = {:.3e}",
        s.max_inf, s.max_l1
    );
    Ok(())
}
