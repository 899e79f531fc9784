//! Finite volume against centered finite differences on a coarse grid with a
//! strong drift. The FV profile stays monotone and nonnegative.
//!
//! cargo run --example fv_vs_fd

use ffpe_fv::verification::{
    compare_fd, example42_case1, example42_case2_demo, example42_case2_outflow,
};

fn main() -> ffpe_fv::Result<()> {
    for problem in [
        example42_case1()?,
        example42_case2_demo()?,
        example42_case2_outflow()?,
    ] {
        let grid = problem.spec.grid(4, 200)?;
        let cmp = compare_fd(&problem.spec, &grid)?;
        println!("{}", problem.name);
        println!("  {:>5} {:>11} {:>11}", "x", "FV", "FD");
        for ((x, fv), fd) in grid
            .nodes
            .iter()
            .zip(cmp.fv.final_row())
            .zip(cmp.fd.final_row())
        {
            println!("  {x:>5.2} {fv:>11.4e} {fd:>11.4e}");
        }
        println!(
            "  min FV {:.3e}, min FD {:.3e}; oscillations FV {}, FD {}",
            cmp.fv_min, cmp.fd_min, cmp.fv_oscillations, cmp.fd_oscillations
        );
    }
    Ok(())
}
