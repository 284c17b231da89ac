//! Exact LP relaxation values, with and without a fixed variable.

use coc_kernel::lp::{build_coc_lp, solve_lp, solve_with_fixed_one};
use coc_kernel::Graph;

fn main() -> coc_kernel::Result<()> {
    let triangle = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)])?;
    let lp = build_coc_lp(&triangle, 1)?;
    print!("constraints:\n{}", lp.dump(1));
    let sol = solve_lp(&lp)?;
    println!(
        "optimum {} at {:?}",
        sol.objective,
        sol.values
            .values()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
    );
    println!("with x_1 = 1: {}", solve_with_fixed_one(&lp, 0)?.objective);

    let p7 = Graph::from_edges(7, &(1..7).map(|i| (i - 1, i)).collect::<Vec<_>>())?;
    for ell in 1..=3 {
        println!(
            "P7, ell = {ell}: LP optimum {}",
            solve_lp(&build_coc_lp(&p7, ell)?)?.objective
        );
    }
    Ok(())
}
