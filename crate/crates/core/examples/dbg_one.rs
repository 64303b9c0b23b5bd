use sdg_core::game::pairwise_zero_sum_random;
use sdg_core::sdp::{assemble_equilibrium_dual, solve, SolveOptions};

fn main() {
    let opts = SolveOptions { feas_tol: 1e-8, gap_tol: 1e-7, max_iter: 300 };
    for seed in 0..25u64 {
        let n = 2 + (seed % 5) as usize;
        let dims: Vec<usize> = (0..n).map(|k| 2 + ((seed as usize + k) % 2)).collect();
        let game = pairwise_zero_sum_random(n, &dims, 0.7, seed);
        let d = assemble_equilibrium_dual(&game).unwrap();
        let sol = solve(&d, &opts).unwrap();
        if !sol.is_optimal() {
            println!("seed {seed}: {:?} it {} v {:+.3e} rp {:.2e} rd {:.2e} gap {:+.2e}", sol.status, sol.iterations, sol.primal_objective, sol.primal_residual, sol.dual_residual, sol.gap);
        }
    }
    println!("done");
}
