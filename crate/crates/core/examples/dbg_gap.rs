use sdg_core::game::pairwise_zero_sum_random;
use sdg_core::sdp::{assemble_equilibrium_primal, assemble_equilibrium_dual, solve, SolveOptions};

fn main() {
    for seed in [3u64, 5, 8, 31, 37, 41, 47] {
        let game = pairwise_zero_sum_random(4, &[2, 3, 2, 2], 0.8, seed);
        let p = assemble_equilibrium_primal(&game).unwrap();
        for (name, opts) in [("default", SolveOptions::default()), ("tight", SolveOptions::tight())] {
            let sol = solve(&p, &opts).unwrap();
            println!(
                "seed {seed} {name}: status {:?} iters {} pobj {:+.3e} dobj {:+.3e} gap {:+.3e} rp {:.2e} rd {:.2e}",
                sol.status, sol.iterations, sol.primal_objective, sol.dual_objective, sol.gap,
                sol.primal_residual, sol.dual_residual
            );
        }
        let d = assemble_equilibrium_dual(&game).unwrap();
        let sol = solve(&d, &SolveOptions::default()).unwrap();
        println!("  dual prog: status {:?} iters {} obj {:+.3e}", sol.status, sol.iterations, sol.primal_objective);
    }
}
