use sdg_core::equilibrium::exploitability;
use sdg_core::game::pairwise_zero_sum_random;
use sdg_core::sdp::{assemble_equilibrium_dual, assemble_equilibrium_primal, extract_equilibrium, solve, SolveOptions};

fn main() {
    let mut worst_gap_cross = 0.0f64;
    let mut worst_e = 0.0f64;
    let mut fails = 0;
    for seed in 0..30u64 {
        let n = 2 + (seed % 5) as usize; // 2..6 players
        let dims: Vec<usize> = (0..n).map(|k| 2 + ((seed as usize + k) % 2)).collect();
        let game = pairwise_zero_sum_random(n, &dims, 0.7, seed);
        if game.edges().is_empty() { continue; }
        let p = assemble_equilibrium_primal(&game).unwrap();
        let d = assemble_equilibrium_dual(&game).unwrap();
        for (name, opts) in [("def", SolveOptions::default()), ("tight", SolveOptions::tight())] {
            let ps = solve(&p, &opts).unwrap();
            let ds = solve(&d, &opts).unwrap();
            let cross = (-(ps.primal_objective - ps.dual_objective)).max(0.0)
                .max(-(ds.dual_objective - ds.primal_objective)).max(0.0);
            worst_gap_cross = worst_gap_cross.max(cross);
            let ok_p = ps.is_optimal();
            let ok_d = ds.is_optimal();
            let mut e_str = String::new();
            if ok_p {
                match extract_equilibrium(&game, &ps, 1e-5) {
                    Ok(profile) => {
                        let e = exploitability(&game, &profile).unwrap().total_exploitability;
                        worst_e = worst_e.max(e);
                        e_str = format!("{:.2e}", e);
                    }
                    Err(err) => { e_str = format!("EXTRACT-FAIL {err}"); fails += 1; }
                }
            } else { fails += 1; }
            println!(
                "seed {seed:2} {name:5}: P {:>9} it{:3} v {:+.2e} | D {:>9} it{:3} v {:+.2e} | Δvd {:.1e} cross {:.1e} | Σe {}",
                format!("{:?}", ps.status), ps.iterations, ps.primal_objective,
                format!("{:?}", ds.status), ds.iterations, ds.primal_objective,
                (ps.primal_objective - ds.primal_objective).abs(), cross, e_str
            );
        }
    }
    println!("worst crossing {worst_gap_cross:.2e}  worst Σe {worst_e:.2e}  fails {fails}");
}
