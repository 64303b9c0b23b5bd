use sdg_core::equilibrium::exploitability_with_tol;
use sdg_core::game::pairwise_zero_sum_random;
use sdg_core::sdp::{mmw_selfplay, EtaSchedule, MmwOptions};

fn main() {
    for eta in [1.5, 2.0] {
        let mut worst = (0.0f64, 0u64);
        for seed in 0..25u64 {
            let n = 2 + (seed % 5) as usize;
            let dims: Vec<usize> = (0..n).map(|k| 2 + ((seed as usize + k) % 2)).collect();
            let game = pairwise_zero_sum_random(n, &dims, 0.7, seed);
            let avg = mmw_selfplay(&game, &MmwOptions { eta, n_iters: 20000, schedule: EtaSchedule::InvSqrt }).unwrap();
            let e = exploitability_with_tol(&game, &avg, 1e-2).unwrap().total_exploitability;
            if e > worst.0 { worst = (e, seed); }
        }
        println!("eta {eta}: worst {:.3e} (seed {})", worst.0, worst.1);
    }
}
