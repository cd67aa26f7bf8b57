// Decide random instances with the noose-separator recursion and inspect
// how it split the problem.
//
// ```text
// cargo run --release --example separator_trace
// ```

use gerrymander::brute::brute_solve;
use gerrymander::generate::{gen_random, GenParams};
use gerrymander::model::Plurality;
use gerrymander::separator::{child_k_bound, solve_traced, SeparatorConfig};
use gerrymander::Status;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = SeparatorConfig { gamma: 2, max_noose_boxes: 4, safe_mode: true, ..Default::default() };
    for seed in [0u64, 2, 3] {
        let params = GenParams { n_voters: 8, m_boxes: 6, k: 4, ell: 2, ..GenParams::default() };
        let inst = gen_random(seed, &params)?;
        let (answer, trace) = solve_traced(&inst, &Plurality, &cfg)?;
        let oracle = brute_solve(&inst, &Plurality)?;
        println!(
            "seed {seed}: separator {:?} (fallback used: {}), brute force {:?}",
            answer.status, answer.stats.fallback_used, oracle.status
        );
        assert_eq!(answer.status, oracle.status);
        if answer.status != Status::Yes || answer.stats.fallback_used {
            continue;
        }
        println!(
            "  {} states, depth {} (bound {}), certificate {:?}",
            answer.stats.states_explored,
            trace.max_depth,
            trace.depth_bound(),
            answer.certificate.as_deref().unwrap_or_default()
        );
        for (k, child) in &trace.child_bounds {
            assert!(*child <= child_k_bound(*k));
        }
        for split in &trace.accepted {
            println!(
                "  depth {}: noose through boxes {:?} splits k = {} into {} + {}; {} voters inside, {} outside",
                split.depth,
                split.noose.boxes,
                split.k,
                split.k1,
                split.k2,
                split.voters[0].len(),
                split.voters[1].len()
            );
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
