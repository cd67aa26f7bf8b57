// Benchmark the engines against each other on seeded instances. Instances
// run in parallel; every engine must reach the same definite answers.
//
// ```text
// cargo run --release --example compare_engines
// ```

use std::time::Duration;

use gerrymander::bench::run_bench;
use gerrymander::generate::{gen_random, GenParams};
use gerrymander::separator::SeparatorConfig;
use gerrymander::solver::{EngineKind, SolveOptions};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let instances = (0..6u64)
        .map(|seed| {
            let k = 3 + (seed % 2) as usize;
            let params = GenParams { n_voters: 8, m_boxes: 6, k, ell: 1 + (seed as usize % k), ..GenParams::default() };
            Ok((format!("seed-{seed}"), gen_random(seed, &params)?))
        })
        .collect::<Result<Vec<_>, gerrymander::Error>>()?;
    let opts = SolveOptions {
        separator: SeparatorConfig { safe_mode: true, ..Default::default() },
        timeout: Some(Duration::from_secs(60)),
        ..SolveOptions::default()
    };
    let report = run_bench(&instances, &[EngineKind::Brute, EngineKind::Separator, EngineKind::Auto], &opts);
    println!("{:<8} {:<10} {:<8} {:>10} {:>8} {:>6} {:>9}", "instance", "engine", "status", "ms", "states", "depth", "fallback");
    for r in &report.records {
        println!(
            "{:<8} {:<10} {:<8} {:>10.1} {:>8} {:>6} {:>9}",
            r.instance,
            r.engine,
            r.status.map_or("error".to_string(), |s| format!("{s:?}")),
            r.wall_ms,
            r.states_explored,
            r.recursion_depth.map_or("-".to_string(), |d| d.to_string()),
            r.fallback_used
        );
    }
    assert!(report.disagreements.is_empty(), "engines disagree on {:?}", report.disagreements);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
