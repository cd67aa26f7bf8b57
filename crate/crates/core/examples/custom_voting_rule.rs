// Plug in a different anonymous voting rule. Both engines accept any
// `VotingRule`; here Borda count with strict winners, on three candidates.
//
// ```text
// cargo run --release --example custom_voting_rule
// ```

use std::sync::Arc;

use gerrymander::brute::brute_solve;
use gerrymander::generate::{gen_random, GenParams};
use gerrymander::model::{Plurality, Profile, RuleRegistry, VotingRule};
use gerrymander::separator::{solve_traced, SeparatorConfig};

/// A ranking of `n` candidates gives `n - 1 - position` points; the winner
/// must have strictly the most points.
struct Borda;

impl VotingRule for Borda {
    fn name(&self) -> &str {
        "borda"
    }

    fn winner(&self, profile: &Profile) -> gerrymander::Result<Option<usize>> {
        let n = profile.keys().next().map_or(0, |r| r.0.len());
        let mut score = vec![0u64; n];
        for (ranking, &count) in profile {
            for (pos, &c) in ranking.0.iter().enumerate() {
                score[c] += count * (n - 1 - pos) as u64;
            }
        }
        let best = score.iter().copied().max().unwrap_or(0);
        let mut leaders = (0..n).filter(|&c| score[c] == best);
        Ok(match (leaders.next(), leaders.next()) {
            (Some(c), None) if profile.values().any(|&v| v > 0) => Some(c),
            _ => None,
        })
    }
}

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let mut registry = RuleRegistry::default();
    registry.register(Arc::new(Borda));
    println!("rules: {:?}", registry.names().collect::<Vec<_>>());
    let borda = registry.get("borda")?;

    let params = GenParams { n_voters: 9, m_boxes: 6, n_candidates: 3, k: 3, ell: 2, ..GenParams::default() };
    for seed in 0..4u64 {
        let inst = gen_random(seed, &params)?;
        let by_plurality = brute_solve(&inst, &Plurality)?.status;
        let by_borda = brute_solve(&inst, borda.as_ref())?;
        let cfg = SeparatorConfig { safe_mode: true, ..Default::default() };
        let (separator, _) = solve_traced(&inst, borda.as_ref(), &cfg)?;
        assert_eq!(separator.status, by_borda.status);
        println!(
            "seed {seed}: plurality {by_plurality:?}, borda {:?} (separator agrees, fallback used: {})",
            by_borda.status, separator.stats.fallback_used
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
