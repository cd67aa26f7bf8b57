//! The `m^k` baseline: try every `k`-subset of boxes in lexicographic order.
//!
//! This is the oracle every other engine is checked against, so it does no
//! pruning. Subsets under which some voter is tied between two opened boxes
//! have no well-defined districting and are skipped; validated instances never
//! produce them.

use std::time::Instant;

use rayon::prelude::*;

use crate::election::RankedElection;
use crate::model::{validate_instance, Instance, VotingRule};
use crate::{Error, Result, SolveAnswer, SolveStats};

#[derive(Debug, Clone, Default)]
pub struct BruteConfig {
    /// Evaluate subsets on the rayon pool. The answer, certificate and counters
    /// are identical to the sequential run.
    pub parallel: bool,
    /// Give up with `Unknown` after this instant.
    pub deadline: Option<Instant>,
}

/// Advances `c` to the next `k`-subset of `0..m` in lexicographic order.
pub fn next_combination(c: &mut [usize], m: usize) -> bool {
    let k = c.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if c[i] < m - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// All `k`-subsets of `0..m` in lexicographic order.
pub fn combinations(m: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut current: Option<Vec<usize>> = if k <= m { Some((0..k).collect()) } else { None };
    std::iter::from_fn(move || {
        let out = current.clone()?;
        let c = current.as_mut().unwrap();
        if k == 0 || !next_combination(c, m) {
            current = None;
        }
        Some(out)
    })
}

fn check_structure(inst: &Instance) -> Result<()> {
    let report = validate_instance(inst, false);
    match report.violations.iter().find(|v| v.kind.is_structural()) {
        Some(v) => Err(Error::invalid(format!("{:?}: {}", v.kind, v.detail))),
        None => Ok(()),
    }
}

pub fn brute_solve(inst: &Instance, rule: &dyn VotingRule) -> Result<SolveAnswer> {
    brute_solve_with(inst, rule, &BruteConfig::default())
}

pub fn brute_solve_with(inst: &Instance, rule: &dyn VotingRule, cfg: &BruteConfig) -> Result<SolveAnswer> {
    check_structure(inst)?;
    let start = Instant::now();
    let table = RankedElection::new(&inst.voters, &inst.boxes);
    let wins = |c: &[usize]| table.target_wins(c, rule, inst.target).is_some_and(|w| w >= inst.ell);

    let mut explored = 0u64;
    let mut found = None;
    let mut timed_out = false;
    let mut subsets = combinations(inst.boxes.len(), inst.k);
    const CHUNK: usize = 4096;
    loop {
        if cfg.deadline.is_some_and(|d| Instant::now() >= d) {
            timed_out = true;
            break;
        }
        let chunk: Vec<Vec<usize>> = subsets.by_ref().take(CHUNK).collect();
        if chunk.is_empty() {
            break;
        }
        let hit = if cfg.parallel { chunk.par_iter().position_first(|c| wins(c)) } else { chunk.iter().position(|c| wins(c)) };
        match hit {
            Some(i) => {
                explored += i as u64 + 1;
                found = Some(chunk[i].clone());
                break;
            }
            None => explored += chunk.len() as u64,
        }
    }

    let stats = SolveStats { states_explored: explored, elapsed: start.elapsed(), ..Default::default() };
    Ok(match found {
        Some(c) => SolveAnswer::yes(c, stats),
        None if timed_out => SolveAnswer::unknown(stats),
        None => SolveAnswer::no(stats),
    })
}

/// Most districts the target can win with any `k` boxes.
pub fn brute_count_optimal(inst: &Instance, rule: &dyn VotingRule) -> Result<usize> {
    check_structure(inst)?;
    let table = RankedElection::new(&inst.voters, &inst.boxes);
    Ok(combinations(inst.boxes.len(), inst.k).filter_map(|c| table.target_wins(&c, rule, inst.target)).max().unwrap_or(0))
}
