//! The subexponential engine: recursive search over valid states, split by
//! noose separators of the solution's Voronoi diagram.
//!
//! The instance is wrapped in three far-away auxiliary boxes that are fixed
//! from the start. A state asks whether its fixed boxes `F` can be completed
//! by `k - |F|` more boxes so that the target wins at least `l` districts, the
//! fixed boxes receive prescribed vote counts, and every boundary segment
//! stays in its anchor's cell. Small states are solved by enumeration; larger
//! ones guess a noose (a closed polygon through `O(sqrt k)` boxes and Voronoi
//! vertex candidates), guess how boxes, wins and votes split across it, and
//! recurse on the inside and the outside.
//!
//! Soundness never depends on the configuration: every composed answer is
//! re-checked against the state it answers, and the final certificate against
//! the instance. Completeness depends on the noose length cap; a search that
//! exhausts its nooses reports `Unknown` unless the cap is asserted to be
//! sufficient, and safe mode settles such answers by brute force.

mod noose;
mod search;
mod state;

use std::collections::BTreeSet;
use std::time::Instant;

pub use noose::{enumerate_nooses, noose_admissible, Noose, NooseVertex};
pub use search::{child_k_bound, split_state, SplitGuess};
pub use state::{init_state, BoundarySegment, Context, RegionConstraint, State, MAX_BOXES};

use crate::brute::{brute_solve_with, BruteConfig};
use crate::election::is_yes_certificate;
use crate::model::{rule, validate_instance, Instance, Point, VotingRule};
use crate::{Error, Result, SolveAnswer, SolveStats, Status};
use search::Engine;

#[derive(Debug, Clone, PartialEq)]
pub struct SeparatorConfig {
    /// States with at most this many boxes left to choose are enumerated.
    pub gamma: usize,
    /// Longest noose tried, in boxes.
    pub max_noose_boxes: usize,
    /// Confirm every non-`Yes` answer with the brute-force oracle.
    pub safe_mode: bool,
    /// Voting rule id.
    pub rule: String,
    /// Treat nooses of up to `ceil(alpha * sqrt(k))` boxes as sufficient, so an
    /// exhausted search at a level whose cap reaches that length answers `No`.
    pub assume_complete_alpha: Option<f64>,
    pub deadline: Option<Instant>,
}

impl Default for SeparatorConfig {
    fn default() -> Self {
        SeparatorConfig {
            gamma: 2,
            max_noose_boxes: 4,
            safe_mode: false,
            rule: "plurality".into(),
            assume_complete_alpha: None,
            deadline: None,
        }
    }
}

impl SeparatorConfig {
    pub fn check(&self) -> Result<()> {
        if self.gamma < 1 {
            return Err(Error::invalid("gamma must be at least 1"));
        }
        if self.max_noose_boxes < 3 {
            return Err(Error::invalid("max_noose_boxes must be at least 3"));
        }
        Ok(())
    }
}

/// A split used in the returned certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AcceptedSplit {
    pub depth: usize,
    pub k: usize,
    pub k1: usize,
    pub k2: usize,
    pub noose: Noose,
    pub polygon: Vec<Point>,
    /// The region of the state that was split.
    pub region: Vec<RegionConstraint>,
    /// Voters strictly inside and strictly outside the noose.
    pub voters: [Vec<usize>; 2],
    /// `S + F` of the state that was split.
    pub chosen: Vec<usize>,
    /// `S_i + F_i` of the two children.
    pub sides: [Vec<usize>; 2],
}

/// Structural record of one run.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SeparatorTrace {
    /// `k` of the root state (the instance's `k` plus the auxiliary boxes).
    pub root_k: usize,
    pub gamma: usize,
    /// Every `(parent k, child k)` pair of a child state that was searched.
    pub child_bounds: BTreeSet<(usize, usize)>,
    /// Deepest state searched; the root is depth 1.
    pub max_depth: usize,
    /// Splits of the successful derivation, outermost first.
    pub accepted: Vec<AcceptedSplit>,
    /// All box locations, auxiliary boxes last.
    pub boxes: Vec<Point>,
}

impl SeparatorTrace {
    /// Whether the search split any state.
    pub fn recursed(&self) -> bool {
        !self.child_bounds.is_empty()
    }

    /// `ceil(log_{4/3}(k / gamma)) + 1` for the root `k`.
    pub fn depth_bound(&self) -> usize {
        let mut depth = 1;
        let mut k = self.root_k as f64;
        while k > self.gamma as f64 {
            k *= 0.75;
            depth += 1;
        }
        depth
    }
}

/// Solves `inst` with the rule named in `cfg`.
pub fn solve(inst: &Instance, cfg: &SeparatorConfig) -> Result<SolveAnswer> {
    let rule = rule(&cfg.rule)?;
    solve_traced(inst, rule.as_ref(), cfg).map(|(answer, _)| answer)
}

/// Searches `state` directly. The certificate is `S` without the fixed boxes.
pub fn solve_state(ctx: &Context, state: &State, cfg: &SeparatorConfig) -> Result<SolveAnswer> {
    cfg.check()?;
    let start = Instant::now();
    let mut engine = Engine::new(ctx, cfg);
    let outcome = engine.search(state.clone(), 1);
    let stats = SolveStats {
        states_explored: engine.states,
        recursion_depth: engine.max_depth,
        elapsed: start.elapsed(),
        ..Default::default()
    };
    Ok(match outcome.best.filter(|c| c.wins >= state.ell) {
        Some(c) => SolveAnswer::yes(c.s, stats),
        None if outcome.complete => SolveAnswer::no(stats),
        None => SolveAnswer::unknown(stats),
    })
}

/// Solves `inst` under `rule` and returns the structural trace.
///
/// Requires the general-position assumptions. A `Yes` certificate lists the
/// chosen instance boxes in increasing order and is always verified.
pub fn solve_traced(inst: &Instance, rule: &dyn VotingRule, cfg: &SeparatorConfig) -> Result<(SolveAnswer, SeparatorTrace)> {
    cfg.check()?;
    validate_instance(inst, true).into_result()?;
    let start = Instant::now();
    let mut trace = SeparatorTrace { root_k: inst.k + 3, gamma: cfg.gamma, ..Default::default() };

    let mut answer = if inst.ell == 0 {
        // any k boxes will do
        SolveAnswer::yes((0..inst.k).collect(), SolveStats::default())
    } else {
        let (ctx, root) = init_state(inst, rule)?;
        trace.boxes = ctx.boxes().to_vec();
        let mut engine = Engine::new(&ctx, cfg);
        let outcome = engine.search(root, 1);
        trace.child_bounds = std::mem::take(&mut engine.child_bounds);
        trace.max_depth = engine.max_depth;
        let stats = SolveStats { states_explored: engine.states, recursion_depth: engine.max_depth, ..Default::default() };
        match outcome.best.filter(|c| c.wins >= inst.ell) {
            Some(c) => {
                let certificate: Vec<usize> = c.s.into_iter().filter(|&b| b < inst.boxes.len()).collect();
                trace.accepted = c.splits;
                SolveAnswer::yes(certificate, stats)
            }
            None if outcome.complete && !engine.timed_out => SolveAnswer::no(stats),
            None => SolveAnswer::unknown(stats),
        }
    };

    if let Some(cert) = &answer.certificate {
        if !is_yes_certificate(inst, cert, rule) {
            return Err(Error::degenerate(format!("separator produced an invalid certificate {cert:?}")));
        }
    }
    if cfg.safe_mode && answer.status != Status::Yes {
        let confirmed = brute_solve_with(inst, rule, &BruteConfig { parallel: false, deadline: cfg.deadline })?;
        answer.status = confirmed.status;
        answer.certificate = confirmed.certificate;
        answer.stats.fallback_used = true;
    }
    answer.stats.elapsed = start.elapsed();
    Ok((answer, trace))
}
