//! Splitting a state along a noose, and the recursive search.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::rc::Rc;
use std::sync::Arc;
use std::time::Instant;

use super::noose::{enumerate_nooses, Noose};
use super::state::{bit, mask_of, BoundarySegment, Context, RegionConstraint, State};
use super::{AcceptedSplit, SeparatorConfig};
use crate::brute::combinations;
use crate::geometry::{locate_unchecked, Location, Side};
use crate::{Error, Result};

/// `ceil(3k / 4)`, the largest `k` a child state may have.
pub fn child_k_bound(k: usize) -> usize {
    (3 * k).div_ceil(4)
}

/// The guessed parameters of the two sides of a split. `v1` and `v2` give the
/// vote counts on every noose box; counts of the other fixed boxes move to the
/// side holding the box.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitGuess {
    pub k1: usize,
    pub k2: usize,
    pub ell1: usize,
    pub ell2: usize,
    pub v1: BTreeMap<usize, Vec<u64>>,
    pub v2: BTreeMap<usize, Vec<u64>>,
}

/// One side of a split before the guessed parameters are filled in.
#[derive(Debug, Clone)]
pub(crate) struct SideTemplate {
    voters: Vec<usize>,
    boxes: Vec<usize>,
    fixed: Vec<usize>,
    transferred: BTreeMap<usize, Vec<u64>>,
    boundary: Vec<BoundarySegment>,
    region: Vec<RegionConstraint>,
}

impl SideTemplate {
    fn instantiate(&self, k: usize, ell: usize, on_noose: &BTreeMap<usize, Vec<u64>>) -> State {
        let mut fixed_counts = self.transferred.clone();
        fixed_counts.extend(on_noose.iter().map(|(&q, c)| (q, c.clone())));
        State {
            voters: self.voters.clone(),
            boxes: self.boxes.clone(),
            ell,
            k,
            fixed: self.fixed.clone(),
            fixed_counts,
            boundary: self.boundary.clone(),
            region: self.region.clone(),
        }
    }

    fn free_boxes(&self) -> usize {
        self.boxes.len() - self.fixed.len()
    }
}

pub(crate) struct SplitGeometry {
    pub sides: [SideTemplate; 2],
    pub on_noose: Vec<usize>,
    /// Noose boxes not fixed before the split.
    pub new_boxes: Vec<usize>,
    pub polygon: Vec<crate::model::Point>,
}

/// Where every voter and every box of the instance lies relative to a noose.
pub(crate) struct Classification {
    voters: Vec<Location>,
    boxes: Vec<Location>,
    polygon: Vec<crate::model::Point>,
}

pub(crate) fn classify(ctx: &Context, noose: &Noose) -> Classification {
    let polygon = noose.polygon(&ctx.boxes);
    let q_mask = noose.box_mask();
    let voters = ctx.voters.iter().map(|v| locate_unchecked(&polygon, &v.location)).collect();
    let boxes = ctx
        .boxes
        .iter()
        .enumerate()
        .map(|(b, p)| if q_mask & bit(b) != 0 { Location::OnBoundary } else { locate_unchecked(&polygon, p) })
        .collect();
    Classification { voters, boxes, polygon }
}

/// Partitions voters and boxes by the noose. Noose boxes go to both sides.
pub(crate) fn split_geometry(ctx: &Context, state: &State, noose: &Noose) -> Result<SplitGeometry> {
    split_classified(ctx, state, noose, &classify(ctx, noose))
}

pub(crate) fn split_classified(ctx: &Context, state: &State, noose: &Noose, class: &Classification) -> Result<SplitGeometry> {
    let polygon = class.polygon.clone();
    let q_mask = noose.box_mask();
    let mut voters: [Vec<usize>; 2] = Default::default();
    for &v in &state.voters {
        match class.voters[v] {
            Location::Inside => voters[0].push(v),
            Location::Outside => voters[1].push(v),
            Location::OnBoundary => return Err(Error::degenerate(format!("voter {v} lies on the noose"))),
        }
    }
    let mut boxes: [Vec<usize>; 2] = Default::default();
    for &b in &state.boxes {
        if q_mask & bit(b) != 0 {
            boxes[0].push(b);
            boxes[1].push(b);
            continue;
        }
        match class.boxes[b] {
            Location::Inside => boxes[0].push(b),
            Location::Outside => boxes[1].push(b),
            Location::OnBoundary => return Err(Error::degenerate(format!("box {b} lies on the noose"))),
        }
    }
    let fixed_mask = state.fixed_mask();
    let noose_segments: Vec<BoundarySegment> =
        noose.segments(&ctx.boxes).into_iter().map(|(segment, anchor, via)| BoundarySegment { segment, anchor, via }).collect();
    let shared = Arc::new(polygon.clone());
    let sides = [0usize, 1].map(|i| {
        let side_mask = mask_of(&boxes[i]);
        let fixed: Vec<usize> =
            state.boxes.iter().copied().filter(|&b| q_mask & bit(b) != 0 || (fixed_mask & side_mask & bit(b) != 0)).collect();
        let fixed_here = mask_of(&fixed);
        let transferred = state
            .fixed_counts
            .iter()
            .filter(|(&f, _)| fixed_here & bit(f) != 0 && q_mask & bit(f) == 0)
            .map(|(&f, c)| (f, c.clone()))
            .collect();
        let mut boundary: Vec<BoundarySegment> =
            state.boundary.iter().filter(|d| fixed_here & bit(d.anchor) != 0).cloned().collect();
        boundary.extend(noose_segments.iter().cloned());
        let mut region = state.region.clone();
        region.push(RegionConstraint { polygon: shared.clone(), side: if i == 0 { Side::Inside } else { Side::Outside } });
        SideTemplate { voters: voters[i].clone(), boxes: boxes[i].clone(), fixed, transferred, boundary, region }
    });
    let new_boxes = noose.boxes.iter().copied().filter(|&q| fixed_mask & bit(q) == 0).collect();
    let mut on_noose = noose.boxes.clone();
    on_noose.sort_unstable();
    Ok(SplitGeometry { sides, on_noose, new_boxes, polygon })
}

/// Number of new noose boxes where the target wins under `v1 + v2`.
fn wins_on_new(ctx: &Context, new_boxes: &[usize], v1: &BTreeMap<usize, Vec<u64>>, v2: &BTreeMap<usize, Vec<u64>>) -> usize {
    new_boxes
        .iter()
        .filter(|q| {
            let counts: Vec<u64> = v1[*q].iter().zip(&v2[*q]).map(|(a, b)| a + b).collect();
            ctx.target_wins(&counts)
        })
        .count()
}

/// Builds the two child states for `guess`.
///
/// Rejects guesses that break the split identities: `k1 + k2 = k + |Q|`
/// (both children fix every noose box, so noose boxes count twice),
/// both at most `ceil(3k/4)`, `l1 + l2 = max(l - w, 0)`, and vote counts on
/// previously fixed noose boxes adding up to the parent's.
pub fn split_state(ctx: &Context, state: &State, noose: &Noose, guess: &SplitGuess) -> Result<(State, State)> {
    let geom = split_geometry(ctx, state, noose)?;
    let bound = child_k_bound(state.k);
    if guess.k1 + guess.k2 != state.k + geom.on_noose.len() || guess.k1 > bound || guess.k2 > bound {
        return Err(Error::invalid(format!(
            "box split {} + {} does not fit k = {} with {} noose boxes (bound {bound})",
            guess.k1,
            guess.k2,
            state.k,
            geom.on_noose.len()
        )));
    }
    let r = ctx.rankings().len();
    for q in &geom.on_noose {
        let (Some(a), Some(b)) = (guess.v1.get(q), guess.v2.get(q)) else {
            return Err(Error::invalid(format!("no vote counts guessed for noose box {q}")));
        };
        if a.len() != r || b.len() != r {
            return Err(Error::invalid("vote count vectors must have one entry per ranking"));
        }
        if let Some(total) = state.fixed_counts.get(q) {
            if a.iter().zip(b).zip(total).any(|((x, y), t)| x + y != *t) {
                return Err(Error::invalid(format!("vote counts on fixed box {q} do not add up")));
            }
        }
    }
    if guess.v1.len() != geom.on_noose.len() || guess.v2.len() != geom.on_noose.len() {
        return Err(Error::invalid("vote counts guessed for boxes off the noose"));
    }
    let w = wins_on_new(ctx, &geom.new_boxes, &guess.v1, &guess.v2);
    if guess.ell1 + guess.ell2 != state.ell.saturating_sub(w) {
        return Err(Error::invalid(format!("win split must add up to {}", state.ell.saturating_sub(w))));
    }
    let [s1, s2] = &geom.sides;
    Ok((s1.instantiate(guess.k1, guess.ell1, &guess.v1), s2.instantiate(guess.k2, guess.ell2, &guess.v2)))
}

/// Removes boxes whose choice would push a boundary segment out of its
/// anchor's cell. `None` when the state is trivially invalid.
pub(crate) fn prune(ctx: &Context, mut state: State) -> Option<State> {
    let forbidden = state.forbidden(ctx);
    if forbidden & state.fixed_mask() != 0 {
        return None;
    }
    state.boxes.retain(|&b| forbidden & bit(b) == 0);
    let free = state.boxes.len() - state.fixed.len();
    let slots = state.k.checked_sub(state.fixed.len())?;
    (slots <= free && state.ell <= slots).then_some(state)
}

/// A valid completion found for a state.
#[derive(Debug, Clone)]
pub(crate) struct Completion {
    pub s: Vec<usize>,
    pub wins: usize,
    pub splits: Vec<AcceptedSplit>,
}

/// Result of searching a state with threshold `ell`: `best` is the best
/// completion seen (it meets the threshold iff the state is valid). When
/// `complete` and the threshold is not met, no completion meets it.
pub(crate) struct Outcome {
    pub best: Option<Completion>,
    pub complete: bool,
}

impl Outcome {
    fn meets(&self, ell: usize) -> bool {
        self.best.as_ref().is_some_and(|c| c.wins >= ell)
    }
}

#[derive(Default)]
struct CacheEntry {
    best: Option<Completion>,
    /// Thresholds at or above this are certainly unreachable.
    no_from: Option<usize>,
    /// Thresholds at or above this were not reached by an incomplete search.
    unknown_from: Option<usize>,
}

type ChildKey = (usize, usize, Vec<(usize, Vec<u64>)>);

/// Everything noose enumeration depends on: voters, boxes, fixed boxes, `k`
/// and the region (by polygon identity).
type NooseKey = (Vec<usize>, Vec<usize>, Vec<usize>, usize, Vec<(usize, Side)>);

fn noose_key(state: &State) -> NooseKey {
    let region = state.region.iter().map(|c| (Arc::as_ptr(&c.polygon) as usize, c.side)).collect();
    (state.voters.clone(), state.boxes.clone(), state.fixed.clone(), state.k, region)
}

pub(crate) struct Engine<'c, 'a> {
    pub ctx: &'c Context<'a>,
    pub cfg: &'c SeparatorConfig,
    pub states: u64,
    pub max_depth: usize,
    pub child_bounds: BTreeSet<(usize, usize)>,
    pub timed_out: bool,
    /// Nooses per state geometry. Each entry keeps its region alive so that
    /// polygon addresses in keys are never reused.
    nooses: HashMap<NooseKey, (Vec<RegionConstraint>, Rc<Vec<Noose>>)>,
    classes: HashMap<Noose, Rc<Classification>>,
}

/// Achievable subset sums of `values`, ascending.
fn subset_sums(values: &[u64]) -> Vec<u64> {
    let mut sums = BTreeSet::from([0u64]);
    for &v in values {
        let shifted: Vec<u64> = sums.iter().map(|s| s + v).collect();
        sums.extend(shifted);
    }
    sums.into_iter().collect()
}

impl<'c, 'a> Engine<'c, 'a> {
    pub fn new(ctx: &'c Context<'a>, cfg: &'c SeparatorConfig) -> Self {
        Engine {
            ctx,
            cfg,
            states: 0,
            max_depth: 0,
            child_bounds: BTreeSet::new(),
            timed_out: false,
            nooses: HashMap::new(),
            classes: HashMap::new(),
        }
    }

    fn out_of_time(&mut self) -> bool {
        if self.cfg.deadline.is_some_and(|d| Instant::now() >= d) {
            self.timed_out = true;
        }
        self.timed_out
    }

    /// Searches `state` at recursion depth `depth` (the root is depth 1).
    pub fn search(&mut self, state: State, depth: usize) -> Outcome {
        self.states += 1;
        self.max_depth = self.max_depth.max(depth);
        if self.out_of_time() {
            return Outcome { best: None, complete: false };
        }
        let Some(state) = prune(self.ctx, state) else { return Outcome { best: None, complete: true } };
        if state.free_slots() <= self.cfg.gamma {
            self.base_case(&state)
        } else {
            self.recurse(&state, depth)
        }
    }

    /// Tries every `S` of size `k - |F|` from `B \ F`; keeps the best.
    fn base_case(&mut self, state: &State) -> Outcome {
        let fixed = state.fixed_mask();
        let free: Vec<usize> = state.boxes.iter().copied().filter(|&b| fixed & bit(b) == 0).collect();
        let slots = state.free_slots();
        let mut best: Option<Completion> = None;
        for pick in combinations(free.len(), slots) {
            let s: Vec<usize> = pick.iter().map(|&i| free[i]).collect();
            let Some(wins) = state.evaluate(self.ctx, &s) else { continue };
            if best.as_ref().is_none_or(|b| wins > b.wins) {
                best = Some(Completion { s, wins, splits: Vec::new() });
                if wins == slots {
                    break;
                }
            }
        }
        Outcome { best, complete: true }
    }

    fn level_is_complete(&self, k: usize) -> bool {
        self.cfg.assume_complete_alpha.is_some_and(|alpha| self.cfg.max_noose_boxes as f64 >= (alpha * (k as f64).sqrt()).ceil())
    }

    fn recurse(&mut self, state: &State, depth: usize) -> Outcome {
        let mut complete = self.level_is_complete(state.k);
        let (ctx, max) = (self.ctx, self.cfg.max_noose_boxes);
        let nooses = self
            .nooses
            .entry(noose_key(state))
            .or_insert_with(|| (state.region.clone(), Rc::new(enumerate_nooses(ctx, state, max))))
            .1
            .clone();
        for noose in nooses.iter() {
            if self.out_of_time() {
                return Outcome { best: None, complete: false };
            }
            let class = self.classes.entry(noose.clone()).or_insert_with(|| Rc::new(classify(ctx, noose))).clone();
            let Ok(geom) = split_classified(ctx, state, noose, &class) else { continue };
            let (found, noose_complete) = self.try_noose(state, depth, noose, geom);
            complete &= noose_complete;
            if found.is_some() {
                return Outcome { best: found, complete };
            }
        }
        Outcome { best: None, complete }
    }

    /// Per side, noose box and ranking: the vote counts that some subset of
    /// the candidate voters can produce. A voter is a candidate for `q` when
    /// `q` is its unique nearest box among the side's fixed boxes; it is
    /// forced when `q` is its nearest box among all of the side's boxes,
    /// since then it votes at `q` whatever else is chosen.
    fn vote_options(&self, side: &SideTemplate, on_noose: &[usize]) -> BTreeMap<usize, Vec<Vec<u64>>> {
        let r = self.ctx.rankings().len();
        let mut pools: BTreeMap<usize, Vec<(u64, Vec<u64>)>> = on_noose.iter().map(|&q| (q, vec![(0, Vec::new()); r])).collect();
        let election = &self.ctx.election;
        for &v in &side.voters {
            let Some(pos) = election.nearest(v, &side.fixed) else { continue };
            let q = side.fixed[pos];
            if let Some(pool) = pools.get_mut(&q) {
                let (forced, optional) = &mut pool[self.ctx.voter_ranking(v)];
                let m = election.multiplicity[v];
                if election.nearest(v, &side.boxes).map(|p| side.boxes[p]) == Some(q) {
                    *forced += m;
                } else {
                    optional.push(m);
                }
            }
        }
        pools
            .into_iter()
            .map(|(q, per)| (q, per.iter().map(|(f, p)| subset_sums(p).into_iter().map(|s| s + f).collect()).collect()))
            .collect()
    }

    fn try_noose(&mut self, state: &State, depth: usize, noose: &Noose, geom: SplitGeometry) -> (Option<Completion>, bool) {
        let ctx = self.ctx;
        let SplitGeometry { sides, on_noose, new_boxes, polygon } = geom;
        // prune each side once; an infeasible side rules out the noose
        let mut pruned = Vec::with_capacity(2);
        for side in sides {
            let probe = side.instantiate(side.fixed.len(), 0, &BTreeMap::new());
            let Some(p) = prune(ctx, probe) else { return (None, true) };
            pruned.push(SideTemplate { boxes: p.boxes, ..side });
        }
        let sides = [pruned.remove(0), pruned.remove(0)];

        let bound = child_k_bound(state.k);
        let total = state.k + on_noose.len();
        let mut splits: Vec<(usize, usize)> = (0..=total)
            .map(|k1| (k1, total - k1))
            .filter(|&(k1, k2)| {
                [(k1, &sides[0]), (k2, &sides[1])]
                    .iter()
                    .all(|(ki, s)| *ki <= bound && *ki >= s.fixed.len() && ki - s.fixed.len() <= s.free_boxes())
            })
            .collect();
        splits.sort_by_key(|&(k1, k2)| (k1.abs_diff(k2), k1));
        if splits.is_empty() {
            return (None, true);
        }

        // per (noose box, ranking): admissible (v1, v2) pairs
        let options = [self.vote_options(&sides[0], &on_noose), self.vote_options(&sides[1], &on_noose)];
        let r = ctx.rankings().len();
        let mut slots: Vec<VoteSlot> = Vec::new();
        for &q in &on_noose {
            for s in 0..r {
                let (a, b) = (&options[0][&q][s], &options[1][&q][s]);
                let pairs: Vec<(u64, u64)> = match state.fixed_counts.get(&q) {
                    Some(total) => {
                        a.iter().filter(|&&x| x <= total[s] && b.contains(&(total[s] - x))).map(|&x| (x, total[s] - x)).collect()
                    }
                    None => a.iter().flat_map(|&x| b.iter().map(move |&y| (x, y))).collect(),
                };
                if pairs.is_empty() {
                    return (None, true);
                }
                slots.push((q, s, pairs));
            }
        }

        let mut complete = true;
        let mut cache: HashMap<ChildKey, CacheEntry> = HashMap::new();
        for &(k1, k2) in &splits {
            let caps = [k1 - sides[0].fixed.len(), k2 - sides[1].fixed.len()];
            let mut odometer = vec![0usize; slots.len()];
            loop {
                let mut v: [BTreeMap<usize, Vec<u64>>; 2] =
                    [0, 1].map(|_| on_noose.iter().map(|&q| (q, vec![0u64; r])).collect());
                for (slot, &i) in slots.iter().zip(&odometer) {
                    let (x, y) = slot.2[i];
                    v[0].get_mut(&slot.0).expect("noose box")[slot.1] = x;
                    v[1].get_mut(&slot.0).expect("noose box")[slot.1] = y;
                }
                let need = state.ell.saturating_sub(wins_on_new(ctx, &new_boxes, &v[0], &v[1]));
                if need <= caps[0] + caps[1] {
                    let ks = [k1, k2];
                    match self.combine(state, depth, &sides, ks, caps, &v, need, &mut cache) {
                        Combined::Found(c1, c2) => {
                            if let Some(found) = self.compose(state, depth, noose, &polygon, &sides, ks, &new_boxes, c1, c2) {
                                return (Some(found), complete);
                            }
                        }
                        Combined::Failed { complete: c } => complete &= c,
                    }
                    if self.timed_out {
                        return (None, false);
                    }
                }
                if !advance(&mut odometer, &slots) {
                    break;
                }
            }
        }
        (None, complete)
    }

    /// Finds `l1 + l2 >= need` with both children valid, trying the most
    /// demanding `l1` first.
    #[allow(clippy::too_many_arguments)]
    fn combine(
        &mut self,
        state: &State,
        depth: usize,
        sides: &[SideTemplate; 2],
        ks: [usize; 2],
        caps: [usize; 2],
        v: &[BTreeMap<usize, Vec<u64>>; 2],
        need: usize,
        cache: &mut HashMap<ChildKey, CacheEntry>,
    ) -> Combined {
        let mut complete = true;
        let lowest = need.saturating_sub(caps[1]);
        for ell1 in (lowest..=need.min(caps[0])).rev() {
            let (first, c) = self.query(state, depth, sides, 0, ks[0], &v[0], ell1, cache);
            complete &= c;
            let Some(first) = first else { continue };
            let ell2 = need.saturating_sub(first.wins);
            let (second, c) = self.query(state, depth, sides, 1, ks[1], &v[1], ell2, cache);
            complete &= c;
            match second {
                Some(second) => return Combined::Found(first, second),
                // a smaller l1 cannot lower what the second side needs
                None => break,
            }
        }
        Combined::Failed { complete }
    }

    /// Child search through the per-noose cache; returns a completion that
    /// meets `ell` if one was found.
    #[allow(clippy::too_many_arguments)]
    fn query(
        &mut self,
        state: &State,
        depth: usize,
        sides: &[SideTemplate; 2],
        side: usize,
        k: usize,
        v: &BTreeMap<usize, Vec<u64>>,
        ell: usize,
        cache: &mut HashMap<ChildKey, CacheEntry>,
    ) -> (Option<Completion>, bool) {
        let key: ChildKey = (side, k, v.iter().map(|(&q, c)| (q, c.clone())).collect());
        let entry = cache.entry(key).or_default();
        if let Some(best) = entry.best.as_ref().filter(|b| b.wins >= ell) {
            return (Some(best.clone()), true);
        }
        if entry.no_from.is_some_and(|n| n <= ell) {
            return (None, true);
        }
        if entry.unknown_from.is_some_and(|n| n <= ell) {
            return (None, false);
        }
        self.child_bounds.insert((state.k, k));
        let child = sides[side].instantiate(k, ell, v);
        let outcome = self.search(child, depth + 1);
        let entry = cache.get_mut(&(side, k, v.iter().map(|(&q, c)| (q, c.clone())).collect())).expect("inserted");
        let met = outcome.meets(ell);
        if let Some(b) = outcome.best {
            if entry.best.as_ref().is_none_or(|old| b.wins > old.wins) {
                entry.best = Some(b);
            }
        }
        if met {
            return (entry.best.clone(), true);
        }
        if outcome.complete {
            entry.no_from = Some(entry.no_from.map_or(ell, |n| n.min(ell)));
        } else {
            entry.unknown_from = Some(entry.unknown_from.map_or(ell, |n| n.min(ell)));
        }
        (None, outcome.complete)
    }

    /// `S = S1 + S2 + (Q \ F)`, re-checked against the parent's validity.
    #[allow(clippy::too_many_arguments)]
    fn compose(
        &self,
        state: &State,
        depth: usize,
        noose: &Noose,
        polygon: &[crate::model::Point],
        sides: &[SideTemplate; 2],
        ks: [usize; 2],
        new_boxes: &[usize],
        c1: Completion,
        c2: Completion,
    ) -> Option<Completion> {
        let mut s: Vec<usize> = c1.s.iter().chain(&c2.s).chain(new_boxes).copied().collect();
        s.sort_unstable();
        let wins = state.evaluate(self.ctx, &s)?;
        if wins < state.ell {
            return None;
        }
        let mut chosen = s.clone();
        chosen.extend(&state.fixed);
        chosen.sort_unstable();
        let side_boxes = |c: &Completion, side: &SideTemplate| {
            let mut v: Vec<usize> = c.s.iter().chain(&side.fixed).copied().collect();
            v.sort_unstable();
            v
        };
        let accepted = AcceptedSplit {
            depth,
            k: state.k,
            k1: ks[0],
            k2: ks[1],
            noose: noose.clone(),
            polygon: polygon.to_vec(),
            region: state.region.clone(),
            voters: [sides[0].voters.clone(), sides[1].voters.clone()],
            chosen,
            sides: [side_boxes(&c1, &sides[0]), side_boxes(&c2, &sides[1])],
        };
        let mut splits = vec![accepted];
        splits.extend(c1.splits);
        splits.extend(c2.splits);
        Some(Completion { s, wins, splits })
    }
}

enum Combined {
    Found(Completion, Completion),
    Failed { complete: bool },
}

/// A noose box, a ranking, and the admissible vote counts on each side.
type VoteSlot = (usize, usize, Vec<(u64, u64)>);

fn advance(odometer: &mut [usize], slots: &[VoteSlot]) -> bool {
    for (i, slot) in odometer.iter_mut().zip(slots).rev() {
        *i += 1;
        if *i < slot.2.len() {
            return true;
        }
        *i = 0;
    }
    false
}
