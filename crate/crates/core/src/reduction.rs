//! Grid Tiling and its reduction to gerrymandering with two candidates.
//!
//! Cell `(i, j)` of a `k x k` grid (1-based, `i` along x, `j` along y) is a
//! square of side `L = 10n^2 + 4n`. Each pair `(p, q)` of `S_{i,j}` becomes a
//! box near the cell centre, mirrored in alternate columns and rows so that
//! equal coordinates in neighbouring cells sit at equal distance from the
//! shared border. Four blue groups of weight `5^idx` sit just inside the
//! middle of each border and a red group of weight `4 * 5^idx + 1` sits in
//! the centre, where `idx = (i-1)k + (j-1)`.

use std::collections::BTreeMap;

use crate::geometry::sq_dist;
use crate::model::{Candidate, Instance, Point, Ranking, Voter};
use crate::{Error, Result};

/// A Grid Tiling instance. `sets` is row-major: `S_{i,j}` is
/// `sets[(i-1) * k + (j-1)]`, with 1-based pairs in `[n] x [n]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridTilingInstance {
    pub k: usize,
    pub n: usize,
    pub sets: Vec<Vec<(usize, usize)>>,
}

impl GridTilingInstance {
    /// Validates the shape and sorts and deduplicates every set.
    pub fn new(k: usize, n: usize, mut sets: Vec<Vec<(usize, usize)>>) -> Result<Self> {
        if k == 0 || n == 0 {
            return Err(Error::invalid("grid tiling needs k >= 1 and n >= 1"));
        }
        if sets.len() != k * k {
            return Err(Error::invalid(format!("expected {} sets, got {}", k * k, sets.len())));
        }
        for (idx, set) in sets.iter_mut().enumerate() {
            set.sort_unstable();
            set.dedup();
            if set.is_empty() {
                return Err(Error::invalid(format!("set {idx} is empty")));
            }
            if let Some(&(p, q)) = set.iter().find(|&&(p, q)| p == 0 || q == 0 || p > n || q > n) {
                return Err(Error::invalid(format!("pair ({p}, {q}) outside [{n}]x[{n}]")));
            }
        }
        Ok(GridTilingInstance { k, n, sets })
    }

    /// Every set equal to `[n] x [n]`.
    pub fn full(k: usize, n: usize) -> Result<Self> {
        let all: Vec<_> = (1..=n).flat_map(|p| (1..=n).map(move |q| (p, q))).collect();
        Self::new(k, n, vec![all; k * k])
    }

    /// `S_{i,j}`, 1-based.
    pub fn set(&self, i: usize, j: usize) -> &[(usize, usize)] {
        &self.sets[(i - 1) * self.k + (j - 1)]
    }

    /// The Grid Tiling example with `k = 2`, `n = 3` drawn in the hardness
    /// figure of the original construction.
    pub fn figure_example() -> Self {
        Self::new(
            2,
            3,
            vec![
                vec![(1, 1), (2, 2), (3, 3)],
                vec![(1, 3), (2, 1), (2, 3), (3, 2)],
                vec![(1, 2), (2, 1), (3, 2)],
                vec![(1, 2), (3, 1)],
            ],
        )
        .expect("well-formed")
    }
}

/// One pair per cell, row-major like [`GridTilingInstance::sets`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridTilingSolution {
    pub selection: Vec<(usize, usize)>,
}

impl GridTilingSolution {
    pub fn get(&self, k: usize, i: usize, j: usize) -> (usize, usize) {
        self.selection[(i - 1) * k + (j - 1)]
    }

    /// Membership in the sets plus the row and column agreement constraints.
    pub fn is_valid_for(&self, gt: &GridTilingInstance) -> bool {
        let k = gt.k;
        if self.selection.len() != k * k {
            return false;
        }
        for i in 1..=k {
            for j in 1..=k {
                let (p, q) = self.get(k, i, j);
                if !gt.set(i, j).contains(&(p, q)) {
                    return false;
                }
                if i < k && self.get(k, i + 1, j).0 != p {
                    return false;
                }
                if j < k && self.get(k, i, j + 1).1 != q {
                    return false;
                }
            }
        }
        true
    }
}

/// Backtracking search in row-major cell order over sorted sets; returns the
/// lexicographically first solution.
pub fn gt_brute_solve(gt: &GridTilingInstance) -> Option<GridTilingSolution> {
    fn go(gt: &GridTilingInstance, cell: usize, chosen: &mut Vec<(usize, usize)>) -> bool {
        let k = gt.k;
        if cell == k * k {
            return true;
        }
        let (i, j) = (cell / k + 1, cell % k + 1);
        for &(p, q) in gt.set(i, j) {
            // s_{i-1,j} fixes p, s_{i,j-1} fixes q
            if i > 1 && chosen[cell - k].0 != p {
                continue;
            }
            if j > 1 && chosen[cell - 1].1 != q {
                continue;
            }
            chosen.push((p, q));
            if go(gt, cell + 1, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    let mut chosen = Vec::with_capacity(gt.k * gt.k);
    go(gt, 0, &mut chosen).then_some(GridTilingSolution { selection: chosen })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub enum GroupKind {
    Red,
    Left,
    Up,
    Right,
    Down,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VoterGroup {
    pub kind: GroupKind,
    /// Index into the reduced instance's voters.
    pub voter: usize,
    pub position: Point,
    pub multiplicity: u64,
    pub candidate: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellGroups {
    pub cell: (usize, usize),
    /// Red, left, up, right, down.
    pub groups: [VoterGroup; 5],
}

impl CellGroups {
    pub fn red_minus_blue(&self) -> i128 {
        self.groups
            .iter()
            .map(|g| if g.kind == GroupKind::Red { g.multiplicity as i128 } else { -(g.multiplicity as i128) })
            .sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionMap {
    pub k: usize,
    pub n: usize,
    /// `(i, j, p, q)` to box index.
    pub box_of_pair: BTreeMap<(usize, usize, usize, usize), usize>,
    /// Inverse of `box_of_pair`.
    pub pair_of_box: Vec<(usize, usize, usize, usize)>,
    pub voter_groups: Vec<CellGroups>,
}

#[derive(Debug, Clone, Default)]
pub struct ReduceOptions {
    /// Extra candidates appended last to every ranking, to show hardness for
    /// more than two candidates.
    pub dummy_candidates: usize,
}

pub const RED: usize = 0;
pub const BLUE: usize = 1;

/// Integer geometry of the construction.
struct Layout {
    n: i64,
}

impl Layout {
    fn side(&self) -> i64 {
        10 * self.n * self.n + 4 * self.n
    }

    fn offset(&self) -> i64 {
        5 * self.n * self.n
    }

    fn centre(&self) -> i64 {
        5 * self.n * self.n + 2 * self.n
    }

    /// One box coordinate for index `c` (p or q) in grid line `line` (i or j).
    fn box_coord(&self, line: usize, c: usize) -> i64 {
        let base = self.side() * (line as i64 - 1) + self.offset();
        if line.is_multiple_of(2) {
            base + 4 * c as i64
        } else {
            base + 4 * (self.n - c as i64)
        }
    }

    fn box_point(&self, i: usize, j: usize, p: usize, q: usize) -> Point {
        Point::from_ints(self.box_coord(i, p), self.box_coord(j, q))
    }

    fn group_point(&self, kind: GroupKind, i: usize, j: usize) -> Point {
        let l = self.side();
        let (x0, y0) = (l * (i as i64 - 1), l * (j as i64 - 1));
        let c = self.centre();
        let (x, y) = match kind {
            GroupKind::Red => (x0 + c, y0 + c),
            GroupKind::Left => (x0 + 1, y0 + c),
            GroupKind::Up => (x0 + c, y0 + 1),
            GroupKind::Right => (l * i as i64 - 1, y0 + c),
            GroupKind::Down => (x0 + c, l * j as i64 - 1),
        };
        Point::from_ints(x, y)
    }
}

fn blue_weight(k: usize, i: usize, j: usize) -> Result<u64> {
    let idx = ((i - 1) * k + (j - 1)) as u32;
    5u64.checked_pow(idx)
        .filter(|w| w.checked_mul(8).is_some())
        .ok_or_else(|| Error::invalid(format!("voter multiplicity 5^{idx} overflows 64 bits; k = {k} is too large")))
}

/// Builds the gerrymandering instance `(C, V, B, k^2, k^2, red)`.
pub fn reduce(gt: &GridTilingInstance) -> Result<(Instance, ReductionMap)> {
    reduce_with(gt, &ReduceOptions::default())
}

pub fn reduce_with(gt: &GridTilingInstance, opts: &ReduceOptions) -> Result<(Instance, ReductionMap)> {
    let k = gt.k;
    let layout = Layout { n: gt.n as i64 };
    let mut candidates = vec![Candidate { id: "red".into() }, Candidate { id: "blue".into() }];
    candidates.extend((1..=opts.dummy_candidates).map(|d| Candidate { id: format!("dummy{d}") }));
    let dummies: Vec<usize> = (2..candidates.len()).collect();
    let ranking = |first: usize, second: usize| {
        let mut order = vec![first, second];
        order.extend(&dummies);
        Ranking(order)
    };

    let mut boxes = Vec::new();
    let mut box_of_pair = BTreeMap::new();
    let mut pair_of_box = Vec::new();
    let mut voters = Vec::new();
    let mut voter_groups = Vec::new();
    for i in 1..=k {
        for j in 1..=k {
            for &(p, q) in gt.set(i, j) {
                box_of_pair.insert((i, j, p, q), boxes.len());
                pair_of_box.push((i, j, p, q));
                boxes.push(layout.box_point(i, j, p, q));
            }
            let blue = blue_weight(k, i, j)?;
            let groups = [GroupKind::Red, GroupKind::Left, GroupKind::Up, GroupKind::Right, GroupKind::Down].map(|kind| {
                let (multiplicity, candidate) = if kind == GroupKind::Red { (4 * blue + 1, RED) } else { (blue, BLUE) };
                let position = layout.group_point(kind, i, j);
                let other = if candidate == RED { BLUE } else { RED };
                voters.push(Voter::new(position.clone(), ranking(candidate, other)).with_multiplicity(multiplicity));
                VoterGroup { kind, voter: voters.len() - 1, position, multiplicity, candidate }
            });
            voter_groups.push(CellGroups { cell: (i, j), groups });
        }
    }

    let inst = Instance { candidates, voters, boxes, k: k * k, ell: k * k, target: RED };
    Ok((inst, ReductionMap { k, n: gt.n, box_of_pair, pair_of_box, voter_groups }))
}

/// Reads a Grid Tiling selection back from a box subset with exactly one box
/// per cell.
pub fn lift_solution(map: &ReductionMap, chosen: &[usize]) -> Option<GridTilingSolution> {
    let k = map.k;
    let mut selection: Vec<Option<(usize, usize)>> = vec![None; k * k];
    for &b in chosen {
        let &(i, j, p, q) = map.pair_of_box.get(b)?;
        let slot = &mut selection[(i - 1) * k + (j - 1)];
        if slot.is_some() {
            return None;
        }
        *slot = Some((p, q));
    }
    selection.into_iter().collect::<Option<Vec<_>>>().map(|selection| GridTilingSolution { selection })
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct ClaimViolation {
    /// 1 for horizontal neighbours (first coordinates), 2 for vertical ones.
    pub claim: u8,
    pub cells: [(usize, usize); 2],
    pub pairs: [(usize, usize); 2],
    pub group: GroupKind,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, serde::Serialize)]
pub struct ClaimReport {
    /// Number of (box pair, border group) comparisons made.
    pub checked: usize,
    pub violations: Vec<ClaimViolation>,
}

/// Checks the border-group distance claims for every pair of neighbouring
/// cells and every choice of one box in each.
///
/// Horizontally, with `b` from `S_{i,j}` and `b'` from `S_{i+1,j}` and `i`
/// odd: the right group of `(i, j)` is strictly closer to `b` iff `p <= p'`,
/// and the left group of `(i+1, j)` is strictly closer to `b'` iff `p >= p'`.
/// For even `i` the small grids are mirrored the other way round and both
/// inequalities flip. Either way both groups stay with their own box exactly
/// when `p = p'`, and otherwise exactly one of them defects. Vertically the
/// same holds with the down/up groups, `j` and `q`.
pub fn verify_claims(gt: &GridTilingInstance) -> ClaimReport {
    let k = gt.k;
    let layout = Layout { n: gt.n as i64 };
    let mut report = ClaimReport::default();
    let mut check =
        |claim: u8, a: (usize, usize), b: (usize, usize), coord: fn((usize, usize)) -> usize, near: GroupKind, far: GroupKind| {
            let line = if claim == 1 { a.0 } else { a.1 };
            let near_voter = layout.group_point(near, a.0, a.1);
            let far_voter = layout.group_point(far, b.0, b.1);
            for &pa in gt.set(a.0, a.1) {
                let box_a = layout.box_point(a.0, a.1, pa.0, pa.1);
                for &pb in gt.set(b.0, b.1) {
                    let box_b = layout.box_point(b.0, b.1, pb.0, pb.1);
                    let (ca, cb) = if !line.is_multiple_of(2) { (coord(pa), coord(pb)) } else { (coord(pb), coord(pa)) };
                    let tests = [
                        (near, sq_dist(&near_voter, &box_a) < sq_dist(&near_voter, &box_b), ca <= cb),
                        (far, sq_dist(&far_voter, &box_b) < sq_dist(&far_voter, &box_a), ca >= cb),
                    ];
                    for (group, own_closer, expected) in tests {
                        report.checked += 1;
                        if own_closer != expected {
                            report.violations.push(ClaimViolation {
                                claim,
                                cells: [a, b],
                                pairs: [pa, pb],
                                group,
                                detail: format!("own box strictly closer: {own_closer}, expected {expected}"),
                            });
                        }
                    }
                }
            }
        };
    for i in 1..=k {
        for j in 1..=k {
            if i < k {
                check(1, (i, j), (i + 1, j), |pq| pq.0, GroupKind::Right, GroupKind::Left);
            }
            if j < k {
                check(2, (i, j), (i, j + 1), |pq| pq.1, GroupKind::Down, GroupKind::Up);
            }
        }
    }
    report
}
