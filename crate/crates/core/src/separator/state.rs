//! Shared context and recursion states.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_traits::{Signed, Zero};

use crate::election::RankedElection;
use crate::geometry::{
    build_voronoi, circumcenter, incircle, is_simple_polygon, locate_unchecked, orientation, reflect, sq_dist, EdgeEnd, Location,
    Segment, Side,
};
use crate::model::{rational, Instance, Point, Ranking, Rational, Voter, VotingRule};
use crate::{Error, Result};

/// Largest number of boxes (including the three auxiliary ones) the engine
/// handles; box sets are stored as bit masks.
pub const MAX_BOXES: usize = 64;

pub(crate) fn bit(b: usize) -> u64 {
    1u64 << b
}

pub(crate) fn mask_of(boxes: &[usize]) -> u64 {
    boxes.iter().fold(0, |m, &b| m | bit(b))
}

/// Circumcircle data for a triple of boxes.
#[derive(Debug, Clone)]
pub(crate) struct Circle {
    pub center: Point,
    /// Boxes strictly inside the circumcircle.
    pub inside: u64,
}

/// Everything fixed for one run: all boxes (the instance's followed by the
/// three auxiliary ones), the voters, distance ranks and every circumcircle.
pub struct Context<'a> {
    pub(crate) boxes: Vec<Point>,
    pub(crate) voters: Vec<Voter>,
    pub(crate) original_boxes: usize,
    pub(crate) election: RankedElection,
    pub(crate) rule: &'a dyn VotingRule,
    pub(crate) target: usize,
    circles: HashMap<[usize; 3], Circle>,
    /// For each unordered pair, the third boxes whose triple has a circumcenter.
    thirds: HashMap<(usize, usize), Vec<usize>>,
}

fn sorted3(a: usize, b: usize, c: usize) -> [usize; 3] {
    let mut t = [a, b, c];
    t.sort_unstable();
    t
}

impl<'a> Context<'a> {
    fn new(boxes: Vec<Point>, voters: Vec<Voter>, original_boxes: usize, rule: &'a dyn VotingRule, target: usize) -> Self {
        let n = boxes.len();
        let mut circles = HashMap::new();
        let mut thirds: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    let Some(center) = circumcenter(&boxes[a], &boxes[b], &boxes[c]) else { continue };
                    let r2 = sq_dist(&center, &boxes[a]);
                    let inside = (0..n).filter(|&d| sq_dist(&center, &boxes[d]) < r2).fold(0, |m, d| m | bit(d));
                    circles.insert([a, b, c], Circle { center, inside });
                    thirds.entry((a, b)).or_default().push(c);
                    thirds.entry((a, c)).or_default().push(b);
                    thirds.entry((b, c)).or_default().push(a);
                }
            }
        }
        for list in thirds.values_mut() {
            list.sort_unstable();
        }
        let election = RankedElection::new(&voters, &boxes);
        Context { boxes, voters, original_boxes, election, rule, target, circles, thirds }
    }

    /// All box locations; indices at or past [`Self::original_boxes`] are the
    /// auxiliary boxes.
    pub fn boxes(&self) -> &[Point] {
        &self.boxes
    }

    pub fn original_boxes(&self) -> usize {
        self.original_boxes
    }

    pub fn voters(&self) -> &[Voter] {
        &self.voters
    }

    /// Distinct rankings; vote counts are indexed by position in this list.
    pub fn rankings(&self) -> &[Ranking] {
        &self.election.rankings
    }

    pub fn voter_ranking(&self, v: usize) -> usize {
        self.election.voter_ranking[v]
    }

    pub(crate) fn circle(&self, triple: [usize; 3]) -> Option<&Circle> {
        self.circles.get(&sorted3(triple[0], triple[1], triple[2]))
    }

    pub(crate) fn thirds(&self, a: usize, b: usize) -> &[usize] {
        self.thirds.get(&(a.min(b), a.max(b))).map_or(&[], Vec::as_slice)
    }

    /// Centre of the circle through three boxes, if they are not collinear.
    pub fn circumcenter_of(&self, triple: [usize; 3]) -> Option<&Point> {
        self.circle(triple).map(|c| &c.center)
    }

    /// Whether the target wins a district with these per-ranking counts.
    pub(crate) fn target_wins(&self, counts: &[u64]) -> bool {
        self.rule.winner_counts(&self.election.rankings, counts) == Some(self.target)
    }
}

/// A boundary segment from its anchor box to a Voronoi vertex candidate, the
/// circumcenter of `via` (which contains the anchor). The segment lies in the
/// anchor's cell exactly when no chosen box is strictly inside that circle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundarySegment {
    pub segment: Segment,
    pub anchor: usize,
    pub via: [usize; 3],
}

/// One half-plane-like constraint on the region a state covers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegionConstraint {
    pub polygon: Arc<Vec<Point>>,
    pub side: Side,
}

/// A recursion state `(V, B, l, k, F, v, Delta)`.
///
/// Voters and boxes are indices into the [`Context`]. `fixed_counts[f][s]` is
/// the number of voters with ranking `s` that must vote in fixed box `f`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct State {
    pub voters: Vec<usize>,
    pub boxes: Vec<usize>,
    pub ell: usize,
    pub k: usize,
    pub fixed: Vec<usize>,
    pub fixed_counts: BTreeMap<usize, Vec<u64>>,
    pub boundary: Vec<BoundarySegment>,
    /// The region enclosed by the boundary, as an intersection of polygon
    /// sides. Nooses must stay inside it.
    pub region: Vec<RegionConstraint>,
}

impl State {
    pub fn free_slots(&self) -> usize {
        self.k.saturating_sub(self.fixed.len())
    }

    pub fn fixed_mask(&self) -> u64 {
        mask_of(&self.fixed)
    }

    pub fn box_mask(&self) -> u64 {
        mask_of(&self.boxes)
    }

    /// Whether `segment` stays inside the region (touching its border is
    /// allowed).
    pub fn region_contains(&self, segment: &Segment) -> bool {
        self.region.iter().all(|c| crate::geometry::segment_on_side(&c.polygon, c.side, segment))
    }

    /// Boxes that cannot be chosen because they would push some boundary
    /// segment out of its anchor's cell.
    pub(crate) fn forbidden(&self, ctx: &Context) -> u64 {
        self.boundary.iter().filter_map(|d| ctx.circle(d.via)).fold(0, |m, c| m | c.inside)
    }

    /// Checks `S` (boxes of the state, disjoint from `F`) against the validity definition and
    /// returns the number of districts of `S` the target wins; `None` if `S`
    /// is not a valid completion (ignoring the `ell` threshold).
    pub fn evaluate(&self, ctx: &Context, s: &[usize]) -> Option<usize> {
        let mut chosen: Vec<usize> = s.to_vec();
        chosen.extend(&self.fixed);
        if chosen.len() != self.k {
            return None;
        }
        let chosen_mask = mask_of(&chosen);
        if chosen_mask.count_ones() as usize != chosen.len() || chosen_mask & !self.box_mask() != 0 {
            return None;
        }
        if self.boundary.iter().any(|d| ctx.circle(d.via).is_none_or(|c| c.inside & chosen_mask != 0)) {
            return None;
        }
        let tallies = ctx.election.tallies(self.voters.iter().copied(), &chosen)?;
        let zeros = vec![0u64; ctx.rankings().len()];
        for (pos, f) in self.fixed.iter().enumerate() {
            let want = self.fixed_counts.get(f).unwrap_or(&zeros);
            if &tallies[s.len() + pos] != want {
                return None;
            }
        }
        Some(tallies[..s.len()].iter().filter(|c| ctx.target_wins(c)).count())
    }
}

/// Vertices of the auxiliary triangle around the instance. Its centre is
/// moved right by `shift` times the span, since a triangle symmetric about
/// the instance's centre line makes any two mirror-image boxes cocircular
/// with two auxiliary boxes.
fn outer_triangle(points: &[&Point], scale: i64, shift: &Rational) -> [Point; 3] {
    let min_x = points.iter().map(|p| &p.x).min().cloned().unwrap_or_else(|| rational(0, 1));
    let max_x = points.iter().map(|p| &p.x).max().cloned().unwrap_or_else(|| rational(0, 1));
    let min_y = points.iter().map(|p| &p.y).min().cloned().unwrap_or_else(|| rational(0, 1));
    let max_y = points.iter().map(|p| &p.y).max().cloned().unwrap_or_else(|| rational(0, 1));
    let half = rational(1, 2);
    let cy = (&min_y + &max_y) * &half;
    let mut span = (&max_x - &min_x) + (&max_y - &min_y);
    if !span.is_positive() {
        span = rational(1, 1);
    }
    let cx = (&min_x + &max_x) * &half + shift * &span;
    // inradius three times the span; 97/56 stands in for sqrt(3)
    let r = span * rational(3 * scale, 1);
    let s3 = rational(97, 56);
    let two = rational(2, 1);
    [Point::new(&cx - &s3 * &r, &cy - &r), Point::new(&cx + &s3 * &r, &cy - &r), Point::new(cx, cy + two * r)]
}

/// Places the three auxiliary boxes and the initial boundary.
///
/// The triangle is re-verified exactly: it must strictly contain every voter
/// and box, every instance box must be strictly closer to every voter than
/// any auxiliary box, and the boundary hexagon must be simple and strictly
/// contain everything. On failure the triangle is moved or enlarged and
/// rebuilt.
pub fn init_state<'a>(inst: &Instance, rule: &'a dyn VotingRule) -> Result<(Context<'a>, State)> {
    let m = inst.boxes.len();
    if m + 3 > MAX_BOXES {
        return Err(Error::invalid(format!("the separator engine supports at most {} boxes", MAX_BOXES - 3)));
    }
    let points: Vec<&Point> = inst.boxes.iter().chain(inst.voters.iter().map(|v| &v.location)).collect();
    let shifts = [rational(0, 1), rational(1, 7), rational(-2, 11), rational(3, 13)];
    let attempts = [1, 2, 4, 8, 16].into_iter().flat_map(|scale| shifts.iter().map(move |shift| (scale, shift)));
    for (scale, shift) in attempts {
        if let Some((boxes, hexagon, boundary)) = try_frame(inst, &points, scale, shift)? {
            let ctx = Context::new(boxes, inst.voters.clone(), m, rule, inst.target);
            let fixed: Vec<usize> = (m..m + 3).collect();
            let zeros = vec![0u64; ctx.rankings().len()];
            let state = State {
                voters: (0..inst.voters.len()).collect(),
                boxes: (0..m + 3).collect(),
                ell: inst.ell,
                k: inst.k + 3,
                fixed_counts: fixed.iter().map(|&f| (f, zeros.clone())).collect(),
                fixed,
                boundary,
                region: vec![RegionConstraint { polygon: Arc::new(hexagon), side: Side::Inside }],
            };
            return Ok((ctx, state));
        }
    }
    Err(Error::degenerate("could not place an auxiliary triangle around the instance"))
}

type Frame = (Vec<Point>, Vec<Point>, Vec<BoundarySegment>);

fn try_frame(inst: &Instance, points: &[&Point], scale: i64, shift: &Rational) -> Result<Option<Frame>> {
    let m = inst.boxes.len();
    let tri = outer_triangle(points, scale, shift);
    let strictly_inside = |p: &Point| (0..3).all(|i| orientation(&tri[i], &tri[(i + 1) % 3], p).is_positive());
    if !points.iter().all(|p| strictly_inside(p)) {
        return Ok(None);
    }
    // mirror each vertex across the opposite side
    let aux: Vec<Point> = (0..3).map(|i| reflect(&tri[i], &tri[(i + 1) % 3], &tri[(i + 2) % 3])).collect();
    for v in &inst.voters {
        let far = inst.boxes.iter().map(|b| sq_dist(&v.location, b)).max();
        let near_aux = aux.iter().map(|f| sq_dist(&v.location, f)).min().expect("three points");
        if far.is_some_and(|d| d >= near_aux) {
            return Ok(None);
        }
    }

    let mut boxes = inst.boxes.clone();
    boxes.extend(aux);
    let diagram = match build_voronoi(&boxes) {
        Ok(d) => d,
        Err(Error::Degenerate(_)) => return Ok(None),
        Err(e) => return Err(e),
    };
    // between consecutive auxiliary cells, the finite end of their shared edge
    let mut hexagon = Vec::with_capacity(6);
    let mut boundary = Vec::with_capacity(6);
    for i in 0..3 {
        let (f, g) = (m + i, m + (i + 1) % 3);
        let pair = [f.min(g), f.max(g)];
        let shared: Vec<_> = diagram.edges.iter().filter(|e| e.sites == pair).collect();
        let [edge] = shared.as_slice() else { return Ok(None) };
        let finite: Vec<usize> =
            edge.ends.iter().filter_map(|e| if let EdgeEnd::Vertex(v) = e { Some(*v) } else { None }).collect();
        let [vertex] = finite.as_slice() else { return Ok(None) };
        let vertex = &diagram.vertices[*vertex];
        hexagon.push(boxes[f].clone());
        hexagon.push(vertex.location.clone());
        for (a, b, anchor) in [(f, usize::MAX, f), (usize::MAX, g, g)] {
            let pa = if a == usize::MAX { vertex.location.clone() } else { boxes[a].clone() };
            let pb = if b == usize::MAX { vertex.location.clone() } else { boxes[b].clone() };
            let Ok(segment) = Segment::new(pa, pb) else { return Ok(None) };
            boundary.push(BoundarySegment { segment, anchor, via: vertex.sites });
        }
    }
    if !is_simple_polygon(&hexagon) || orientation(&hexagon[0], &hexagon[2], &hexagon[4]).is_negative() {
        return Ok(None);
    }
    if !points.iter().all(|p| locate_unchecked(&hexagon, p) == Location::Inside) {
        return Ok(None);
    }
    // no instance box on the circle through the three auxiliary boxes
    let (a, b, c) = (&boxes[m], &boxes[m + 1], &boxes[m + 2]);
    if boxes[..m].iter().any(|p| incircle(a, b, c, p).is_zero()) {
        return Ok(None);
    }
    Ok(Some((boxes, hexagon, boundary)))
}
