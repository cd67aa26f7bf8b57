//! Candidate separators: closed polygons alternating between boxes and
//! Voronoi vertex candidates.

use std::collections::HashMap;

use super::state::{bit, mask_of, Context, State};
use crate::geometry::{is_simple_polygon, orient, segments_intersect, Segment};
use crate::model::Point;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NooseVertex {
    pub location: Point,
    /// The two boxes the vertex sits between, plus a third box of the state.
    pub triple: [usize; 3],
}

/// `boxes[i] -> vertices[i] -> boxes[i + 1]`, cyclically. Stored in canonical
/// form: `boxes[0]` is the smallest index and `boxes[1] < boxes[t - 1]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Noose {
    pub boxes: Vec<usize>,
    pub vertices: Vec<NooseVertex>,
}

impl Noose {
    pub fn len(&self) -> usize {
        self.boxes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boxes.is_empty()
    }

    pub fn box_mask(&self) -> u64 {
        mask_of(&self.boxes)
    }

    /// The closed polygon `b0, u0, b1, u1, ...`.
    pub fn polygon(&self, boxes: &[Point]) -> Vec<Point> {
        self.boxes.iter().zip(&self.vertices).flat_map(|(&b, u)| [boxes[b].clone(), u.location.clone()]).collect()
    }

    /// The `2t` segments with the box each is attached to and the triple of
    /// its vertex: `b_i -> u_i` belongs to `b_i`, `u_i -> b_{i+1}` to `b_{i+1}`.
    pub fn segments(&self, boxes: &[Point]) -> Vec<(Segment, usize, [usize; 3])> {
        let t = self.len();
        let mut out = Vec::with_capacity(2 * t);
        for i in 0..t {
            let (b, next, u) = (self.boxes[i], self.boxes[(i + 1) % t], &self.vertices[i]);
            if let Ok(s) = Segment::new(boxes[b].clone(), u.location.clone()) {
                out.push((s, b, u.triple));
            }
            if let Ok(s) = Segment::new(u.location.clone(), boxes[next].clone()) {
                out.push((s, next, u.triple));
            }
        }
        out
    }

    /// Alternation, closure, vertex exactness and simplicity.
    pub fn is_well_formed(&self, ctx: &Context) -> bool {
        let t = self.len();
        if t < 3 || self.vertices.len() != t {
            return false;
        }
        let distinct = self.box_mask().count_ones() as usize == t;
        let vertices_ok = (0..t).all(|i| {
            let u = &self.vertices[i];
            let (b, next) = (self.boxes[i], self.boxes[(i + 1) % t]);
            u.triple.contains(&b)
                && u.triple.contains(&next)
                && ctx.circumcenter_of(u.triple) == Some(&u.location)
                && u.location != ctx.boxes[b]
                && u.location != ctx.boxes[next]
        });
        distinct && vertices_ok && is_simple_polygon(&self.polygon(&ctx.boxes))
    }
}

/// The declarative admission test for a noose in `state`; enumeration yields
/// exactly the canonical nooses passing it.
///
/// Beyond being well formed, all boxes it names (its own boxes, the third
/// boxes of its vertices and `F`) fit within `k` and avoid every vertex's
/// circumcircle, so that all of them can be Voronoi vertices of one solution;
/// its segments stay inside the state's region; and no voter of the state nor
/// any box off the noose lies on it.
pub fn noose_admissible(ctx: &Context, state: &State, noose: &Noose) -> bool {
    let t = noose.len();
    let boxes = state.box_mask();
    if !noose.is_well_formed(ctx) || noose.box_mask() & !boxes != 0 {
        return false;
    }
    let canonical = noose.boxes[1..].iter().all(|&b| b > noose.boxes[0]) && noose.boxes[1] < noose.boxes[t - 1];
    let mut named = state.fixed_mask() | noose.box_mask();
    for u in &noose.vertices {
        named |= mask_of(&u.triple);
    }
    if !canonical || named & !boxes != 0 || named.count_ones() as usize > state.k {
        return false;
    }
    if noose.vertices.iter().any(|u| ctx.circle(u.triple).is_none_or(|c| c.inside & named != 0)) {
        return false;
    }
    let segments = noose.segments(&ctx.boxes);
    segments.len() == 2 * t
        && segments.iter().all(|(s, anchor, _)| state.region_contains(s) && segment_clear(ctx, state, s, *anchor))
}

/// No voter of the state and no box other than its anchor lies on `segment`.
fn segment_clear(ctx: &Context, state: &State, segment: &Segment, anchor: usize) -> bool {
    state.voters.iter().all(|&v| !segment.contains(&ctx.voters[v].location))
        && state.boxes.iter().all(|&b| b == anchor || !segment.contains(&ctx.boxes[b]))
}

struct Search<'c, 's> {
    ctx: &'c Context<'c>,
    state: &'s State,
    state_mask: u64,
    /// Region and clearance test per (box, vertex triple).
    segment_ok: HashMap<(usize, [usize; 3]), bool>,
    /// Whether two noose segments conflict, keyed by their identities and
    /// whether they are consecutive.
    conflicts: HashMap<(SegmentId, SegmentId, bool), bool>,
    out: Vec<Noose>,
}

/// A noose segment is fixed by its box and the triple of its vertex.
type SegmentId = (usize, [usize; 3]);

impl Search<'_, '_> {
    fn segment_ok(&mut self, b: usize, triple: [usize; 3]) -> bool {
        let (ctx, state) = (self.ctx, self.state);
        let mut triple = triple;
        triple.sort_unstable();
        *self.segment_ok.entry((b, triple)).or_insert_with(|| {
            let Some(center) = ctx.circumcenter_of(triple) else { return false };
            Segment::new(ctx.boxes[b].clone(), center.clone())
                .is_ok_and(|s| state.region_contains(&s) && segment_clear(ctx, state, &s, b))
        })
    }

    /// Tries `b_i -> u -> next` with `u` the centre of `(b_i, next, c)`.
    /// Returns the enlarged named-box mask when all circle conditions hold.
    fn extend(&mut self, named: u64, triples: &[[usize; 3]], b: usize, next: usize, c: usize) -> Option<(u64, [usize; 3])> {
        let triple = [b, next, c];
        let circle = self.ctx.circle(triple)?;
        let named = named | bit(next) | bit(c);
        if named.count_ones() as usize > self.state.k || circle.inside & named != 0 {
            return None;
        }
        if triples.iter().any(|&t| self.ctx.circle(t).is_some_and(|c| c.inside & named != 0)) {
            return None;
        }
        if circle.center == self.ctx.boxes[b] || circle.center == self.ctx.boxes[next] {
            return None;
        }
        (self.segment_ok(b, triple) && self.segment_ok(next, triple)).then_some((named, triple))
    }

    fn dfs(&mut self, t: usize, seq: &mut Vec<usize>, triples: &mut Vec<[usize; 3]>, named: u64) {
        let last = *seq.last().expect("non-empty");
        if seq.len() == t {
            let first = seq[0];
            if seq[1] >= last {
                return;
            }
            for &c in self.ctx.thirds(last, first) {
                if self.state_mask & bit(c) == 0 {
                    continue;
                }
                let Some((_, triple)) = self.extend(named, triples, last, first, c) else { continue };
                triples.push(triple);
                self.finish(seq, triples);
                triples.pop();
            }
            return;
        }
        // canonical orientation: the last box exceeds the second
        let floor = if seq.len() == t - 1 { seq[1] } else { seq[0] };
        let candidates: Vec<usize> = self.state.boxes.iter().copied().filter(|&b| b > floor && !seq.contains(&b)).collect();
        for next in candidates {
            for &c in self.ctx.thirds(last, next) {
                if self.state_mask & bit(c) == 0 {
                    continue;
                }
                let Some((named2, triple)) = self.extend(named, triples, last, next, c) else { continue };
                seq.push(next);
                triples.push(triple);
                self.dfs(t, seq, triples, named2);
                triples.pop();
                seq.pop();
            }
        }
    }

    fn finish(&mut self, seq: &[usize], triples: &[[usize; 3]]) {
        let vertices = triples
            .iter()
            .map(|&t| {
                let mut triple = t;
                triple.sort_unstable();
                NooseVertex { location: self.ctx.circle(t).expect("checked").center.clone(), triple }
            })
            .collect();
        let noose = Noose { boxes: seq.to_vec(), vertices };
        if self.is_simple(&noose) {
            self.out.push(noose);
        }
    }
}

impl Search<'_, '_> {
    /// Polygon simplicity with per-segment-pair memoization; agrees with
    /// [`is_simple_polygon`] on the noose polygon.
    fn is_simple(&mut self, noose: &Noose) -> bool {
        let t = noose.len();
        let ids: Vec<SegmentId> = (0..2 * t)
            .map(|p| {
                let box_at = if p % 2 == 0 { noose.boxes[p / 2] } else { noose.boxes[(p / 2 + 1) % t] };
                (box_at, noose.vertices[p / 2].triple)
            })
            .collect();
        let n = ids.len();
        for i in 0..n {
            for j in i + 1..n {
                let adjacent = j == i + 1 || (i == 0 && j == n - 1);
                let key = (ids[i].min(ids[j]), ids[i].max(ids[j]), adjacent);
                let ctx = self.ctx;
                let conflict = *self.conflicts.entry(key).or_insert_with(|| {
                    let directed = |p: usize| {
                        let (b, u) = (&ctx.boxes[ids[p].0], &noose.vertices[p / 2].location);
                        let (a, c) = if p.is_multiple_of(2) { (b, u) } else { (u, b) };
                        Segment { a: a.clone(), b: c.clone() }
                    };
                    if adjacent {
                        let (first, second) = if j == i + 1 { (directed(i), directed(j)) } else { (directed(j), directed(i)) };
                        orient(&first.a, &first.b, &second.b).is_eq() && (first.contains(&second.b) || second.contains(&first.a))
                    } else {
                        segments_intersect(&directed(i), &directed(j))
                    }
                });
                if conflict {
                    return false;
                }
            }
        }
        true
    }
}

/// Every admissible noose with `3 <= t <= max_boxes` boxes, by increasing `t`
/// and then lexicographically by boxes and vertex triples.
pub fn enumerate_nooses(ctx: &Context, state: &State, max_boxes: usize) -> Vec<Noose> {
    let mut search = Search {
        ctx,
        state,
        state_mask: state.box_mask(),
        segment_ok: HashMap::new(),
        conflicts: HashMap::new(),
        out: Vec::new(),
    };
    let fixed = state.fixed_mask();
    for t in 3..=max_boxes.min(state.boxes.len()) {
        for &b0 in &state.boxes {
            let named = fixed | bit(b0);
            if named.count_ones() as usize > state.k {
                continue;
            }
            search.dfs(t, &mut vec![b0], &mut Vec::new(), named);
        }
    }
    search.out
}
