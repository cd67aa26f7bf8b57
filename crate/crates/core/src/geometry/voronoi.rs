//! Voronoi diagrams by per-cell half-plane clipping, exact over rationals.
//!
//! Each cell is the bounding frame clipped by the bisector half-plane of every
//! other site. The frame strictly contains every site and every circumcenter
//! of a site triple, so every diagram vertex is a cell corner strictly inside
//! the frame and every corner on the frame marks an unbounded edge.

use std::collections::HashMap;

use num_traits::{One, Signed, Zero};

use super::{circumcenter, sq_dist, Segment};
use crate::model::{Point, Rational};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VoronoiVertex {
    pub location: Point,
    /// The three sites equidistant from `location`, ascending.
    pub sites: [usize; 3],
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EdgeEnd {
    Vertex(usize),
    /// The edge runs off to infinity along this direction.
    Infinite(Point),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VoronoiEdge {
    /// The two sites this edge separates, ascending.
    pub sites: [usize; 2],
    pub ends: [EdgeEnd; 2],
}

impl VoronoiEdge {
    pub fn is_bounded(&self) -> bool {
        self.ends.iter().all(|e| matches!(e, EdgeEnd::Vertex(_)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VoronoiCell {
    pub site: usize,
    /// Indices into [`VoronoiDiagram::edges`], counter-clockwise.
    pub edges: Vec<usize>,
    pub bounded: bool,
    /// The cell clipped to [`VoronoiDiagram::frame`], counter-clockwise.
    pub polygon: Vec<Point>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VoronoiDiagram {
    pub sites: Vec<Point>,
    pub vertices: Vec<VoronoiVertex>,
    pub edges: Vec<VoronoiEdge>,
    pub cells: Vec<VoronoiCell>,
    /// Lower-left and upper-right corners of the clipping frame.
    pub frame: (Point, Point),
}

impl VoronoiDiagram {
    /// Vertices + 1 (the point at infinity) - edges + faces; always 2 for a
    /// planar subdivision closed up at infinity.
    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 + 1 - self.edges.len() as i64 + self.cells.len() as i64
    }

    /// Edge as a segment when both ends are vertices.
    pub fn edge_segment(&self, edge: usize) -> Option<Segment> {
        match &self.edges[edge].ends {
            [EdgeEnd::Vertex(a), EdgeEnd::Vertex(b)] => {
                Some(Segment { a: self.vertices[*a].location.clone(), b: self.vertices[*b].location.clone() })
            }
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Label {
    Frame,
    Bisector(usize),
}

/// Clips a convex polygon (as `(corner, label of the edge leaving it)`) to the
/// closed half-plane of points no farther from `site` than from `other`.
fn clip(poly: Vec<(Point, Label)>, site: &Point, other: &Point, other_idx: usize) -> Vec<(Point, Label)> {
    // f(p) = 2 p.(other - site) - |other|^2 + |site|^2 <= 0 keeps p
    let nx = (&other.x - &site.x) * Rational::from_integer(2.into());
    let ny = (&other.y - &site.y) * Rational::from_integer(2.into());
    let c = &site.x * &site.x + &site.y * &site.y - &other.x * &other.x - &other.y * &other.y;
    let f = |p: &Point| &nx * &p.x + &ny * &p.y + &c;

    let n = poly.len();
    let values: Vec<Rational> = poly.iter().map(|(p, _)| f(p)).collect();
    let mut out: Vec<(Point, Label)> = Vec::with_capacity(n + 1);
    for i in 0..n {
        let j = (i + 1) % n;
        let (p, label) = &poly[i];
        let q = &poly[j].0;
        let (fp, fq) = (&values[i], &values[j]);
        let p_in = !fp.is_positive();
        let q_in = !fq.is_positive();
        let crossing = || {
            let t = fp / (fp - fq);
            Point::new(&p.x + (&q.x - &p.x) * &t, &p.y + (&q.y - &p.y) * &t)
        };
        match (p_in, q_in) {
            (true, true) => out.push((p.clone(), *label)),
            (true, false) => {
                out.push((p.clone(), *label));
                out.push((crossing(), Label::Bisector(other_idx)));
            }
            (false, true) => out.push((crossing(), *label)),
            (false, false) => {}
        }
    }
    // drop zero-length edges, keeping the label of the edge that follows
    let mut cleaned: Vec<(Point, Label)> = Vec::with_capacity(out.len());
    for (i, item) in out.iter().enumerate() {
        let next = &out[(i + 1) % out.len()].0;
        if &item.0 != next {
            cleaned.push(item.clone());
        }
    }
    cleaned
}

fn frame_polygon(lo: &Point, hi: &Point) -> Vec<(Point, Label)> {
    vec![
        (lo.clone(), Label::Frame),
        (Point::new(hi.x.clone(), lo.y.clone()), Label::Frame),
        (hi.clone(), Label::Frame),
        (Point::new(lo.x.clone(), hi.y.clone()), Label::Frame),
    ]
}

fn labeled_cell(sites: &[Point], i: usize, lo: &Point, hi: &Point) -> Vec<(Point, Label)> {
    let mut poly = frame_polygon(lo, hi);
    for (j, other) in sites.iter().enumerate() {
        if j != i && !poly.is_empty() {
            poly = clip(poly, &sites[i], other, j);
        }
    }
    poly
}

/// The cell of `sites[site]` clipped to the axis-aligned rectangle `lo..hi`,
/// counter-clockwise. Empty when the cell misses the rectangle.
pub fn clip_cell(sites: &[Point], site: usize, lo: &Point, hi: &Point) -> Vec<Point> {
    labeled_cell(sites, site, lo, hi).into_iter().map(|(p, _)| p).collect()
}

fn on_frame(p: &Point, lo: &Point, hi: &Point) -> bool {
    p.x == lo.x || p.x == hi.x || p.y == lo.y || p.y == hi.y
}

/// Builds the Voronoi diagram of `sites`.
///
/// Errors on duplicate sites and on vertices shared by four or more sites.
pub fn build_voronoi(sites: &[Point]) -> Result<VoronoiDiagram> {
    let n = sites.len();
    if n == 0 {
        return Err(Error::invalid("no sites"));
    }
    let mut seen = HashMap::new();
    for (i, s) in sites.iter().enumerate() {
        if let Some(j) = seen.insert(s, i) {
            return Err(Error::invalid(format!("sites {j} and {i} coincide")));
        }
    }

    let mut extent: Vec<Point> = sites.to_vec();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if let Some(u) = circumcenter(&sites[a], &sites[b], &sites[c]) {
                    extent.push(u);
                }
            }
        }
    }
    let min_x = extent.iter().map(|p| &p.x).min().unwrap().clone();
    let max_x = extent.iter().map(|p| &p.x).max().unwrap().clone();
    let min_y = extent.iter().map(|p| &p.y).min().unwrap().clone();
    let max_y = extent.iter().map(|p| &p.y).max().unwrap().clone();
    let span = std::cmp::max(&max_x - &min_x, &max_y - &min_y);
    let margin = if span.is_zero() { Rational::one() } else { span };
    let lo = Point::new(&min_x - &margin, &min_y - &margin);
    let hi = Point::new(&max_x + &margin, &max_y + &margin);

    let mut vertices: Vec<VoronoiVertex> = Vec::new();
    let mut vertex_index: HashMap<Point, usize> = HashMap::new();
    let mut edges: Vec<VoronoiEdge> = Vec::new();
    let mut edge_index: HashMap<[usize; 2], usize> = HashMap::new();
    let mut cells = Vec::with_capacity(n);

    for i in 0..n {
        let poly = labeled_cell(sites, i, &lo, &hi);
        if poly.len() < 3 {
            return Err(Error::degenerate(format!("cell of site {i} collapsed")));
        }
        let mut corner_ids: Vec<Option<usize>> = Vec::with_capacity(poly.len());
        for (p, _) in &poly {
            if on_frame(p, &lo, &hi) {
                corner_ids.push(None);
                continue;
            }
            let id = match vertex_index.get(p) {
                Some(&id) => id,
                None => {
                    let dists: Vec<Rational> = sites.iter().map(|s| sq_dist(p, s)).collect();
                    let best = dists.iter().min().unwrap();
                    let nearest: Vec<usize> = (0..n).filter(|&s| &dists[s] == best).collect();
                    if nearest.len() != 3 {
                        return Err(Error::degenerate(format!(
                            "vertex {p:?} is equidistant from {} sites {nearest:?}",
                            nearest.len()
                        )));
                    }
                    let id = vertices.len();
                    vertices.push(VoronoiVertex { location: p.clone(), sites: [nearest[0], nearest[1], nearest[2]] });
                    vertex_index.insert(p.clone(), id);
                    id
                }
            };
            corner_ids.push(Some(id));
        }

        let mut cell_edges = Vec::new();
        let m = poly.len();
        for c in 0..m {
            let Label::Bisector(j) = poly[c].1 else { continue };
            let key = [i.min(j), i.max(j)];
            let id = match edge_index.get(&key) {
                Some(&id) => id,
                None => {
                    let (p, q) = (&poly[c].0, &poly[(c + 1) % m].0);
                    let end = |own: Option<usize>, at: &Point, from: &Point| match own {
                        Some(v) => EdgeEnd::Vertex(v),
                        None => EdgeEnd::Infinite(Point::new(&at.x - &from.x, &at.y - &from.y)),
                    };
                    let ends = [end(corner_ids[c], p, q), end(corner_ids[(c + 1) % m], q, p)];
                    let id = edges.len();
                    edges.push(VoronoiEdge { sites: key, ends });
                    edge_index.insert(key, id);
                    id
                }
            };
            cell_edges.push(id);
        }
        cells.push(VoronoiCell {
            site: i,
            edges: cell_edges,
            bounded: corner_ids.iter().all(Option::is_some),
            polygon: poly.into_iter().map(|(p, _)| p).collect(),
        });
    }

    Ok(VoronoiDiagram { sites: sites.to_vec(), vertices, edges, cells, frame: (lo, hi) })
}

/// Index of the unique site nearest to `q`.
pub fn nearest_site(sites: &[Point], q: &Point) -> Result<usize> {
    let mut best: Option<(usize, Rational)> = None;
    let mut tied = false;
    for (i, s) in sites.iter().enumerate() {
        let d = sq_dist(q, s);
        match &best {
            Some((_, bd)) if &d > bd => {}
            Some((_, bd)) if &d == bd => tied = true,
            _ => {
                best = Some((i, d));
                tied = false;
            }
        }
    }
    match best {
        None => Err(Error::invalid("no sites")),
        Some(_) if tied => Err(Error::degenerate(format!("{q:?} is equidistant from two nearest sites"))),
        Some((i, _)) => Ok(i),
    }
}

/// Whether every point of `s` is at least as close to `site` as to any other
/// site of the diagram. Cells are convex, so the endpoints decide.
pub fn segment_in_cell(diagram: &VoronoiDiagram, site: usize, s: &Segment) -> bool {
    let own = &diagram.sites[site];
    [&s.a, &s.b].into_iter().all(|e| {
        let d = sq_dist(e, own);
        diagram.sites.iter().enumerate().all(|(j, other)| j == site || d <= sq_dist(e, other))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{locate_unchecked, Location};
    use crate::model::int;

    fn pt(x: i64, y: i64) -> Point {
        Point::from_ints(x, y)
    }

    #[test]
    fn single_site() {
        let d = build_voronoi(&[pt(3, 4)]).unwrap();
        assert!(d.vertices.is_empty());
        assert!(d.edges.is_empty());
        assert_eq!(d.cells.len(), 1);
        assert!(!d.cells[0].bounded);
        assert_eq!(d.euler_characteristic(), 2);
    }

    #[test]
    fn two_sites_split_by_bisector() {
        let d = build_voronoi(&[pt(0, 0), pt(10, 0)]).unwrap();
        assert!(d.vertices.is_empty());
        assert_eq!(d.edges.len(), 1);
        assert!(matches!(d.edges[0].ends, [EdgeEnd::Infinite(_), EdgeEnd::Infinite(_)]));
        for cell in &d.cells {
            assert!(!cell.bounded);
            assert_eq!(cell.edges, vec![0]);
        }
        // every corner of cell 0 has x <= 5
        assert!(d.cells[0].polygon.iter().all(|p| p.x <= int(5)));
        assert_eq!(d.euler_characteristic(), 2);
    }

    #[test]
    fn three_sites_one_vertex_three_rays() {
        let sites = [pt(0, 0), pt(4, 0), pt(1, 3)];
        let d = build_voronoi(&sites).unwrap();
        assert_eq!(d.vertices.len(), 1);
        assert_eq!(Some(d.vertices[0].location.clone()), circumcenter(&sites[0], &sites[1], &sites[2]));
        assert_eq!(d.vertices[0].sites, [0, 1, 2]);
        assert_eq!(d.edges.len(), 3);
        for e in &d.edges {
            let n_inf = e.ends.iter().filter(|x| matches!(x, EdgeEnd::Infinite(_))).count();
            assert_eq!(n_inf, 1);
        }
        assert_eq!(d.euler_characteristic(), 2);
    }

    #[test]
    fn collinear_sites_give_parallel_strips() {
        let d = build_voronoi(&[pt(0, 0), pt(2, 0), pt(5, 0)]).unwrap();
        assert!(d.vertices.is_empty());
        assert_eq!(d.edges.len(), 2);
        assert_eq!(d.euler_characteristic(), 2);
    }

    #[test]
    fn bounded_cell_in_the_middle() {
        let sites = [pt(0, 0), pt(10, 1), pt(-1, 10), pt(-10, -1), pt(1, -10)];
        let d = build_voronoi(&sites).unwrap();
        assert!(d.cells[0].bounded);
        assert_eq!(d.cells[0].edges.len(), 4);
        assert!(d.cells[1..].iter().all(|c| !c.bounded));
        assert_eq!(d.euler_characteristic(), 2);
        let centre = locate_unchecked(&d.cells[0].polygon, &pt(0, 0));
        assert_eq!(centre, Location::Inside);
    }

    #[test]
    fn degeneracies_are_errors() {
        assert!(build_voronoi(&[pt(0, 0), pt(0, 0)]).is_err());
        let square = [pt(1, 0), pt(0, 1), pt(-1, 0), pt(0, -1)];
        assert!(matches!(build_voronoi(&square), Err(Error::Degenerate(_))));
    }

    #[test]
    fn nearest_site_examples() {
        assert_eq!(nearest_site(&[pt(0, 0), pt(10, 0)], &pt(1, 1)).unwrap(), 0);
        assert_eq!(nearest_site(&[pt(7, 7)], &pt(-100, 3)).unwrap(), 0);
        assert!(matches!(nearest_site(&[pt(-1, 0), pt(1, 0)], &pt(0, 5)), Err(Error::Degenerate(_))));
    }

    #[test]
    fn segment_in_cell_examples() {
        let d = build_voronoi(&[pt(0, 0), pt(10, 0)]).unwrap();
        let s = |a: (i64, i64), b: (i64, i64)| Segment::new(pt(a.0, a.1), pt(b.0, b.1)).unwrap();
        assert!(segment_in_cell(&d, 0, &s((1, -1), (1, 1))));
        assert!(!segment_in_cell(&d, 0, &s((1, 0), (9, 0))));
        assert!(segment_in_cell(&d, 0, &s((5, -3), (5, 3))));
        assert!(segment_in_cell(&d, 1, &s((5, -3), (5, 3))));
    }
}
