//! Exact rational predicates: distances, orientation, in-circle, circumcenters,
//! segment intersection and polygon membership. Voronoi diagrams live in
//! [`voronoi`].

mod voronoi;

pub use voronoi::{
    build_voronoi, clip_cell, nearest_site, segment_in_cell, EdgeEnd, VoronoiCell, VoronoiDiagram, VoronoiEdge, VoronoiVertex,
};

use std::cmp::Ordering;

use num_traits::Zero;

use crate::model::{Point, Rational};
use crate::{Error, Result};

/// Squared Euclidean distance, exact.
pub fn sq_dist(p: &Point, q: &Point) -> Rational {
    let dx = &q.x - &p.x;
    let dy = &q.y - &p.y;
    &dx * &dx + &dy * &dy
}

/// Twice the signed area of `abc`; positive when counter-clockwise.
pub fn orientation(a: &Point, b: &Point, c: &Point) -> Rational {
    (&b.x - &a.x) * (&c.y - &a.y) - (&b.y - &a.y) * (&c.x - &a.x)
}

/// The sign of [`orientation`], computed on numerators and denominators
/// without normalizing intermediate fractions.
pub fn orient(a: &Point, b: &Point, c: &Point) -> Ordering {
    // p - q as an unreduced fraction with positive denominator
    let diff = |p: &Rational, q: &Rational| (p.numer() * q.denom() - q.numer() * p.denom(), p.denom() * q.denom());
    let (n1, d1) = diff(&b.x, &a.x);
    let (n2, d2) = diff(&c.y, &a.y);
    let (n3, d3) = diff(&b.y, &a.y);
    let (n4, d4) = diff(&c.x, &a.x);
    (n1 * n2 * d3 * d4).cmp(&(n3 * n4 * d1 * d2))
}

/// Positive when `d` lies strictly inside the circle through the
/// counter-clockwise triangle `abc`, zero when the four points are
/// cocircular (or all collinear).
pub fn incircle(a: &Point, b: &Point, c: &Point, d: &Point) -> Rational {
    let row = |p: &Point| {
        let x = &p.x - &d.x;
        let y = &p.y - &d.y;
        let w = &x * &x + &y * &y;
        (x, y, w)
    };
    let (ax, ay, aw) = row(a);
    let (bx, by, bw) = row(b);
    let (cx, cy, cw) = row(c);
    &ax * (&by * &cw - &bw * &cy) - &ay * (&bx * &cw - &bw * &cx) + &aw * (&bx * &cy - &by * &cx)
}

/// The point equidistant from `a`, `b` and `c`, or `None` when collinear.
pub fn circumcenter(a: &Point, b: &Point, c: &Point) -> Option<Point> {
    let d = (&a.x * (&b.y - &c.y) + &b.x * (&c.y - &a.y) + &c.x * (&a.y - &b.y)) * Rational::from_integer(2.into());
    if d.is_zero() {
        return None;
    }
    let na = &a.x * &a.x + &a.y * &a.y;
    let nb = &b.x * &b.x + &b.y * &b.y;
    let nc = &c.x * &c.x + &c.y * &c.y;
    let ux = (&na * (&b.y - &c.y) + &nb * (&c.y - &a.y) + &nc * (&a.y - &b.y)) / &d;
    let uy = (&na * (&c.x - &b.x) + &nb * (&a.x - &c.x) + &nc * (&b.x - &a.x)) / &d;
    Some(Point::new(ux, uy))
}

/// A closed segment with distinct endpoints.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Segment {
    pub a: Point,
    pub b: Point,
}

impl Segment {
    pub fn new(a: Point, b: Point) -> Result<Self> {
        if a == b {
            return Err(Error::invalid(format!("degenerate segment at {a:?}")));
        }
        Ok(Segment { a, b })
    }

    /// Point at parameter `t` along `a -> b`.
    pub fn at(&self, t: &Rational) -> Point {
        Point::new(&self.a.x + (&self.b.x - &self.a.x) * t, &self.a.y + (&self.b.y - &self.a.y) * t)
    }

    pub fn contains(&self, p: &Point) -> bool {
        orient(&self.a, &self.b, p).is_eq() && in_box(&self.a, &self.b, p)
    }
}

fn in_box(a: &Point, b: &Point, p: &Point) -> bool {
    let (xlo, xhi) = if a.x <= b.x { (&a.x, &b.x) } else { (&b.x, &a.x) };
    let (ylo, yhi) = if a.y <= b.y { (&a.y, &b.y) } else { (&b.y, &a.y) };
    xlo <= &p.x && &p.x <= xhi && ylo <= &p.y && &p.y <= yhi
}

/// Closed-segment intersection, including touching endpoints and collinear
/// overlap.
pub fn segments_intersect(s1: &Segment, s2: &Segment) -> bool {
    use Ordering::Equal;
    let o1 = orient(&s1.a, &s1.b, &s2.a);
    let o2 = orient(&s1.a, &s1.b, &s2.b);
    let o3 = orient(&s2.a, &s2.b, &s1.a);
    let o4 = orient(&s2.a, &s2.b, &s1.b);
    let proper = o1 != Equal && o2 != Equal && o3 != Equal && o4 != Equal && o1 != o2 && o3 != o4;
    proper
        || (o1 == Equal && in_box(&s1.a, &s1.b, &s2.a))
        || (o2 == Equal && in_box(&s1.a, &s1.b, &s2.b))
        || (o3 == Equal && in_box(&s2.a, &s2.b, &s1.a))
        || (o4 == Equal && in_box(&s2.a, &s2.b, &s1.b))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Location {
    Inside,
    Outside,
    OnBoundary,
}

/// Whether the closed polygon through `vertices` is simple: at least three
/// vertices, no repeated vertex, and only consecutive edges meet (at their
/// shared endpoint).
pub fn is_simple_polygon(vertices: &[Point]) -> bool {
    let n = vertices.len();
    if n < 3 {
        return false;
    }
    let edges: Vec<Segment> = match (0..n).map(|i| Segment::new(vertices[i].clone(), vertices[(i + 1) % n].clone())).collect() {
        Ok(e) => e,
        Err(_) => return false,
    };
    for i in 0..n {
        for j in i + 1..n {
            let adjacent = j == i + 1 || (i == 0 && j == n - 1);
            if adjacent {
                // consecutive edges may only share their common vertex
                let (first, second) = if j == i + 1 { (&edges[i], &edges[j]) } else { (&edges[j], &edges[i]) };
                let collinear = orient(&first.a, &first.b, &second.b).is_eq();
                if collinear && (first.contains(&second.b) || second.contains(&first.a)) {
                    return false;
                }
            } else if segments_intersect(&edges[i], &edges[j]) {
                return false;
            }
        }
    }
    true
}

/// Classifies `q` against a simple polygon given by its vertices in order.
pub fn point_in_polygon(vertices: &[Point], q: &Point) -> Result<Location> {
    if !is_simple_polygon(vertices) {
        return Err(Error::invalid("polygon is not simple"));
    }
    Ok(locate_unchecked(vertices, q))
}

/// [`point_in_polygon`] without the simplicity check, for callers that have
/// already established it.
pub(crate) fn locate_unchecked(vertices: &[Point], q: &Point) -> Location {
    let n = vertices.len();
    let mut winding = 0i32;
    for i in 0..n {
        let a = &vertices[i];
        let b = &vertices[(i + 1) % n];
        let o = orient(a, b, q);
        if o.is_eq() && in_box(a, b, q) {
            return Location::OnBoundary;
        }
        if a.y <= q.y {
            if b.y > q.y && o.is_gt() {
                winding += 1;
            }
        } else if b.y <= q.y && o.is_lt() {
            winding -= 1;
        }
    }
    if winding != 0 {
        Location::Inside
    } else {
        Location::Outside
    }
}

/// Which closed side of a polygon a region constraint keeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Inside,
    Outside,
}

/// Whether every point of `s` lies on the closed `side` of the simple polygon
/// `vertices`. The segment is cut at every boundary contact and each piece is
/// classified by its midpoint.
pub fn segment_on_side(vertices: &[Point], side: Side, s: &Segment) -> bool {
    let wrong = match side {
        Side::Inside => Location::Outside,
        Side::Outside => Location::Inside,
    };
    let dir_x = &s.b.x - &s.a.x;
    let dir_y = &s.b.y - &s.a.y;
    let len2 = &dir_x * &dir_x + &dir_y * &dir_y;
    let project = |p: &Point| ((&p.x - &s.a.x) * &dir_x + (&p.y - &s.a.y) * &dir_y) / &len2;

    let zero = Rational::zero();
    let one = Rational::from_integer(1.into());
    let mut cuts = vec![zero.clone(), one.clone()];
    let n = vertices.len();
    for i in 0..n {
        let e = Segment { a: vertices[i].clone(), b: vertices[(i + 1) % n].clone() };
        if !segments_intersect(s, &e) {
            continue;
        }
        let ex = &e.b.x - &e.a.x;
        let ey = &e.b.y - &e.a.y;
        let denom = &dir_x * &ey - &dir_y * &ex;
        if denom.is_zero() {
            // collinear overlap: the overlap's ends are the cut points
            for p in [&e.a, &e.b] {
                let t = project(p);
                if t > zero && t < one {
                    cuts.push(t);
                }
            }
        } else {
            let t = ((&e.a.x - &s.a.x) * &ey - (&e.a.y - &s.a.y) * &ex) / &denom;
            if t > zero && t < one {
                cuts.push(t);
            }
        }
    }
    cuts.sort();
    cuts.dedup();
    if locate_unchecked(vertices, &s.a) == wrong || locate_unchecked(vertices, &s.b) == wrong {
        return false;
    }
    let half = Rational::new(1.into(), 2.into());
    cuts.windows(2).all(|w| {
        let mid = (&w[0] + &w[1]) * &half;
        locate_unchecked(vertices, &s.at(&mid)) != wrong
    })
}

/// Mirror image of `p` across the line through `a` and `b`.
pub fn reflect(p: &Point, a: &Point, b: &Point) -> Point {
    let dx = &b.x - &a.x;
    let dy = &b.y - &a.y;
    let t = ((&p.x - &a.x) * &dx + (&p.y - &a.y) * &dy) / (&dx * &dx + &dy * &dy);
    let foot = Point::new(&a.x + &dx * &t, &a.y + &dy * &t);
    let two = Rational::from_integer(2.into());
    Point::new(&foot.x * &two - &p.x, &foot.y * &two - &p.y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{int, rational};
    use num_traits::Signed;

    fn pt(x: i64, y: i64) -> Point {
        Point::from_ints(x, y)
    }

    fn seg(a: (i64, i64), b: (i64, i64)) -> Segment {
        Segment::new(pt(a.0, a.1), pt(b.0, b.1)).unwrap()
    }

    #[test]
    fn orient_matches_signed_area() {
        let p = |x: (i64, i64), y: (i64, i64)| Point::new(rational(x.0, x.1), rational(y.0, y.1));
        let samples = [
            p((1, 3), (-2, 7)),
            p((5, 2), (1, 9)),
            p((-3, 4), (11, 6)),
            p((2, 3), (-4, 14)),
            p((7, 1), (0, 1)),
            p((-1, 2), (3, 5)),
        ];
        for a in &samples {
            for b in &samples {
                for c in &samples {
                    let area = orientation(a, b, c);
                    assert_eq!(orient(a, b, c), area.cmp(&Rational::zero()));
                }
            }
        }
    }

    #[test]
    fn sq_dist_examples() {
        assert_eq!(sq_dist(&pt(0, 0), &pt(3, 4)), int(25));
        assert_eq!(sq_dist(&pt(7, -2), &pt(7, -2)), int(0));
        let p = Point::new(rational(1, 2), int(0));
        let q = Point::new(int(0), rational(1, 3));
        assert_eq!(sq_dist(&p, &q), rational(13, 36));
    }

    #[test]
    fn circumcenter_examples() {
        assert_eq!(circumcenter(&pt(0, 0), &pt(2, 0), &pt(0, 2)), Some(pt(1, 1)));
        assert_eq!(circumcenter(&pt(0, 0), &pt(1, 1), &pt(2, 2)), None);
        let (a, b, c) = (pt(0, 0), pt(4, 0), pt(1, 3));
        let u = circumcenter(&a, &b, &c).unwrap();
        assert_eq!(sq_dist(&u, &a), sq_dist(&u, &b));
        assert_eq!(sq_dist(&u, &a), sq_dist(&u, &c));
    }

    #[test]
    fn incircle_sign() {
        let (a, b, c) = (pt(0, 0), pt(2, 0), pt(0, 2));
        assert!(incircle(&a, &b, &c, &pt(1, 1)).is_positive());
        assert!(incircle(&a, &b, &c, &pt(5, 5)).is_negative());
        assert!(incircle(&a, &b, &c, &pt(2, 2)).is_zero());
    }

    #[test]
    fn segment_intersection_examples() {
        assert!(segments_intersect(&seg((0, 0), (2, 2)), &seg((0, 2), (2, 0))));
        assert!(!segments_intersect(&seg((0, 0), (1, 0)), &seg((0, 1), (1, 1))));
        assert!(segments_intersect(&seg((0, 0), (1, 0)), &seg((1, 0), (2, 0))));
        assert!(segments_intersect(&seg((0, 0), (3, 0)), &seg((1, 0), (2, 0))));
        assert!(!segments_intersect(&seg((0, 0), (1, 0)), &seg((2, 0), (3, 0))));
        assert!(segments_intersect(&seg((0, 0), (2, 0)), &seg((1, 0), (1, 5))));
        assert!(!segments_intersect(&seg((0, 0), (2, 0)), &seg((1, 1), (1, 5))));
    }

    #[test]
    fn point_in_unit_square() {
        let square = vec![pt(0, 0), pt(1, 0), pt(1, 1), pt(0, 1)];
        let half = rational(1, 2);
        assert_eq!(point_in_polygon(&square, &Point::new(half.clone(), half.clone())).unwrap(), Location::Inside);
        assert_eq!(point_in_polygon(&square, &pt(2, 0)).unwrap(), Location::Outside);
        assert_eq!(point_in_polygon(&square, &Point::new(int(1), half)).unwrap(), Location::OnBoundary);
        assert_eq!(point_in_polygon(&square, &pt(0, 0)).unwrap(), Location::OnBoundary);
        // clockwise orientation works too
        let cw: Vec<Point> = square.iter().rev().cloned().collect();
        assert_eq!(point_in_polygon(&cw, &Point::new(rational(1, 3), rational(2, 3))).unwrap(), Location::Inside);
    }

    #[test]
    fn non_simple_polygon_is_rejected() {
        let bowtie = vec![pt(0, 0), pt(2, 2), pt(2, 0), pt(0, 2)];
        assert!(point_in_polygon(&bowtie, &pt(1, 0)).is_err());
        assert!(point_in_polygon(&[pt(0, 0), pt(1, 0)], &pt(1, 0)).is_err());
        // a spike folding back on itself
        let spike = vec![pt(0, 0), pt(4, 0), pt(2, 0), pt(2, 3)];
        assert!(!is_simple_polygon(&spike));
    }

    #[test]
    fn segment_side_checks() {
        let square = vec![pt(0, 0), pt(4, 0), pt(4, 4), pt(0, 4)];
        assert!(segment_on_side(&square, Side::Inside, &seg((1, 1), (3, 3))));
        assert!(segment_on_side(&square, Side::Inside, &seg((0, 0), (4, 4))));
        assert!(segment_on_side(&square, Side::Inside, &seg((0, 0), (4, 0))));
        assert!(!segment_on_side(&square, Side::Inside, &seg((1, 1), (5, 1))));
        assert!(segment_on_side(&square, Side::Outside, &seg((5, 0), (5, 9))));
        assert!(segment_on_side(&square, Side::Outside, &seg((4, 0), (9, 0))));
        assert!(!segment_on_side(&square, Side::Outside, &seg((5, 1), (3, 1))));
        // non-convex: a segment leaving through a notch
        let notch = vec![pt(0, 0), pt(4, 0), pt(4, 4), pt(2, 1), pt(0, 4)];
        assert!(!segment_on_side(&notch, Side::Inside, &seg((1, 3), (3, 3))));
        assert!(segment_on_side(&notch, Side::Inside, &seg((1, 1), (3, 1))));
    }

    #[test]
    fn reflection() {
        assert_eq!(reflect(&pt(1, 1), &pt(0, 0), &pt(1, 0)), pt(1, -1));
        assert_eq!(reflect(&pt(2, 0), &pt(0, 0), &pt(1, 1)), pt(0, 2));
    }
}
