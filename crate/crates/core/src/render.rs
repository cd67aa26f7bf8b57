//! Deterministic SVG pictures of an instance and, optionally, a solution.
//!
//! Cells of the chosen boxes are clipped to a padded bounding box and filled
//! by district winner (the target's districts in a strong colour, districts
//! without a winner in grey). Voters are dots coloured by their first
//! choice; boxes are squares, filled when chosen. Floats appear only here,
//! printed as shortest round-trip decimals.

use std::fmt::Write as _;

use crate::election::count_wins;
use crate::geometry::clip_cell;
use crate::model::{rational, Instance, Plurality, Point, Rational, VotingRule};
use crate::{Error, Result};

/// Width of the drawing area in SVG units; the height follows the aspect
/// ratio of the bounding box.
const WIDTH: f64 = 600.0;

const TARGET_FILL: &str = "#f4a582";
const NO_WINNER_FILL: &str = "#e0e0e0";
const OTHER_FILLS: [&str; 6] = ["#92c5de", "#b8e186", "#d9d2e9", "#fee08b", "#c7eae5", "#fde0ef"];
const VOTER_COLOURS: [&str; 8] = ["#b2182b", "#2166ac", "#1b7837", "#762a83", "#e08214", "#01665e", "#8c510a", "#4d4d4d"];

/// Renders with the plurality rule.
pub fn render_svg(inst: &Instance, chosen: Option<&[usize]>) -> Result<Vec<u8>> {
    render_svg_with(inst, chosen, &Plurality)
}

pub fn render_svg_with(inst: &Instance, chosen: Option<&[usize]>, rule: &dyn VotingRule) -> Result<Vec<u8>> {
    if let Some(c) = chosen {
        if c.len() != inst.k {
            return Err(Error::invalid(format!("a solution must choose k = {} boxes, got {}", inst.k, c.len())));
        }
    }
    let (lo, hi) = frame(inst);
    let view = View::new(&lo, &hi);
    let mut out = String::new();
    let (w, h) = (view.width.clone(), view.height.clone());
    writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#).unwrap();
    writeln!(out, r##"<rect class="frame" x="0" y="0" width="{w}" height="{h}" fill="#ffffff" stroke="#000000"/>"##).unwrap();

    if let Some(chosen) = chosen {
        let outcome = count_wins(inst, chosen, rule)?;
        let sites: Vec<Point> = chosen.iter().map(|&b| inst.boxes[b].clone()).collect();
        for (i, &b) in chosen.iter().enumerate() {
            let polygon = clip_cell(&sites, i, &lo, &hi);
            let fill = match outcome.winners[i] {
                Some(c) if c == inst.target => TARGET_FILL,
                Some(c) => OTHER_FILLS[c % OTHER_FILLS.len()],
                None => NO_WINNER_FILL,
            };
            let winner = outcome.winners[i].map_or("none", |c| inst.candidates[c].id.as_str());
            let points: Vec<String> = polygon.iter().map(|p| view.pair(p)).collect();
            writeln!(
                out,
                r##"<polygon class="cell" data-box="{b}" data-winner="{}" points="{}" fill="{fill}" stroke="#555555"/>"##,
                escape(winner),
                points.join(" ")
            )
            .unwrap();
        }
    }

    for (i, v) in inst.voters.iter().enumerate() {
        let (x, y) = view.xy(&v.location);
        let top = v.ranking.top().unwrap_or(0);
        let colour = VOTER_COLOURS[top % VOTER_COLOURS.len()];
        let first = escape(&inst.candidates[top].id);
        writeln!(
            out,
            r#"<circle class="voter" data-voter="{i}" data-count="{}" cx="{x}" cy="{y}" r="4" fill="{colour}"><title>{first}</title></circle>"#,
            v.multiplicity
        )
        .unwrap();
    }

    let opened = chosen.unwrap_or(&[]);
    for (i, b) in inst.boxes.iter().enumerate() {
        let (x, y) = view.raw(b);
        let (class, fill) = if opened.contains(&i) { ("box chosen", "#000000") } else { ("box", "#ffffff") };
        writeln!(
            out,
            r##"<rect class="{class}" data-box="{i}" x="{}" y="{}" width="8" height="8" fill="{fill}" stroke="#000000"/>"##,
            num(x - 4.0),
            num(y - 4.0)
        )
        .unwrap();
    }
    out.push_str("</svg>\n");
    Ok(out.into_bytes())
}

/// The bounding box of all voters and boxes, padded by a tenth of its
/// larger side (at least one unit).
fn frame(inst: &Instance) -> (Point, Point) {
    let points: Vec<&Point> = inst.boxes.iter().chain(inst.voters.iter().map(|v| &v.location)).collect();
    let zero = rational(0, 1);
    let min = |f: fn(&Point) -> &Rational| points.iter().map(|p| f(p)).min().unwrap_or(&zero).clone();
    let max = |f: fn(&Point) -> &Rational| points.iter().map(|p| f(p)).max().unwrap_or(&zero).clone();
    let (x0, y0, x1, y1) = (min(|p| &p.x), min(|p| &p.y), max(|p| &p.x), max(|p| &p.y));
    let side = (&x1 - &x0).max(&y1 - &y0).max(rational(1, 1));
    let pad = side / rational(10, 1);
    (Point::new(&x0 - &pad, &y0 - &pad), Point::new(&x1 + &pad, &y1 + &pad))
}

/// Maps plane coordinates to SVG coordinates (y grows downwards).
struct View {
    lo: (f64, f64),
    hi_y: f64,
    scale: f64,
    width: String,
    height: String,
}

impl View {
    fn new(lo: &Point, hi: &Point) -> Self {
        let (lx, ly) = lo.to_f64();
        let (hx, hy) = hi.to_f64();
        let scale = WIDTH / (hx - lx);
        View { lo: (lx, ly), hi_y: hy, scale, width: num(WIDTH), height: num((hy - ly) * scale) }
    }

    fn raw(&self, p: &Point) -> (f64, f64) {
        let (x, y) = p.to_f64();
        ((x - self.lo.0) * self.scale, (self.hi_y - y) * self.scale)
    }

    fn xy(&self, p: &Point) -> (String, String) {
        let (x, y) = self.raw(p);
        (num(x), num(y))
    }

    fn pair(&self, p: &Point) -> String {
        let (x, y) = self.xy(p);
        format!("{x},{y}")
    }
}

/// Shortest round-trip decimal, rounded to 1/1000 of a unit first so that
/// output does not depend on the last bits of a division.
fn num(v: f64) -> String {
    let r = (v * 1000.0).round() / 1000.0;
    let r = if r == 0.0 { 0.0 } else { r };
    format!("{r}")
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Candidate, Ranking, Voter};

    fn two_box_instance() -> Instance {
        let ab = Ranking(vec![0, 1]);
        let ba = Ranking(vec![1, 0]);
        Instance {
            candidates: vec![Candidate { id: "A".into() }, Candidate { id: "B".into() }],
            voters: vec![
                Voter::new(Point::from_ints(0, 0), ab.clone()),
                Voter::new(Point::from_ints(1, 1), ab),
                Voter::new(Point::from_ints(9, 1), ba),
            ],
            boxes: vec![Point::from_ints(1, 0), Point::from_ints(8, 0), Point::from_ints(5, 6)],
            k: 2,
            ell: 1,
            target: 0,
        }
    }

    fn count(svg: &str, needle: &str) -> usize {
        svg.matches(needle).count()
    }

    #[test]
    fn two_chosen_boxes_give_two_cells() {
        let inst = two_box_instance();
        let svg = String::from_utf8(render_svg(&inst, Some(&[0, 1])).unwrap()).unwrap();
        assert_eq!(count(&svg, r#"<polygon class="cell""#), 2);
        assert_eq!(count(&svg, r#"class="box chosen""#), 2);
        assert!(svg.contains(r#"data-winner="A" points"#));
        assert!(svg.contains(TARGET_FILL));
        // both cells end on the bisector x = 4.5 of the chosen boxes
        let frame_x0 = -0.9; // min x 0 padded by 9/10
        let bisector = num((4.5 - frame_x0) * (WIDTH / 9.0 / 1.2));
        assert_eq!(count(&svg, &format!("{bisector},")), 4);
    }

    #[test]
    fn without_solution_only_marks_are_drawn() {
        let inst = two_box_instance();
        let svg = String::from_utf8(render_svg(&inst, None).unwrap()).unwrap();
        assert_eq!(count(&svg, "<polygon"), 0);
        assert_eq!(count(&svg, r#"<circle class="voter""#), 3);
        assert_eq!(count(&svg, r#"<rect class="box""#), 3);
    }

    #[test]
    fn rejects_wrong_solution_size_and_is_deterministic() {
        let inst = two_box_instance();
        assert!(render_svg(&inst, Some(&[0])).is_err());
        assert_eq!(render_svg(&inst, Some(&[0, 2])).unwrap(), render_svg(&inst, Some(&[0, 2])).unwrap());
    }

    #[test]
    fn numbers_are_short() {
        assert_eq!(num(1.0), "1");
        assert_eq!(num(-0.0001), "0");
        assert_eq!(num(2.0 / 3.0), "0.667");
    }
}
