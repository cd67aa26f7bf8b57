// Exact Voronoi diagrams: vertices, edges, clipped cells and the
// nearest-site queries that decide districts.
//
// ```text
// cargo run --example voronoi_cells
// ```

use gerrymander::geometry::{build_voronoi, clip_cell, nearest_site, segment_in_cell, EdgeEnd, Segment};
use gerrymander::model::{rational, Point};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let sites = vec![
        Point::from_ints(0, 0),
        Point::from_ints(6, 0),
        Point::from_ints(1, 5),
        Point::new(rational(13, 2), rational(11, 3)),
    ];
    let diagram = build_voronoi(&sites)?;
    for v in &diagram.vertices {
        println!("vertex {:?} equidistant from sites {:?}", v.location, v.sites);
    }
    for e in &diagram.edges {
        let ends: Vec<String> = e
            .ends
            .iter()
            .map(|end| match end {
                EdgeEnd::Vertex(i) => format!("vertex {i}"),
                EdgeEnd::Infinite(dir) => format!("infinity along {dir:?}"),
            })
            .collect();
        println!("edge between sites {:?}: {}", e.sites, ends.join(" to "));
    }

    let (lo, hi) = (Point::from_ints(-2, -2), Point::from_ints(9, 8));
    for i in 0..sites.len() {
        println!("cell of site {i} within the frame: {:?}", clip_cell(&sites, i, &lo, &hi));
    }

    let q = Point::new(rational(7, 2), rational(1, 3));
    println!("nearest site to {q:?}: {}", nearest_site(&sites, &q)?);
    // a point on a bisector has no unique nearest site
    assert!(nearest_site(&sites, &Point::from_ints(3, -4)).is_err());

    let inside = Segment::new(sites[0].clone(), Point::from_ints(1, 1))?;
    let crossing = Segment::new(sites[0].clone(), sites[1].clone())?;
    println!("segment {:?} stays in cell 0: {}", inside, segment_in_cell(&diagram, 0, &inside));
    println!("segment {:?} stays in cell 0: {}", crossing, segment_in_cell(&diagram, 0, &crossing));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
