// Seeded instance generation and the JSON formats: instances keep exact
// rational coordinates as strings and serialize canonically.
//
// ```text
// cargo run --example formats_and_generation
// ```

use gerrymander::format::{parse_instance, parse_solution, write_grid_tiling, write_instance, write_solution};
use gerrymander::generate::{gen_grid_tiling, gen_random, GenParams};
use gerrymander::model::{validate_instance, Plurality};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let params = GenParams { n_voters: 3, m_boxes: 3, k: 2, ell: 1, coord_denominator: 3, ..GenParams::default() };
    let inst = gen_random(42, &params)?;
    assert_eq!(inst, gen_random(42, &params)?, "generation is a function of the seed");
    assert!(validate_instance(&inst, true).ok);

    let bytes = write_instance(&inst);
    println!("{}", String::from_utf8_lossy(&bytes));
    let back = parse_instance(&bytes)?;
    assert_eq!(back, inst);
    assert_eq!(write_instance(&back), bytes, "writing is canonical");

    // the input format accepts decimals and unreduced fractions
    let handwritten = br#"{"format": "gerry-v1", "candidates": ["A", "B"], "target": "A", "k": 1, "ell": 1,
        "voters": [{"x": "0.5", "y": "2/4", "ranking": ["A", "B"], "count": 3}],
        "boxes": [{"x": "1", "y": "-1.25"}]}"#;
    println!("{}", String::from_utf8_lossy(&write_instance(&parse_instance(handwritten)?)));

    let answer = gerrymander::brute::brute_solve(&inst, &Plurality)?;
    let solution = write_solution(&answer, false);
    println!("{}", String::from_utf8_lossy(&solution));
    assert_eq!(parse_solution(&solution)?.status, answer.status);

    println!("{}", String::from_utf8_lossy(&write_grid_tiling(&gen_grid_tiling(7, 2, 3, 0.4)?)));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
