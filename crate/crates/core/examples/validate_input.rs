// What the validator reports, and how each engine treats inputs that break
// the general-position assumptions.
//
// ```text
// cargo run --example validate_input
// ```

use gerrymander::brute::brute_solve;
use gerrymander::model::{validate_instance, Candidate, Instance, Plurality, Point, Ranking, Voter};
use gerrymander::separator::{solve, SeparatorConfig};
use gerrymander::Error;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let a = Ranking(vec![0, 1]);
    let b = Ranking(vec![1, 0]);
    let mut inst = Instance {
        candidates: vec![Candidate { id: "A".into() }, Candidate { id: "B".into() }],
        voters: vec![Voter::new(Point::from_ints(0, 1), a.clone()), Voter::new(Point::from_ints(5, 5), b)],
        boxes: vec![Point::from_ints(0, 0), Point::from_ints(4, 0), Point::from_ints(0, 4), Point::from_ints(4, 4)],
        k: 2,
        ell: 1,
        target: 0,
    };
    let report = validate_instance(&inst, true);
    println!("general position: {}", report.ok);
    for v in &report.violations {
        println!("  {:?}: {}", v.kind, v.detail);
    }

    // brute force still answers, skipping subsets that leave a voter tied
    println!("brute force: {:?}", brute_solve(&inst, &Plurality)?.status);
    // the separator needs general position and says so
    match solve(&inst, &SeparatorConfig::default()) {
        Err(Error::Degenerate(msg)) => println!("separator refuses: {msg}"),
        other => println!("separator: {other:?}"),
    }

    // moving one box off the common circle and the voter off the bisector
    // repairs the instance
    inst.boxes[3] = Point::from_ints(5, 3);
    inst.voters[1].location = Point::from_ints(5, 6);
    println!("after the move: {}", validate_instance(&inst, true).ok);
    println!("separator: {:?}", solve(&inst, &SeparatorConfig::default())?.status);

    // structural mistakes are rejected outright
    inst.voters.push(Voter::new(Point::from_ints(1, 1), Ranking(vec![0, 0])));
    let report = validate_instance(&inst, false);
    println!("bad ranking reported: {:?}", report.violations.iter().map(|v| v.kind).collect::<Vec<_>>());
    assert!(matches!(brute_solve(&inst, &Plurality), Err(Error::InvalidInput(_))));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
