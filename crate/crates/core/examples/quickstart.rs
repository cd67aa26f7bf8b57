// Build a small election by hand, decide it by exhaustive search, and look
// at the districts of the certificate.
//
// ```text
// cargo run --example quickstart
// ```

use gerrymander::brute::{brute_count_optimal, brute_solve};
use gerrymander::election::count_wins;
use gerrymander::model::{Candidate, Instance, Plurality, Point, Ranking, Voter};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    // two parties; "A" is the party we try to help
    let a_first = Ranking(vec![0, 1]);
    let b_first = Ranking(vec![1, 0]);
    let voter = |x, y, r: &Ranking| Voter::new(Point::from_ints(x, y), r.clone());
    let inst = Instance {
        candidates: vec![Candidate { id: "A".into() }, Candidate { id: "B".into() }],
        voters: vec![
            voter(0, 0, &a_first),
            voter(1, 2, &a_first),
            voter(9, 1, &a_first),
            voter(9, 2, &a_first),
            voter(7, 0, &b_first),
            voter(6, 6, &b_first).with_multiplicity(3),
            voter(8, 8, &b_first),
            voter(2, 9, &b_first),
        ],
        // candidate locations for ballot boxes
        boxes: vec![Point::from_ints(1, 1), Point::from_ints(8, 1), Point::from_ints(5, 5), Point::from_ints(3, 8)],
        k: 3,
        ell: 2,
        target: 0,
    };

    let answer = brute_solve(&inst, &Plurality)?;
    println!("can A win {} of {} districts? {:?}", inst.ell, inst.k, answer.status);
    println!("subsets examined: {}", answer.stats.states_explored);
    if let Some(chosen) = &answer.certificate {
        let outcome = count_wins(&inst, chosen, &Plurality)?;
        for (b, winner) in chosen.iter().zip(&outcome.winners) {
            let name = winner.map_or("nobody (tie)", |c| inst.candidates[c].id.as_str());
            println!("  box {b} at {:?} is won by {name}", inst.boxes[*b]);
        }
    }
    println!("best achievable: {} districts", brute_count_optimal(&inst, &Plurality)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
