// The hardness construction: turn a Grid Tiling instance into a
// gerrymandering instance, solve both sides, and move solutions across.
//
// ```text
// cargo run --release --example grid_tiling_reduction
// ```

use gerrymander::brute::brute_solve;
use gerrymander::election::is_yes_certificate;
use gerrymander::model::Plurality;
use gerrymander::reduction::{gt_brute_solve, lift_solution, reduce, verify_claims, GridTilingInstance};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    // the 2 x 2 grid with pairs from [3] x [3] used to illustrate the construction
    let gt = GridTilingInstance::figure_example();
    for i in 1..=gt.k {
        for j in 1..=gt.k {
            println!("S({i},{j}) = {:?}", gt.set(i, j));
        }
    }
    let tiling = gt_brute_solve(&gt).ok_or("the example has a tiling")?;
    println!("a tiling: {:?}", tiling.selection);

    let (inst, map) = reduce(&gt)?;
    println!(
        "reduced instance: {} boxes, {} voter groups, k = {}, ell = {}",
        inst.boxes.len(),
        inst.voters.len(),
        inst.k,
        inst.ell
    );
    for cell in &map.voter_groups {
        println!("  cell {:?}: red minus blue = {}", cell.cell, cell.red_minus_blue());
    }

    // forward: a tiling picks one box per cell, and red wins every district
    let chosen: Vec<usize> = (1..=gt.k)
        .flat_map(|i| (1..=gt.k).map(move |j| (i, j)))
        .map(|(i, j)| {
            let (p, q) = tiling.get(gt.k, i, j);
            map.box_of_pair[&(i, j, p, q)]
        })
        .collect();
    println!("boxes of the tiling {chosen:?} certify the instance: {}", is_yes_certificate(&inst, &chosen, &Plurality));

    // backward: any certificate found by search lifts to a tiling
    let answer = brute_solve(&inst, &Plurality)?;
    let found = answer.certificate.ok_or("the reduced instance is a yes instance")?;
    let lifted = lift_solution(&map, &found).ok_or("certificates pick one box per cell")?;
    println!("search found {found:?}, which lifts to {:?} (valid: {})", lifted.selection, lifted.is_valid_for(&gt));

    let claims = verify_claims(&gt);
    println!("distance claims: {} comparisons, {} violations", claims.checked, claims.violations.len());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
