//! Randomised properties checked against small independent oracles.

use proptest::prelude::*;

use gerrymander::brute::{brute_solve, combinations};
use gerrymander::election::{count_wins, is_yes_certificate};
use gerrymander::format::{parse_instance, write_instance};
use gerrymander::generate::{gen_grid_tiling, gen_random, GenParams};
use gerrymander::geometry::{orient, orientation, sq_dist};
use gerrymander::model::{format_rational, parse_rational, rational, Plurality, Point};
use gerrymander::reduction::{gt_brute_solve, GridTilingInstance};
use gerrymander::separator::{self, SeparatorConfig};
use gerrymander::{Instance, Status};

fn params() -> impl Strategy<Value = GenParams> {
    (1usize..=10, 2usize..=6, 1usize..=3, 1u32..=5).prop_flat_map(|(n_voters, m_boxes, n_candidates, coord_denominator)| {
        (1..=m_boxes).prop_flat_map(move |k| {
            (0..=k).prop_map(move |ell| GenParams {
                n_voters,
                m_boxes,
                n_candidates,
                k,
                ell,
                bbox: [0, 0, 8, 8],
                coord_denominator,
            })
        })
    })
}

fn instance() -> impl Strategy<Value = Instance> {
    (any::<u64>(), params()).prop_map(|(seed, p)| gen_random(seed, &p).unwrap())
}

/// Most districts the target wins over all `k`-subsets, by direct counting.
fn best_wins(inst: &Instance) -> usize {
    combinations(inst.boxes.len(), inst.k)
        .filter_map(|c| count_wins(inst, &c, &Plurality).ok())
        .map(|o| o.target_wins)
        .max()
        .unwrap_or(0)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn rationals_round_trip(n in any::<i64>(), d in 1i64..=i64::MAX) {
        let r = rational(n, d);
        prop_assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
    }

    #[test]
    fn decimals_parse_exactly(whole in 0u32..10_000, frac in 0u32..1000) {
        let text = format!("{whole}.{frac:03}");
        prop_assert_eq!(parse_rational(&text).unwrap(), rational(i64::from(whole) * 1000 + i64::from(frac), 1000));
    }

    #[test]
    fn instances_round_trip(inst in instance()) {
        let bytes = write_instance(&inst);
        let back = parse_instance(&bytes).unwrap();
        prop_assert_eq!(write_instance(&back), bytes);
        prop_assert_eq!(back, inst);
    }

    #[test]
    fn won_districts_hold_a_target_voter(inst in instance(), pick in any::<prop::sample::Index>()) {
        let subsets: Vec<Vec<usize>> = combinations(inst.boxes.len(), inst.k).collect();
        let chosen = &subsets[pick.index(subsets.len())];
        if let Ok(outcome) = count_wins(&inst, chosen, &Plurality) {
            prop_assert!(outcome.target_wins <= inst.k);
            // a district is won only if some voter there ranks the target first
            for (slot, winner) in outcome.winners.iter().enumerate() {
                if *winner == Some(inst.target) {
                    let home = &inst.boxes[chosen[slot]];
                    let supported = inst.voters.iter().any(|v| {
                        v.ranking.top() == Some(inst.target)
                            && chosen.iter().all(|&b| sq_dist(&v.location, home) <= sq_dist(&v.location, &inst.boxes[b]))
                    });
                    prop_assert!(supported);
                }
            }
        }
    }

    #[test]
    fn brute_force_matches_exhaustive_count(inst in instance()) {
        let answer = brute_solve(&inst, &Plurality).unwrap();
        prop_assert_eq!(answer.status == Status::Yes, best_wins(&inst) >= inst.ell);
        if let Some(cert) = &answer.certificate {
            prop_assert!(is_yes_certificate(&inst, cert, &Plurality));
        }
    }

    #[test]
    fn lowering_the_threshold_keeps_yes(inst in instance()) {
        if inst.ell > 0 && brute_solve(&inst, &Plurality).unwrap().status == Status::Yes {
            prop_assert_eq!(brute_solve(&inst.with_ell(inst.ell - 1), &Plurality).unwrap().status, Status::Yes);
        }
    }

    #[test]
    fn orientation_signs_agree(c in prop::array::uniform6(-50i64..50), d in prop::array::uniform6(1i64..9)) {
        let p = |i: usize| Point::new(rational(c[i], d[i]), rational(c[i + 1], d[i + 1]));
        let (a, b, q) = (p(0), p(2), p(4));
        let signed = orientation(&a, &b, &q);
        prop_assert_eq!(orient(&a, &b, &q), signed.cmp(&rational(0, 1)));
        prop_assert_eq!(orient(&b, &a, &q), orient(&a, &b, &q).reverse());
    }

    #[test]
    fn grid_tiling_answers_satisfy_constraints(seed in any::<u64>(), k in 1usize..=3, n in 1usize..=3, density in 0.1f64..0.9) {
        let gt = gen_grid_tiling(seed, k, n, density).unwrap();
        match gt_brute_solve(&gt) {
            Some(sol) => prop_assert!(sol.is_valid_for(&gt)),
            None => {
                // S_{i,j} and S_{i+1,j} share p, S_{i,j} and S_{i,j+1} share q:
                // a tiling is one p per j and one q per i; try them all
                let values: Vec<usize> = (1..=n).collect();
                let exists = coordinate_choices(k, &values).into_iter().any(|(ps, qs)| {
                    (1..=k).all(|i| (1..=k).all(|j| gt.set(i, j).contains(&(ps[j - 1], qs[i - 1]))))
                });
                prop_assert!(!exists);
            }
        }
    }
}

/// Every pair of `k`-tuples over `values`.
fn coordinate_choices(k: usize, values: &[usize]) -> Vec<(Vec<usize>, Vec<usize>)> {
    let mut tuples: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..k {
        tuples = tuples.into_iter().flat_map(|t| values.iter().map(move |&v| [t.clone(), vec![v]].concat())).collect();
    }
    tuples.iter().flat_map(|ps| tuples.iter().map(move |qs| (ps.clone(), qs.clone()))).collect()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 12, ..ProptestConfig::default() })]

    #[test]
    fn safe_separator_agrees_with_brute_force(seed in any::<u64>(), n_voters in 3usize..=8, k in 2usize..=3, ell in 1usize..=3) {
        let params = GenParams { n_voters, m_boxes: 5, k, ell: ell.min(k), ..GenParams::default() };
        let inst = gen_random(seed, &params).unwrap();
        let cfg = SeparatorConfig { safe_mode: true, ..SeparatorConfig::default() };
        let answer = separator::solve(&inst, &cfg).unwrap();
        prop_assert_eq!(answer.status, brute_solve(&inst, &Plurality).unwrap().status);
        if let Some(cert) = &answer.certificate {
            prop_assert!(is_yes_certificate(&inst, cert, &Plurality));
        }
    }
}

#[test]
fn figure_instance_is_solvable() {
    let gt = GridTilingInstance::figure_example();
    let sol = gt_brute_solve(&gt).expect("solvable");
    assert!(sol.is_valid_for(&gt));
}
