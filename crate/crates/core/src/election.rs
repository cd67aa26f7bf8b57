//! Districts from a set of opened boxes, and win counting.

use std::collections::HashMap;

use crate::geometry::{nearest_site, sq_dist};
use crate::model::{Instance, Point, Profile, Ranking, Voter, VotingRule};
use crate::{Error, Result};

/// Voter-to-box assignment and the resulting per-box profiles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Districting {
    /// `assignment[v]` is the position in `chosen` of voter `v`'s box.
    pub assignment: Vec<usize>,
    pub profiles: Vec<Profile>,
}

/// Sends every voter to its nearest point of `chosen`.
pub fn assign_voters(voters: &[Voter], chosen: &[Point]) -> Result<Districting> {
    if chosen.is_empty() {
        return Err(Error::invalid("no boxes chosen"));
    }
    let mut assignment = Vec::with_capacity(voters.len());
    let mut profiles = vec![Profile::new(); chosen.len()];
    for v in voters {
        let b = nearest_site(chosen, &v.location)?;
        assignment.push(b);
        *profiles[b].entry(v.ranking.clone()).or_insert(0) += v.multiplicity;
    }
    Ok(Districting { assignment, profiles })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElectionOutcome {
    /// Winner of each chosen box, in the order given.
    pub winners: Vec<Option<usize>>,
    pub target_wins: usize,
}

fn chosen_points(inst: &Instance, chosen: &[usize]) -> Result<Vec<Point>> {
    let mut seen = vec![false; inst.boxes.len()];
    chosen
        .iter()
        .map(|&b| {
            if b >= inst.boxes.len() || std::mem::replace(&mut seen[b], true) {
                return Err(Error::invalid(format!("box index {b} out of range or repeated")));
            }
            Ok(inst.boxes[b].clone())
        })
        .collect()
}

/// Elects a winner in every district of `chosen` (indices into `inst.boxes`).
pub fn count_wins(inst: &Instance, chosen: &[usize], rule: &dyn VotingRule) -> Result<ElectionOutcome> {
    let points = chosen_points(inst, chosen)?;
    let districting = assign_voters(&inst.voters, &points)?;
    let winners = districting.profiles.iter().map(|p| rule.winner(p)).collect::<Result<Vec<_>>>()?;
    let target_wins = winners.iter().filter(|w| **w == Some(inst.target)).count();
    Ok(ElectionOutcome { winners, target_wins })
}

/// Whether `chosen` has exactly `k` boxes and the target wins at least `ell`
/// of them. Ambiguous districtings (a voter tied between two chosen boxes)
/// are never certificates.
pub fn is_yes_certificate(inst: &Instance, chosen: &[usize], rule: &dyn VotingRule) -> bool {
    chosen.len() == inst.k && count_wins(inst, chosen, rule).is_ok_and(|o| o.target_wins >= inst.ell)
}

/// Precomputed distance ranks for evaluating many box subsets quickly.
///
/// Boxes are ranked per voter by exact squared distance; equal distances share
/// a rank, so ties among the opened boxes are detected.
pub(crate) struct RankedElection {
    pub rankings: Vec<Ranking>,
    pub voter_ranking: Vec<usize>,
    pub multiplicity: Vec<u64>,
    /// `rank[v][b]`: position of box `b` in voter `v`'s distance order.
    pub rank: Vec<Vec<u32>>,
}

impl RankedElection {
    pub fn new(voters: &[Voter], boxes: &[Point]) -> Self {
        let mut index: HashMap<&Ranking, usize> = HashMap::new();
        let mut rankings = Vec::new();
        let mut voter_ranking = Vec::with_capacity(voters.len());
        for v in voters {
            let id = *index.entry(&v.ranking).or_insert_with(|| {
                rankings.push(v.ranking.clone());
                rankings.len() - 1
            });
            voter_ranking.push(id);
        }
        let rank = voters
            .iter()
            .map(|v| {
                let d: Vec<_> = boxes.iter().map(|b| sq_dist(&v.location, b)).collect();
                let mut order: Vec<usize> = (0..boxes.len()).collect();
                order.sort_by(|&a, &b| d[a].cmp(&d[b]));
                let mut rank = vec![0u32; boxes.len()];
                for w in 1..order.len() {
                    let same = d[order[w]] == d[order[w - 1]];
                    rank[order[w]] = if same { rank[order[w - 1]] } else { w as u32 };
                }
                rank
            })
            .collect();
        RankedElection { rankings, voter_ranking, multiplicity: voters.iter().map(|v| v.multiplicity).collect(), rank }
    }

    /// Position in `chosen` of voter `v`'s nearest box, `None` on a tie.
    #[inline]
    pub fn nearest(&self, v: usize, chosen: &[usize]) -> Option<usize> {
        let ranks = &self.rank[v];
        let mut best = 0;
        let mut tied = false;
        for (i, &b) in chosen.iter().enumerate().skip(1) {
            let (r, rb) = (ranks[b], ranks[chosen[best]]);
            if r < rb {
                best = i;
                tied = false;
            } else if r == rb {
                tied = true;
            }
        }
        if tied {
            None
        } else {
            Some(best)
        }
    }

    /// Per chosen box, the vote count of every distinct ranking, restricted to
    /// the voters in `voters`.
    pub fn tallies(&self, voters: impl IntoIterator<Item = usize>, chosen: &[usize]) -> Option<Vec<Vec<u64>>> {
        let mut counts = vec![vec![0u64; self.rankings.len()]; chosen.len()];
        for v in voters {
            let b = self.nearest(v, chosen)?;
            counts[b][self.voter_ranking[v]] += self.multiplicity[v];
        }
        Some(counts)
    }

    pub fn target_wins(&self, chosen: &[usize], rule: &dyn VotingRule, target: usize) -> Option<usize> {
        let counts = self.tallies(0..self.rank.len(), chosen)?;
        Some(counts.iter().filter(|c| rule.winner_counts(&self.rankings, c) == Some(target)).count())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{int, rational, Candidate, Plurality};

    fn pt(x: i64, y: i64) -> Point {
        Point::from_ints(x, y)
    }

    fn two_party(voters: Vec<(Point, usize)>, boxes: Vec<Point>, k: usize, ell: usize) -> Instance {
        Instance {
            candidates: vec![Candidate { id: "A".into() }, Candidate { id: "B".into() }],
            voters: voters
                .into_iter()
                .map(|(p, top)| Voter::new(p, Ranking(if top == 0 { vec![0, 1] } else { vec![1, 0] })))
                .collect(),
            boxes,
            k,
            ell,
            target: 0,
        }
    }

    #[test]
    fn assignment_examples() {
        let voters = vec![Voter::new(pt(0, 0), Ranking(vec![0, 1]))];
        let d = assign_voters(&voters, &[pt(1, 0), pt(5, 0)]).unwrap();
        assert_eq!(d.assignment, vec![0]);
        let many: Vec<Voter> = (0..5).map(|i| Voter::new(pt(i * 3, -i), Ranking(vec![0, 1]))).collect();
        let d = assign_voters(&many, &[pt(100, 100)]).unwrap();
        assert!(d.assignment.iter().all(|&b| b == 0));
        assert_eq!(d.profiles[0].values().sum::<u64>(), 5);
        assert!(assign_voters(&voters, &[]).is_err());
        assert!(matches!(assign_voters(&voters, &[pt(1, 0), pt(-1, 0)]), Err(Error::Degenerate(_))));
    }

    #[test]
    fn split_four_voters() {
        let half = rational(1, 2);
        let inst = two_party(
            vec![(pt(0, 0), 0), (pt(0, 1), 0), (pt(10, 0), 1), (pt(10, 1), 1)],
            vec![Point::new(int(0), half.clone()), Point::new(int(10), half)],
            2,
            1,
        );
        // (0,0) and (0,1) are both at squared distance 1/4 from (0,1/2) but
        // each has a unique nearest box
        let out = count_wins(&inst, &[0, 1], &Plurality).unwrap();
        assert_eq!(out.winners, vec![Some(0), Some(1)]);
        assert_eq!(out.target_wins, 1);
        assert!(is_yes_certificate(&inst, &[0, 1], &Plurality));
        assert!(!is_yes_certificate(&inst, &[0], &Plurality));
    }

    #[test]
    fn empty_districts_have_no_winner() {
        let inst = two_party(vec![], vec![pt(0, 0), pt(3, 1)], 2, 0);
        let out = count_wins(&inst, &[0, 1], &Plurality).unwrap();
        assert_eq!(out.target_wins, 0);
        assert_eq!(out.winners, vec![None, None]);
        // ell = 0 is met by any k-subset
        assert!(is_yes_certificate(&inst, &[1, 0], &Plurality));
    }

    #[test]
    fn bad_chosen_indices() {
        let inst = two_party(vec![], vec![pt(0, 0), pt(3, 1)], 2, 0);
        assert!(count_wins(&inst, &[0, 0], &Plurality).is_err());
        assert!(count_wins(&inst, &[0, 7], &Plurality).is_err());
        assert!(!is_yes_certificate(&inst, &[0, 0], &Plurality));
    }

    #[test]
    fn ranked_election_agrees_with_direct_count() {
        let inst = two_party(
            vec![(pt(0, 0), 0), (pt(1, 5), 1), (pt(7, 2), 0), (pt(9, 9), 1), (pt(4, 4), 0)],
            vec![pt(1, 1), pt(8, 3), pt(2, 7), pt(6, 8)],
            2,
            1,
        );
        let fast = RankedElection::new(&inst.voters, &inst.boxes);
        for a in 0..4 {
            for b in a + 1..4 {
                // (7,2) is tied between boxes 1 and 3; both paths must notice
                let direct = count_wins(&inst, &[a, b], &Plurality).ok().map(|o| o.target_wins);
                assert_eq!(fast.target_wins(&[a, b], &Plurality, 0), direct);
            }
        }
    }
}
