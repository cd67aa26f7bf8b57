//! Seeded random instances in general position.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::model::{validate_instance, Candidate, Instance, Point, Ranking, Rational, ViolationKind, Voter};
use crate::reduction::GridTilingInstance;
use crate::{Error, Result};

/// Deep geometry checks are quartic in the number of boxes; above this many
/// boxes only voter equidistance is enforced.
pub const DEEP_CHECK_MAX_BOXES: usize = 12;

const RESAMPLE_BUDGET: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenParams {
    pub n_voters: usize,
    pub m_boxes: usize,
    pub n_candidates: usize,
    pub k: usize,
    pub ell: usize,
    /// `[min_x, min_y, max_x, max_y]`, inclusive.
    pub bbox: [i64; 4],
    /// Coordinates are multiples of `1 / coord_denominator`.
    pub coord_denominator: u32,
}

impl Default for GenParams {
    fn default() -> Self {
        GenParams { n_voters: 10, m_boxes: 6, n_candidates: 2, k: 3, ell: 2, bbox: [0, 0, 10, 10], coord_denominator: 4 }
    }
}

impl GenParams {
    fn check(&self) -> Result<()> {
        let [x0, y0, x1, y1] = self.bbox;
        if self.n_candidates == 0 || self.k == 0 || self.ell > self.k || self.k > self.m_boxes {
            return Err(Error::invalid("need n_candidates >= 1 and ell <= k <= m_boxes with k >= 1"));
        }
        if x1 <= x0 || y1 <= y0 || self.coord_denominator == 0 {
            return Err(Error::invalid("bbox must have positive width and height, denominator positive"));
        }
        Ok(())
    }
}

fn candidate_ids(n: usize) -> Vec<Candidate> {
    (0..n)
        .map(|i| {
            let id = if n <= 26 { ((b'A' + i as u8) as char).to_string() } else { format!("c{i}") };
            Candidate { id }
        })
        .collect()
}

/// Draws an instance: uniform grid coordinates in the box, uniform rankings,
/// unit multiplicities, target the first candidate. Any point that breaks
/// the general-position assumptions is redrawn.
pub fn gen_random(seed: u64, params: &GenParams) -> Result<Instance> {
    params.check()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let den = i64::from(params.coord_denominator);
    let [x0, y0, x1, y1] = params.bbox;
    let draw = |rng: &mut ChaCha8Rng| {
        let x = rng.gen_range(x0 * den..=x1 * den);
        let y = rng.gen_range(y0 * den..=y1 * den);
        Point::new(Rational::new(x.into(), den.into()), Rational::new(y.into(), den.into()))
    };
    let deep = params.m_boxes <= DEEP_CHECK_MAX_BOXES;
    let mut inst = Instance {
        candidates: candidate_ids(params.n_candidates),
        voters: Vec::with_capacity(params.n_voters),
        boxes: Vec::with_capacity(params.m_boxes),
        k: params.k,
        ell: params.ell,
        target: 0,
    };
    let geometric_ok =
        |inst: &Instance| validate_instance(inst, deep).violations.iter().all(|v| v.kind == ViolationKind::ParamOrder);

    for _ in 0..params.m_boxes {
        let mut placed = false;
        for _ in 0..RESAMPLE_BUDGET {
            inst.boxes.push(draw(&mut rng));
            if geometric_ok(&inst) {
                placed = true;
                break;
            }
            inst.boxes.pop();
        }
        if !placed {
            return Err(Error::invalid("resample budget exceeded while placing boxes"));
        }
    }
    let base: Vec<usize> = (0..params.n_candidates).collect();
    for _ in 0..params.n_voters {
        let mut order = base.clone();
        order.shuffle(&mut rng);
        let ranking = Ranking(order);
        let mut placed = false;
        for _ in 0..RESAMPLE_BUDGET {
            let location = draw(&mut rng);
            let d: Vec<Rational> = inst.boxes.iter().map(|b| crate::geometry::sq_dist(&location, b)).collect();
            let mut sorted = d.clone();
            sorted.sort();
            if sorted.windows(2).all(|w| w[0] != w[1]) {
                inst.voters.push(Voter::new(location, ranking.clone()));
                placed = true;
                break;
            }
        }
        if !placed {
            return Err(Error::invalid("resample budget exceeded while placing voters"));
        }
    }
    Ok(inst)
}

/// A seeded Grid Tiling instance: each set holds every pair independently
/// with probability `density` (and at least one pair).
pub fn gen_grid_tiling(seed: u64, k: usize, n: usize, density: f64) -> Result<GridTilingInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sets = (0..k * k)
        .map(|_| {
            let mut set: Vec<(usize, usize)> =
                (1..=n).flat_map(|p| (1..=n).map(move |q| (p, q))).filter(|_| rng.gen_bool(density)).collect();
            if set.is_empty() {
                set.push((rng.gen_range(1..=n), rng.gen_range(1..=n)));
            }
            set
        })
        .collect();
    GridTilingInstance::new(k, n, sets)
}
