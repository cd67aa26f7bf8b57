//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Each check compares the library against an oracle written here.
//!
//! Set `UPDATE_GOLDEN=1` to rewrite the golden files of criterion 7.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::Instant;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use gerrymander::brute::brute_solve;
use gerrymander::election::is_yes_certificate;
use gerrymander::format::{parse_instance, write_instance, write_solution};
use gerrymander::generate::{gen_grid_tiling, gen_random, GenParams};
use gerrymander::geometry::{
    build_voronoi, circumcenter, clip_cell, incircle, is_simple_polygon, nearest_site, orientation, point_in_polygon,
    segment_in_cell, segment_on_side, sq_dist, EdgeEnd, Location, Segment,
};
use gerrymander::model::{rational, Plurality, Point, Rational};
use gerrymander::reduction::{gt_brute_solve, lift_solution, reduce, verify_claims, GridTilingInstance, GroupKind, RED};
use gerrymander::render::render_svg;
use gerrymander::separator::{init_state, solve_traced, SeparatorConfig, SeparatorTrace};
use gerrymander::solver::{solve, EngineKind, SolveOptions};
use gerrymander::{Instance, Status};

type Check = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

/// `ceil(3k / 4)`.
fn three_quarters(k: usize) -> usize {
    (3 * k).div_ceil(4)
}

/// `ceil(log_{4/3}(k / gamma)) + 1`: one plus the least `d` with
/// `gamma * 4^d >= k * 3^d`.
fn depth_limit(k: usize, gamma: usize) -> usize {
    let (mut lhs, mut rhs, mut d) = (gamma as u128, k as u128, 0);
    while lhs < rhs {
        lhs *= 4;
        rhs *= 3;
        d += 1;
    }
    d + 1
}

struct Run {
    seed: u64,
    inst: Instance,
    trace: SeparatorTrace,
}

// ---------------------------------------------------------------- 1 and 2

fn oracle_equivalence(runs: &mut Vec<Run>) -> Check {
    let cfg = SeparatorConfig { gamma: 2, max_noose_boxes: 4, safe_mode: true, ..SeparatorConfig::default() };
    let (mut yes, mut found_directly, mut confirmed_no) = (0, 0, 0);
    for seed in 0..200u64 {
        let k = 3 + (seed % 2) as usize;
        let params = GenParams {
            n_voters: 4 + (seed % 9) as usize,
            m_boxes: 6,
            n_candidates: 2,
            k,
            ell: 1 + (seed as usize / 2) % k,
            ..GenParams::default()
        };
        let inst = gen_random(seed, &params).map_err(|e| format!("seed {seed}: {e}"))?;
        let (answer, trace) = solve_traced(&inst, &Plurality, &cfg).map_err(|e| format!("seed {seed}: {e}"))?;
        let expected = brute_solve(&inst, &Plurality).map_err(|e| format!("seed {seed}: {e}"))?.status;
        ensure!(answer.status == expected, "seed {seed}: separator {:?}, brute force {:?}", answer.status, expected);
        if answer.status == Status::Yes {
            yes += 1;
            let cert = answer.certificate.as_deref().unwrap_or(&[]);
            ensure!(is_yes_certificate(&inst, cert, &Plurality), "seed {seed}: certificate {cert:?} does not verify");
            if !answer.stats.fallback_used {
                found_directly += 1;
            }
        } else if answer.stats.fallback_used {
            confirmed_no += 1;
        }
        runs.push(Run { seed, inst, trace });
    }
    Ok(format!(
        "200/200 agree ({yes} yes, {} no); {found_directly} yes answers found by the recursion itself, {confirmed_no} no answers confirmed by fallback",
        200 - yes
    ))
}

fn recursion_structure(runs: &[Run]) -> Check {
    let (mut recursed, mut splits, mut segments) = (0, 0, 0);
    for Run { seed, inst, trace } in runs {
        let bound = depth_limit(trace.root_k, trace.gamma);
        ensure!(trace.max_depth <= bound, "seed {seed}: depth {} exceeds {bound}", trace.max_depth);
        for &(parent, child) in &trace.child_bounds {
            ensure!(child <= three_quarters(parent), "seed {seed}: child k {child} of parent k {parent}");
        }
        if trace.recursed() {
            recursed += 1;
        }
        if trace.accepted.is_empty() {
            continue;
        }
        let (ctx, _) = init_state(inst, &Plurality).map_err(|e| e.to_string())?;
        let boxes = ctx.boxes();
        for split in &trace.accepted {
            splits += 1;
            let noose = &split.noose;
            ensure!(split.k1 <= three_quarters(split.k) && split.k2 <= three_quarters(split.k), "seed {seed}: unbalanced split");
            // closure and alternation: t boxes and t vertices, each vertex
            // named by both boxes it joins and equidistant from its triple
            let t = noose.boxes.len();
            ensure!(t >= 3 && noose.vertices.len() == t, "seed {seed}: noose is not closed");
            ensure!(noose.boxes.iter().collect::<BTreeSet<_>>().len() == t, "seed {seed}: a box repeats on the noose");
            for i in 0..t {
                let (b, next, u) = (noose.boxes[i], noose.boxes[(i + 1) % t], &noose.vertices[i]);
                ensure!(u.triple.contains(&b) && u.triple.contains(&next), "seed {seed}: vertex {i} does not join its boxes");
                let d = sq_dist(&u.location, &boxes[u.triple[0]]);
                ensure!(
                    u.triple.iter().all(|&x| sq_dist(&u.location, &boxes[x]) == d) && !d.is_zero(),
                    "seed {seed}: vertex {i} is not a circumcenter"
                );
            }
            let polygon = noose.polygon(boxes);
            ensure!(polygon == split.polygon && polygon.len() == 2 * t, "seed {seed}: recorded polygon differs");
            ensure!(is_simple_polygon(&polygon), "seed {seed}: noose is not simple");
            ensure!(noose.is_well_formed(&ctx), "seed {seed}: noose rejected by its own check");
            for i in 0..polygon.len() {
                let s = Segment::new(polygon[i].clone(), polygon[(i + 1) % polygon.len()].clone()).map_err(|e| e.to_string())?;
                segments += 1;
                ensure!(
                    split.region.iter().all(|c| segment_on_side(&c.polygon, c.side, &s)),
                    "seed {seed}: noose leaves the region"
                );
            }
        }
    }
    Ok(format!("{recursed} runs recursed; {splits} accepted nooses ({segments} segments) well formed and inside their regions"))
}

// ---------------------------------------------------------------- 3 and 5

fn reduction_cases() -> Vec<(String, GridTilingInstance)> {
    let mut cases: Vec<_> = (0..50u64)
        .map(|seed| (format!("seed {seed}"), gen_grid_tiling(seed, 2, 2, [0.3, 0.5, 0.7][seed as usize % 3]).unwrap()))
        .collect();
    cases.push(("figure".into(), GridTilingInstance::figure_example()));
    cases
}

fn reduction_equivalence(cases: &[(String, GridTilingInstance)]) -> Check {
    let mut yes = 0;
    for (name, gt) in cases {
        let expected = gt_brute_solve(gt);
        if let Some(sol) = &expected {
            ensure!(sol.is_valid_for(gt), "{name}: backtracking returned an invalid tiling");
        }
        let (inst, map) = reduce(gt).map_err(|e| format!("{name}: {e}"))?;
        ensure!(inst.k == gt.k * gt.k && inst.ell == inst.k, "{name}: wrong k or ell");
        let answer = brute_solve(&inst, &Plurality).map_err(|e| format!("{name}: {e}"))?;
        ensure!(
            expected.is_some() == (answer.status == Status::Yes),
            "{name}: grid tiling {:?}, gerrymandering {:?}",
            expected.is_some(),
            answer.status
        );
        if let Some(cert) = &answer.certificate {
            yes += 1;
            let lifted = lift_solution(&map, cert).ok_or(format!("{name}: certificate does not lift"))?;
            ensure!(lifted.is_valid_for(gt), "{name}: lifted tiling is invalid");
        }
    }
    ensure!(cases.last().is_some_and(|(_, gt)| gt_brute_solve(gt).is_some()), "the figure instance must be solvable");
    Ok(format!("{}/{} agree ({yes} yes, {} no)", cases.len(), cases.len(), cases.len() - yes))
}

fn surplus(cases: &[(String, GridTilingInstance)]) -> Check {
    for (name, gt) in cases {
        let (inst, map) = reduce(gt).map_err(|e| format!("{name}: {e}"))?;
        ensure!(map.voter_groups.len() == gt.k * gt.k, "{name}: expected one group set per cell");
        for cell in &map.voter_groups {
            ensure!(cell.red_minus_blue() == 1, "{name}: cell {:?} has surplus {}", cell.cell, cell.red_minus_blue());
        }
        // recount from the voters themselves
        let global: i128 = inst
            .voters
            .iter()
            .map(|v| if v.ranking.top() == Some(RED) { v.multiplicity as i128 } else { -(v.multiplicity as i128) })
            .sum();
        ensure!(global == (gt.k * gt.k) as i128, "{name}: global surplus {global}");
    }
    Ok(format!("{} reduced instances: every cell +1, total k^2", cases.len()))
}

// ---------------------------------------------------------------- 4

fn claims() -> Check {
    let mut checked = 0;
    for k in 1..=3 {
        for n in 1..=3 {
            let gt = GridTilingInstance::full(k, n).map_err(|e| e.to_string())?;
            let report = verify_claims(&gt);
            ensure!(report.violations.is_empty(), "k={k} n={n}: {:?}", report.violations[0]);
            // 2k(k-1) neighbouring cell pairs, n^4 box pairs, two groups each
            let expected = 2 * k * (k - 1) * n.pow(4) * 2;
            ensure!(report.checked == expected, "k={k} n={n}: {} comparisons, expected {expected}", report.checked);
            checked += report.checked;
            defections(k, n)?;
        }
    }
    Ok(format!("{checked} comparisons over k, n <= 3, no violations; defection counts match"))
}

/// Independently of orientation: for neighbouring cells with one box each,
/// the two facing border groups both vote at home when the shared
/// coordinate agrees, and exactly one defects to the other box otherwise.
fn defections(k: usize, n: usize) -> Result<(), String> {
    let gt = GridTilingInstance::full(k, n).map_err(|e| e.to_string())?;
    let (inst, map) = reduce(&gt).map_err(|e| e.to_string())?;
    let group = |cell: (usize, usize), kind: GroupKind| {
        let groups = &map.voter_groups.iter().find(|c| c.cell == cell).unwrap().groups;
        inst.voters[groups.iter().find(|g| g.kind == kind).unwrap().voter].location.clone()
    };
    for (&(i, j, p, q), &a) in &map.box_of_pair {
        let neighbours = [((i + 1, j), GroupKind::Right, GroupKind::Left, 0), ((i, j + 1), GroupKind::Down, GroupKind::Up, 1)];
        for ((i2, j2), near, far, axis) in neighbours {
            if i2 > k || j2 > k {
                continue;
            }
            let (near_voter, far_voter) = (group((i, j), near), group((i2, j2), far));
            for (&(_, _, p2, q2), &b) in map.box_of_pair.range((i2, j2, 0, 0)..=(i2, j2, n, n)) {
                let (own_a, own_b) = (&inst.boxes[a], &inst.boxes[b]);
                let home = usize::from(sq_dist(&near_voter, own_a) < sq_dist(&near_voter, own_b))
                    + usize::from(sq_dist(&far_voter, own_b) < sq_dist(&far_voter, own_a));
                let agree = if axis == 0 { p == p2 } else { q == q2 };
                ensure!(home == if agree { 2 } else { 1 }, "k={k} n={n}: cells ({i},{j}) and ({i2},{j2}), {home} groups at home");
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------- 6

fn random_point(rng: &mut ChaCha8Rng) -> Point {
    Point::new(rational(rng.gen_range(0..=40), 2), rational(rng.gen_range(0..=40), 2))
}

fn distinct_points(rng: &mut ChaCha8Rng, n: usize) -> Vec<Point> {
    let mut out: Vec<Point> = Vec::new();
    while out.len() < n {
        let p = random_point(rng);
        if !out.contains(&p) {
            out.push(p);
        }
    }
    out
}

/// Nearest site by scanning, `None` on a tie.
fn oracle_nearest(sites: &[Point], q: &Point) -> Option<usize> {
    let d: Vec<Rational> = sites.iter().map(|s| sq_dist(q, s)).collect();
    let best = d.iter().min()?;
    let at: Vec<usize> = (0..sites.len()).filter(|&i| &d[i] == best).collect();
    (at.len() == 1).then(|| at[0])
}

/// Half-plane test for `p` in the closed cell of `i`: for every `j`,
/// `2 p . (s_j - s_i) <= |s_j|^2 - |s_i|^2`.
fn in_half_planes(sites: &[Point], i: usize, p: &Point) -> bool {
    let norm = |s: &Point| &s.x * &s.x + &s.y * &s.y;
    sites.iter().enumerate().all(|(j, sj)| {
        let si = &sites[i];
        let lhs = rational(2, 1) * (&p.x * (&sj.x - &si.x) + &p.y * (&sj.y - &si.y));
        j == i || lhs <= norm(sj) - norm(si)
    })
}

/// Triples whose circumcircle has no site strictly inside.
fn empty_circle_triples(sites: &[Point]) -> usize {
    let n = sites.len();
    let mut count = 0;
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if let Some(o) = circumcenter(&sites[a], &sites[b], &sites[c]) {
                    let r = sq_dist(&o, &sites[a]);
                    if sites.iter().all(|s| sq_dist(&o, s) >= r) {
                        count += 1;
                    }
                }
            }
        }
    }
    count
}

fn has_cocircular_four(sites: &[Point]) -> bool {
    let n = sites.len();
    (0..n).any(|a| {
        (a + 1..n).any(|b| {
            (b + 1..n).any(|c| {
                !orientation(&sites[a], &sites[b], &sites[c]).is_zero()
                    && (c + 1..n).any(|d| incircle(&sites[a], &sites[b], &sites[c], &sites[d]).is_zero())
            })
        })
    })
}

fn geometry_suite() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let (lo, hi) = (Point::from_ints(-5, -5), Point::from_ints(25, 25));
    let (mut diagrams, mut degenerate, mut seg_in, mut seg_out, mut queries) = (0, 0, 0, 0, 0);
    for trial in 0..1000 {
        // circumcenters
        let t = distinct_points(&mut rng, 3);
        match circumcenter(&t[0], &t[1], &t[2]) {
            Some(o) => ensure!(
                !orientation(&t[0], &t[1], &t[2]).is_zero()
                    && sq_dist(&o, &t[0]) == sq_dist(&o, &t[1])
                    && sq_dist(&o, &t[1]) == sq_dist(&o, &t[2]),
                "trial {trial}: circumcenter not equidistant"
            ),
            None => ensure!(orientation(&t[0], &t[1], &t[2]).is_zero(), "trial {trial}: missing circumcenter"),
        }

        let n = rng.gen_range(1..=7);
        let sites = distinct_points(&mut rng, n);

        // nearest site against cell membership
        for _ in 0..4 {
            queries += 1;
            let q = random_point(&mut rng);
            let expected = oracle_nearest(&sites, &q);
            match (nearest_site(&sites, &q), expected) {
                (Ok(i), Some(j)) => ensure!(i == j, "trial {trial}: nearest {i}, expected {j}"),
                (Err(_), None) => {}
                (got, want) => return Err(format!("trial {trial}: nearest {got:?}, expected {want:?}")),
            }
            for i in 0..n {
                let cell = clip_cell(&sites, i, &lo, &hi);
                let loc =
                    if cell.len() >= 3 { point_in_polygon(&cell, &q).map_err(|e| e.to_string())? } else { Location::Outside };
                let closed = in_half_planes(&sites, i, &q);
                ensure!(closed == (loc != Location::Outside), "trial {trial}: query vs cell {i} closure");
                ensure!((expected == Some(i)) == (loc == Location::Inside), "trial {trial}: query vs cell {i} interior");
            }
        }

        // diagram invariants
        let diagram = match build_voronoi(&sites) {
            Ok(d) => d,
            Err(_) => {
                ensure!(has_cocircular_four(&sites), "trial {trial}: diagram refused for sites in general position");
                degenerate += 1;
                continue;
            }
        };
        diagrams += 1;
        ensure!(diagram.cells.len() == n && diagram.euler_characteristic() == 2, "trial {trial}: Euler characteristic");
        ensure!(diagram.vertices.len() == empty_circle_triples(&sites), "trial {trial}: vertex count");
        for v in &diagram.vertices {
            let r = sq_dist(&v.location, &sites[v.sites[0]]);
            for (j, s) in sites.iter().enumerate() {
                let d = sq_dist(&v.location, s);
                ensure!(if v.sites.contains(&j) { d == r } else { d > r }, "trial {trial}: vertex circle not empty");
            }
        }
        for (e, edge) in diagram.edges.iter().enumerate() {
            let [a, b] = edge.sites;
            for end in &edge.ends {
                if let EdgeEnd::Vertex(v) = end {
                    ensure!(
                        diagram.vertices[*v].sites.contains(&a) && diagram.vertices[*v].sites.contains(&b),
                        "trial {trial}: edge end"
                    );
                }
            }
            if let Some(s) = diagram.edge_segment(e) {
                let mid = s.at(&rational(1, 2));
                let d = sq_dist(&mid, &sites[a]);
                ensure!(d == sq_dist(&mid, &sites[b]), "trial {trial}: edge {e} off its bisector");
                ensure!(
                    sites.iter().enumerate().all(|(j, x)| j == a || j == b || sq_dist(&mid, x) > d),
                    "trial {trial}: edge {e} not on the diagram"
                );
            }
            ensure!(diagram.cells[a].edges.contains(&e) && diagram.cells[b].edges.contains(&e), "trial {trial}: edge {e} cells");
        }

        // segments: random ones, and ones from a site to a corner of its cell
        for i in 0..n {
            let corner = diagram.cells[i].polygon[rng.gen_range(0..diagram.cells[i].polygon.len())].clone();
            let mut segs = vec![(random_point(&mut rng), random_point(&mut rng))];
            if corner != sites[i] {
                segs.push((sites[i].clone(), corner));
            }
            for (a, b) in segs {
                let Ok(s) = Segment::new(a, b) else { continue };
                let expected = in_half_planes(&sites, i, &s.a) && in_half_planes(&sites, i, &s.b);
                ensure!(segment_in_cell(&diagram, i, &s) == expected, "trial {trial}: segment in cell {i}");
                if expected {
                    seg_in += 1;
                } else {
                    seg_out += 1;
                }
            }
        }
    }
    ensure!(seg_in > 0 && seg_out > 0 && diagrams > 900, "too few informative trials");
    Ok(format!(
        "1000 trials: {diagrams} diagrams ({degenerate} refused with cocircular sites), {queries} queries, {seg_in} segments inside, {seg_out} outside"
    ))
}

// ---------------------------------------------------------------- 7

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn illustrative() -> (PathBuf, Instance) {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/data/illustrative_districts.json");
    let inst = parse_instance(&std::fs::read(&path).unwrap()).unwrap();
    (path, inst)
}

fn golden_outputs(inst: &Instance) -> Result<(Vec<u8>, Vec<u8>), String> {
    let opts = SolveOptions {
        engine: EngineKind::Separator,
        separator: SeparatorConfig { safe_mode: true, ..SeparatorConfig::default() },
        ..SolveOptions::default()
    };
    let answer = solve(inst, &opts).map_err(|e| e.to_string())?;
    let boxes = answer.certificate.clone().ok_or("the illustrative instance must be yes")?;
    Ok((write_solution(&answer, false), render_svg(inst, Some(&boxes)).map_err(|e| e.to_string())?))
}

fn gerry(args: &[&str]) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_gerry")).args(args).output().map_err(|e| e.to_string())?;
    ensure!(out.status.code().is_some_and(|c| c <= 1), "gerry {args:?}: {}", String::from_utf8_lossy(&out.stderr));
    Ok(out.stdout)
}

fn determinism() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for seed in 0..100u64 {
        let m = rng.gen_range(3..=8);
        let k = rng.gen_range(1..=m);
        let params = GenParams {
            n_voters: rng.gen_range(1..=15),
            m_boxes: m,
            n_candidates: rng.gen_range(1..=4),
            k,
            ell: rng.gen_range(0..=k),
            bbox: [-10, -5, 10, 15],
            coord_denominator: rng.gen_range(1..=7),
        };
        let inst = gen_random(seed, &params).map_err(|e| format!("seed {seed}: {e}"))?;
        let bytes = write_instance(&inst);
        let back = parse_instance(&bytes).map_err(|e| format!("seed {seed}: {e}"))?;
        ensure!(back == inst && write_instance(&back) == bytes, "seed {seed}: round trip changed the instance");
    }

    let (path, inst) = illustrative();
    let (solution, svg) = golden_outputs(&inst)?;
    let (sol_file, svg_file) = (golden_dir().join("illustrative_solution.json"), golden_dir().join("illustrative_districts.svg"));
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&sol_file, &solution).map_err(|e| e.to_string())?;
        std::fs::write(&svg_file, &svg).map_err(|e| e.to_string())?;
    }
    ensure!(golden_outputs(&inst)? == (solution.clone(), svg.clone()), "two in-process runs differ");
    ensure!(std::fs::read(&sol_file).map_err(|e| e.to_string())? == solution, "solution differs from the golden file");
    ensure!(std::fs::read(&svg_file).map_err(|e| e.to_string())? == svg, "picture differs from the golden file");

    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let input = path.to_str().unwrap();
    let mut brute = Vec::new();
    for threads in ["1", "3"] {
        let out = gerry(&["--threads", threads, "solve", input, "--engine", "separator", "--safe"])?;
        ensure!(out == solution, "command line with {threads} threads: solution differs");
        let svg_path = dir.path().join(format!("{threads}.svg"));
        let sol_path = sol_file.to_str().unwrap();
        gerry(&["--threads", threads, "render", input, "--solution", sol_path, "-o", svg_path.to_str().unwrap()])?;
        ensure!(
            std::fs::read(&svg_path).map_err(|e| e.to_string())? == svg,
            "command line with {threads} threads: picture differs"
        );
        brute.push(gerry(&["--threads", threads, "solve", input, "--engine", "brute"])?);
    }
    ensure!(brute[0] == brute[1], "brute force output depends on the thread count");
    Ok("100 round trips exact; golden solution and picture identical across runs, library and command line, 1 and 3 threads"
        .into())
}

// ----------------------------------------------------------------

fn report(number: usize, name: &str, check: impl FnOnce() -> Check) -> bool {
    let start = Instant::now();
    let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|panic| {
        let msg = panic.downcast_ref::<String>().cloned().or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()));
        Err(format!("panicked: {}", msg.unwrap_or_default()))
    });
    let secs = start.elapsed().as_secs_f64();
    match &result {
        Ok(detail) => println!("criterion {number} [{name}]: PASS ({secs:.1}s) {detail}"),
        Err(detail) => println!("criterion {number} [{name}]: FAIL ({secs:.1}s) {detail}"),
    }
    result.is_ok()
}

fn main() {
    let mut runs = Vec::new();
    let cases = reduction_cases();
    let results = [
        report(1, "oracle equivalence", || oracle_equivalence(&mut runs)),
        report(2, "recursion structure", || {
            ensure!(runs.len() == 200, "needs the runs of criterion 1");
            recursion_structure(&runs)
        }),
        report(3, "reduction equivalence", || reduction_equivalence(&cases)),
        report(4, "distance claims", claims),
        report(5, "per-cell surplus", || surplus(&cases)),
        report(6, "geometry", geometry_suite),
        report(7, "determinism and formats", determinism),
    ];
    let passed = results.iter().filter(|&&ok| ok).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    if passed != results.len() {
        std::process::exit(1);
    }
}
