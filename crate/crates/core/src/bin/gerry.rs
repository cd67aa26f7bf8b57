//! Command-line front end. Exit codes: 0 yes or success, 1 no, 2 unknown,
//! 3 invalid input, 4 degenerate input or internal error.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use gerrymander::bench::{load_dir, run_bench};
use gerrymander::format::{parse_grid_tiling, parse_instance, parse_solution, write_grid_tiling, write_instance, write_solution};
use gerrymander::generate::{gen_grid_tiling, gen_random, GenParams};
use gerrymander::model::{rule, validate_instance};
use gerrymander::reduction::{gt_brute_solve, reduce_with, ReduceOptions};
use gerrymander::render::render_svg_with;
use gerrymander::separator::SeparatorConfig;
use gerrymander::solver::{solve, EngineKind, SolveOptions};
use gerrymander::{Error, Status};

#[derive(Parser)]
#[command(name = "gerry", version, about = "Exact solvers for nearest-ballot-box gerrymandering")]
struct Cli {
    /// Worker threads for parallel engines (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check an instance file against the input assumptions.
    Validate {
        file: PathBuf,
        /// Skip the quartic general-position checks on boxes.
        #[arg(long)]
        shallow: bool,
    },
    /// Decide an instance and print the answer as JSON.
    Solve {
        file: PathBuf,
        #[command(flatten)]
        engine: EngineArgs,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Include wall time in the answer (makes output nondeterministic).
        #[arg(long)]
        timing: bool,
    },
    /// Generate instances.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Reduce a problem to gerrymandering.
    #[command(subcommand)]
    Reduce(ReduceCommand),
    /// Grid Tiling utilities.
    #[command(subcommand)]
    Gridtiling(GridTilingCommand),
    /// Draw an instance, optionally with a solution, as SVG.
    Render {
        file: PathBuf,
        #[arg(long)]
        solution: Option<PathBuf>,
        #[arg(short, long)]
        out: PathBuf,
        #[arg(long, default_value = "plurality")]
        rule: String,
    },
    /// Run engines over a directory of instances.
    Bench {
        #[arg(long)]
        dir: PathBuf,
        /// Comma-separated engine names.
        #[arg(long, default_value = "brute,separator", value_delimiter = ',')]
        engines: Vec<String>,
        #[arg(long)]
        timeout: Option<f64>,
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long, default_value_t = 2)]
        gamma: usize,
        #[arg(long, default_value_t = 4)]
        max_noose_boxes: usize,
        #[arg(long)]
        safe: bool,
        #[arg(long, default_value = "plurality")]
        rule: String,
    },
}

#[derive(Args)]
struct EngineArgs {
    /// brute, separator or auto.
    #[arg(long, default_value = "auto")]
    engine: String,
    #[arg(long, default_value_t = 2)]
    gamma: usize,
    #[arg(long, default_value_t = 4)]
    max_noose_boxes: usize,
    /// Confirm non-yes separator answers by brute force.
    #[arg(long)]
    safe: bool,
    #[arg(long, default_value = "plurality")]
    rule: String,
    /// Seconds before giving up with `unknown`.
    #[arg(long)]
    timeout: Option<f64>,
}

#[derive(Subcommand)]
enum GenCommand {
    /// A seeded random instance in general position.
    Random {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        voters: usize,
        #[arg(long, default_value_t = 6)]
        boxes: usize,
        #[arg(long, default_value_t = 2)]
        candidates: usize,
        #[arg(short, long, default_value_t = 3)]
        k: usize,
        #[arg(short, long, default_value_t = 2)]
        ell: usize,
        /// min_x,min_y,max_x,max_y
        #[arg(long, default_value = "0,0,10,10", value_delimiter = ',', num_args = 4)]
        bbox: Vec<i64>,
        #[arg(long, default_value_t = 4)]
        denominator: u32,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// A seeded random Grid Tiling instance.
    Gridtiling {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long, default_value_t = 2)]
        k: usize,
        #[arg(short, long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum ReduceCommand {
    /// Build the gerrymandering instance of a Grid Tiling instance.
    Gridtiling {
        file: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
        /// Extra candidates that nobody ranks first.
        #[arg(long, default_value_t = 0)]
        dummies: usize,
    },
}

#[derive(Subcommand)]
enum GridTilingCommand {
    /// Decide a Grid Tiling instance by backtracking.
    Solve { file: PathBuf },
}

#[derive(Serialize)]
struct GridTilingAnswer {
    selection: Vec<[usize; 2]>,
    status: Status,
}

/// A failure with its exit code.
struct Failure(u8, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Degenerate(_) => 4,
            _ => 3,
        };
        Failure(code, e.to_string())
    }
}

fn status_code(status: Status) -> u8 {
    match status {
        Status::Yes => 0,
        Status::No => 1,
        Status::Unknown => 2,
    }
}

fn read(path: &Path) -> Result<Vec<u8>, Failure> {
    std::fs::read(path).map_err(|e| Failure(3, format!("{}: {e}", path.display())))
}

/// Writes to `path`, or to standard output when absent.
fn emit(path: Option<&Path>, bytes: &[u8]) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, bytes).map_err(|e| Failure(4, format!("{}: {e}", p.display()))),
        None => std::io::stdout().write_all(bytes).map_err(|e| Failure(4, e.to_string())),
    }
}

fn timeout(secs: Option<f64>) -> Result<Option<Duration>, Failure> {
    secs.map(|s| Duration::try_from_secs_f64(s).map_err(|e| Failure(3, format!("bad timeout: {e}")))).transpose()
}

fn options(args: &EngineArgs) -> Result<SolveOptions, Failure> {
    let engine: EngineKind = args.engine.parse()?;
    let separator = SeparatorConfig {
        gamma: args.gamma,
        max_noose_boxes: args.max_noose_boxes,
        safe_mode: args.safe,
        rule: args.rule.clone(),
        ..SeparatorConfig::default()
    };
    separator.check()?;
    Ok(SolveOptions { engine, separator, parallel: true, timeout: timeout(args.timeout)? })
}

fn run(cli: Cli) -> Result<u8, Failure> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| Failure(4, e.to_string()))?;
    }
    match cli.command {
        Command::Validate { file, shallow } => {
            let inst = parse_instance(&read(&file)?)?;
            let report = validate_instance(&inst, !shallow);
            for v in &report.violations {
                eprintln!("{:?}: {}", v.kind, v.detail);
            }
            report.into_result()?;
            println!("ok");
            Ok(0)
        }
        Command::Solve { file, engine, out, timing } => {
            let inst = parse_instance(&read(&file)?)?;
            let answer = solve(&inst, &options(&engine)?)?;
            emit(out.as_deref(), &write_solution(&answer, timing))?;
            Ok(status_code(answer.status))
        }
        Command::Gen(GenCommand::Random { seed, voters, boxes, candidates, k, ell, bbox, denominator, out }) => {
            let bbox: [i64; 4] = bbox.try_into().map_err(|_| Failure(3, "bbox needs four numbers".into()))?;
            let params = GenParams {
                n_voters: voters,
                m_boxes: boxes,
                n_candidates: candidates,
                k,
                ell,
                bbox,
                coord_denominator: denominator,
            };
            emit(out.as_deref(), &write_instance(&gen_random(seed, &params)?))?;
            Ok(0)
        }
        Command::Gen(GenCommand::Gridtiling { seed, k, n, density, out }) => {
            if !(0.0..=1.0).contains(&density) {
                return Err(Failure(3, "density must lie in [0, 1]".into()));
            }
            emit(out.as_deref(), &write_grid_tiling(&gen_grid_tiling(seed, k, n, density)?))?;
            Ok(0)
        }
        Command::Reduce(ReduceCommand::Gridtiling { file, out, dummies }) => {
            let gt = parse_grid_tiling(&read(&file)?)?;
            let (inst, _) = reduce_with(&gt, &ReduceOptions { dummy_candidates: dummies })?;
            emit(out.as_deref(), &write_instance(&inst))?;
            Ok(0)
        }
        Command::Gridtiling(GridTilingCommand::Solve { file }) => {
            let gt = parse_grid_tiling(&read(&file)?)?;
            let solution = gt_brute_solve(&gt);
            let answer = GridTilingAnswer {
                status: if solution.is_some() { Status::Yes } else { Status::No },
                selection: solution.map(|s| s.selection.iter().map(|&(p, q)| [p, q]).collect()).unwrap_or_default(),
            };
            let mut bytes = serde_json::to_vec_pretty(&answer).map_err(|e| Failure(4, e.to_string()))?;
            bytes.push(b'\n');
            emit(None, &bytes)?;
            Ok(status_code(answer.status))
        }
        Command::Render { file, solution, out, rule: rule_id } => {
            let inst = parse_instance(&read(&file)?)?;
            let chosen = solution.map(|p| read(&p).and_then(|b| Ok(parse_solution(&b)?))).transpose()?;
            let chosen = match &chosen {
                Some(s) if s.status == Status::Yes => Some(s.boxes.as_slice()),
                Some(_) => return Err(Failure(3, "the solution file has no chosen boxes".into())),
                None => None,
            };
            let rule = rule(&rule_id)?;
            emit(Some(&out), &render_svg_with(&inst, chosen, rule.as_ref())?)?;
            Ok(0)
        }
        Command::Bench { dir, engines, timeout: secs, report, gamma, max_noose_boxes, safe, rule } => {
            let engines: Vec<EngineKind> = engines.iter().map(|e| e.parse()).collect::<Result<_, _>>()?;
            let separator = SeparatorConfig { gamma, max_noose_boxes, safe_mode: safe, rule, ..SeparatorConfig::default() };
            separator.check()?;
            let opts = SolveOptions { separator, timeout: timeout(secs)?, ..SolveOptions::default() };
            let instances = load_dir(&dir)?;
            let result = run_bench(&instances, &engines, &opts);
            for r in &result.records {
                let status =
                    r.status.map_or_else(|| format!("error: {}", r.error.as_deref().unwrap_or("")), |s| format!("{s:?}"));
                eprintln!(
                    "{:<24} {:<10} {:<8} {:>10.1} ms {:>10} states",
                    r.instance, r.engine, status, r.wall_ms, r.states_explored
                );
            }
            let mut bytes = serde_json::to_vec_pretty(&result).map_err(|e| Failure(4, e.to_string()))?;
            bytes.push(b'\n');
            emit(report.as_deref(), &bytes)?;
            if result.disagreements.is_empty() {
                Ok(0)
            } else {
                Err(Failure(4, format!("engines disagree on {:?}", result.disagreements)))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 3 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure(code, msg)) => {
            eprintln!("gerry: {msg}");
            ExitCode::from(code)
        }
    }
}
