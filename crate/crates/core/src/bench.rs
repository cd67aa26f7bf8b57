//! Runs engines over a set of instances and reports status, time and search
//! effort per (instance, engine).

use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::format::parse_instance;
use crate::solver::{solve, EngineKind, SolveOptions};
use crate::{Instance, Result, Status};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub instance: String,
    pub engine: String,
    /// `None` when the engine reported an error.
    pub status: Option<Status>,
    pub wall_ms: f64,
    /// Subsets (brute force) or states (separator) explored.
    pub states_explored: u64,
    /// Separator only.
    pub recursion_depth: Option<usize>,
    pub fallback_used: bool,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub records: Vec<BenchRecord>,
    /// Instances on which two engines gave different definite answers.
    pub disagreements: Vec<String>,
}

/// Loads every `*.json` instance file in `dir`, sorted by file name.
pub fn load_dir(dir: &Path) -> Result<Vec<(String, Instance)>> {
    let mut paths: Vec<_> = std::fs::read_dir(dir)?
        .map(|e| e.map(|e| e.path()))
        .collect::<std::io::Result<Vec<_>>>()?
        .into_iter()
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    paths
        .into_iter()
        .map(|p| {
            let name = p.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
            Ok((name, parse_instance(&std::fs::read(&p)?)?))
        })
        .collect()
}

/// Runs every engine on every instance; instances run in parallel, engines
/// one after another. Records keep the input order.
pub fn run_bench(instances: &[(String, Instance)], engines: &[EngineKind], opts: &SolveOptions) -> BenchReport {
    let per_instance: Vec<Vec<BenchRecord>> = instances
        .par_iter()
        .map(|(name, inst)| {
            engines
                .iter()
                .map(|&engine| {
                    let start = Instant::now();
                    let result = solve(inst, &SolveOptions { engine, parallel: false, ..opts.clone() });
                    let wall_ms = start.elapsed().as_secs_f64() * 1000.0;
                    let mut record = BenchRecord {
                        instance: name.clone(),
                        engine: engine.to_string(),
                        status: None,
                        wall_ms,
                        states_explored: 0,
                        recursion_depth: None,
                        fallback_used: false,
                        error: None,
                    };
                    match result {
                        Ok(answer) => {
                            record.status = Some(answer.status);
                            record.states_explored = answer.stats.states_explored;
                            record.recursion_depth = (answer.stats.recursion_depth > 0).then_some(answer.stats.recursion_depth);
                            record.fallback_used = answer.stats.fallback_used;
                        }
                        Err(e) => record.error = Some(e.to_string()),
                    }
                    record
                })
                .collect()
        })
        .collect();
    let disagreements = per_instance
        .iter()
        .filter(|records| {
            let definite: Vec<Status> = records.iter().filter_map(|r| r.status).filter(|s| *s != Status::Unknown).collect();
            definite.windows(2).any(|w| w[0] != w[1])
        })
        .map(|records| records[0].instance.clone())
        .collect();
    BenchReport { records: per_instance.into_iter().flatten().collect(), disagreements }
}
