//! One entry point over all engines, as used by the command line and the
//! benchmark harness.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use crate::brute::{brute_solve_with, BruteConfig};
use crate::model::{rule, validate_instance, Instance};
use crate::separator::{self, SeparatorConfig, MAX_BOXES};
use crate::{Error, Result, SolveAnswer};

/// `auto` uses brute force up to this many `k`-subsets.
pub const AUTO_BRUTE_LIMIT: u128 = 5_000_000;

/// `auto` only checks general position (quartic in `m`) up to this many boxes.
pub const AUTO_SEPARATOR_MAX_BOXES: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EngineKind {
    Brute,
    Separator,
    /// Brute force for small search spaces or inputs outside general
    /// position; otherwise the separator in safe mode.
    Auto,
}

impl FromStr for EngineKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "brute" => Ok(EngineKind::Brute),
            "separator" => Ok(EngineKind::Separator),
            "auto" => Ok(EngineKind::Auto),
            other => Err(Error::invalid(format!("unknown engine `{other}` (expected brute, separator or auto)"))),
        }
    }
}

impl fmt::Display for EngineKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EngineKind::Brute => "brute",
            EngineKind::Separator => "separator",
            EngineKind::Auto => "auto",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveOptions {
    pub engine: EngineKind,
    /// Separator settings; its `rule` is used by every engine.
    pub separator: SeparatorConfig,
    /// Let brute force use all threads. Answers do not depend on it.
    pub parallel: bool,
    /// Give up with `Unknown` after this long.
    pub timeout: Option<Duration>,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { engine: EngineKind::Auto, separator: SeparatorConfig::default(), parallel: true, timeout: None }
    }
}

/// Number of `k`-subsets of `m` boxes, saturating.
pub fn subset_count(m: usize, k: usize) -> u128 {
    let k = k.min(m - k.min(m));
    (0..k).fold(1u128, |acc, i| acc.saturating_mul((m - i) as u128) / (i as u128 + 1))
}

/// Which engine `auto` picks for `inst`.
pub fn auto_engine(inst: &Instance) -> EngineKind {
    let m = inst.boxes.len();
    if inst.k > m || subset_count(m, inst.k) <= AUTO_BRUTE_LIMIT || m > AUTO_SEPARATOR_MAX_BOXES.min(MAX_BOXES - 3) {
        return EngineKind::Brute;
    }
    if validate_instance(inst, true).ok {
        EngineKind::Separator
    } else {
        EngineKind::Brute
    }
}

pub fn solve(inst: &Instance, opts: &SolveOptions) -> Result<SolveAnswer> {
    let deadline = opts.timeout.map(|t| Instant::now() + t);
    let engine = match opts.engine {
        EngineKind::Auto => auto_engine(inst),
        e => e,
    };
    match engine {
        EngineKind::Brute => {
            let rule = rule(&opts.separator.rule)?;
            brute_solve_with(inst, rule.as_ref(), &BruteConfig { parallel: opts.parallel, deadline })
        }
        _ => {
            let safe_mode = opts.separator.safe_mode || opts.engine == EngineKind::Auto;
            let cfg = SeparatorConfig { deadline, safe_mode, ..opts.separator.clone() };
            separator::solve(inst, &cfg)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{gen_random, GenParams};
    use crate::Status;

    #[test]
    fn engine_names_round_trip() {
        for e in [EngineKind::Brute, EngineKind::Separator, EngineKind::Auto] {
            assert_eq!(e.to_string().parse::<EngineKind>().unwrap(), e);
        }
        assert!("fast".parse::<EngineKind>().is_err());
    }

    #[test]
    fn subset_counts() {
        assert_eq!(subset_count(6, 3), 20);
        assert_eq!(subset_count(16, 4), 1820);
        assert_eq!(subset_count(5, 0), 1);
        assert_eq!(subset_count(5, 5), 1);
    }

    #[test]
    fn engines_agree() {
        let inst = gen_random(11, &GenParams::default()).unwrap();
        assert_eq!(auto_engine(&inst), EngineKind::Brute);
        let statuses: Vec<Status> = [EngineKind::Brute, EngineKind::Auto, EngineKind::Separator]
            .into_iter()
            .map(|engine| {
                let separator = SeparatorConfig { safe_mode: true, ..Default::default() };
                solve(&inst, &SolveOptions { engine, separator, ..Default::default() }).unwrap().status
            })
            .collect();
        assert!(statuses.windows(2).all(|w| w[0] == w[1]), "{statuses:?}");
    }
}
