//! JSON file formats: instances (`gerry-v1`), Grid Tiling instances (`gt-v1`)
//! and solver answers.
//!
//! Coordinates are strings holding exact decimals or `num/den` rationals.
//! Writers emit canonical output: lowest-terms rationals, keys in sorted
//! order, two-space indentation and a trailing newline.

use serde::{Deserialize, Serialize};

use crate::model::{format_rational, parse_rational, Candidate, Instance, Point, Voter};
use crate::reduction::GridTilingInstance;
use crate::{Error, Result, SolveAnswer, SolveStats, Status};

pub const INSTANCE_FORMAT: &str = "gerry-v1";
pub const GRID_TILING_FORMAT: &str = "gt-v1";

// Field order is alphabetical so that serialization sorts keys.

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PointFile {
    x: String,
    y: String,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct VoterFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    count: Option<u64>,
    ranking: Vec<String>,
    x: String,
    y: String,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceFile {
    boxes: Vec<PointFile>,
    candidates: Vec<String>,
    ell: usize,
    format: String,
    k: usize,
    target: String,
    voters: Vec<VoterFile>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GridTilingFile {
    format: String,
    k: usize,
    n: usize,
    sets: Vec<Vec<[usize; 2]>>,
}

fn to_pretty<T: Serialize>(value: &T) -> Vec<u8> {
    let mut out = serde_json::to_vec_pretty(value).expect("plain data serializes");
    out.push(b'\n');
    out
}

fn point(x: &str, y: &str) -> Result<Point> {
    Ok(Point::new(parse_rational(x)?, parse_rational(y)?))
}

pub fn parse_instance(bytes: &[u8]) -> Result<Instance> {
    let file: InstanceFile = serde_json::from_slice(bytes)?;
    if file.format != INSTANCE_FORMAT {
        return Err(Error::invalid(format!("expected format {INSTANCE_FORMAT:?}, got {:?}", file.format)));
    }
    let candidates: Vec<Candidate> = file.candidates.iter().map(|id| Candidate { id: id.clone() }).collect();
    let mut inst = Instance { candidates, voters: Vec::new(), boxes: Vec::new(), k: file.k, ell: file.ell, target: 0 };
    inst.target = inst
        .candidate_index(&file.target)
        .ok_or_else(|| Error::invalid(format!("target {:?} is not a candidate", file.target)))?;
    for v in &file.voters {
        let ids: Vec<&str> = v.ranking.iter().map(String::as_str).collect();
        let ranking = inst.ranking(&ids)?;
        let voter = Voter::new(point(&v.x, &v.y)?, ranking).with_multiplicity(v.count.unwrap_or(1));
        inst.voters.push(voter);
    }
    inst.boxes = file.boxes.iter().map(|b| point(&b.x, &b.y)).collect::<Result<_>>()?;
    Ok(inst)
}

pub fn write_instance(inst: &Instance) -> Vec<u8> {
    let file = InstanceFile {
        boxes: inst.boxes.iter().map(|b| PointFile { x: format_rational(&b.x), y: format_rational(&b.y) }).collect(),
        candidates: inst.candidates.iter().map(|c| c.id.clone()).collect(),
        ell: inst.ell,
        format: INSTANCE_FORMAT.into(),
        k: inst.k,
        target: inst.target_id().to_string(),
        voters: inst
            .voters
            .iter()
            .map(|v| VoterFile {
                count: (v.multiplicity != 1).then_some(v.multiplicity),
                ranking: v.ranking.0.iter().map(|&c| inst.candidates[c].id.clone()).collect(),
                x: format_rational(&v.location.x),
                y: format_rational(&v.location.y),
            })
            .collect(),
    };
    to_pretty(&file)
}

pub fn parse_grid_tiling(bytes: &[u8]) -> Result<GridTilingInstance> {
    let file: GridTilingFile = serde_json::from_slice(bytes)?;
    if file.format != GRID_TILING_FORMAT {
        return Err(Error::invalid(format!("expected format {GRID_TILING_FORMAT:?}, got {:?}", file.format)));
    }
    let sets = file.sets.into_iter().map(|s| s.into_iter().map(|[p, q]| (p, q)).collect()).collect();
    GridTilingInstance::new(file.k, file.n, sets)
}

pub fn write_grid_tiling(gt: &GridTilingInstance) -> Vec<u8> {
    let file = GridTilingFile {
        format: GRID_TILING_FORMAT.into(),
        k: gt.k,
        n: gt.n,
        sets: gt.sets.iter().map(|s| s.iter().map(|&(p, q)| [p, q]).collect()).collect(),
    };
    to_pretty(&file)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StatsFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
    pub fallback_used: bool,
    pub recursion_depth: usize,
    pub states_explored: u64,
}

/// A solver answer as written by the command line tool.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolutionFile {
    pub boxes: Vec<usize>,
    pub stats: StatsFile,
    pub status: Status,
}

impl SolutionFile {
    /// Wall time is left out unless `timing` is set, so that output only
    /// depends on the inputs.
    pub fn from_answer(answer: &SolveAnswer, timing: bool) -> Self {
        let SolveStats { states_explored, recursion_depth, fallback_used, elapsed } = answer.stats;
        SolutionFile {
            boxes: answer.certificate.clone().unwrap_or_default(),
            stats: StatsFile {
                elapsed_ms: timing.then_some(elapsed.as_millis() as u64),
                fallback_used,
                recursion_depth,
                states_explored,
            },
            status: answer.status,
        }
    }
}

pub fn write_solution(answer: &SolveAnswer, timing: bool) -> Vec<u8> {
    to_pretty(&SolutionFile::from_answer(answer, timing))
}

pub fn parse_solution(bytes: &[u8]) -> Result<SolutionFile> {
    Ok(serde_json::from_slice(bytes)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::rational;

    const MINIMAL: &str = r#"{"format":"gerry-v1","candidates":["A","B"],
        "voters":[{"x":"1/3","y":"0.5","ranking":["B","A"],"count":2}],
        "boxes":[{"x":"0","y":"-2"}],"k":1,"ell":1,"target":"A"}"#;

    #[test]
    fn parses_minimal_file() {
        let inst = parse_instance(MINIMAL.as_bytes()).unwrap();
        assert_eq!((inst.voters.len(), inst.boxes.len()), (1, 1));
        assert_eq!(inst.voters[0].location.x, rational(1, 3));
        assert_eq!(inst.voters[0].location.y, rational(1, 2));
        assert_eq!(inst.voters[0].multiplicity, 2);
        assert_eq!(inst.voters[0].ranking.0, vec![1, 0]);
        assert_eq!(inst.target, 0);
    }

    #[test]
    fn canonical_output_round_trips() {
        let inst = parse_instance(MINIMAL.as_bytes()).unwrap();
        let bytes = write_instance(&inst);
        let text = String::from_utf8(bytes.clone()).unwrap();
        assert!(text.contains("\"x\": \"1/3\"") && text.contains("\"y\": \"1/2\""));
        assert!(text.find("\"boxes\"").unwrap() < text.find("\"voters\"").unwrap());
        assert_eq!(parse_instance(&bytes).unwrap(), inst);
        assert_eq!(write_instance(&parse_instance(&bytes).unwrap()), bytes);
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(matches!(parse_instance(b"{"), Err(Error::Json(_))));
        let unknown = MINIMAL.replace(r#"["B","A"]"#, r#"["B","Z"]"#);
        assert!(parse_instance(unknown.as_bytes()).is_err());
        let bad_coord = MINIMAL.replace("1/3", "1/0");
        assert!(parse_instance(bad_coord.as_bytes()).is_err());
        let wrong_tag = MINIMAL.replace("gerry-v1", "gerry-v2");
        assert!(parse_instance(wrong_tag.as_bytes()).is_err());
        let bad_target = MINIMAL.replace(r#""target":"A""#, r#""target":"C""#);
        assert!(parse_instance(bad_target.as_bytes()).is_err());
    }

    #[test]
    fn grid_tiling_round_trip() {
        let gt = GridTilingInstance::figure_example();
        let bytes = write_grid_tiling(&gt);
        assert_eq!(parse_grid_tiling(&bytes).unwrap(), gt);
        assert!(parse_grid_tiling(br#"{"format":"gt-v1","k":1,"n":2,"sets":[[[3,1]]]}"#).is_err());
    }

    #[test]
    fn solution_json_omits_time_by_default() {
        let answer = SolveAnswer::yes(vec![0, 2], SolveStats { states_explored: 5, ..Default::default() });
        let text = String::from_utf8(write_solution(&answer, false)).unwrap();
        assert!(text.contains("\"status\": \"yes\"") && !text.contains("elapsed_ms"));
        let parsed = parse_solution(text.as_bytes()).unwrap();
        assert_eq!(parsed.boxes, vec![0, 2]);
        assert!(String::from_utf8(write_solution(&answer, true)).unwrap().contains("elapsed_ms"));
    }
}
