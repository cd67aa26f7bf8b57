//! Problem data: exact rationals, voters, instances, validation, and the
//! anonymous voting rules used to decide each district.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::geometry::{circumcenter, incircle, orientation, sq_dist};
use crate::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

/// Parses `"3"`, `"-1.25"`, `"7/12"` or `"-2/4"` into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::invalid(format!("bad rational `{s}`"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(|_| bad())?;
        let den: BigInt = den.trim().parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(num, den));
    }
    let (negative, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    let digits_ok = |d: &str| d.bytes().all(|b| b.is_ascii_digit());
    if !digits_ok(int_part) || !digits_ok(frac_part) {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let num: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().map_err(|_| bad())? };
    let den = num_traits::pow(BigInt::from(10u32), frac_part.len());
    let value = Rational::new(num, den);
    Ok(if negative { -value } else { value })
}

/// Canonical text form: `"n"` for integers, `"n/d"` otherwise.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rational(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: Rational,
    pub y: Rational,
}

impl Point {
    pub fn new(x: Rational, y: Rational) -> Self {
        Point { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Point { x: int(x), y: int(y) }
    }

    pub fn to_f64(&self) -> (f64, f64) {
        use num_traits::ToPrimitive;
        (self.x.to_f64().unwrap_or(f64::NAN), self.y.to_f64().unwrap_or(f64::NAN))
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", format_rational(&self.x), format_rational(&self.y))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Candidate {
    pub id: String,
}

/// A total order over the instance's candidates, most preferred first, stored
/// as candidate indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ranking(pub Vec<usize>);

impl Ranking {
    pub fn top(&self) -> Option<usize> {
        self.0.first().copied()
    }

    pub fn is_permutation_of(&self, n_candidates: usize) -> bool {
        if self.0.len() != n_candidates {
            return false;
        }
        let mut seen = vec![false; n_candidates];
        for &c in &self.0 {
            if c >= n_candidates || seen[c] {
                return false;
            }
            seen[c] = true;
        }
        true
    }
}

/// `multiplicity` identical voters at one location with one ranking.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Voter {
    pub location: Point,
    pub ranking: Ranking,
    pub multiplicity: u64,
}

impl Voter {
    pub fn new(location: Point, ranking: Ranking) -> Self {
        Voter { location, ranking, multiplicity: 1 }
    }

    pub fn with_multiplicity(mut self, multiplicity: u64) -> Self {
        self.multiplicity = multiplicity;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub candidates: Vec<Candidate>,
    pub voters: Vec<Voter>,
    pub boxes: Vec<Point>,
    pub k: usize,
    pub ell: usize,
    /// Index into `candidates`.
    pub target: usize,
}

impl Instance {
    pub fn candidate_index(&self, id: &str) -> Option<usize> {
        self.candidates.iter().position(|c| c.id == id)
    }

    pub fn target_id(&self) -> &str {
        &self.candidates[self.target].id
    }

    /// Builds a ranking from candidate ids.
    pub fn ranking(&self, ids: &[&str]) -> Result<Ranking> {
        let order = ids
            .iter()
            .map(|id| self.candidate_index(id).ok_or_else(|| Error::invalid(format!("unknown candidate `{id}`"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(Ranking(order))
    }

    pub fn total_multiplicity(&self) -> u64 {
        self.voters.iter().map(|v| v.multiplicity).sum()
    }

    pub fn with_ell(&self, ell: usize) -> Instance {
        Instance { ell, ..self.clone() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ViolationKind {
    ParamOrder,
    DuplicateBox,
    EquidistantVoter,
    Cocircular4,
    CircumcenterCoincidence,
    BadRanking,
}

impl ViolationKind {
    /// Violations that make an instance meaningless, as opposed to breaking a
    /// general-position assumption.
    pub fn is_structural(self) -> bool {
        matches!(self, ViolationKind::ParamOrder | ViolationKind::DuplicateBox | ViolationKind::BadRanking)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub detail: String,
    pub witnesses: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn has(&self, kind: ViolationKind) -> bool {
        self.violations.iter().any(|v| v.kind == kind)
    }

    pub fn structural_ok(&self) -> bool {
        !self.violations.iter().any(|v| v.kind.is_structural())
    }

    /// Turns the report into an error naming the first structural violation,
    /// or else the first violation.
    pub fn into_result(self) -> Result<()> {
        let first = self.violations.iter().find(|v| v.kind.is_structural()).or(self.violations.first());
        match first {
            None => Ok(()),
            Some(v) if v.kind.is_structural() => Err(Error::invalid(format!("{:?}: {}", v.kind, v.detail))),
            Some(v) => Err(Error::degenerate(format!("{:?}: {}", v.kind, v.detail))),
        }
    }
}

/// Checks parameter order, ranking shape, distinct boxes and voter
/// equidistance; with `deep_geometry` also four-point cocircularity and
/// circumcenter coincidences among the boxes (quartic in `m`).
pub fn validate_instance(inst: &Instance, deep_geometry: bool) -> ValidationReport {
    let mut violations = Vec::new();
    let m = inst.boxes.len();

    if !(inst.ell <= inst.k && inst.k <= m) || inst.k == 0 {
        violations.push(Violation {
            kind: ViolationKind::ParamOrder,
            detail: format!("need ell <= k <= m and k >= 1, got ell={} k={} m={m}", inst.ell, inst.k),
            witnesses: vec![],
        });
    }

    let mut ids = HashSet::new();
    let mut bad_candidates = inst.candidates.is_empty();
    for c in &inst.candidates {
        bad_candidates |= c.id.is_empty() || !ids.insert(c.id.as_str());
    }
    if bad_candidates || inst.target >= inst.candidates.len() {
        violations.push(Violation {
            kind: ViolationKind::BadRanking,
            detail: "candidate ids must be non-empty and unique, target must exist".into(),
            witnesses: vec![],
        });
    }
    for (i, v) in inst.voters.iter().enumerate() {
        if !v.ranking.is_permutation_of(inst.candidates.len()) || v.multiplicity == 0 {
            violations.push(Violation {
                kind: ViolationKind::BadRanking,
                detail: format!("voter {i} has a malformed ranking or zero multiplicity"),
                witnesses: vec![i],
            });
        }
    }

    let mut seen: HashMap<&Point, usize> = HashMap::new();
    for (i, b) in inst.boxes.iter().enumerate() {
        if let Some(&j) = seen.get(b) {
            violations.push(Violation {
                kind: ViolationKind::DuplicateBox,
                detail: format!("boxes {j} and {i} coincide at {b:?}"),
                witnesses: vec![j, i],
            });
        } else {
            seen.insert(b, i);
        }
    }

    for (vi, v) in inst.voters.iter().enumerate() {
        let d: Vec<Rational> = inst.boxes.iter().map(|b| sq_dist(&v.location, b)).collect();
        let mut by_dist: HashMap<&Rational, usize> = HashMap::new();
        for (bi, di) in d.iter().enumerate() {
            if let Some(&bj) = by_dist.get(di) {
                if inst.boxes[bj] != inst.boxes[bi] {
                    violations.push(Violation {
                        kind: ViolationKind::EquidistantVoter,
                        detail: format!("voter {vi} is equidistant from boxes {bj} and {bi}"),
                        witnesses: vec![vi, bj, bi],
                    });
                }
            } else {
                by_dist.insert(di, bi);
            }
        }
    }

    if deep_geometry {
        let b = &inst.boxes;
        for i in 0..m {
            for j in i + 1..m {
                for k in j + 1..m {
                    for l in k + 1..m {
                        let all_collinear =
                            orientation(&b[i], &b[j], &b[k]).is_zero() && orientation(&b[i], &b[j], &b[l]).is_zero();
                        if !all_collinear && incircle(&b[i], &b[j], &b[k], &b[l]).is_zero() {
                            violations.push(Violation {
                                kind: ViolationKind::Cocircular4,
                                detail: format!("boxes {i}, {j}, {k}, {l} are cocircular"),
                                witnesses: vec![i, j, k, l],
                            });
                        }
                    }
                }
            }
        }
        let index: HashMap<&Point, usize> = b.iter().enumerate().map(|(i, p)| (p, i)).collect();
        for i in 0..m {
            for j in i + 1..m {
                for k in j + 1..m {
                    if let Some(c) = circumcenter(&b[i], &b[j], &b[k]) {
                        if let Some(&l) = index.get(&c) {
                            violations.push(Violation {
                                kind: ViolationKind::CircumcenterCoincidence,
                                detail: format!("box {l} is the circumcenter of boxes {i}, {j}, {k}"),
                                witnesses: vec![i, j, k, l],
                            });
                        }
                    }
                }
            }
        }
    }

    ValidationReport { ok: violations.is_empty(), violations }
}

/// A district's votes: how many voters hold each ranking.
pub type Profile = BTreeMap<Ranking, u64>;

fn check_profile(profile: &Profile) -> Result<usize> {
    let mut rankings = profile.keys();
    let Some(first) = rankings.next() else {
        return Ok(0);
    };
    let n = first.0.len();
    let reference: BTreeSet<usize> = first.0.iter().copied().collect();
    if !first.is_permutation_of(n) {
        return Err(Error::invalid(format!("ranking {:?} is not a total order", first.0)));
    }
    for r in rankings {
        if r.0.len() != n || r.0.iter().copied().collect::<BTreeSet<_>>() != reference {
            return Err(Error::invalid("profile rankings range over different candidate sets"));
        }
    }
    Ok(n)
}

/// Plurality with strict-win semantics: the candidate with strictly more
/// first places than every other, or `None` on a tie or an empty profile.
pub fn plurality_winner(profile: &Profile) -> Result<Option<usize>> {
    let n = check_profile(profile)?;
    let mut tops = vec![0u64; n];
    for (r, &c) in profile {
        if let Some(t) = r.top() {
            tops[t] += c;
        }
    }
    Ok(strict_max(&tops))
}

pub(crate) fn strict_max(scores: &[u64]) -> Option<usize> {
    let mut best: Option<usize> = None;
    let mut tied = false;
    for (i, &s) in scores.iter().enumerate() {
        match best {
            None if s > 0 => best = Some(i),
            Some(b) if s > scores[b] => {
                best = Some(i);
                tied = false;
            }
            Some(b) if s == scores[b] => tied = true,
            _ => {}
        }
    }
    if tied {
        None
    } else {
        best
    }
}

/// An anonymous voting rule: its outcome depends only on how many voters hold
/// each ranking.
pub trait VotingRule: Send + Sync {
    fn name(&self) -> &str;

    fn winner(&self, profile: &Profile) -> Result<Option<usize>>;

    /// Winner from parallel slices of rankings and counts. Solvers call this
    /// in their inner loops; override it when the rule can avoid building a
    /// [`Profile`].
    fn winner_counts(&self, rankings: &[Ranking], counts: &[u64]) -> Option<usize> {
        let profile: Profile = rankings.iter().zip(counts).filter(|(_, &c)| c > 0).map(|(r, &c)| (r.clone(), c)).collect();
        self.winner(&profile).ok().flatten()
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Plurality;

impl VotingRule for Plurality {
    fn name(&self) -> &str {
        "plurality"
    }

    fn winner(&self, profile: &Profile) -> Result<Option<usize>> {
        plurality_winner(profile)
    }

    fn winner_counts(&self, rankings: &[Ranking], counts: &[u64]) -> Option<usize> {
        let n = rankings.first().map_or(0, |r| r.0.len());
        let mut tops = vec![0u64; n];
        for (r, &c) in rankings.iter().zip(counts) {
            if let Some(t) = r.top() {
                tops[t] += c;
            }
        }
        strict_max(&tops)
    }
}

/// Named rules available to the solvers.
#[derive(Clone)]
pub struct RuleRegistry {
    rules: BTreeMap<String, Arc<dyn VotingRule>>,
}

impl Default for RuleRegistry {
    fn default() -> Self {
        let mut reg = RuleRegistry { rules: BTreeMap::new() };
        reg.register(Arc::new(Plurality));
        reg
    }
}

impl RuleRegistry {
    pub fn register(&mut self, rule: Arc<dyn VotingRule>) {
        self.rules.insert(rule.name().to_string(), rule);
    }

    pub fn get(&self, id: &str) -> Result<Arc<dyn VotingRule>> {
        self.rules.get(id).cloned().ok_or_else(|| Error::UnknownRule(id.to_string()))
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.rules.keys().map(String::as_str)
    }
}

/// Looks up a built-in rule by id.
pub fn rule(id: &str) -> Result<Arc<dyn VotingRule>> {
    RuleRegistry::default().get(id)
}

/// Evaluates the built-in rule `rule_id` on `profile`.
pub fn anonymous_rule_eval(rule_id: &str, profile: &Profile) -> Result<Option<usize>> {
    rule(rule_id)?.winner(profile)
}
