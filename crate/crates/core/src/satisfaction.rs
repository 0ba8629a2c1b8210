//! Satisfaction functions `μ: 2^P → Q≥0`, their capability flags, DNS
//! classification, and the instance constructor that shows DNS is needed.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::model::{Instance, ModelError, Project, ProjectIdx, ProjectSet, VoterIdx};
use crate::rational::{Money, Rational, SatValue};
use crate::subsets;

/// Significant decimal digits kept when `sqrt_cost` and `log_cost` values are
/// turned into exact rationals.
pub const ROUNDING_DIGITS: usize = 12;

/// Largest project count for which subset enumeration is attempted.
pub const MAX_ENUMERATED_PROJECTS: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SatKind {
    Cost,
    Cardinality,
    SqrtCost,
    LogCost,
    Cc,
    Share,
    Table,
    CostMap,
}

impl SatKind {
    /// Short name, matching the CLI selector.
    pub fn name(self) -> &'static str {
        match self {
            SatKind::Cost => "cost",
            SatKind::Cardinality => "card",
            SatKind::SqrtCost => "sqrt",
            SatKind::LogCost => "log",
            SatKind::Cc => "cc",
            SatKind::Share => "share",
            SatKind::Table => "table",
            SatKind::CostMap => "costmap",
        }
    }
}

impl fmt::Display for SatKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Flags {
    pub additive: bool,
    pub cost_neutral: bool,
    pub strictly_increasing: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SatError {
    #[error("satisfaction function `{0}` is not additive")]
    NotAdditive(SatKind),
    #[error("share satisfaction is undefined for project `{0}`, which nobody approves")]
    UndefinedShare(String),
    #[error("no table entry for project `{0}`")]
    MissingEntry(String),
    #[error("no value for cost {0} in the cost map")]
    MissingCost(Money),
    #[error("value for `{key}` must be strictly positive, got {value}")]
    NonPositive { key: String, value: SatValue },
    #[error("satisfaction function was built for {expected} projects, instance has {found}")]
    InstanceMismatch { expected: usize, found: usize },
    #[error("voter {0} does not exist")]
    UnknownVoter(VoterIdx),
    #[error("{projects} projects exceed the enumeration limit of {limit}")]
    TooLarge { projects: usize, limit: usize },
    #[error("costs {x} and {x_prime} do not witness a DNS violation")]
    NotADnsViolation { x: Money, x_prime: Money },
    #[error("malformed value file: {0}")]
    Malformed(String),
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// A satisfaction function bound to the projects of one instance.
///
/// Additive kinds store one value per project; `cc` stores none. Share
/// values are missing for projects nobody approves.
#[derive(Debug, Clone, PartialEq)]
pub struct SatisfactionFunction {
    kind: SatKind,
    values: Vec<Option<SatValue>>,
    num_projects: usize,
    flags: Flags,
}

const ADDITIVE_NEUTRAL: Flags = Flags { additive: true, cost_neutral: true, strictly_increasing: true };

fn rationalized(value: f64) -> SatValue {
    Rational::from_f64_significant(value, ROUNDING_DIGITS)
}

impl SatisfactionFunction {
    fn from_fn(inst: &Instance, kind: SatKind, flags: Flags, f: impl Fn(&Project) -> SatValue) -> Self {
        SatisfactionFunction {
            kind,
            values: inst.projects().iter().map(|p| Some(f(p))).collect(),
            num_projects: inst.num_projects(),
            flags,
        }
    }

    /// `μ^c(W) = c(W)`.
    pub fn cost(inst: &Instance) -> Self {
        Self::from_fn(inst, SatKind::Cost, ADDITIVE_NEUTRAL, |p| p.cost.clone())
    }

    /// `μ^#(W) = |W|`.
    pub fn cardinality(inst: &Instance) -> Self {
        Self::from_fn(inst, SatKind::Cardinality, ADDITIVE_NEUTRAL, |_| Rational::one())
    }

    /// `Σ √c(p)`, each term rounded to [`ROUNDING_DIGITS`] significant digits.
    pub fn sqrt_cost(inst: &Instance) -> Self {
        Self::from_fn(inst, SatKind::SqrtCost, ADDITIVE_NEUTRAL, |p| rationalized(p.cost.to_f64().sqrt()))
    }

    /// `Σ ln(1 + c(p))`, each term rounded to [`ROUNDING_DIGITS`] significant digits.
    pub fn log_cost(inst: &Instance) -> Self {
        Self::from_fn(inst, SatKind::LogCost, ADDITIVE_NEUTRAL, |p| rationalized(p.cost.to_f64().ln_1p()))
    }

    /// `1` for any non-empty set.
    pub fn cc(inst: &Instance) -> Self {
        SatisfactionFunction {
            kind: SatKind::Cc,
            values: Vec::new(),
            num_projects: inst.num_projects(),
            flags: Flags { additive: false, cost_neutral: true, strictly_increasing: false },
        }
    }

    /// `Σ c(p) / |N_p|`. Evaluating a set containing an unapproved project fails.
    pub fn share(inst: &Instance) -> Self {
        SatisfactionFunction {
            kind: SatKind::Share,
            values: (0..inst.num_projects())
                .map(|p| {
                    let k = inst.supporters(p).len();
                    (k > 0).then(|| inst.cost(p) / k)
                })
                .collect(),
            num_projects: inst.num_projects(),
            flags: Flags { additive: true, cost_neutral: false, strictly_increasing: true },
        }
    }

    /// An additive function with an explicit, strictly positive value per project id.
    pub fn table(inst: &Instance, entries: &BTreeMap<String, SatValue>) -> Result<Self, SatError> {
        let mut values = Vec::with_capacity(inst.num_projects());
        for p in inst.projects() {
            let v = entries.get(&p.id).ok_or_else(|| SatError::MissingEntry(p.id.clone()))?;
            if !v.is_positive() {
                return Err(SatError::NonPositive { key: p.id.clone(), value: v.clone() });
            }
            values.push(Some(v.clone()));
        }
        if let Some(id) = entries.keys().find(|id| inst.project_index(id).is_none()) {
            return Err(ModelError::UnknownProject(id.clone()).into());
        }
        Ok(SatisfactionFunction {
            kind: SatKind::Table,
            values,
            num_projects: inst.num_projects(),
            flags: Flags { additive: true, cost_neutral: false, strictly_increasing: true },
        })
    }

    /// An additive function with `μ(p) = s(c(p))` for a map `s` from cost to value.
    pub fn cost_map(inst: &Instance, map: &BTreeMap<Money, SatValue>) -> Result<Self, SatError> {
        let mut values = Vec::with_capacity(inst.num_projects());
        for p in inst.projects() {
            let v = map.get(&p.cost).ok_or_else(|| SatError::MissingCost(p.cost.clone()))?;
            if !v.is_positive() {
                return Err(SatError::NonPositive { key: p.cost.to_string(), value: v.clone() });
            }
            values.push(Some(v.clone()));
        }
        Ok(SatisfactionFunction {
            kind: SatKind::CostMap,
            values,
            num_projects: inst.num_projects(),
            flags: ADDITIVE_NEUTRAL,
        })
    }

    /// Parses a JSON object `{"<project id>": "<value>", ...}` into a table function.
    pub fn table_from_json(inst: &Instance, text: &str) -> Result<Self, SatError> {
        let entries: BTreeMap<String, SatValue> =
            serde_json::from_str(text).map_err(|e| SatError::Malformed(e.to_string()))?;
        Self::table(inst, &entries)
    }

    /// Parses a JSON object `{"<cost>": "<value>", ...}` into a cost-map function.
    pub fn cost_map_from_json(inst: &Instance, text: &str) -> Result<Self, SatError> {
        let raw: BTreeMap<String, SatValue> =
            serde_json::from_str(text).map_err(|e| SatError::Malformed(e.to_string()))?;
        let mut map = BTreeMap::new();
        for (k, v) in raw {
            let cost: Money = k.parse().map_err(|_| SatError::Malformed(format!("bad cost key `{k}`")))?;
            map.insert(cost, v);
        }
        Self::cost_map(inst, &map)
    }

    pub fn kind(&self) -> SatKind {
        self.kind
    }

    pub fn flags(&self) -> Flags {
        self.flags
    }

    pub fn is_additive(&self) -> bool {
        self.flags.additive
    }

    /// Whether per-project values were rounded from irrational numbers.
    pub fn is_rationalized(&self) -> bool {
        matches!(self.kind, SatKind::SqrtCost | SatKind::LogCost)
    }

    /// `μ({p})` for additive kinds; `None` for `cc` and for unapproved projects under `share`.
    pub fn per_project(&self, p: ProjectIdx) -> Option<&SatValue> {
        self.values.get(p).and_then(Option::as_ref)
    }

    /// The per-project values as a project-id map (additive kinds only).
    pub fn value_map(&self, inst: &Instance) -> Option<BTreeMap<String, SatValue>> {
        if !self.is_additive() {
            return None;
        }
        Some(
            self.values
                .iter()
                .enumerate()
                .filter_map(|(p, v)| v.as_ref().map(|v| (inst.id(p).to_string(), v.clone())))
                .collect(),
        )
    }

    pub(crate) fn check_instance(&self, inst: &Instance) -> Result<(), SatError> {
        if inst.num_projects() != self.num_projects {
            return Err(SatError::InstanceMismatch { expected: self.num_projects, found: inst.num_projects() });
        }
        Ok(())
    }

    fn additive_value(&self, inst: &Instance, p: ProjectIdx) -> Result<&SatValue, SatError> {
        self.values[p].as_ref().ok_or_else(|| SatError::UndefinedShare(inst.id(p).to_string()))
    }

    /// `μ(s)`.
    pub fn evaluate(&self, inst: &Instance, s: &ProjectSet) -> Result<SatValue, SatError> {
        self.check_instance(inst)?;
        inst.total_cost(s)?;
        if self.kind == SatKind::Cc {
            return Ok(if s.is_empty() { Rational::zero() } else { Rational::one() });
        }
        let mut total = Rational::zero();
        for &p in s {
            total += self.additive_value(inst, p)?;
        }
        Ok(total)
    }

    /// `μ_i(W) = μ(A_i ∩ W)`.
    pub fn voter_satisfaction(&self, inst: &Instance, voter: VoterIdx, w: &ProjectSet) -> Result<SatValue, SatError> {
        if voter >= inst.num_voters() {
            return Err(SatError::UnknownVoter(voter));
        }
        inst.total_cost(w)?;
        let shared: ProjectSet = inst.ballot(voter).intersection(w).copied().collect();
        self.evaluate(inst, &shared)
    }

    /// `μ` over every subset of the projects, indexed by bitmask. Undefined
    /// share values count as zero; callers only query approved projects.
    pub(crate) fn mask_table(&self) -> Vec<SatValue> {
        if self.kind == SatKind::Cc {
            let size = 1usize << self.num_projects;
            return (0..size).map(|m| if m == 0 { Rational::zero() } else { Rational::one() }).collect();
        }
        let values: Vec<Rational> = self.values.iter().map(|v| v.clone().unwrap_or_else(Rational::zero)).collect();
        subsets::additive_table(&values)
    }

    /// Checks Def. DNS pairwise: for `c(p) ≤ c(p')`, `μ(p) ≤ μ(p')` and
    /// `μ(p)/c(p) ≥ μ(p')/c(p')`.
    pub fn is_dns(&self, inst: &Instance) -> Result<DnsVerdict, SatError> {
        self.check_instance(inst)?;
        if !self.is_additive() {
            return Err(SatError::NotAdditive(self.kind));
        }
        let m = inst.num_projects();
        let values: Vec<&SatValue> = (0..m).map(|p| self.additive_value(inst, p)).collect::<Result<_, _>>()?;
        for p in 0..m {
            for q in 0..m {
                if p == q || inst.cost(p) > inst.cost(q) {
                    continue;
                }
                if let Some(inequality) = dns_pair(inst.cost(p), values[p], inst.cost(q), values[q]) {
                    return Ok(DnsVerdict::Violated { cheaper: p, pricier: q, inequality });
                }
            }
        }
        Ok(DnsVerdict::Dns)
    }

    /// Whether `c(W) < c(W')` implies `μ(W) < μ(W')` over all subsets.
    pub fn is_strictly_cost_responsive(&self, inst: &Instance) -> Result<bool, SatError> {
        self.check_instance(inst)?;
        let m = inst.num_projects();
        if m > MAX_ENUMERATED_PROJECTS {
            return Err(SatError::TooLarge { projects: m, limit: MAX_ENUMERATED_PROJECTS });
        }
        if self.kind == SatKind::Share {
            for p in 0..m {
                self.additive_value(inst, p)?;
            }
        }
        let costs: Vec<Money> = inst.projects().iter().map(|p| p.cost.clone()).collect();
        let cost_table = subsets::additive_table(&costs);
        let mu_table = self.mask_table();
        let mut order: Vec<usize> = (0..cost_table.len()).collect();
        order.sort_by(|&a, &b| cost_table[a].cmp(&cost_table[b]));
        // Sweep cost classes upward; every set in a class must beat the best
        // value seen among strictly cheaper sets.
        let mut best_cheaper: Option<&SatValue> = None;
        let mut start = 0;
        while start < order.len() {
            let cost = &cost_table[order[start]];
            let end = start + order[start..].iter().take_while(|&&s| cost_table[s] == *cost).count();
            let class = &order[start..end];
            if let Some(best) = best_cheaper {
                if class.iter().any(|&s| mu_table[s] <= *best) {
                    return Ok(false);
                }
            }
            let class_max = class.iter().map(|&s| &mu_table[s]).max().expect("class is non-empty");
            best_cheaper = Some(match best_cheaper {
                Some(best) if best > class_max => best,
                _ => class_max,
            });
            start = end;
        }
        Ok(true)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DnsInequality {
    /// `μ(p) ≤ μ(p')` failed.
    Monotone,
    /// `μ(p)/c(p) ≥ μ(p')/c(p')` failed.
    Ratio,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DnsVerdict {
    Dns,
    Violated { cheaper: ProjectIdx, pricier: ProjectIdx, inequality: DnsInequality },
}

impl DnsVerdict {
    pub fn is_dns(&self) -> bool {
        matches!(self, DnsVerdict::Dns)
    }
}

/// The failed DNS inequality for a pair with `cost_a ≤ cost_b`, if any.
fn dns_pair(cost_a: &Money, mu_a: &SatValue, cost_b: &Money, mu_b: &SatValue) -> Option<DnsInequality> {
    if mu_a > mu_b {
        Some(DnsInequality::Monotone)
    } else if mu_a * cost_b < mu_b * cost_a {
        Some(DnsInequality::Ratio)
    } else {
        None
    }
}

/// First pair of costs `x < x'` in a cost map that breaks DNS.
pub fn find_dns_violation(map: &BTreeMap<Money, SatValue>) -> Option<(Money, Money, DnsInequality)> {
    let entries: Vec<(&Money, &SatValue)> = map.iter().collect();
    for (i, (x, sx)) in entries.iter().enumerate() {
        for (y, sy) in &entries[i + 1..] {
            if let Some(ineq) = dns_pair(x, sx, y, sy) {
                return Some(((*x).clone(), (*y).clone(), ineq));
            }
        }
    }
    None
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DnsCase {
    /// `s(x) > s(x')`.
    Decreasing,
    /// `s(x)/x < s(x')/x'`.
    SuperProportional,
}

/// An instance on which MES with cardinality satisfaction violates PJR-x
/// for the cost-map function `mu`.
#[derive(Debug, Clone)]
pub struct DnsCounterexample {
    pub case: DnsCase,
    pub instance: Instance,
    pub mu: SatisfactionFunction,
    pub beta: u64,
    /// Budget slack `ε` (decreasing case only).
    pub epsilon: Option<Money>,
    /// Voter split `(p, q)`: `q` voters approve everything, `p` only the
    /// pricier projects (decreasing case only).
    pub split: Option<(u64, u64)>,
}

fn to_u64(value: &Rational) -> u64 {
    use num_traits::ToPrimitive;
    value.floor().to_u64().expect("constructor parameter fits in u64")
}

/// Builds the instance from the DNS-necessity argument for costs `x < x'`.
///
/// Values are rescaled so that `x = 1` and `s(x) = 1`; the instance keeps the
/// original costs. `β` is the smallest integer meeting the strict bounds.
pub fn dns_counterexample_instance(
    s: &BTreeMap<Money, SatValue>,
    x: &Money,
    x_prime: &Money,
) -> Result<DnsCounterexample, SatError> {
    let not_violation = || SatError::NotADnsViolation { x: x.clone(), x_prime: x_prime.clone() };
    let sx = s.get(x).ok_or_else(|| SatError::MissingCost(x.clone()))?;
    let sy = s.get(x_prime).ok_or_else(|| SatError::MissingCost(x_prime.clone()))?;
    for (key, value) in [(x, sx), (x_prime, sy)] {
        if !key.is_positive() || !value.is_positive() {
            return Err(SatError::NonPositive { key: key.to_string(), value: value.clone() });
        }
    }
    if x >= x_prime {
        return Err(not_violation());
    }
    let big_x = x_prime / x;
    let v = sy / sx;
    let one = Rational::one();
    let mu_map: BTreeMap<Money, SatValue> = [(x.clone(), sx.clone()), (x_prime.clone(), sy.clone())].into();

    if v < one {
        let beta = to_u64(&(&one / &(&one - &v))) + 1;
        let beta_q = Rational::from_integer(beta as i64);
        debug_assert!(&v + &beta_q.recip() < one);
        let epsilon = (&beta_q * 2usize).recip();
        let low = &big_x - &one;
        let high = &low + &epsilon;
        let (p, q) = (1u64..)
            .find_map(|q| {
                let qq = Rational::from_integer(q as i64);
                let p = to_u64(&(&low * &qq)) + 1;
                (Rational::new(p as i64, q as i64) <= high).then_some((p, q))
            })
            .expect("a rational exists in every non-empty interval");
        let budget = &(&beta_q * &(&big_x + &epsilon)) * x;
        let k = (beta + 1) as usize;
        let ids: Vec<String> = (1..=2 * k).map(|i| format!("p{i}")).collect();
        let projects: Vec<(&str, Money)> = ids
            .iter()
            .enumerate()
            .map(|(i, id)| (id.as_str(), if i < k { x.clone() } else { x_prime.clone() }))
            .collect();
        let everything: Vec<&str> = ids.iter().map(String::as_str).collect();
        let pricier: Vec<&str> = everything[k..].to_vec();
        let mut ballots = vec![everything; q as usize];
        ballots.extend(std::iter::repeat_n(pricier, p as usize));
        let instance = Instance::from_ids(&projects, &ballots, budget)?;
        let mu = SatisfactionFunction::cost_map(&instance, &mu_map)?;
        return Ok(DnsCounterexample {
            case: DnsCase::Decreasing,
            instance,
            mu,
            beta,
            epsilon: Some(epsilon),
            split: Some((p, q)),
        });
    }
    if v > big_x {
        // Smallest β with X/V < (β-1)/β, i.e. β > V/(V-X).
        let beta = to_u64(&(&v / &(&v - &big_x))) + 1;
        let beta_q = Rational::from_integer(beta as i64);
        debug_assert!(&big_x / &v < (&beta_q - &one) / beta_q.clone());
        let cheap = to_u64(&(&beta_q * &big_x)) as usize;
        let ids: Vec<String> = (1..=cheap + beta as usize).map(|i| format!("p{i}")).collect();
        let projects: Vec<(&str, Money)> = ids
            .iter()
            .enumerate()
            .map(|(i, id)| (id.as_str(), if i < cheap { x.clone() } else { x_prime.clone() }))
            .collect();
        let ballot: Vec<&str> = ids.iter().map(String::as_str).collect();
        let instance = Instance::from_ids(&projects, &[ballot], &beta_q * x_prime)?;
        let mu = SatisfactionFunction::cost_map(&instance, &mu_map)?;
        return Ok(DnsCounterexample {
            case: DnsCase::SuperProportional,
            instance,
            mu,
            beta,
            epsilon: None,
            split: None,
        });
    }
    Err(not_violation())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::fixtures::*;

    fn b7_table(inst: &Instance) -> SatisfactionFunction {
        let entries: BTreeMap<String, SatValue> =
            [("p1", q(1, 10)), ("p2", q(1, 10)), ("p3", q(1, 10)), ("p4", q(31, 10)), ("p5", int(4))]
                .into_iter()
                .map(|(k, v)| (k.to_string(), v))
                .collect();
        SatisfactionFunction::table(inst, &entries).unwrap()
    }

    #[test]
    fn best_outcome_values() {
        let inst = best_outcome();
        let cost = SatisfactionFunction::cost(&inst);
        let card = SatisfactionFunction::cardinality(&inst);
        assert_eq!(cost.evaluate(&inst, &set(&inst, &["p1"])).unwrap(), int(5));
        assert_eq!(card.evaluate(&inst, &set(&inst, &["p2", "p3", "p4", "p5"])).unwrap(), int(4));
        for mu in [cost, card, SatisfactionFunction::cc(&inst), SatisfactionFunction::sqrt_cost(&inst)] {
            assert_eq!(mu.evaluate(&inst, &ProjectSet::new()).unwrap(), int(0));
        }
    }

    #[test]
    fn share_values() {
        let inst = priceable_not_pjrx();
        let share = SatisfactionFunction::share(&inst);
        assert_eq!(share.evaluate(&inst, &set(&inst, &["p1"])).unwrap(), int(2));
        let lonely = Instance::from_ids(&[("a", int(2)), ("b", int(1))], &[vec!["a"]], int(3)).unwrap();
        let share = SatisfactionFunction::share(&lonely);
        assert!(matches!(
            share.evaluate(&lonely, &lonely.all_projects()),
            Err(SatError::UndefinedShare(id)) if id == "b"
        ));
    }

    #[test]
    fn voter_satisfaction_on_b7_table() {
        let inst = b7();
        let mu = b7_table(&inst);
        assert_eq!(mu.voter_satisfaction(&inst, 0, &set(&inst, &["p2", "p3"])).unwrap(), q(1, 5));
        assert_eq!(mu.voter_satisfaction(&inst, 0, &ProjectSet::new()).unwrap(), int(0));
        assert!(matches!(mu.voter_satisfaction(&inst, 3, &ProjectSet::new()), Err(SatError::UnknownVoter(3))));
    }

    #[test]
    fn dns_classification() {
        let inst = b7();
        for mu in [
            SatisfactionFunction::cost(&inst),
            SatisfactionFunction::cardinality(&inst),
            SatisfactionFunction::sqrt_cost(&inst),
            SatisfactionFunction::log_cost(&inst),
        ] {
            assert!(mu.is_dns(&inst).unwrap().is_dns(), "{}", mu.kind());
        }
        assert_eq!(
            b7_table(&inst).is_dns(&inst).unwrap(),
            DnsVerdict::Violated { cheaper: 0, pricier: 3, inequality: DnsInequality::Ratio }
        );
        assert_eq!(SatisfactionFunction::cc(&inst).is_dns(&inst), Err(SatError::NotAdditive(SatKind::Cc)));
    }

    #[test]
    fn strict_cost_responsiveness() {
        let inst = b7();
        assert!(SatisfactionFunction::cost(&inst).is_strictly_cost_responsive(&inst).unwrap());
        // {p1} is cheaper than {p4} yet both count as one project.
        assert!(!SatisfactionFunction::cardinality(&inst).is_strictly_cost_responsive(&inst).unwrap());
        let single = Instance::from_ids(&[("a", int(3))], &[vec!["a"]], int(3)).unwrap();
        assert!(SatisfactionFunction::cardinality(&single).is_strictly_cost_responsive(&single).unwrap());
    }

    #[test]
    fn rationalized_values_are_exact_and_rounded() {
        let inst = Instance::from_ids(&[("a", int(2))], &[vec!["a"]], int(2)).unwrap();
        let mu = SatisfactionFunction::sqrt_cost(&inst);
        assert_eq!(*mu.per_project(0).unwrap(), "1.41421356237".parse::<Rational>().unwrap());
        assert!(mu.is_rationalized());
    }

    #[test]
    fn table_and_cost_map_validation() {
        let inst = b7();
        let missing: BTreeMap<String, SatValue> = [("p1".to_string(), int(1))].into();
        assert!(matches!(SatisfactionFunction::table(&inst, &missing), Err(SatError::MissingEntry(_))));
        let map: BTreeMap<Money, SatValue> = [(q(5, 2), int(1)), (int(3), int(0)), (q(9, 2), int(2))].into();
        assert!(matches!(SatisfactionFunction::cost_map(&inst, &map), Err(SatError::NonPositive { .. })));
        let mu = SatisfactionFunction::cost_map_from_json(&inst, r#"{"2.5": "1", "3": "2", "9/2": "3"}"#).unwrap();
        assert_eq!(mu.evaluate(&inst, &set(&inst, &["p1", "p4"])).unwrap(), int(3));
    }

    #[test]
    fn dns_constructor_shapes() {
        let decreasing: BTreeMap<Money, SatValue> = [(int(1), int(1)), (int(2), q(1, 2))].into();
        let ce = dns_counterexample_instance(&decreasing, &int(1), &int(2)).unwrap();
        assert_eq!(ce.case, DnsCase::Decreasing);
        assert_eq!(ce.beta, 3);
        assert_eq!(ce.instance.num_projects(), 8);
        assert_eq!(ce.split, Some((7, 6)));
        assert_eq!(*ce.instance.budget(), int(3) * (int(2) + q(1, 6)));

        let super_prop: BTreeMap<Money, SatValue> = [(int(1), int(1)), (int(2), int(3))].into();
        let ce = dns_counterexample_instance(&super_prop, &int(1), &int(2)).unwrap();
        assert_eq!(ce.case, DnsCase::SuperProportional);
        assert_eq!(ce.beta, 4);
        assert_eq!(ce.instance.num_voters(), 1);
        assert_eq!(ce.instance.num_projects(), 12);
        assert_eq!(*ce.instance.budget(), int(8));

        let dns: BTreeMap<Money, SatValue> = [(int(1), int(1)), (int(2), q(3, 2))].into();
        assert!(matches!(dns_counterexample_instance(&dns, &int(1), &int(2)), Err(SatError::NotADnsViolation { .. })));
        assert_eq!(find_dns_violation(&dns), None);
        assert_eq!(find_dns_violation(&super_prop), Some((int(1), int(2), DnsInequality::Ratio)));
    }
}
