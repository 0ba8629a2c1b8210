//! Exact auditors for the EJR and PJR families and Local-BPJR.
//!
//! Everything is enumerated over bitmasks, so instances are limited to
//! [`AuditLimits`]. The EJR family enumerates candidate sets `T` and looks at
//! the approvers of `T` that the axiom leaves unsatisfied. The PJR family
//! enumerates groups built from distinct ballots, since the group's approval
//! union matters there.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::model::{Instance, ModelError, ProjectIdx, ProjectSet, VoterIdx, VoterSet};
use crate::rational::{Money, SatValue};
use crate::satisfaction::{SatError, SatisfactionFunction};
use crate::subsets;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Axiom {
    Ejr,
    Ejr1,
    Ejr1Plus,
    Ejrx,
    Pjr,
    Pjr1,
    Pjrx,
    LocalBpjr,
}

impl Axiom {
    pub const ALL: [Axiom; 8] =
        [Axiom::Ejr, Axiom::Ejr1, Axiom::Ejr1Plus, Axiom::Ejrx, Axiom::Pjr, Axiom::Pjr1, Axiom::Pjrx, Axiom::LocalBpjr];

    pub fn name(self) -> &'static str {
        match self {
            Axiom::Ejr => "ejr",
            Axiom::Ejr1 => "ejr1",
            Axiom::Ejr1Plus => "ejr1plus",
            Axiom::Ejrx => "ejrx",
            Axiom::Pjr => "pjr",
            Axiom::Pjr1 => "pjr1",
            Axiom::Pjrx => "pjrx",
            Axiom::LocalBpjr => "localbpjr",
        }
    }

    fn is_ejr_family(self) -> bool {
        matches!(self, Axiom::Ejr | Axiom::Ejr1 | Axiom::Ejr1Plus | Axiom::Ejrx)
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Axiom {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Axiom::ALL.into_iter().find(|a| a.name() == s).ok_or_else(|| {
            format!("unknown axiom `{s}` (expected one of ejr, ejr1, ejr1plus, ejrx, pjr, pjr1, pjrx, localbpjr)")
        })
    }
}

/// A set `T` and a group of voters `N'` that is `T`-cohesive.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CohesiveWitness {
    pub projects: ProjectSet,
    pub group: VoterSet,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum ViolationDetail {
    None,
    /// The project in `T \ W` that fails to lift the group above `μ(T)`.
    Project(ProjectIdx),
    /// Local-BPJR: a satisfaction-maximal `W*` strictly extending `W ∩ ⋃A_i`.
    Superset(ProjectSet),
}

/// Which comparison the axiom needed between `lhs` and `rhs`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Requirement {
    /// Needed `lhs ≥ rhs`.
    AtLeast,
    /// Needed `lhs > rhs`.
    Exceeds,
    /// Needed `lhs < rhs`, where `rhs` is the maximum reachable satisfaction.
    Below,
}

impl Requirement {
    pub fn holds(self, lhs: &SatValue, rhs: &SatValue) -> bool {
        match self {
            Requirement::AtLeast => lhs >= rhs,
            Requirement::Exceeds => lhs > rhs,
            Requirement::Below => lhs < rhs,
        }
    }
}

/// A failed axiom with the cohesive group responsible and the comparison that
/// failed. For the EJR family `lhs` is the best value over the group's
/// members; for the PJR family it is computed on `W ∩ ⋃_{i ∈ N'} A_i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub axiom: Axiom,
    pub witness: CohesiveWitness,
    pub detail: ViolationDetail,
    pub lhs: SatValue,
    pub rhs: SatValue,
    pub required: Requirement,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AuditLimits {
    pub max_projects: usize,
    pub max_voters: usize,
}

impl Default for AuditLimits {
    fn default() -> Self {
        AuditLimits { max_projects: 14, max_voters: 14 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AuditError {
    #[error("audit enumeration limit exceeded: {projects} projects, {voters} voters (limit {max_projects} and {max_voters})")]
    TooLarge { projects: usize, voters: usize, max_projects: usize, max_voters: usize },
    #[error(transparent)]
    Sat(#[from] SatError),
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// `T ⊆ A_i` for every `i` in the group and `c(T) ≤ |group|/n · b`.
pub fn is_cohesive(inst: &Instance, t: &ProjectSet, group: &VoterSet) -> bool {
    if group.iter().any(|&i| i >= inst.num_voters()) || t.iter().any(|&p| p >= inst.num_projects()) {
        return false;
    }
    let covered = group.iter().all(|&i| t.is_subset(inst.ballot(i)));
    covered && &inst.cost_of(t) * inst.num_voters() <= inst.budget() * group.len()
}

/// Precomputed tables for auditing one outcome against one satisfaction function.
pub struct Auditor<'a> {
    inst: &'a Instance,
    w: u64,
    approvals: Vec<u64>,
    /// `n·c(S)` per mask.
    cost_n: Vec<Money>,
    /// `μ(S)` per mask.
    value: Vec<SatValue>,
    /// `k·b` for `k = 0..=n`.
    share: Vec<Money>,
    /// Sets `T` whose approvers are `T`-cohesive, ascending by mask.
    ejr_candidates: Vec<u64>,
    parallel: bool,
}

impl<'a> Auditor<'a> {
    pub fn new(inst: &'a Instance, mu: &SatisfactionFunction, w: &ProjectSet) -> Result<Self, AuditError> {
        Self::with_limits(inst, mu, w, AuditLimits::default())
    }

    pub fn with_limits(
        inst: &'a Instance,
        mu: &SatisfactionFunction,
        w: &ProjectSet,
        limits: AuditLimits,
    ) -> Result<Self, AuditError> {
        let (n, m) = (inst.num_voters(), inst.num_projects());
        if m > limits.max_projects || n > limits.max_voters || m > 63 {
            return Err(AuditError::TooLarge {
                projects: m,
                voters: n,
                max_projects: limits.max_projects,
                max_voters: limits.max_voters,
            });
        }
        mu.check_instance(inst)?;
        inst.is_outcome(w)?;
        let costs: Vec<Money> = inst.projects().iter().map(|p| &p.cost * n).collect();
        let mut auditor = Auditor {
            inst,
            w: subsets::mask_of(w),
            approvals: inst.ballots().iter().map(subsets::mask_of).collect(),
            cost_n: subsets::additive_table(&costs),
            value: mu.mask_table(),
            share: (0..=n).map(|k| inst.budget() * k).collect(),
            ejr_candidates: Vec::new(),
            parallel: false,
        };
        auditor.ejr_candidates = (1u64..1 << m)
            .filter(|&t| {
                let supporters = auditor.approvals.iter().filter(|&&a| t & !a == 0).count();
                auditor.cohesive(t, supporters)
            })
            .collect();
        Ok(auditor)
    }

    /// Switches to auditing another outcome, keeping the tables.
    pub fn set_outcome(&mut self, w: &ProjectSet) -> Result<(), AuditError> {
        self.inst.is_outcome(w)?;
        self.w = subsets::mask_of(w);
        Ok(())
    }

    /// Evaluate candidates on the rayon pool. The reported violation is the
    /// same as in a sequential run.
    pub fn parallel(mut self, on: bool) -> Self {
        self.parallel = on;
        self
    }

    fn m(&self) -> usize {
        self.inst.num_projects()
    }

    fn cohesive(&self, t: u64, size: usize) -> bool {
        self.cost_n[t as usize] <= self.share[size]
    }

    pub fn check(&self, axiom: Axiom) -> Option<Violation> {
        if axiom.is_ejr_family() {
            self.ejr_family(axiom)
        } else {
            self.pjr_family(axiom)
        }
    }

    fn ejr_family(&self, axiom: Axiom) -> Option<Violation> {
        let n = self.inst.num_voters();
        let w = self.w;
        let all = (1u64 << self.m()) - 1;
        // EJR-1: best value voter i can reach by adding one unchosen project.
        let voters = if axiom == Axiom::Ejr1 { n } else { 0 };
        let best1: Vec<Option<SatValue>> = (0..voters)
            .map(|i| {
                let wi = self.approvals[i] & w;
                subsets::bits(all & !w)
                    .map(|p| &self.value[(wi | (1u64 << p) & self.approvals[i]) as usize])
                    .max()
                    .cloned()
            })
            .collect();
        let check = |&t: &u64| -> Option<Violation> {
            if t & !w == 0 {
                return None;
            }
            let supporters: Vec<VoterIdx> = (0..n).filter(|&i| t & !self.approvals[i] == 0).collect();
            let target = &self.value[t as usize];
            let mut unsatisfied = VoterSet::new();
            let mut best: Option<(SatValue, Option<ProjectIdx>)> = None;
            for &i in &supporters {
                let wi = self.approvals[i] & w;
                let lifted = |p: usize| &self.value[(wi | 1u64 << p) as usize];
                let (sat, project, ok) = match axiom {
                    Axiom::Ejr => {
                        let v = self.value[wi as usize].clone();
                        let ok = v >= *target;
                        (v, None, ok)
                    }
                    Axiom::Ejr1 => {
                        let v = best1[i].clone().expect("T is not covered by W, so P \\ W is non-empty");
                        let ok = v > *target;
                        (v, None, ok)
                    }
                    Axiom::Ejr1Plus => {
                        let v = subsets::bits(t & !w).map(lifted).max().expect("T \\ W is non-empty").clone();
                        let ok = v > *target;
                        (v, None, ok)
                    }
                    Axiom::Ejrx => {
                        let p = subsets::bits(t & !w).min_by(|&a, &b| lifted(a).cmp(lifted(b))).expect("non-empty");
                        let v = lifted(p).clone();
                        let ok = v > *target;
                        (v, Some(p), ok)
                    }
                    _ => unreachable!("PJR-family axioms are handled separately"),
                };
                if ok {
                    continue;
                }
                unsatisfied.insert(i);
                if best.as_ref().is_none_or(|(b, _)| sat > *b) {
                    best = Some((sat, project));
                }
            }
            if !self.cohesive(t, unsatisfied.len()) {
                return None;
            }
            let (lhs, project) = best?;
            Some(Violation {
                axiom,
                witness: CohesiveWitness { projects: subsets::set_of(t), group: unsatisfied },
                detail: project.map_or(ViolationDetail::None, ViolationDetail::Project),
                lhs,
                rhs: target.clone(),
                required: if axiom == Axiom::Ejr { Requirement::AtLeast } else { Requirement::Exceeds },
            })
        };
        if self.parallel {
            self.ejr_candidates.par_iter().find_map_first(check)
        } else {
            self.ejr_candidates.iter().find_map(check)
        }
    }

    /// Distinct `(⋂A_i, ⋃A_i)` pairs over groups made of whole ballot types,
    /// with the largest group size for each pair and one group achieving it.
    fn pjr_groups(&self) -> Vec<(u64, u64, VoterSet)> {
        let mut types: BTreeMap<u64, Vec<VoterIdx>> = BTreeMap::new();
        for (i, &a) in self.approvals.iter().enumerate() {
            if a != 0 {
                types.entry(a).or_default().push(i);
            }
        }
        let types: Vec<(u64, Vec<VoterIdx>)> = types.into_iter().collect();
        let mut best: BTreeMap<(u64, u64), (usize, u64)> = BTreeMap::new();
        for s in 1u64..1 << types.len() {
            let (mut inter, mut union, mut size) = (u64::MAX, 0u64, 0usize);
            for k in subsets::bits(s) {
                inter &= types[k].0;
                union |= types[k].0;
                size += types[k].1.len();
            }
            if inter == 0 {
                continue;
            }
            let entry = best.entry((inter, union)).or_insert((size, s));
            if size > entry.0 {
                *entry = (size, s);
            }
        }
        best.into_iter()
            .map(|((inter, union), (_, s))| {
                let group = subsets::bits(s).flat_map(|k| types[k].1.iter().copied()).collect();
                (inter, union, group)
            })
            .collect()
    }

    fn pjr_family(&self, axiom: Axiom) -> Option<Violation> {
        let groups = self.pjr_groups();
        let check = |(inter, union, group): &(u64, u64, VoterSet)| self.pjr_group(axiom, *inter, *union, group);
        if self.parallel {
            groups.par_iter().find_map_first(check)
        } else {
            groups.iter().find_map(check)
        }
    }

    fn pjr_group(&self, axiom: Axiom, inter: u64, union: u64, group: &VoterSet) -> Option<Violation> {
        let w = self.w;
        let wu = w & union;
        let covered = &self.value[wu as usize];
        let size = group.len();
        let lifted = |p: usize| &self.value[(wu | 1u64 << p) as usize];
        let violation = |t: u64, detail, lhs: &SatValue, rhs: &SatValue, required| Violation {
            axiom,
            witness: CohesiveWitness { projects: subsets::set_of(t), group: group.clone() },
            detail,
            lhs: lhs.clone(),
            rhs: rhs.clone(),
            required,
        };
        let candidates = || subsets::submasks(inter).filter(|&t| t != 0 && self.cohesive(t, size));
        match axiom {
            Axiom::Pjr => candidates()
                .find(|&t| *covered < self.value[t as usize])
                .map(|t| violation(t, ViolationDetail::None, covered, &self.value[t as usize], Requirement::AtLeast)),
            Axiom::Pjrx => candidates().filter(|&t| t & !w != 0).find_map(|t| {
                let target = &self.value[t as usize];
                let p = subsets::bits(t & !w).min_by(|&a, &b| lifted(a).cmp(lifted(b)))?;
                (lifted(p) <= target)
                    .then(|| violation(t, ViolationDetail::Project(p), lifted(p), target, Requirement::Exceeds))
            }),
            Axiom::Pjr1 => {
                let best = subsets::bits(inter & !w).map(lifted).max().unwrap_or(covered);
                candidates()
                    .filter(|&t| t & !w != 0)
                    .find(|&t| *best <= self.value[t as usize])
                    .map(|t| violation(t, ViolationDetail::None, best, &self.value[t as usize], Requirement::Exceeds))
            }
            Axiom::LocalBpjr => self.local_bpjr_group(inter, wu, size).map(|(t, star)| {
                let m = &self.value[star as usize];
                violation(t, ViolationDetail::Superset(subsets::set_of(star)), m, m, Requirement::Below)
            }),
            _ => unreachable!("EJR-family axioms are handled separately"),
        }
    }

    /// Sweeps subsets of `inter` by cost. At the end of each cost class whose
    /// cost is within the group's share, looks for a satisfaction-maximal set
    /// strictly containing `wu`. Returns `(T, W*)`.
    fn local_bpjr_group(&self, inter: u64, wu: u64, size: usize) -> Option<(u64, u64)> {
        if wu & !inter != 0 {
            return None;
        }
        let mut sets: Vec<u64> = subsets::submasks(inter).filter(|&s| s != 0).collect();
        sets.sort_by(|&a, &b| self.cost_n[a as usize].cmp(&self.cost_n[b as usize]).then(a.cmp(&b)));
        let mut max = &self.value[0];
        let mut witness: Option<u64> = None;
        let mut k = 0;
        while k < sets.len() {
            let class_cost = &self.cost_n[sets[k] as usize];
            if !self.cohesive(sets[k], size) {
                break;
            }
            let class_start = k;
            while k < sets.len() && self.cost_n[sets[k] as usize] == *class_cost {
                let s = sets[k];
                let v = &self.value[s as usize];
                let extends = wu & !s == 0 && wu != s;
                if v > max {
                    max = v;
                    witness = extends.then_some(s);
                } else if v == max && witness.is_none() && extends {
                    witness = Some(s);
                }
                k += 1;
            }
            if let Some(star) = witness {
                return Some((sets[class_start], star));
            }
        }
        None
    }
}

pub fn check(
    axiom: Axiom,
    inst: &Instance,
    mu: &SatisfactionFunction,
    w: &ProjectSet,
) -> Result<Option<Violation>, AuditError> {
    Ok(Auditor::new(inst, mu, w)?.check(axiom))
}

pub fn check_ejr(inst: &Instance, mu: &SatisfactionFunction, w: &ProjectSet) -> Result<Option<Violation>, AuditError> {
    check(Axiom::Ejr, inst, mu, w)
}

pub fn check_ejr1(inst: &Instance, mu: &SatisfactionFunction, w: &ProjectSet) -> Result<Option<Violation>, AuditError> {
    check(Axiom::Ejr1, inst, mu, w)
}

pub fn check_ejr1_plus(
    inst: &Instance,
    mu: &SatisfactionFunction,
    w: &ProjectSet,
) -> Result<Option<Violation>, AuditError> {
    check(Axiom::Ejr1Plus, inst, mu, w)
}

pub fn check_ejrx(inst: &Instance, mu: &SatisfactionFunction, w: &ProjectSet) -> Result<Option<Violation>, AuditError> {
    check(Axiom::Ejrx, inst, mu, w)
}

pub fn check_pjr(inst: &Instance, mu: &SatisfactionFunction, w: &ProjectSet) -> Result<Option<Violation>, AuditError> {
    check(Axiom::Pjr, inst, mu, w)
}

pub fn check_pjr1(inst: &Instance, mu: &SatisfactionFunction, w: &ProjectSet) -> Result<Option<Violation>, AuditError> {
    check(Axiom::Pjr1, inst, mu, w)
}

pub fn check_pjrx(inst: &Instance, mu: &SatisfactionFunction, w: &ProjectSet) -> Result<Option<Violation>, AuditError> {
    check(Axiom::Pjrx, inst, mu, w)
}

pub fn check_local_bpjr(
    inst: &Instance,
    mu: &SatisfactionFunction,
    w: &ProjectSet,
) -> Result<Option<Violation>, AuditError> {
    check(Axiom::LocalBpjr, inst, mu, w)
}

impl Violation {
    /// Recomputes the recorded comparison from scratch with set evaluation,
    /// without the auditor's tables. True iff the violation is genuine.
    pub fn reverify(&self, inst: &Instance, mu: &SatisfactionFunction, w: &ProjectSet) -> bool {
        let CohesiveWitness { projects: t, group } = &self.witness;
        if t.is_empty() || group.is_empty() || !is_cohesive(inst, t, group) {
            return false;
        }
        let eval = |s: &ProjectSet| mu.evaluate(inst, s).ok();
        let Some(target) = eval(t) else { return false };
        let voter_w = |i: VoterIdx| -> ProjectSet { w.intersection(inst.ballot(i)).copied().collect() };
        let with = |s: &ProjectSet, p: ProjectIdx| -> ProjectSet {
            let mut s = s.clone();
            s.insert(p);
            s
        };
        let outside: Vec<ProjectIdx> = t.difference(w).copied().collect();
        let union: ProjectSet = group.iter().flat_map(|&i| inst.ballot(i).iter().copied()).collect();
        let inter: ProjectSet =
            (0..inst.num_projects()).filter(|p| group.iter().all(|&i| inst.ballot(i).contains(p))).collect();
        let wu: ProjectSet = w.intersection(&union).copied().collect();
        let fails = |lhs: &SatValue| *lhs == self.lhs && self.rhs == target && !self.required.holds(lhs, &target);
        match self.axiom {
            Axiom::Ejr => {
                let best = group.iter().filter_map(|&i| eval(&voter_w(i))).max();
                best.is_some_and(|b| fails(&b) && group.iter().all(|&i| eval(&voter_w(i)).is_some_and(|v| v < target)))
            }
            Axiom::Ejr1 | Axiom::Ejr1Plus | Axiom::Ejrx => {
                if outside.is_empty() {
                    return false;
                }
                let pool: Vec<ProjectIdx> = match self.axiom {
                    Axiom::Ejr1 => (0..inst.num_projects()).filter(|p| !w.contains(p)).collect(),
                    _ => outside.clone(),
                };
                // Per voter: the best (or for EJR-x the worst) value after adding one project.
                let per_voter = |i: VoterIdx| -> Option<SatValue> {
                    let lifted = pool.iter().filter_map(|&p| {
                        let s: ProjectSet = with(w, p).intersection(inst.ballot(i)).copied().collect();
                        eval(&s)
                    });
                    if self.axiom == Axiom::Ejrx {
                        lifted.min()
                    } else {
                        lifted.max()
                    }
                };
                let values: Option<Vec<SatValue>> = group.iter().map(|&i| per_voter(i)).collect();
                let Some(values) = values else { return false };
                let detail_ok = match (&self.detail, self.axiom) {
                    (ViolationDetail::Project(p), Axiom::Ejrx) => outside.contains(p),
                    (ViolationDetail::None, Axiom::Ejrx) => false,
                    (ViolationDetail::None, _) => true,
                    _ => false,
                };
                let best = values.iter().max().cloned();
                detail_ok && values.iter().all(|v| *v <= target) && best.is_some_and(|b| fails(&b))
            }
            Axiom::Pjr => eval(&wu).is_some_and(|v| fails(&v)),
            Axiom::Pjrx => match &self.detail {
                ViolationDetail::Project(p) if outside.contains(p) => eval(&with(&wu, *p)).is_some_and(|v| fails(&v)),
                _ => false,
            },
            Axiom::Pjr1 => {
                if outside.is_empty() {
                    return false;
                }
                let best = inter.difference(w).filter_map(|&p| eval(&with(&wu, p))).max().or_else(|| eval(&wu));
                best.is_some_and(|b| fails(&b))
            }
            Axiom::LocalBpjr => {
                let ViolationDetail::Superset(star) = &self.detail else { return false };
                let bound = inst.cost_of(t);
                if !star.is_subset(&inter) || !wu.is_subset(star) || wu == *star || inst.cost_of(star) > bound {
                    return false;
                }
                let inter_mask = subsets::mask_of(&inter);
                let max = subsets::submasks(inter_mask)
                    .map(subsets::set_of)
                    .filter(|s| inst.cost_of(s) <= bound)
                    .filter_map(|s| eval(&s))
                    .max();
                let star_value = eval(star);
                star_value.is_some_and(|v| v == self.lhs && v == self.rhs) && max.as_ref() == Some(&self.rhs)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum AxiomResult {
    Pass,
    Fail { violation: Violation },
    Guard { message: String },
}

impl AxiomResult {
    pub fn passed(&self) -> Option<bool> {
        match self {
            AxiomResult::Pass => Some(true),
            AxiomResult::Fail { .. } => Some(false),
            AxiomResult::Guard { .. } => None,
        }
    }
}

/// One edge of the implication lattice, evaluated on a single audit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ImplicationCheck {
    pub premise: String,
    pub conclusion: String,
    /// False when the implication needs a strictly increasing `μ` and this one is not.
    pub applicable: bool,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub results: Vec<(Axiom, AxiomResult)>,
    pub implications: Vec<ImplicationCheck>,
}

impl AuditReport {
    pub fn result(&self, axiom: Axiom) -> &AxiomResult {
        &self.results.iter().find(|(a, _)| *a == axiom).expect("every axiom is audited").1
    }

    pub fn violations(&self) -> impl Iterator<Item = &Violation> {
        self.results.iter().filter_map(|(_, r)| match r {
            AxiomResult::Fail { violation } => Some(violation),
            _ => None,
        })
    }

    pub fn any_guard(&self) -> bool {
        self.results.iter().any(|(_, r)| matches!(r, AxiomResult::Guard { .. }))
    }

    /// Every applicable implication holds.
    pub fn consistent(&self) -> bool {
        self.implications.iter().all(|c| !c.applicable || c.holds)
    }
}

/// Runs every auditor and checks the implication lattice on the results.
pub fn audit_all(
    inst: &Instance,
    mu: &SatisfactionFunction,
    w: &ProjectSet,
    limits: AuditLimits,
    parallel: bool,
) -> Result<AuditReport, AuditError> {
    let auditor = match Auditor::with_limits(inst, mu, w, limits) {
        Ok(a) => a.parallel(parallel),
        Err(e @ AuditError::TooLarge { .. }) => {
            let message = e.to_string();
            let results = Axiom::ALL.iter().map(|&a| (a, AxiomResult::Guard { message: message.clone() })).collect();
            return Ok(AuditReport { results, implications: Vec::new() });
        }
        Err(e) => return Err(e),
    };
    let results: Vec<(Axiom, AxiomResult)> = Axiom::ALL
        .iter()
        .map(|&a| {
            let r = auditor.check(a).map_or(AxiomResult::Pass, |violation| AxiomResult::Fail { violation });
            (a, r)
        })
        .collect();
    let passed = |a: Axiom| results.iter().find(|(b, _)| *b == a).and_then(|(_, r)| r.passed()).unwrap_or(false);
    let strict = mu.flags().strictly_increasing;
    let edge = |p: Axiom, c: Axiom, applicable: bool| ImplicationCheck {
        premise: p.name().to_string(),
        conclusion: c.name().to_string(),
        applicable,
        holds: !passed(p) || passed(c),
    };
    let mut implications = vec![
        edge(Axiom::Ejr, Axiom::Ejrx, strict),
        edge(Axiom::Ejrx, Axiom::Ejr1Plus, true),
        edge(Axiom::Ejr1Plus, Axiom::Ejr1, true),
        edge(Axiom::Ejr, Axiom::Pjr, true),
        edge(Axiom::Ejrx, Axiom::Pjrx, true),
        edge(Axiom::Pjr, Axiom::Pjrx, strict),
        edge(Axiom::Pjrx, Axiom::Pjr1, true),
        edge(Axiom::Pjrx, Axiom::LocalBpjr, true),
    ];
    let cost = SatisfactionFunction::cost(inst);
    let cost_pjrx = Auditor::with_limits(inst, &cost, w, limits)?.parallel(parallel).check(Axiom::Pjrx).is_none();
    implications.push(ImplicationCheck {
        premise: "pjrx[cost]".to_string(),
        conclusion: format!("localbpjr[{}]", mu.kind()),
        applicable: true,
        holds: !cost_pjrx || passed(Axiom::LocalBpjr),
    });
    Ok(AuditReport { results, implications })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::fixtures::*;
    use crate::satisfaction::SatisfactionFunction as Sf;

    fn b7_table(inst: &Instance) -> Sf {
        let values = [q(1, 10), q(1, 10), q(1, 10), q(31, 10), int(4)];
        let map = (1..=5).map(|k| (format!("p{k}"), values[k - 1].clone())).collect();
        Sf::table(inst, &map).unwrap()
    }

    fn audit(axiom: Axiom, inst: &Instance, mu: &Sf, ids: &[&str]) -> Option<Violation> {
        let w = set(inst, ids);
        let found = check(axiom, inst, mu, &w).unwrap();
        if let Some(v) = &found {
            assert!(v.reverify(inst, mu, &w), "{v:?} does not re-verify");
        }
        let parallel = Auditor::new(inst, mu, &w).unwrap().parallel(true).check(axiom);
        assert_eq!(parallel, found);
        found
    }

    #[test]
    fn cohesiveness() {
        let inst = incompat();
        let one: VoterSet = [0].into_iter().collect();
        let both: VoterSet = [0, 1].into_iter().collect();
        assert!(is_cohesive(&inst, &set(&inst, &["p3", "p4", "p5", "p6", "p7"]), &one));
        assert!(is_cohesive(&inst, &set(&inst, &["p1", "p2"]), &both));
        assert!(!is_cohesive(&inst, &set(&inst, &["p1"]), &VoterSet::new()));
    }

    #[test]
    fn b7_example() {
        let inst = b7();
        let mu = b7_table(&inst);
        assert_eq!(audit(Axiom::Ejr, &inst, &mu, &["p1", "p5"]), None);
        assert_eq!(audit(Axiom::Ejrx, &inst, &mu, &["p1", "p5"]), None);
        assert!(audit(Axiom::Ejr, &inst, &mu, &["p2", "p3"]).is_some());
        assert_eq!(audit(Axiom::Ejr1, &inst, &mu, &["p2", "p3"]), None);
        assert_eq!(audit(Axiom::Ejr1Plus, &inst, &mu, &["p2", "p3"]), None);
        let v = audit(Axiom::Ejrx, &inst, &mu, &["p2", "p3"]).unwrap();
        assert_eq!(v.detail, ViolationDetail::Project(0));
        assert_eq!(v.lhs, q(3, 10));
        assert_eq!(v.rhs, mu.evaluate(&inst, &v.witness.projects).unwrap());
        assert_eq!(audit(Axiom::Ejr1, &inst, &mu, &["p1", "p4"]), None);
        assert!(audit(Axiom::Ejrx, &inst, &mu, &["p1", "p4"]).is_some());
    }

    #[test]
    fn incompatibility_instance() {
        let inst = incompat();
        let rest: Vec<String> = (3..=12).map(|k| format!("p{k}")).collect();
        let rest: Vec<&str> = rest.iter().map(String::as_str).collect();
        let card = Sf::cardinality(&inst);
        let cost = Sf::cost(&inst);
        assert_eq!(audit(Axiom::Ejr1, &inst, &card, &rest), None);
        let v = audit(Axiom::Ejr1, &inst, &cost, &rest).unwrap();
        assert_eq!(v.witness.projects, set(&inst, &["p1", "p2"]));
        assert!(audit(Axiom::Ejr1, &inst, &card, &["p1"]).is_some());
    }

    #[test]
    fn pricing_example_violates_pjrx() {
        let inst = priceable_not_pjrx();
        let v = audit(Axiom::Pjrx, &inst, &Sf::cardinality(&inst), &["p1"]).unwrap();
        assert_eq!(v.lhs, int(2));
        assert_eq!(v.rhs, int(2));
    }

    #[test]
    fn local_bpjr_examples() {
        let inst = local_bpjr_unit();
        let cost = Sf::cost(&inst);
        let v = audit(Axiom::Pjr, &inst, &cost, &["p3", "p4"]).unwrap();
        assert_eq!(v.witness.projects, set(&inst, &["p1", "p2"]));
        assert_eq!(v.witness.group.len(), 3);
        assert_eq!(audit(Axiom::LocalBpjr, &inst, &cost, &["p3", "p4"]), None);

        let inst = local_bpjr_single();
        let cost = Sf::cost(&inst);
        assert_eq!(audit(Axiom::Pjr1, &inst, &cost, &["p1"]), None);
        let v = audit(Axiom::LocalBpjr, &inst, &cost, &["p1"]).unwrap();
        assert_eq!(v.detail, ViolationDetail::Superset(set(&inst, &["p1", "p2"])));
    }

    #[test]
    fn everything_funded_passes() {
        let inst = mes_c6();
        let bigger = Instance::new(inst.projects().to_vec(), inst.ballots().to_vec(), int(5)).unwrap();
        for mu in [Sf::cost(&bigger), Sf::cardinality(&bigger), Sf::cc(&bigger)] {
            let report = audit_all(&bigger, &mu, &bigger.all_projects(), AuditLimits::default(), false).unwrap();
            assert!(report.violations().next().is_none());
            assert!(report.consistent());
        }
    }

    #[test]
    fn audit_all_guards_and_consistency() {
        let inst = b7();
        let mu = b7_table(&inst);
        let report = audit_all(&inst, &mu, &set(&inst, &["p2", "p3"]), AuditLimits::default(), false).unwrap();
        assert_eq!(report.result(Axiom::Ejr1).passed(), Some(true));
        assert_eq!(report.result(Axiom::Ejrx).passed(), Some(false));
        assert!(report.consistent());
        let tight = AuditLimits { max_projects: 3, max_voters: 3 };
        let guarded = audit_all(&inst, &mu, &ProjectSet::new(), tight, false).unwrap();
        assert!(guarded.any_guard());
    }
}
