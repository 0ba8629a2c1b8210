//! Voting rules with full execution traces: MES[μ], sequential Phragmén,
//! the maximin support method, and the Greedy Cohesive Rule GCR[μ].

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::flow::{self, LoadError};
use crate::model::{Instance, ProjectIdx, ProjectSet, VoterIdx, VoterSet};
use crate::rational::{Money, Rational, SatValue};
use crate::satisfaction::{SatError, SatKind, SatisfactionFunction};
use crate::subsets;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RuleKind {
    Mes,
    Phragmen,
    Maximin,
    Gcr,
}

impl RuleKind {
    pub fn name(self) -> &'static str {
        match self {
            RuleKind::Mes => "mes",
            RuleKind::Phragmen => "phragmen",
            RuleKind::Maximin => "maximin",
            RuleKind::Gcr => "gcr",
        }
    }
}

impl fmt::Display for RuleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RuleKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "mes" => Ok(RuleKind::Mes),
            "phragmen" => Ok(RuleKind::Phragmen),
            "maximin" => Ok(RuleKind::Maximin),
            "gcr" => Ok(RuleKind::Gcr),
            other => Err(format!("unknown rule `{other}` (expected mes, phragmen, maximin or gcr)")),
        }
    }
}

/// Comparator for projects; the smaller project wins a tie.
pub type ProjectOrder = Arc<dyn Fn(&Instance, ProjectIdx, ProjectIdx) -> Ordering + Send + Sync>;

/// How rules break ties between equally good projects or project sets.
#[derive(Clone, Default)]
pub enum TieBreak {
    /// Smallest project id (plain string order) wins.
    #[default]
    Lex,
    /// Largest project id wins.
    Reverse,
    Custom(ProjectOrder),
}

impl fmt::Debug for TieBreak {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TieBreak::Lex => f.write_str("Lex"),
            TieBreak::Reverse => f.write_str("Reverse"),
            TieBreak::Custom(_) => f.write_str("Custom(..)"),
        }
    }
}

impl FromStr for TieBreak {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "lex" => Ok(TieBreak::Lex),
            "reverse" => Ok(TieBreak::Reverse),
            other => Err(format!("unknown tie-break `{other}` (expected lex or reverse)")),
        }
    }
}

impl TieBreak {
    /// Position of each project in tie-break order; lower ranks win.
    pub fn ranks(&self, inst: &Instance) -> Vec<usize> {
        let mut order: Vec<ProjectIdx> = (0..inst.num_projects()).collect();
        match self {
            TieBreak::Lex => order.sort_by(|&a, &b| inst.id(a).cmp(inst.id(b))),
            TieBreak::Reverse => order.sort_by(|&a, &b| inst.id(b).cmp(inst.id(a))),
            TieBreak::Custom(cmp) => order.sort_by(|&a, &b| cmp(inst, a, b)),
        }
        let mut ranks = vec![0; inst.num_projects()];
        for (rank, p) in order.into_iter().enumerate() {
            ranks[p] = rank;
        }
        ranks
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Selection {
    pub round: usize,
    pub project: ProjectIdx,
    /// `ρ` for MES, `t` for Phragmén, the balanced maximum load for maximin,
    /// `μ(W')` for GCR.
    pub value: Rational,
}

/// The project whose selection would have exceeded the budget, ending the run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Blocking {
    pub project: ProjectIdx,
    pub value: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RuleTrace {
    pub rule: RuleKind,
    pub satisfaction: Option<SatKind>,
    pub selections: Vec<Selection>,
    /// MES: remaining budgets `b_i`, initially and after each round.
    pub voter_budgets: Vec<Vec<Money>>,
    /// Phragmén and maximin: voter loads `l_i`, initially and after each round.
    pub voter_loads: Vec<Vec<Money>>,
    /// `d_i(p)` indexed by voter then project. Empty for GCR.
    pub payments: Vec<Vec<Money>>,
    pub blocking: Option<Blocking>,
    /// Maximin: an optimal load assignment for `W ∪ {blocking}`.
    pub blocking_loads: Option<Vec<Vec<Money>>>,
    /// MES: `min_{p ∉ W} c(p) - Σ_{i ∈ N_p} b_i` at termination.
    pub delta: Option<Money>,
    /// GCR: the group removed in each round.
    pub groups: Vec<VoterSet>,
    /// Candidates dropped by the skip-blocked variant.
    pub skipped: Vec<ProjectIdx>,
    pub exhaustive: bool,
}

impl RuleTrace {
    fn new(rule: RuleKind, satisfaction: Option<SatKind>) -> Self {
        RuleTrace {
            rule,
            satisfaction,
            selections: Vec::new(),
            voter_budgets: Vec::new(),
            voter_loads: Vec::new(),
            payments: Vec::new(),
            blocking: None,
            blocking_loads: None,
            delta: None,
            groups: Vec::new(),
            skipped: Vec::new(),
            exhaustive: false,
        }
    }

    /// The selected projects.
    pub fn outcome(&self) -> ProjectSet {
        self.selections.iter().map(|s| s.project).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleOutcome {
    pub outcome: ProjectSet,
    pub trace: RuleTrace,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RuleError {
    #[error("MES needs an additive satisfaction function, got `{0}`")]
    NotAdditive(SatKind),
    #[error("project `{0}` has zero satisfaction value")]
    ZeroSatisfaction(String),
    #[error(
        "GCR enumeration limit exceeded: {projects} projects, {voters} voters (limit {max_projects} and {max_voters})"
    )]
    TooLarge { projects: usize, voters: usize, max_projects: usize, max_voters: usize },
    #[error(transparent)]
    Sat(#[from] SatError),
    #[error(transparent)]
    Load(#[from] LoadError),
}

/// Minimal `ρ` with `Σ_{i ∈ supporters} min(b_i, ρ·mu_p) = cost`, or `None`
/// if the supporters cannot afford `cost` at any `ρ`.
fn min_rho_raw(budgets: &[Money], supporters: &[VoterIdx], cost: &Money, mu_p: &SatValue) -> Option<Rational> {
    let mut owned: Vec<&Money> = supporters.iter().map(|&i| &budgets[i]).collect();
    let total: Money = owned.iter().copied().sum();
    if total < *cost || owned.is_empty() {
        return None;
    }
    owned.sort();
    let k = owned.len();
    let mut paid_in_full = Rational::zero();
    for (j, b) in owned.iter().enumerate() {
        // The `j` poorest pay everything, the rest pay `ρ·μ(p)` each.
        let rho = &(cost - &paid_in_full) / &(mu_p * (k - j));
        if &(&rho * mu_p) <= *b {
            return Some(rho);
        }
        paid_in_full += *b;
    }
    unreachable!("total budget covers the cost, so the last segment solves the equation")
}

/// The minimal `ρ` at which project `p` is `ρ`-affordable given remaining budgets.
pub fn min_rho(
    inst: &Instance,
    budgets: &[Money],
    mu: &SatisfactionFunction,
    p: ProjectIdx,
) -> Result<Option<Rational>, RuleError> {
    mu.check_instance(inst)?;
    if !mu.is_additive() {
        return Err(RuleError::NotAdditive(mu.kind()));
    }
    let supporters = inst.supporters(p);
    if supporters.is_empty() {
        return Ok(None);
    }
    let value = mu.per_project(p).ok_or_else(|| SatError::UndefinedShare(inst.id(p).to_string()))?;
    if !value.is_positive() {
        return Err(RuleError::ZeroSatisfaction(inst.id(p).to_string()));
    }
    Ok(min_rho_raw(budgets, supporters, inst.cost(p), value))
}

fn better(a: (&Rational, usize), b: Option<(&Rational, usize)>) -> bool {
    match b {
        None => true,
        Some(b) => a.0 < b.0 || (a.0 == b.0 && a.1 < b.1),
    }
}

/// Method of Equal Shares with satisfaction function `mu`.
pub fn run_mes(inst: &Instance, mu: &SatisfactionFunction, tie: &TieBreak) -> Result<RuleOutcome, RuleError> {
    mu.check_instance(inst)?;
    if !mu.is_additive() {
        return Err(RuleError::NotAdditive(mu.kind()));
    }
    let n = inst.num_voters();
    let m = inst.num_projects();
    let ranks = tie.ranks(inst);
    let mut budgets = vec![inst.budget() / n; n];
    let mut trace = RuleTrace::new(RuleKind::Mes, Some(mu.kind()));
    trace.payments = vec![vec![Rational::zero(); m]; n];
    trace.voter_budgets.push(budgets.clone());
    let mut chosen = ProjectSet::new();
    for round in 1.. {
        let mut best: Option<(Rational, ProjectIdx)> = None;
        for p in (0..m).filter(|p| !chosen.contains(p)) {
            let Some(rho) = min_rho(inst, &budgets, mu, p)? else {
                continue;
            };
            if better((&rho, ranks[p]), best.as_ref().map(|(r, q)| (r, ranks[*q]))) {
                best = Some((rho, p));
            }
        }
        let Some((rho, p)) = best else {
            break;
        };
        let share = &rho * mu.per_project(p).expect("affordable projects have values");
        for &i in inst.supporters(p) {
            let pay = if budgets[i] < share { budgets[i].clone() } else { share.clone() };
            budgets[i] -= &pay;
            trace.payments[i][p] = pay;
        }
        chosen.insert(p);
        trace.selections.push(Selection { round, project: p, value: rho });
        trace.voter_budgets.push(budgets.clone());
    }
    trace.delta = (0..m)
        .filter(|p| !chosen.contains(p))
        .map(|p| inst.cost(p) - &inst.supporters(p).iter().map(|&i| &budgets[i]).sum::<Money>())
        .min();
    trace.exhaustive = inst.is_exhaustive(&chosen).expect("MES stays within budget");
    Ok(RuleOutcome { outcome: chosen, trace })
}

/// Projects that are ever considered by the Phragmén-style rules: approved
/// by somebody and no more expensive than the budget.
fn candidate_pool(inst: &Instance) -> Vec<ProjectIdx> {
    (0..inst.num_projects()).filter(|&p| !inst.supporters(p).is_empty() && inst.cost(p) <= inst.budget()).collect()
}

/// Splits the argmin of `values` into (winner, blocked), in tie order.
fn argmin_split(
    inst: &Instance,
    values: &[(ProjectIdx, Rational)],
    ranks: &[usize],
    spent: &Money,
) -> (Rational, Vec<ProjectIdx>) {
    let min = values.iter().map(|(_, v)| v).min().expect("non-empty pool").clone();
    let mut argmin: Vec<ProjectIdx> = values.iter().filter(|(_, v)| *v == min).map(|(p, _)| *p).collect();
    argmin.sort_by_key(|&p| ranks[p]);
    let _ = (inst, spent);
    (min, argmin)
}

/// Sequential Phragmén, following the listing: the run stops as soon as some
/// argmin project no longer fits. With `skip_blocked`, such projects are
/// dropped instead and the run continues.
pub fn run_seq_phragmen(inst: &Instance, tie: &TieBreak, skip_blocked: bool) -> RuleOutcome {
    let n = inst.num_voters();
    let m = inst.num_projects();
    let ranks = tie.ranks(inst);
    let mut loads = vec![Rational::zero(); n];
    let mut trace = RuleTrace::new(RuleKind::Phragmen, None);
    trace.payments = vec![vec![Rational::zero(); m]; n];
    trace.voter_loads.push(loads.clone());
    let mut pool = candidate_pool(inst);
    let mut chosen = ProjectSet::new();
    let mut spent = Rational::zero();
    let mut round = 0;
    while !pool.is_empty() {
        let values: Vec<(ProjectIdx, Rational)> = pool
            .iter()
            .map(|&p| {
                let sup = inst.supporters(p);
                let total: Money = sup.iter().map(|&i| &loads[i]).sum();
                (p, &(inst.cost(p) + &total) / sup.len())
            })
            .collect();
        let (t, argmin) = argmin_split(inst, &values, &ranks, &spent);
        let blocked: Vec<ProjectIdx> =
            argmin.iter().copied().filter(|&p| &spent + inst.cost(p) > *inst.budget()).collect();
        if let Some(&first) = blocked.first() {
            if skip_blocked {
                trace.skipped.extend(&blocked);
                pool.retain(|p| !blocked.contains(p));
                continue;
            }
            trace.blocking = Some(Blocking { project: first, value: t });
            break;
        }
        let p = argmin[0];
        round += 1;
        for &i in inst.supporters(p) {
            trace.payments[i][p] = &t - &loads[i];
            loads[i] = t.clone();
        }
        spent += inst.cost(p);
        chosen.insert(p);
        pool.retain(|&q| q != p);
        trace.selections.push(Selection { round, project: p, value: t });
        trace.voter_loads.push(loads.clone());
    }
    trace.exhaustive = inst.is_exhaustive(&chosen).expect("Phragmén stays within budget");
    RuleOutcome { outcome: chosen, trace }
}

/// The maximin support method: each round adds the project whose inclusion
/// gives the smallest optimal maximum load. Stops like [`run_seq_phragmen`].
pub fn run_maximin_support(inst: &Instance, tie: &TieBreak, skip_blocked: bool) -> Result<RuleOutcome, RuleError> {
    let n = inst.num_voters();
    let ranks = tie.ranks(inst);
    let mut trace = RuleTrace::new(RuleKind::Maximin, None);
    trace.voter_loads.push(vec![Rational::zero(); n]);
    let mut pool = candidate_pool(inst);
    let mut chosen = ProjectSet::new();
    let mut spent = Rational::zero();
    let mut round = 0;
    while !pool.is_empty() {
        let mut values = Vec::with_capacity(pool.len());
        for &p in &pool {
            let mut with = chosen.clone();
            with.insert(p);
            values.push((p, flow::optimal_max_load(inst, &with)?));
        }
        let (s, argmin) = argmin_split(inst, &values, &ranks, &spent);
        let blocked: Vec<ProjectIdx> =
            argmin.iter().copied().filter(|&p| &spent + inst.cost(p) > *inst.budget()).collect();
        if let Some(&first) = blocked.first() {
            if skip_blocked {
                trace.skipped.extend(&blocked);
                pool.retain(|p| !blocked.contains(p));
                continue;
            }
            let mut with = chosen.clone();
            with.insert(first);
            trace.blocking_loads = Some(flow::balance_loads(inst, &with)?.loads);
            trace.blocking = Some(Blocking { project: first, value: s });
            break;
        }
        let p = argmin[0];
        round += 1;
        spent += inst.cost(p);
        chosen.insert(p);
        pool.retain(|&q| q != p);
        let balanced = flow::balance_loads(inst, &chosen)?;
        trace.voter_loads.push((0..n).map(|i| balanced.voter_total(i)).collect());
        trace.selections.push(Selection { round, project: p, value: s });
    }
    trace.payments = flow::balance_loads(inst, &chosen)?.loads;
    trace.exhaustive = inst.is_exhaustive(&chosen).expect("maximin stays within budget");
    Ok(RuleOutcome { outcome: chosen, trace })
}

/// Enumeration limits for GCR.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GcrGuard {
    pub max_projects: usize,
    pub max_voters: usize,
}

impl Default for GcrGuard {
    fn default() -> Self {
        GcrGuard { max_projects: 12, max_voters: 12 }
    }
}

/// Greedy Cohesive Rule: repeatedly adds the `μ`-best set `W' ⊆ P \ W` that
/// some group of not-yet-served voters is `W'`-cohesive for, then removes the
/// largest such group `{i : W' ⊆ A_i}`. Ties between sets go to the smaller
/// list of tie-break ranks in lexicographic order.
pub fn run_gcr(
    inst: &Instance,
    mu: &SatisfactionFunction,
    tie: &TieBreak,
    guard: GcrGuard,
) -> Result<RuleOutcome, RuleError> {
    mu.check_instance(inst)?;
    let (m, n) = (inst.num_projects(), inst.num_voters());
    if m > guard.max_projects || n > guard.max_voters {
        return Err(RuleError::TooLarge {
            projects: m,
            voters: n,
            max_projects: guard.max_projects,
            max_voters: guard.max_voters,
        });
    }
    let ranks = tie.ranks(inst);
    let approvals: Vec<u64> = inst.ballots().iter().map(subsets::mask_of).collect();
    let costs: Vec<Money> = inst.projects().iter().map(|p| p.cost.clone()).collect();
    let cost = subsets::additive_table(&costs);
    let value = mu.mask_table();
    let rank_list = |mask: u64| {
        let mut r: Vec<usize> = subsets::bits(mask).map(|p| ranks[p]).collect();
        r.sort_unstable();
        r
    };
    let mut order: Vec<u64> = (1..1u64 << m).filter(|&s| cost[s as usize] <= *inst.budget()).collect();
    order.sort_by(|&a, &b| value[b as usize].cmp(&value[a as usize]).then_with(|| rank_list(a).cmp(&rank_list(b))));
    let budget = inst.budget();
    let mut remaining: Vec<bool> = vec![true; n];
    let mut chosen = 0u64;
    let mut trace = RuleTrace::new(RuleKind::Gcr, Some(mu.kind()));
    for round in 1.. {
        let pick = order.iter().copied().find(|&s| {
            if s & chosen != 0 {
                return false;
            }
            let k = (0..n).filter(|&i| remaining[i] && s & !approvals[i] == 0).count();
            &cost[s as usize] * n <= budget * k
        });
        let Some(s) = pick else {
            break;
        };
        let group: VoterSet = (0..n).filter(|&i| remaining[i] && s & !approvals[i] == 0).collect();
        for &i in &group {
            remaining[i] = false;
        }
        chosen |= s;
        for p in subsets::bits(s) {
            trace.selections.push(Selection { round, project: p, value: value[s as usize].clone() });
        }
        trace.groups.push(group);
    }
    let outcome = subsets::set_of(chosen);
    trace.exhaustive = inst.is_exhaustive(&outcome).expect("GCR outcomes are feasible");
    Ok(RuleOutcome { outcome, trace })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::fixtures::*;

    #[test]
    fn min_rho_examples() {
        let inst = mes_c6();
        let cost = SatisfactionFunction::cost(&inst);
        let budgets = vec![q(3, 2), q(3, 2)];
        assert_eq!(min_rho(&inst, &budgets, &cost, 0).unwrap(), Some(q(1, 2)));
        let single = Instance::from_ids(&[("a", int(4))], &[vec!["a"]], int(4)).unwrap();
        let mu = SatisfactionFunction::cost(&single);
        assert_eq!(min_rho(&single, &[int(4)], &mu, 0).unwrap(), Some(int(1)));
        assert_eq!(min_rho(&single, &[int(3)], &mu, 0).unwrap(), None);
        assert_eq!(
            min_rho(&inst, &budgets, &SatisfactionFunction::cc(&inst), 0),
            Err(RuleError::NotAdditive(SatKind::Cc))
        );
    }

    #[test]
    fn min_rho_with_uneven_budgets() {
        // Budgets 1/2, 2, 2 for a cost-3 project with μ = 1: the poorest pays
        // everything, the others 5/4 each.
        let budgets = vec![q(1, 2), int(2), int(2)];
        assert_eq!(min_rho_raw(&budgets, &[0, 1, 2], &int(3), &int(1)), Some(q(5, 4)));
    }

    #[test]
    fn mes_on_c6_example() {
        let inst = mes_c6();
        let by_cost = run_mes(&inst, &SatisfactionFunction::cost(&inst), &TieBreak::Lex).unwrap();
        assert_eq!(by_cost.outcome, set(&inst, &["p1"]));
        assert_eq!(by_cost.trace.selections[0].value, q(1, 2));
        let by_card = run_mes(&inst, &SatisfactionFunction::cardinality(&inst), &TieBreak::Lex).unwrap();
        assert_eq!(by_card.outcome, set(&inst, &["p2", "p3"]));
        assert_eq!(by_card.trace.delta, Some(int(2)));
        for (i, row) in by_card.trace.payments.iter().enumerate() {
            let total: Money = row.iter().sum();
            assert!(total <= q(3, 2), "voter {i}");
        }
    }

    #[test]
    fn mes_symmetric_full_funding() {
        let inst = Instance::from_ids(&[("a", int(6))], &[vec!["a"], vec!["a"], vec!["a"]], int(6)).unwrap();
        let run = run_mes(&inst, &SatisfactionFunction::cost(&inst), &TieBreak::Lex).unwrap();
        assert_eq!(run.outcome, inst.all_projects());
        assert!(run.trace.payments.iter().all(|row| row[0] == int(2)));
        assert_eq!(run.trace.delta, None);
    }

    #[test]
    fn phragmen_on_c6_example() {
        let inst = mes_c6();
        let run = run_seq_phragmen(&inst, &TieBreak::Lex, false);
        assert_eq!(run.outcome, set(&inst, &["p2", "p3"]));
        assert_eq!(run.trace.selections.iter().map(|s| s.value.clone()).collect::<Vec<_>>(), vec![int(1), int(1)]);
        assert_eq!(run.trace.blocking, Some(Blocking { project: 0, value: q(5, 2) }));
        assert!(!run.trace.exhaustive || run.outcome.len() == 2);
    }

    #[test]
    fn phragmen_unit_cost_symmetric() {
        let ids = ["a", "b", "c", "d"];
        let projects: Vec<(&str, Money)> = ids.iter().map(|id| (*id, int(1))).collect();
        let ballots = vec![ids.to_vec(); 2];
        let inst = Instance::from_ids(&projects, &ballots, int(3)).unwrap();
        let run = run_seq_phragmen(&inst, &TieBreak::Lex, false);
        assert_eq!(run.outcome, set(&inst, &["a", "b", "c"]));
        let ts: Vec<Rational> = run.trace.selections.iter().map(|s| s.value.clone()).collect();
        assert_eq!(ts, vec![q(1, 2), int(1), q(3, 2)]);
        let reversed = run_seq_phragmen(&inst, &TieBreak::Reverse, false);
        assert_eq!(reversed.outcome, set(&inst, &["b", "c", "d"]));
    }

    #[test]
    fn phragmen_skip_blocked_variant() {
        // `big` ties for the argmin but no longer fits; the listing stops,
        // the variant skips it and takes `small`.
        let inst = Instance::from_ids(
            &[("a", int(2)), ("big", int(2)), ("small", int(1))],
            &[vec!["a", "big"], vec!["small"]],
            int(3),
        )
        .unwrap();
        let verbatim = run_seq_phragmen(&inst, &TieBreak::Lex, false);
        let skipping = run_seq_phragmen(&inst, &TieBreak::Lex, true);
        assert!(verbatim.outcome.is_subset(&skipping.outcome));
        assert!(skipping.trace.exhaustive);
    }

    #[test]
    fn maximin_on_c6_example() {
        let inst = mes_c6();
        let run = run_maximin_support(&inst, &TieBreak::Lex, false).unwrap();
        assert_eq!(run.outcome, set(&inst, &["p2", "p3"]));
        assert_eq!(run.trace.blocking, Some(Blocking { project: 0, value: q(5, 2) }));
        let single = Instance::from_ids(&[("a", int(2))], &[vec!["a"]], int(2)).unwrap();
        assert_eq!(run_maximin_support(&single, &TieBreak::Lex, false).unwrap().outcome, single.all_projects());
    }

    #[test]
    fn gcr_on_incompatibility_instance() {
        let inst = incompat();
        let run = run_gcr(&inst, &SatisfactionFunction::cost(&inst), &TieBreak::Lex, GcrGuard::default()).unwrap();
        assert_eq!(run.trace.groups[0], [0, 1].into_iter().collect());
        assert_eq!(run.outcome, set(&inst, &["p1", "p2"]));
    }

    #[test]
    fn gcr_without_cohesive_groups() {
        let inst = Instance::from_ids(&[("a", int(3))], &[vec!["a"], vec![]], int(4)).unwrap();
        let run = run_gcr(&inst, &SatisfactionFunction::cost(&inst), &TieBreak::Lex, GcrGuard::default()).unwrap();
        assert!(run.outcome.is_empty());
    }

    #[test]
    fn gcr_single_voter_maximizes() {
        let inst = b7();
        let mu = SatisfactionFunction::cost(&inst);
        let run = run_gcr(&inst, &mu, &TieBreak::Lex, GcrGuard::default()).unwrap();
        assert_eq!(inst.total_cost(&run.outcome).unwrap(), int(7));
    }
}
