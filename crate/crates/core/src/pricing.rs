//! Price systems: checking conditions C1 to C6, extracting systems from rule
//! traces, and an exact search for small instances.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::lp::{LinearProgram, LpOutcome, Relation};
use crate::model::{Instance, ModelError, ProjectIdx, ProjectSet, VoterIdx};
use crate::rational::{Money, Rational};
use crate::rules::{RuleKind, RuleTrace};

/// Default limit on `n·m` for [`find_price_system`].
pub const MAX_PAYMENT_VARIABLES: usize = 64;

/// A total budget `B` and payments `d_i(p)` indexed by voter then project.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PriceSystem {
    pub budget: Money,
    pub payments: Vec<Vec<Money>>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PriceError {
    #[error("payment matrix is {rows}x{cols}, instance needs {voters}x{projects}")]
    Shape { rows: usize, cols: usize, voters: usize, projects: usize },
    #[error("negative payment {amount} by voter {voter} for `{project}`")]
    NegativePayment { voter: usize, project: String, amount: Money },
    #[error("price system budget must be positive, got {0}")]
    NonPositiveBudget(Money),
    #[error("outcome costs {cost}, over the budget {budget}")]
    Infeasible { cost: Money, budget: Money },
    #[error("trace is from {found}, expected {expected}")]
    WrongRule { expected: &'static str, found: RuleKind },
    #[error("project `{0}` is still affordable at the end of the trace")]
    StillAffordable(String),
    #[error("the run ended without a blocking project, so no price system can be read off the trace")]
    NoBlockingProject,
    #[error("trace has no recorded loads for the blocking project")]
    MissingLoads,
    #[error("search limit exceeded: {voters} voters x {projects} projects > {limit}")]
    TooLarge { voters: usize, projects: usize, limit: usize },
    #[error("unknown voter `{0}` in price system (voters are numbered from 1)")]
    UnknownVoter(String),
    #[error("malformed price system: {0}")]
    Malformed(String),
    #[error(transparent)]
    Model(#[from] ModelError),
}

impl PriceSystem {
    /// The all-zero payment matrix with total budget `budget`.
    pub fn zero(inst: &Instance, budget: Money) -> Self {
        PriceSystem { budget, payments: vec![vec![Rational::zero(); inst.num_projects()]; inst.num_voters()] }
    }

    pub fn spent(&self, voter: VoterIdx) -> Money {
        self.payments[voter].iter().sum()
    }

    /// `B_i* = B/n - Σ_p d_i(p)`.
    pub fn unspent(&self, voter: VoterIdx) -> Money {
        &(&self.budget / self.payments.len()) - &self.spent(voter)
    }

    /// JSON object `{"B": "p/q", "payments": {voter: {project: "p/q"}}}` with
    /// voters numbered from 1 and zero payments left out.
    pub fn to_json(&self, inst: &Instance) -> serde_json::Value {
        let mut payments = serde_json::Map::new();
        for (i, row) in self.payments.iter().enumerate() {
            let entries: serde_json::Map<String, serde_json::Value> = row
                .iter()
                .enumerate()
                .filter(|(_, d)| !d.is_zero())
                .map(|(p, d)| (inst.id(p).to_string(), d.to_string().into()))
                .collect();
            if !entries.is_empty() {
                payments.insert((i + 1).to_string(), entries.into());
            }
        }
        serde_json::json!({ "B": self.budget.to_string(), "payments": payments })
    }

    pub fn from_json(inst: &Instance, value: &serde_json::Value) -> Result<Self, PriceError> {
        #[derive(serde::Deserialize)]
        struct Doc {
            #[serde(rename = "B")]
            budget: Rational,
            #[serde(default)]
            payments: BTreeMap<String, BTreeMap<String, Rational>>,
        }
        let doc: Doc = serde_json::from_value(value.clone()).map_err(|e| PriceError::Malformed(e.to_string()))?;
        let mut ps = PriceSystem::zero(inst, doc.budget);
        for (voter, row) in doc.payments {
            let i: usize = voter.parse().map_err(|_| PriceError::UnknownVoter(voter.clone()))?;
            if i == 0 || i > inst.num_voters() {
                return Err(PriceError::UnknownVoter(voter));
            }
            for (project, amount) in row {
                let p = inst.project_index(&project).ok_or(ModelError::UnknownProject(project))?;
                ps.payments[i - 1][p] = amount;
            }
        }
        Ok(ps)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Condition {
    C1,
    C2,
    C3,
    C4,
    C5,
    C6,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A failed condition: the voter and projects involved, and the comparison
/// `lhs` against `rhs` that went the wrong way.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub voter: Option<VoterIdx>,
    pub projects: Vec<ProjectIdx>,
    pub lhs: Money,
    pub rhs: Money,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail(Witness),
    Skipped,
}

impl Verdict {
    pub fn is_fail(&self) -> bool {
        matches!(self, Verdict::Fail(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PriceReport {
    pub c1: Verdict,
    pub c2: Verdict,
    pub c3: Verdict,
    pub c4: Verdict,
    pub c5: Verdict,
    pub c6: Verdict,
    /// Whether `B > b`.
    pub b_strict: bool,
}

impl PriceReport {
    pub fn verdicts(&self) -> [(Condition, &Verdict); 6] {
        [
            (Condition::C1, &self.c1),
            (Condition::C2, &self.c2),
            (Condition::C3, &self.c3),
            (Condition::C4, &self.c4),
            (Condition::C5, &self.c5),
            (Condition::C6, &self.c6),
        ]
    }

    /// C1 to C5 hold, plus C6 and `B > b` when asked for.
    pub fn passes(&self, require_c6: bool, require_b_strict: bool) -> bool {
        let base = self.verdicts()[..5].iter().all(|(_, v)| **v == Verdict::Pass);
        base && (!require_c6 || self.c6 == Verdict::Pass) && (!require_b_strict || self.b_strict)
    }

    pub fn first_failure(&self) -> Option<(Condition, &Witness)> {
        self.verdicts().into_iter().find_map(|(c, v)| match v {
            Verdict::Fail(w) => Some((c, w)),
            _ => None,
        })
    }
}

fn first_fail(mut candidates: impl Iterator<Item = Witness>) -> Verdict {
    candidates.next().map_or(Verdict::Pass, Verdict::Fail)
}

/// Checks `ps` against C1 to C5, and C6 when `require_c6` is set.
pub fn verify_price_system(
    inst: &Instance,
    w: &ProjectSet,
    ps: &PriceSystem,
    require_c6: bool,
) -> Result<PriceReport, PriceError> {
    let (n, m) = (inst.num_voters(), inst.num_projects());
    let cols = ps.payments.first().map_or(m, Vec::len);
    if ps.payments.len() != n || ps.payments.iter().any(|row| row.len() != cols) || cols != m {
        return Err(PriceError::Shape { rows: ps.payments.len(), cols, voters: n, projects: m });
    }
    for (i, row) in ps.payments.iter().enumerate() {
        if let Some(p) = row.iter().position(Rational::is_negative) {
            return Err(PriceError::NegativePayment {
                voter: i + 1,
                project: inst.id(p).to_string(),
                amount: row[p].clone(),
            });
        }
    }
    if !ps.budget.is_positive() {
        return Err(PriceError::NonPositiveBudget(ps.budget.clone()));
    }
    let cost = inst.total_cost(w)?;
    if cost > *inst.budget() {
        return Err(PriceError::Infeasible { cost, budget: inst.budget().clone() });
    }
    let d = &ps.payments;
    let paid = |i: VoterIdx, p: ProjectIdx| !d[i][p].is_zero();
    let zero = Rational::zero();
    let share = &ps.budget / n;
    let unspent: Vec<Money> = (0..n).map(|i| ps.unspent(i)).collect();
    let pairs = || (0..n).flat_map(move |i| (0..m).map(move |p| (i, p)));

    let c1 = first_fail(pairs().filter(|&(i, p)| paid(i, p) && !inst.ballot(i).contains(&p)).map(|(i, p)| Witness {
        voter: Some(i),
        projects: vec![p],
        lhs: d[i][p].clone(),
        rhs: zero.clone(),
    }));
    let c2 = first_fail(pairs().filter(|&(i, p)| paid(i, p) && !w.contains(&p)).map(|(i, p)| Witness {
        voter: Some(i),
        projects: vec![p],
        lhs: d[i][p].clone(),
        rhs: zero.clone(),
    }));
    let c3 = first_fail((0..n).filter_map(|i| {
        let spent = ps.spent(i);
        (spent > share).then(|| Witness { voter: Some(i), projects: vec![], lhs: spent, rhs: share.clone() })
    }));
    let c4 = first_fail(w.iter().filter_map(|&p| {
        let total: Money = (0..n).map(|i| &d[i][p]).sum();
        (total != *inst.cost(p)).then(|| Witness {
            voter: None,
            projects: vec![p],
            lhs: total,
            rhs: inst.cost(p).clone(),
        })
    }));
    let unchosen = || (0..m).filter(|p| !w.contains(p));
    let c5 = first_fail(unchosen().filter_map(|p| {
        let left: Money = inst.supporters(p).iter().map(|&i| &unspent[i]).sum();
        (left > *inst.cost(p)).then(|| Witness { voter: None, projects: vec![p], lhs: left, rhs: inst.cost(p).clone() })
    }));
    let c6 = if require_c6 {
        first_fail(unchosen().flat_map(|pj| w.iter().map(move |&pk| (pj, pk))).filter_map(|(pj, pk)| {
            let total: Money = inst.supporters(pj).iter().map(|&i| &d[i][pk]).sum();
            (total > *inst.cost(pj)).then(|| Witness {
                voter: None,
                projects: vec![pj, pk],
                lhs: total,
                rhs: inst.cost(pj).clone(),
            })
        }))
    } else {
        Verdict::Skipped
    };
    Ok(PriceReport { c1, c2, c3, c4, c5, c6, b_strict: ps.budget > *inst.budget() })
}

fn expect_rule(trace: &RuleTrace, expected: RuleKind) -> Result<(), PriceError> {
    if trace.rule == expected {
        Ok(())
    } else {
        Err(PriceError::WrongRule { expected: expected.name(), found: trace.rule })
    }
}

/// Reads a price system off a finished MES run. Remaining budgets come from
/// the payment ledger; each voter's share is raised by `δ/(2n)`, so
/// `B = b + δ/2`. When everything was funded `δ` is taken to be `b`.
pub fn extract_from_mes_trace(inst: &Instance, trace: &RuleTrace) -> Result<PriceSystem, PriceError> {
    expect_rule(trace, RuleKind::Mes)?;
    let n = inst.num_voters();
    let w = trace.outcome();
    let mut ps = PriceSystem { budget: inst.budget().clone(), payments: trace.payments.clone() };
    let remaining: Vec<Money> = (0..n).map(|i| ps.unspent(i)).collect();
    let mut delta: Option<Money> = None;
    for p in (0..inst.num_projects()).filter(|p| !w.contains(p)) {
        let gap = inst.cost(p) - &inst.supporters(p).iter().map(|&i| &remaining[i]).sum::<Money>();
        if !gap.is_positive() {
            return Err(PriceError::StillAffordable(inst.id(p).to_string()));
        }
        if delta.as_ref().is_none_or(|d| gap < *d) {
            delta = Some(gap);
        }
    }
    let delta = delta.unwrap_or_else(|| inst.budget().clone());
    ps.budget = inst.budget() + &(&delta / 2usize);
    Ok(ps)
}

/// Price system from a sequential Phragmén run that stopped at a blocking
/// project `p'`: supporters of `p'` are raised to load `t(p')`,
/// `B = n·max_i l_i`, and payments are the load increments. `B` may then be
/// lowered on account of projects costing more than `b`.
pub fn extract_from_phragmen_trace(inst: &Instance, trace: &RuleTrace) -> Result<PriceSystem, PriceError> {
    expect_rule(trace, RuleKind::Phragmen)?;
    let blocking = trace.blocking.as_ref().ok_or(PriceError::NoBlockingProject)?;
    let mut loads = trace.voter_loads.last().cloned().ok_or(PriceError::MissingLoads)?;
    for &i in inst.supporters(blocking.project) {
        loads[i] = blocking.value.clone();
    }
    let max = loads.iter().max().cloned().unwrap_or_else(Rational::zero);
    let ps = PriceSystem { budget: &max * inst.num_voters(), payments: trace.payments.clone() };
    Ok(cap_for_unaffordable(inst, &trace.outcome(), ps))
}

/// Projects costing more than `b` are never candidates, so a budget read off
/// the loads can leave their approvers holding more than their cost. Lowers
/// `B` to at most the midpoint of `b` and the cheapest such project, but never
/// below what the biggest spender needs. The other conditions are unaffected
/// since unspent budgets only shrink.
fn cap_for_unaffordable(inst: &Instance, w: &ProjectSet, mut ps: PriceSystem) -> PriceSystem {
    let cheapest = (0..inst.num_projects())
        .filter(|p| !w.contains(p) && inst.cost(*p) > inst.budget() && !inst.supporters(*p).is_empty())
        .map(|p| inst.cost(p))
        .min();
    if let Some(c) = cheapest {
        let n = inst.num_voters();
        let needed = &(0..n).map(|i| ps.spent(i)).max().unwrap_or_else(Rational::zero) * n;
        let mid = &(inst.budget() + c) / 2usize;
        let cap = if needed > mid { needed } else { mid };
        if cap < ps.budget {
            ps.budget = cap;
        }
    }
    ps
}

/// Price system from a maximin support run that stopped at a blocking
/// project `p'`. `B = n·s(l)` for the optimal maximum load `s(l)` of
/// `W ∪ {p'}`, and each chosen project is paid with its loads.
///
/// Optimal loads are rarely unique, and an arbitrary one can overcharge the
/// approvers of an unchosen project. So the payments come from an exact LP,
/// tried in this order until one is feasible:
/// 1. optimal loads for `W ∪ {p'}` meeting C5 and C6;
/// 2. loads for `W` alone, nobody above `s(l)`, meeting C5 and C6;
/// 3. as 2, with C5 only for projects costing at most `b`.
///
/// Within each, the largest spending on `W` is minimized.
///
/// If none is feasible, or the LP would exceed [`MAX_MAXIMIN_LOAD_VARIABLES`]
/// loads, the recorded loads are used. `B` is then capped as for Phragmén.
pub fn extract_from_maximin_trace(inst: &Instance, trace: &RuleTrace) -> Result<PriceSystem, PriceError> {
    expect_rule(trace, RuleKind::Maximin)?;
    let blocking = trace.blocking.as_ref().ok_or(PriceError::NoBlockingProject)?;
    let recorded = trace.blocking_loads.as_ref().ok_or(PriceError::MissingLoads)?;
    let max = recorded.iter().map(|row| row.iter().sum::<Money>()).max().unwrap_or_else(Rational::zero);
    let w = trace.outcome();
    let loads = [(Some(blocking.project), true), (None, true), (None, false)]
        .into_iter()
        .find_map(|(extra, all_c5)| loads_for_prices(inst, &w, extra, &max, all_c5))
        .unwrap_or_else(|| recorded.clone());
    let mut payments = loads;
    for row in &mut payments {
        row[blocking.project] = Rational::zero();
    }
    Ok(cap_for_unaffordable(inst, &w, PriceSystem { budget: &max * inst.num_voters(), payments }))
}

/// Limit on the load variables of the LP in [`extract_from_maximin_trace`].
pub const MAX_MAXIMIN_LOAD_VARIABLES: usize = 256;

/// Loads for `W` plus `extra` with every voter at most `max`, such that C6
/// holds and C5 holds for every unchosen project (or only those costing at
/// most `b` when `all_c5` is false). `None` if there is none or the LP is too big.
fn loads_for_prices(
    inst: &Instance,
    w: &ProjectSet,
    extra: Option<ProjectIdx>,
    max: &Money,
    all_c5: bool,
) -> Option<Vec<Vec<Money>>> {
    let (n, m) = (inst.num_voters(), inst.num_projects());
    let mut with = w.clone();
    with.extend(extra);
    let mut var = BTreeMap::new();
    for &p in &with {
        for &i in inst.supporters(p) {
            let next = var.len();
            var.insert((i, p), next);
        }
    }
    if var.len() > MAX_MAXIMIN_LOAD_VARIABLES {
        return None;
    }
    let one = Rational::one();
    // The last variable bounds everyone's spending on `W`; keeping it small
    // leaves room to lower `B` afterwards.
    let top = var.len();
    let mut lp = LinearProgram::new(top + 1);
    for i in 0..n {
        let mut row: Vec<_> =
            var.iter().filter(|((v, p), _)| *v == i && w.contains(p)).map(|(_, &x)| (x, one.clone())).collect();
        row.push((top, -one.clone()));
        lp.constrain(row, Relation::Le, Rational::zero());
    }
    lp.maximize(vec![(top, -one.clone())]);
    for &p in &with {
        let row = inst.supporters(p).iter().map(|&i| (var[&(i, p)], one.clone())).collect();
        lp.constrain(row, Relation::Eq, inst.cost(p).clone());
    }
    for i in 0..n {
        let row: Vec<_> = var.iter().filter(|((v, _), _)| *v == i).map(|(_, &x)| (x, one.clone())).collect();
        lp.constrain(row, Relation::Le, max.clone());
    }
    for pj in (0..m).filter(|p| !w.contains(p)) {
        let supporters = inst.supporters(pj);
        if supporters.is_empty() {
            continue;
        }
        if all_c5 || inst.cost(pj) <= inst.budget() {
            // Σ_{i ∈ N_j} (max - Σ_{p ∈ W} l_i(p)) ≤ c(p_j)
            let row: Vec<_> = var
                .iter()
                .filter(|((i, p), _)| w.contains(p) && supporters.contains(i))
                .map(|(_, &x)| (x, -one.clone()))
                .collect();
            lp.constrain(row, Relation::Le, inst.cost(pj) - &(max * supporters.len()));
        }
        for &pk in w {
            let row: Vec<_> = supporters.iter().filter_map(|i| var.get(&(*i, pk)).map(|&x| (x, one.clone()))).collect();
            if !row.is_empty() {
                lp.constrain(row, Relation::Le, inst.cost(pj).clone());
            }
        }
    }
    let LpOutcome::Optimal { x, .. } = lp.solve() else {
        return None;
    };
    let mut loads = vec![vec![Rational::zero(); m]; n];
    for ((i, p), &j) in &var {
        loads[*i][*p] = x[j].clone();
    }
    Some(loads)
}

/// Dispatches on the rule recorded in the trace. GCR traces have no ledger.
pub fn extract(inst: &Instance, trace: &RuleTrace) -> Result<PriceSystem, PriceError> {
    match trace.rule {
        RuleKind::Mes => extract_from_mes_trace(inst, trace),
        RuleKind::Phragmen => extract_from_phragmen_trace(inst, trace),
        RuleKind::Maximin => extract_from_maximin_trace(inst, trace),
        RuleKind::Gcr => Err(PriceError::WrongRule { expected: "mes, phragmen or maximin", found: RuleKind::Gcr }),
    }
}

/// Searches for a price system for `W` by linear programming over `(B, d)`.
/// With `require_b_strict` the slack `t` in `B ≥ b + t` is maximized and the
/// search succeeds iff the optimum is positive; otherwise the same is done
/// for `B ≥ t`.
pub fn find_price_system(
    inst: &Instance,
    w: &ProjectSet,
    require_c6: bool,
    require_b_strict: bool,
) -> Result<Option<PriceSystem>, PriceError> {
    find_price_system_within(inst, w, require_c6, require_b_strict, MAX_PAYMENT_VARIABLES)
}

pub fn find_price_system_within(
    inst: &Instance,
    w: &ProjectSet,
    require_c6: bool,
    require_b_strict: bool,
    limit: usize,
) -> Result<Option<PriceSystem>, PriceError> {
    let (n, m) = (inst.num_voters(), inst.num_projects());
    if n * m > limit {
        return Err(PriceError::TooLarge { voters: n, projects: m, limit });
    }
    let cost = inst.total_cost(w)?;
    if cost > *inst.budget() {
        return Err(PriceError::Infeasible { cost, budget: inst.budget().clone() });
    }
    const B: usize = 0;
    const T: usize = 1;
    // One variable per approved chosen project; C1 and C2 hold by construction.
    let mut var = BTreeMap::new();
    for &p in w {
        for &i in inst.supporters(p) {
            let next = 2 + var.len();
            var.insert((i, p), next);
        }
    }
    let one = Rational::one();
    let share = Rational::new(1, n as i64);
    let mut lp = LinearProgram::new(2 + var.len());
    for i in 0..n {
        let mut row: Vec<(usize, Rational)> =
            var.iter().filter(|((v, _), _)| *v == i).map(|(_, &x)| (x, one.clone())).collect();
        row.push((B, -share.clone()));
        lp.constrain(row, Relation::Le, Rational::zero());
    }
    for &p in w {
        let row = inst.supporters(p).iter().map(|&i| (var[&(i, p)], one.clone())).collect();
        lp.constrain(row, Relation::Eq, inst.cost(p).clone());
    }
    for pj in (0..m).filter(|p| !w.contains(p)) {
        let supporters = inst.supporters(pj);
        if supporters.is_empty() {
            continue;
        }
        let mut row: Vec<(usize, Rational)> = vec![(B, &share * supporters.len())];
        for ((i, _), &x) in &var {
            if supporters.contains(i) {
                row.push((x, -one.clone()));
            }
        }
        lp.constrain(row, Relation::Le, inst.cost(pj).clone());
        if require_c6 {
            for &pk in w {
                let row: Vec<(usize, Rational)> =
                    supporters.iter().filter_map(|i| var.get(&(*i, pk)).map(|&x| (x, one.clone()))).collect();
                if !row.is_empty() {
                    lp.constrain(row, Relation::Le, inst.cost(pj).clone());
                }
            }
        }
    }
    let floor = if require_b_strict { inst.budget().clone() } else { Rational::zero() };
    lp.constrain(vec![(B, one.clone()), (T, -one.clone())], Relation::Ge, floor);
    lp.constrain(vec![(T, one.clone())], Relation::Le, one.clone());
    lp.maximize(vec![(T, one.clone())]);
    let LpOutcome::Optimal { x, value } = lp.solve() else {
        return Ok(None);
    };
    if !value.is_positive() {
        return Ok(None);
    }
    let mut ps = PriceSystem::zero(inst, x[B].clone());
    for ((i, p), &j) in &var {
        ps.payments[*i][*p] = x[j].clone();
    }
    debug_assert!(verify_price_system(inst, w, &ps, require_c6).unwrap().passes(require_c6, require_b_strict));
    Ok(Some(ps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::fixtures::*;
    use crate::rules::{run_maximin_support, run_mes, run_seq_phragmen, TieBreak};
    use crate::satisfaction::SatisfactionFunction;

    fn example_system(inst: &Instance) -> PriceSystem {
        let mut ps = PriceSystem::zero(inst, q(9, 2));
        ps.payments[0][0] = int(2);
        ps.payments[1][0] = int(2);
        ps
    }

    #[test]
    fn pricing_example_passes_c1_to_c5_but_not_c6() {
        let inst = priceable_not_pjrx();
        let w = set(&inst, &["p1"]);
        let report = verify_price_system(&inst, &w, &example_system(&inst), false).unwrap();
        assert!(report.passes(false, true));
        assert_eq!(report.c6, Verdict::Skipped);
        let report = verify_price_system(&inst, &w, &example_system(&inst), true).unwrap();
        assert_eq!(report.c6, Verdict::Fail(Witness { voter: None, projects: vec![1, 0], lhs: int(2), rhs: int(1) }));
    }

    #[test]
    fn empty_outcome_with_zero_payments() {
        let inst = mes_c6();
        let w = ProjectSet::new();
        let ps = PriceSystem::zero(&inst, &int(3) * inst.num_voters());
        // Each voter holds 3, so p2 (cost 1) has 3 > 1 of unspent approver money.
        let report = verify_price_system(&inst, &w, &ps, true).unwrap();
        assert!(report.c5.is_fail());
        let tiny = PriceSystem::zero(&inst, q(1, 2));
        assert!(verify_price_system(&inst, &w, &tiny, true).unwrap().passes(true, false));
    }

    #[test]
    fn verify_rejects_bad_input() {
        let inst = mes_c6();
        let w = set(&inst, &["p1"]);
        let mut ps = PriceSystem::zero(&inst, int(3));
        ps.payments[0][1] = int(-1);
        assert!(matches!(verify_price_system(&inst, &w, &ps, false), Err(PriceError::NegativePayment { .. })));
        ps.payments.pop();
        assert!(matches!(verify_price_system(&inst, &w, &ps, false), Err(PriceError::Shape { .. })));
        let over = set(&inst, &["p1", "p2"]);
        assert!(matches!(
            verify_price_system(&inst, &over, &PriceSystem::zero(&inst, int(3)), false),
            Err(PriceError::Infeasible { .. })
        ));
    }

    #[test]
    fn json_round_trip() {
        let inst = priceable_not_pjrx();
        let ps = example_system(&inst);
        let json = ps.to_json(&inst);
        assert_eq!(json["B"], "9/2");
        assert_eq!(json["payments"]["2"]["p1"], "2");
        assert_eq!(PriceSystem::from_json(&inst, &json).unwrap(), ps);
        let bad = serde_json::json!({"B": "1", "payments": {"3": {"p1": "1"}}});
        assert!(matches!(PriceSystem::from_json(&inst, &bad), Err(PriceError::UnknownVoter(_))));
    }

    #[test]
    fn mes_extraction() {
        let inst = mes_c6();
        let card = run_mes(&inst, &SatisfactionFunction::cardinality(&inst), &TieBreak::Lex).unwrap();
        let ps = extract_from_mes_trace(&inst, &card.trace).unwrap();
        assert!(ps.budget > int(3));
        assert!(verify_price_system(&inst, &card.outcome, &ps, true).unwrap().passes(true, true));

        let cost = run_mes(&inst, &SatisfactionFunction::cost(&inst), &TieBreak::Lex).unwrap();
        let ps = extract_from_mes_trace(&inst, &cost.trace).unwrap();
        let report = verify_price_system(&inst, &cost.outcome, &ps, true).unwrap();
        assert!(report.passes(false, true));
        assert!(report.c6.is_fail());

        let mut early = card.trace.clone();
        early.selections.pop();
        early.payments = vec![vec![Rational::zero(); 3]; 2];
        early.payments[0][1] = int(1);
        assert!(matches!(extract_from_mes_trace(&inst, &early), Err(PriceError::StillAffordable(_))));
    }

    #[test]
    fn phragmen_and_maximin_extraction() {
        let inst = mes_c6();
        let run = run_seq_phragmen(&inst, &TieBreak::Lex, false);
        let ps = extract_from_phragmen_trace(&inst, &run.trace).unwrap();
        assert_eq!(ps.budget, int(5));
        assert_eq!(ps.payments[0][1], int(1));
        assert_eq!(ps.payments[1][2], int(1));
        assert!(verify_price_system(&inst, &run.outcome, &ps, true).unwrap().passes(true, true));

        let run = run_maximin_support(&inst, &TieBreak::Lex, false).unwrap();
        let ps = extract_from_maximin_trace(&inst, &run.trace).unwrap();
        assert_eq!(ps.budget, int(5));
        assert!(verify_price_system(&inst, &run.outcome, &ps, true).unwrap().passes(true, true));

        let everything = Instance::from_ids(&[("a", int(1))], &[vec!["a"]], int(2)).unwrap();
        let run = run_seq_phragmen(&everything, &TieBreak::Lex, false);
        assert_eq!(extract(&everything, &run.trace), Err(PriceError::NoBlockingProject));
    }

    #[test]
    fn search_on_worked_examples() {
        let inst = priceable_not_pjrx();
        let w = set(&inst, &["p1"]);
        let found = find_price_system(&inst, &w, false, true).unwrap().expect("B = 9/2 works");
        assert!(found.budget > int(4));
        assert_eq!(find_price_system(&inst, &w, true, true).unwrap(), None);

        let inst = mes_c6();
        assert_eq!(find_price_system(&inst, &set(&inst, &["p1"]), true, true).unwrap(), None);
        assert!(find_price_system(&inst, &set(&inst, &["p2", "p3"]), true, true).unwrap().is_some());

        let pricey = Instance::from_ids(&[("a", int(5)), ("b", int(5))], &[vec!["a"], vec!["b"]], int(4)).unwrap();
        let found = find_price_system(&pricey, &ProjectSet::new(), true, true).unwrap().unwrap();
        assert!(found.payments.iter().flatten().all(Rational::is_zero));
    }

    #[test]
    fn search_guard() {
        let inst = incompat();
        assert!(matches!(
            find_price_system_within(&inst, &ProjectSet::new(), false, false, 10),
            Err(PriceError::TooLarge { .. })
        ));
    }

    /// A project costing more than `b` can make the Phragmén and maximin
    /// outcomes unpriceable: voter 1 alone pays 4 for p3, so `B ≥ 12`, and
    /// the approvers of p1 keep at least 8 > c(p1).
    #[test]
    fn unaffordable_project_blocks_priceability() {
        let projects: Vec<(&str, Money)> = vec![("p1", int(5)), ("p2", int(5)), ("p3", int(4)), ("p4", q(9, 2))];
        let ballots = [vec!["p1", "p3", "p4"], vec!["p1", "p2"], vec!["p1"]];
        let inst = Instance::from_ids(&projects, &ballots, q(9, 2)).unwrap();
        let phragmen = run_seq_phragmen(&inst, &TieBreak::Lex, false);
        let maximin = run_maximin_support(&inst, &TieBreak::Lex, false).unwrap();
        let w = set(&inst, &["p3"]);
        assert_eq!(phragmen.outcome, w);
        assert_eq!(maximin.outcome, w);
        assert_eq!(find_price_system(&inst, &w, false, false).unwrap(), None);
        for run in [phragmen, maximin] {
            let report = verify_price_system(&inst, &w, &extract(&inst, &run.trace).unwrap(), true).unwrap();
            assert_eq!(report.first_failure().map(|(c, _)| c), Some(Condition::C5));
        }
    }
}
