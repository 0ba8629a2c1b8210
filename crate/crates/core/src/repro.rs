//! Worked examples and counterexamples, re-derived from scratch.
//!
//! Each case builds its instance, runs the relevant rules and auditors, and
//! compares against the expected value. `pb repro` prints the results.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::axioms::{self, AuditLimits, Auditor, Axiom, ViolationDetail};
use crate::model::{Instance, ProjectSet};
use crate::pricing::{self, PriceSystem, Verdict};
use crate::rational::{Money, Rational, SatValue};
use crate::rules::{self, TieBreak};
use crate::satisfaction::{self, DnsCase, SatisfactionFunction as Sf};
use crate::subsets;

/// Where an expected value comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Origin {
    /// Stated in the published worked example.
    Published,
    /// Worked out by hand or by a direct computation.
    Computed,
    /// Holds by definition.
    Definitional,
}

impl fmt::Display for Origin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Origin::Published => "published",
            Origin::Computed => "computed",
            Origin::Definitional => "definitional",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub description: String,
    pub origin: Origin,
    pub passed: bool,
    pub observed: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseReport {
    pub id: &'static str,
    pub summary: &'static str,
    pub checks: Vec<Check>,
}

impl CaseReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

pub struct ReproCase {
    pub id: &'static str,
    pub summary: &'static str,
    run: fn(&mut Checks),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown repro case `{0}` (known: {1})")]
pub struct UnknownCase(pub String, pub String);

#[derive(Default)]
struct Checks(Vec<Check>);

impl Checks {
    fn check(&mut self, origin: Origin, description: impl Into<String>, passed: bool, observed: impl fmt::Display) {
        self.0.push(Check { description: description.into(), origin, passed, observed: observed.to_string() });
    }

    fn equal<T: PartialEq + fmt::Debug>(&mut self, origin: Origin, description: &str, got: T, want: T) {
        let passed = got == want;
        self.check(origin, description, passed, format!("{got:?}"));
    }
}

pub fn cases() -> Vec<ReproCase> {
    vec![
        ReproCase {
            id: "best-outcome",
            summary: "cost and cardinality satisfaction pick different best outcomes",
            run: best_outcome,
        },
        ReproCase { id: "ejrx-vs-ejr1", summary: "b = 7: EJR-1 holds where EJR-x fails", run: ejrx_vs_ejr1 },
        ReproCase {
            id: "ejr1-incompat",
            summary: "no outcome is EJR-1 for both cost and cardinality",
            run: ejr1_incompat,
        },
        ReproCase {
            id: "pricing-not-pjrx",
            summary: "priceable with B > b but violates PJR-x for cardinality, no C6 system",
            run: pricing_not_pjrx,
        },
        ReproCase { id: "mes-c6", summary: "MES with cost satisfaction is not C6-priceable", run: mes_c6 },
        ReproCase {
            id: "local-bpjr-vs-pjr",
            summary: "unit costs: Local-BPJR holds, PJR fails",
            run: local_bpjr_vs_pjr,
        },
        ReproCase { id: "local-bpjr-vs-pjr1", summary: "PJR-1 holds, Local-BPJR fails", run: local_bpjr_vs_pjr1 },
        ReproCase {
            id: "dns-necessity",
            summary: "non-DNS cost maps give instances where MES with cardinality violates PJR-x",
            run: dns_necessity,
        },
    ]
}

pub fn run_case(case: &ReproCase) -> CaseReport {
    let mut checks = Checks::default();
    (case.run)(&mut checks);
    CaseReport { id: case.id, summary: case.summary, checks: checks.0 }
}

/// Runs every case, or only the one named by `filter`.
pub fn run(filter: Option<&str>) -> Result<Vec<CaseReport>, UnknownCase> {
    let all = cases();
    match filter {
        None => Ok(all.iter().map(run_case).collect()),
        Some(id) => match all.iter().find(|c| c.id == id) {
            Some(case) => Ok(vec![run_case(case)]),
            None => Err(UnknownCase(id.to_string(), all.iter().map(|c| c.id).collect::<Vec<_>>().join(", "))),
        },
    }
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

fn int(n: i64) -> Rational {
    Rational::from_integer(n)
}

fn instance(projects: &[(&str, Money)], ballots: &[Vec<&str>], budget: Money) -> Instance {
    Instance::from_ids(projects, ballots, budget).expect("built-in instance is valid")
}

fn ids(inst: &Instance, names: &[&str]) -> ProjectSet {
    inst.resolve(names).expect("built-in ids exist")
}

fn show(inst: &Instance, s: &ProjectSet) -> String {
    format!("{{{}}}", inst.ids_of(s).join(","))
}

/// Every feasible outcome, in mask order.
fn feasible_outcomes(inst: &Instance) -> Vec<ProjectSet> {
    let costs: Vec<Money> = inst.projects().iter().map(|p| p.cost.clone()).collect();
    let table = subsets::additive_table(&costs);
    (0u64..1 << inst.num_projects()).filter(|&s| table[s as usize] <= *inst.budget()).map(subsets::set_of).collect()
}

/// The `μ`-best feasible outcome; ties go to the first in mask order.
fn best(inst: &Instance, mu: &Sf) -> (ProjectSet, SatValue) {
    feasible_outcomes(inst)
        .into_iter()
        .map(|s| {
            let v = mu.evaluate(inst, &s).expect("valid set");
            (s, v)
        })
        .fold(None::<(ProjectSet, SatValue)>, |acc, (s, v)| match acc {
            Some((bs, bv)) if bv >= v => Some((bs, bv)),
            _ => Some((s, v)),
        })
        .expect("the empty outcome is feasible")
}

fn best_outcome(c: &mut Checks) {
    let names = ["p1", "p2", "p3", "p4", "p5"];
    let projects: Vec<(&str, Money)> = names.iter().map(|&id| (id, if id == "p1" { int(5) } else { int(1) })).collect();
    let inst = instance(&projects, &[names.to_vec()], int(5));
    let (w, v) = best(&inst, &Sf::cost(&inst));
    c.equal(Origin::Published, "cost-best outcome is {p1}", show(&inst, &w), "{p1}".to_string());
    c.equal(Origin::Published, "its cost satisfaction is 5", v, int(5));
    let (w, v) = best(&inst, &Sf::cardinality(&inst));
    c.equal(
        Origin::Published,
        "cardinality-best outcome is {p2,p3,p4,p5}",
        show(&inst, &w),
        "{p2,p3,p4,p5}".to_string(),
    );
    c.equal(Origin::Published, "its cardinality satisfaction is 4", v, int(4));
}

fn b7() -> (Instance, Sf) {
    let names = ["p1", "p2", "p3", "p4", "p5"];
    let costs = [q(5, 2), q(5, 2), q(5, 2), int(3), q(9, 2)];
    let values = [q(1, 10), q(1, 10), q(1, 10), q(31, 10), int(4)];
    let projects: Vec<(&str, Money)> = names.iter().copied().zip(costs).collect();
    let inst = instance(&projects, &[names.to_vec()], int(7));
    let table: BTreeMap<String, SatValue> = names.iter().map(|s| s.to_string()).zip(values).collect();
    let mu = Sf::table(&inst, &table).expect("positive entries");
    (inst, mu)
}

fn passes(axiom: Axiom, inst: &Instance, mu: &Sf, w: &ProjectSet) -> bool {
    axioms::check(axiom, inst, mu, w).expect("within limits").is_none()
}

fn status(axiom: Axiom, inst: &Instance, mu: &Sf, w: &ProjectSet) -> &'static str {
    if passes(axiom, inst, mu, w) {
        "pass"
    } else {
        "violated"
    }
}

fn ejrx_vs_ejr1(c: &mut Checks) {
    let (inst, mu) = b7();
    let both = ids(&inst, &["p1", "p5"]);
    c.equal(Origin::Published, "{p1,p5} costs 7", inst.total_cost(&both).unwrap(), int(7));
    c.equal(Origin::Published, "{p1,p5} satisfies EJR", status(Axiom::Ejr, &inst, &mu, &both), "pass");
    c.equal(Origin::Published, "{p1,p5} satisfies EJR-x", status(Axiom::Ejrx, &inst, &mu, &both), "pass");
    let w = ids(&inst, &["p2", "p3"]);
    c.equal(Origin::Published, "{p2,p3} satisfies EJR-1", status(Axiom::Ejr1, &inst, &mu, &w), "pass");
    c.equal(Origin::Published, "{p2,p3} violates EJR-x", status(Axiom::Ejrx, &inst, &mu, &w), "violated");
    c.equal(Origin::Computed, "{p2,p3} violates EJR", status(Axiom::Ejr, &inst, &mu, &w), "violated");
    c.equal(Origin::Computed, "{p2,p3} satisfies EJR-1+", status(Axiom::Ejr1Plus, &inst, &mu, &w), "pass");
    c.equal(
        Origin::Computed,
        "voter satisfaction with {p2,p3} is 0.2",
        mu.voter_satisfaction(&inst, 0, &w).unwrap(),
        q(1, 5),
    );
    let eval = |names: &[&str]| mu.evaluate(&inst, &ids(&inst, names)).unwrap();
    c.equal(Origin::Published, "mu({p2,p3} + p1) = 0.3", eval(&["p1", "p2", "p3"]), q(3, 10));
    c.equal(Origin::Published, "mu({p2,p3} + p5) = 4.2", eval(&["p2", "p3", "p5"]), q(21, 5));
    let w = ids(&inst, &["p1", "p4"]);
    c.equal(Origin::Published, "{p1,p4} satisfies EJR-1", status(Axiom::Ejr1, &inst, &mu, &w), "pass");
    c.equal(Origin::Published, "{p1,p4} violates EJR-x", status(Axiom::Ejrx, &inst, &mu, &w), "violated");
    let dns = mu.is_dns(&inst).map(|v| v.is_dns());
    c.equal(Origin::Computed, "the table function is not DNS", dns, Ok(false));
    let mes = rules::run_mes(&inst, &mu, &TieBreak::Lex).expect("additive");
    c.check(
        Origin::Computed,
        "the MES outcome satisfies EJR-1+",
        passes(Axiom::Ejr1Plus, &inst, &mu, &mes.outcome),
        show(&inst, &mes.outcome),
    );
}

fn incompat() -> Instance {
    let names: Vec<String> = (1..=12).map(|i| format!("p{i}")).collect();
    let projects: Vec<(&str, Money)> =
        names.iter().enumerate().map(|(i, id)| (id.as_str(), if i < 2 { int(5) } else { int(1) })).collect();
    let v1: Vec<&str> = names[..7].iter().map(String::as_str).collect();
    let mut v2: Vec<&str> = vec!["p1", "p2"];
    v2.extend(names[7..].iter().map(String::as_str));
    instance(&projects, &[v1, v2], int(10))
}

fn ejr1_incompat(c: &mut Checks) {
    let inst = incompat();
    let (cost, card) = (Sf::cost(&inst), Sf::cardinality(&inst));
    let empty = ProjectSet::new();
    let mut by_cost = Auditor::new(&inst, &cost, &empty).expect("within limits");
    let mut by_card = Auditor::new(&inst, &card, &empty).expect("within limits");
    let outcomes = feasible_outcomes(&inst);
    let mut both = Vec::new();
    let mut card_only = Vec::new();
    for w in &outcomes {
        by_cost.set_outcome(w).unwrap();
        by_card.set_outcome(w).unwrap();
        let card_ok = by_card.check(Axiom::Ejr1).is_none();
        if card_ok {
            card_only.push(w.clone());
            if by_cost.check(Axiom::Ejr1).is_none() {
                both.push(w.clone());
            }
        }
    }
    c.equal(Origin::Published, "c({p1,p2}) = 10", inst.total_cost(&ids(&inst, &["p1", "p2"])).unwrap(), int(10));
    c.check(
        Origin::Published,
        "no feasible outcome satisfies EJR-1 for both cost and cardinality",
        both.is_empty(),
        format!("{} feasible outcomes, {} pass both", outcomes.len(), both.len()),
    );
    let rest: Vec<String> = (3..=12).map(|i| format!("p{i}")).collect();
    let rest = inst.resolve(&rest).unwrap();
    c.equal(
        Origin::Published,
        "{p3..p12} is the only outcome satisfying EJR-1 for cardinality",
        card_only.iter().map(|w| show(&inst, w)).collect::<Vec<_>>(),
        vec![show(&inst, &rest)],
    );
    let v = axioms::check_ejr1(&inst, &cost, &rest).unwrap();
    c.check(
        Origin::Published,
        "{p3..p12} violates EJR-1 for cost with T = {p1,p2}",
        v.as_ref().is_some_and(|v| v.witness.projects == ids(&inst, &["p1", "p2"])),
        v.map_or("none".to_string(), |v| show(&inst, &v.witness.projects)),
    );
    let one = [0].into_iter().collect();
    c.equal(
        Origin::Published,
        "voter 1 is {p3..p7}-cohesive",
        axioms::is_cohesive(&inst, &ids(&inst, &["p3", "p4", "p5", "p6", "p7"]), &one),
        true,
    );
}

fn pricing_example() -> Instance {
    let names = ["p1", "p2", "p3", "p4", "p5"];
    let projects: Vec<(&str, Money)> = names.iter().map(|&id| (id, if id == "p1" { int(4) } else { int(1) })).collect();
    instance(&projects, &[vec!["p1", "p2", "p3"], vec!["p1", "p4", "p5"]], int(4))
}

fn verdict(v: &Verdict) -> String {
    match v {
        Verdict::Pass => "pass".to_string(),
        Verdict::Skipped => "skipped".to_string(),
        Verdict::Fail(w) => format!("fail: {} > {}", w.lhs, w.rhs),
    }
}

fn pricing_not_pjrx(c: &mut Checks) {
    let inst = pricing_example();
    let w = ids(&inst, &["p1"]);
    let mut ps = PriceSystem::zero(&inst, q(9, 2));
    ps.payments[0][0] = int(2);
    ps.payments[1][0] = int(2);
    let report = pricing::verify_price_system(&inst, &w, &ps, true).expect("well-formed");
    c.check(Origin::Published, "B = 4.5 system satisfies C1 to C5", report.passes(false, false), "C1-C5");
    c.equal(Origin::Published, "B = 4.5 exceeds b = 4", report.b_strict, true);
    let c6_witness = match &report.c6 {
        Verdict::Fail(wit) => wit.projects == [inst.project_index("p2"), inst.project_index("p1")].map(Option::unwrap),
        _ => false,
    };
    c.check(Origin::Published, "C6 fails on (p2, p1)", c6_witness, verdict(&report.c6));
    let voters: Vec<usize> = inst.approvers(0).unwrap().iter().map(|i| i + 1).collect();
    c.equal(Origin::Published, "voters 1 and 2 approve p1", voters, vec![1, 2]);
    let card = Sf::cardinality(&inst);
    let v = axioms::check_pjrx(&inst, &card, &w).unwrap();
    c.check(Origin::Published, "{p1} violates PJR-x for cardinality", v.is_some(), format!("{v:?}"));
    c.equal(Origin::Computed, "share satisfaction of {p1} is 2", Sf::share(&inst).evaluate(&inst, &w).unwrap(), int(2));
    let found = pricing::find_price_system(&inst, &w, false, true).unwrap();
    c.check(
        Origin::Published,
        "search finds a system with B > 4",
        found.as_ref().is_some_and(|ps| ps.budget > int(4)),
        found.map_or("none".to_string(), |ps| ps.budget.to_string()),
    );
    let c6 = pricing::find_price_system(&inst, &w, true, true).unwrap();
    c.equal(Origin::Published, "no C6 price system exists", c6.is_none(), true);
}

fn mes_c6(c: &mut Checks) {
    let inst =
        instance(&[("p1", int(3)), ("p2", int(1)), ("p3", int(1))], &[vec!["p1", "p2"], vec!["p1", "p3"]], int(3));
    let run = rules::run_mes(&inst, &Sf::cost(&inst), &TieBreak::Lex).unwrap();
    c.equal(Origin::Published, "MES[cost] selects {p1}", show(&inst, &run.outcome), "{p1}".to_string());
    c.equal(Origin::Computed, "p1 is bought at rho = 1/2", run.trace.selections[0].value.clone(), q(1, 2));
    let ps = pricing::extract_from_mes_trace(&inst, &run.trace).unwrap();
    let report = pricing::verify_price_system(&inst, &run.outcome, &ps, true).unwrap();
    c.check(Origin::Computed, "extracted system satisfies C1 to C5 with B > b", report.passes(false, true), &ps.budget);
    c.check(Origin::Published, "extracted system violates C6", report.c6.is_fail(), verdict(&report.c6));
    let none = pricing::find_price_system(&inst, &run.outcome, true, false).unwrap();
    c.equal(Origin::Published, "no C6 price system exists for {p1}", none.is_none(), true);
    c.equal(Origin::Computed, "{p1,p2} is not an outcome", inst.is_outcome(&ids(&inst, &["p1", "p2"])).unwrap(), false);
    let card = rules::run_mes(&inst, &Sf::cardinality(&inst), &TieBreak::Lex).unwrap();
    c.equal(Origin::Computed, "MES[card] selects {p2,p3}", show(&inst, &card.outcome), "{p2,p3}".to_string());
    let ps = pricing::extract_from_mes_trace(&inst, &card.trace).unwrap();
    let ok = pricing::verify_price_system(&inst, &card.outcome, &ps, true).unwrap().passes(true, true);
    c.check(Origin::Computed, "MES[card] system satisfies C1 to C6 with B > b", ok, &ps.budget);
    let phragmen = rules::run_seq_phragmen(&inst, &TieBreak::Lex, false);
    let ps = pricing::extract(&inst, &phragmen.trace).unwrap();
    let ok = pricing::verify_price_system(&inst, &phragmen.outcome, &ps, true).unwrap().passes(true, true);
    c.check(
        Origin::Computed,
        "Phragmén stops at p1 with B = 5 satisfying C1 to C6",
        ok && ps.budget == int(5),
        &ps.budget,
    );
}

fn local_bpjr_vs_pjr(c: &mut Checks) {
    let projects: Vec<(&str, Money)> = ["p1", "p2", "p3", "p4"].iter().map(|&id| (id, int(1))).collect();
    let inst = instance(&projects, &[vec!["p1", "p2", "p3"], vec!["p1", "p2", "p3"], vec!["p1", "p2"]], int(2));
    let cost = Sf::cost(&inst);
    let w = ids(&inst, &["p3", "p4"]);
    c.equal(Origin::Published, "the instance has unit costs", inst.is_unit_cost(), true);
    let v = axioms::check_pjr(&inst, &cost, &w).unwrap();
    c.check(
        Origin::Published,
        "{p3,p4} violates PJR via all voters and T = {p1,p2}",
        v.as_ref().is_some_and(|v| v.witness.projects == ids(&inst, &["p1", "p2"]) && v.witness.group.len() == 3),
        format!("{v:?}"),
    );
    c.equal(Origin::Published, "{p3,p4} satisfies Local-BPJR", status(Axiom::LocalBpjr, &inst, &cost, &w), "pass");
    c.equal(Origin::Computed, "{p3,p4} violates PJR-x", status(Axiom::Pjrx, &inst, &cost, &w), "violated");
}

fn local_bpjr_vs_pjr1(c: &mut Checks) {
    let inst = instance(&[("p1", int(2)), ("p2", int(2)), ("p3", int(3))], &[vec!["p1", "p2", "p3"]], int(4));
    let cost = Sf::cost(&inst);
    let w = ids(&inst, &["p1"]);
    c.equal(Origin::Published, "{p1} satisfies PJR-1", status(Axiom::Pjr1, &inst, &cost, &w), "pass");
    let v = axioms::check_local_bpjr(&inst, &cost, &w).unwrap();
    let star = v.as_ref().map(|v| v.detail.clone());
    c.equal(
        Origin::Published,
        "{p1} violates Local-BPJR with W* = {p1,p2}",
        star,
        Some(ViolationDetail::Superset(ids(&inst, &["p1", "p2"]))),
    );
    c.equal(Origin::Computed, "mu({p1,p3}) = 5", cost.evaluate(&inst, &ids(&inst, &["p1", "p3"])).unwrap(), int(5));
}

/// Cost maps used by the DNS-necessity case: at least one per violation kind.
pub fn non_dns_cost_maps() -> Vec<BTreeMap<Money, SatValue>> {
    [
        [(int(1), int(1)), (int(2), q(1, 2))],
        [(int(1), int(1)), (int(3), q(1, 5))],
        [(int(1), int(1)), (int(2), q(4, 5))],
        [(int(1), int(1)), (q(3, 2), q(1, 2))],
        [(int(2), int(3)), (int(3), int(1))],
        [(int(1), int(2)), (q(3, 2), int(1))],
        [(int(1), int(1)), (int(2), int(3))],
        [(int(1), int(1)), (int(2), int(4))],
        [(int(1), int(1)), (int(3), int(5))],
        [(int(2), int(1)), (int(3), int(2))],
        [(int(1), q(1, 2)), (q(5, 2), int(2))],
        [(int(1), int(1)), (q(3, 2), int(2))],
    ]
    .into_iter()
    .map(|pairs| pairs.into_iter().collect())
    .collect()
}

/// Runs MES with cardinality satisfaction on the constructed instance and
/// audits PJR-x for the cost map. True iff the violation appears.
pub fn dns_counterexample_holds(map: &BTreeMap<Money, SatValue>) -> Result<(DnsCase, bool), satisfaction::SatError> {
    let (x, y, _) = satisfaction::find_dns_violation(map)
        .ok_or_else(|| satisfaction::SatError::Malformed("cost map is DNS".to_string()))?;
    let ex = satisfaction::dns_counterexample_instance(map, &x, &y)?;
    let inst = &ex.instance;
    let run = rules::run_mes(inst, &Sf::cardinality(inst), &TieBreak::Lex).expect("cardinality is additive");
    // Few ballot types, so the group enumeration stays small despite many voters.
    let limits = AuditLimits { max_projects: 16, max_voters: 64 };
    let auditor = Auditor::with_limits(inst, &ex.mu, &run.outcome, limits).expect("within limits");
    let violated = auditor.check(Axiom::Pjrx).is_some();
    Ok((ex.case, violated))
}

fn dns_necessity(c: &mut Checks) {
    let case_i: BTreeMap<Money, SatValue> = [(int(1), int(1)), (int(2), q(1, 2))].into_iter().collect();
    let case_ii: BTreeMap<Money, SatValue> = [(int(1), int(1)), (int(2), int(3))].into_iter().collect();
    for (map, want, label) in
        [(case_i, DnsCase::Decreasing, "s(2) = 1/2"), (case_ii, DnsCase::SuperProportional, "s(2) = 3")]
    {
        let got = dns_counterexample_holds(&map);
        c.check(
            Origin::Computed,
            format!("{label}: MES[card] violates PJR-x for the cost map"),
            got == Ok((want, true)),
            format!("{got:?}"),
        );
    }
    let dns: BTreeMap<Money, SatValue> = [(int(1), int(1)), (int(2), q(3, 2))].into_iter().collect();
    let err = satisfaction::dns_counterexample_instance(&dns, &int(1), &int(2));
    c.check(Origin::Definitional, "a DNS cost map is rejected", err.is_err(), "error");
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_case_passes() {
        for report in run(None).unwrap() {
            for check in &report.checks {
                assert!(check.passed, "{}: {} (observed {})", report.id, check.description, check.observed);
            }
        }
    }

    #[test]
    fn filter_by_id() {
        assert_eq!(run(Some("mes-c6")).unwrap().len(), 1);
        assert!(run(Some("nosuchcase")).is_err());
    }
}
