//! JSON rendering with original project ids and 1-based voter numbers.
//! Rationals are always `"p/q"` strings.

use std::collections::BTreeMap;

use serde_json::{json, Map, Value};

use crate::axioms::{AuditReport, AxiomResult, Violation, ViolationDetail};
use crate::model::{Instance, ProjectSet, VoterSet};
use crate::pricing::{PriceReport, Verdict};
use crate::rational::{Money, Rational};
use crate::rules::{Blocking, RuleOutcome, RuleTrace, Selection};
use crate::satisfaction::{SatKind, SatisfactionFunction};

fn ids(inst: &Instance, s: &ProjectSet) -> Value {
    inst.ids_of(s).into()
}

fn voters(group: &VoterSet) -> Value {
    group.iter().map(|i| i + 1).collect::<Vec<_>>().into()
}

fn rat(r: &Rational) -> Value {
    r.to_string().into()
}

fn vector(values: &[Money]) -> Value {
    values.iter().map(rat).collect::<Vec<_>>().into()
}

/// Voter-by-project matrix as `{voter: {project: amount}}`, zeros left out.
pub fn matrix(inst: &Instance, rows: &[Vec<Money>]) -> Value {
    let mut out = Map::new();
    for (i, row) in rows.iter().enumerate() {
        let entries: Map<String, Value> = row
            .iter()
            .enumerate()
            .filter(|(_, d)| !d.is_zero())
            .map(|(p, d)| (inst.id(p).to_string(), rat(d)))
            .collect();
        if !entries.is_empty() {
            out.insert((i + 1).to_string(), entries.into());
        }
    }
    out.into()
}

pub fn outcome_json(inst: &Instance, run: &RuleOutcome) -> Value {
    let t = &run.trace;
    let mut doc = json!({
        "rule": t.rule.name(),
        "satisfaction": t.satisfaction.map(SatKind::name),
        "outcome": ids(inst, &run.outcome),
        "cost": rat(&inst.total_cost(&run.outcome).expect("rule outcomes use valid ids")),
        "exhaustive": t.exhaustive,
        "selections": t.selections.iter().map(|s| json!({
            "round": s.round,
            "project": inst.id(s.project),
            "value": rat(&s.value),
        })).collect::<Vec<_>>(),
        "blocking": t.blocking.as_ref().map(|b| json!({"project": inst.id(b.project), "value": rat(&b.value)})),
    });
    let obj = doc.as_object_mut().expect("object literal");
    if !t.payments.is_empty() {
        obj.insert("payments".into(), matrix(inst, &t.payments));
    }
    if !t.voter_budgets.is_empty() {
        obj.insert("voter_budgets".into(), t.voter_budgets.iter().map(|b| vector(b)).collect::<Vec<_>>().into());
    }
    if !t.voter_loads.is_empty() {
        obj.insert("voter_loads".into(), t.voter_loads.iter().map(|l| vector(l)).collect::<Vec<_>>().into());
    }
    if let Some(loads) = &t.blocking_loads {
        obj.insert("blocking_loads".into(), matrix(inst, loads));
    }
    if let Some(delta) = &t.delta {
        obj.insert("delta".into(), rat(delta));
    }
    if !t.groups.is_empty() {
        obj.insert("groups".into(), t.groups.iter().map(voters).collect::<Vec<_>>().into());
    }
    if !t.skipped.is_empty() {
        obj.insert("skipped".into(), t.skipped.iter().map(|&p| inst.id(p)).collect::<Vec<_>>().into());
    }
    doc
}

fn parse_rat(v: &Value, what: &str) -> Result<Rational, String> {
    serde_json::from_value(v.clone()).map_err(|e| format!("{what}: {e}"))
}

fn parse_matrix(inst: &Instance, v: Option<&Value>, what: &str) -> Result<Vec<Vec<Money>>, String> {
    let mut rows = vec![vec![Rational::zero(); inst.num_projects()]; inst.num_voters()];
    let Some(v) = v else { return Ok(rows) };
    let map: BTreeMap<String, BTreeMap<String, Value>> =
        serde_json::from_value(v.clone()).map_err(|e| format!("{what}: {e}"))?;
    for (voter, entries) in map {
        let i: usize = voter.parse().map_err(|_| format!("{what}: bad voter `{voter}`"))?;
        if i == 0 || i > inst.num_voters() {
            return Err(format!("{what}: unknown voter {i}"));
        }
        for (project, amount) in entries {
            let p = inst.project_index(&project).ok_or_else(|| format!("{what}: unknown project `{project}`"))?;
            rows[i - 1][p] = parse_rat(&amount, what)?;
        }
    }
    Ok(rows)
}

fn parse_vectors(v: Option<&Value>, what: &str) -> Result<Vec<Vec<Money>>, String> {
    let Some(v) = v else { return Ok(Vec::new()) };
    serde_json::from_value(v.clone()).map_err(|e| format!("{what}: {e}"))
}

/// Reads back the document written by [`outcome_json`].
pub fn trace_from_json(inst: &Instance, doc: &Value) -> Result<RuleTrace, String> {
    let rule = doc["rule"].as_str().ok_or("trace has no `rule`")?.parse()?;
    let satisfaction = match doc.get("satisfaction") {
        None | Some(Value::Null) => None,
        Some(v) => Some(serde_json::from_value::<SatKindName>(v.clone()).map_err(|e| e.to_string())?.0),
    };
    let project = |v: &Value| -> Result<usize, String> {
        let id = v.as_str().ok_or("project ids must be strings")?;
        inst.project_index(id).ok_or_else(|| format!("unknown project `{id}`"))
    };
    let mut selections = Vec::new();
    for s in doc["selections"].as_array().ok_or("trace has no `selections`")? {
        selections.push(Selection {
            round: s["round"].as_u64().ok_or("selection without round")? as usize,
            project: project(&s["project"])?,
            value: parse_rat(&s["value"], "selection value")?,
        });
    }
    let blocking = match doc.get("blocking") {
        None | Some(Value::Null) => None,
        Some(b) => {
            Some(Blocking { project: project(&b["project"])?, value: parse_rat(&b["value"], "blocking value")? })
        }
    };
    let blocking_loads = match doc.get("blocking_loads") {
        None | Some(Value::Null) => None,
        v => Some(parse_matrix(inst, v, "blocking_loads")?),
    };
    let delta = match doc.get("delta") {
        None | Some(Value::Null) => None,
        Some(v) => Some(parse_rat(v, "delta")?),
    };
    let skipped = match doc.get("skipped") {
        None => Vec::new(),
        Some(v) => v.as_array().ok_or("`skipped` must be a list")?.iter().map(project).collect::<Result<_, _>>()?,
    };
    Ok(RuleTrace {
        rule,
        satisfaction,
        selections,
        voter_budgets: parse_vectors(doc.get("voter_budgets"), "voter_budgets")?,
        voter_loads: parse_vectors(doc.get("voter_loads"), "voter_loads")?,
        payments: parse_matrix(inst, doc.get("payments"), "payments")?,
        blocking,
        blocking_loads,
        delta,
        groups: Vec::new(),
        skipped,
        exhaustive: doc["exhaustive"].as_bool().unwrap_or(false),
    })
}

/// Satisfaction kinds appear under their short CLI names.
struct SatKindName(SatKind);

impl<'de> serde::Deserialize<'de> for SatKindName {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let name = String::deserialize(d)?;
        [
            SatKind::Cost,
            SatKind::Cardinality,
            SatKind::SqrtCost,
            SatKind::LogCost,
            SatKind::Cc,
            SatKind::Share,
            SatKind::Table,
            SatKind::CostMap,
        ]
        .into_iter()
        .find(|k| k.name() == name)
        .map(SatKindName)
        .ok_or_else(|| serde::de::Error::custom(format!("unknown satisfaction `{name}`")))
    }
}

pub fn violation_json(inst: &Instance, v: &Violation) -> Value {
    let detail = match &v.detail {
        ViolationDetail::None => Value::Null,
        ViolationDetail::Project(p) => json!({"project": inst.id(*p)}),
        ViolationDetail::Superset(s) => json!({"superset": ids(inst, s)}),
    };
    json!({
        "axiom": v.axiom.name(),
        "T": ids(inst, &v.witness.projects),
        "group": voters(&v.witness.group),
        "detail": detail,
        "lhs": rat(&v.lhs),
        "rhs": rat(&v.rhs),
        "required": v.required,
    })
}

pub fn audit_json(inst: &Instance, mu: &SatisfactionFunction, outcome: &ProjectSet, report: &AuditReport) -> Value {
    let mut results = Map::new();
    for (axiom, result) in &report.results {
        let entry = match result {
            AxiomResult::Pass => json!({"status": "pass"}),
            AxiomResult::Fail { violation } => json!({"status": "fail", "violation": violation_json(inst, violation)}),
            AxiomResult::Guard { message } => json!({"status": "guard", "message": message}),
        };
        results.insert(axiom.name().to_string(), entry);
    }
    json!({
        "satisfaction": mu.kind().name(),
        "rationalized": mu.is_rationalized(),
        "outcome": ids(inst, outcome),
        "results": results,
        "implications": report.implications,
        "consistent": report.consistent(),
    })
}

pub fn price_report_json(inst: &Instance, report: &PriceReport) -> Value {
    let mut out = Map::new();
    for (cond, verdict) in report.verdicts() {
        let v = match verdict {
            Verdict::Pass => json!("pass"),
            Verdict::Skipped => json!("skipped"),
            Verdict::Fail(w) => json!({
                "fail": {
                    "voter": w.voter.map(|i| i + 1),
                    "projects": w.projects.iter().map(|&p| inst.id(p)).collect::<Vec<_>>(),
                    "lhs": rat(&w.lhs),
                    "rhs": rat(&w.rhs),
                }
            }),
        };
        out.insert(cond.to_string(), v);
    }
    out.insert("b_strict".into(), report.b_strict.into());
    out.into()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::fixtures::*;
    use crate::rules::{run_maximin_support, run_mes, run_seq_phragmen, TieBreak};

    #[test]
    fn traces_round_trip() {
        let inst = mes_c6();
        let runs = [
            run_mes(&inst, &SatisfactionFunction::cardinality(&inst), &TieBreak::Lex).unwrap(),
            run_seq_phragmen(&inst, &TieBreak::Lex, false),
            run_maximin_support(&inst, &TieBreak::Lex, false).unwrap(),
        ];
        for run in runs {
            let doc = outcome_json(&inst, &run);
            let back = trace_from_json(&inst, &doc).unwrap();
            assert_eq!(back, run.trace);
        }
    }

    #[test]
    fn outcome_uses_ids() {
        let inst = mes_c6();
        let run = run_mes(&inst, &SatisfactionFunction::cost(&inst), &TieBreak::Lex).unwrap();
        let doc = outcome_json(&inst, &run);
        assert_eq!(doc["outcome"], json!(["p1"]));
        assert_eq!(doc["payments"]["1"]["p1"], "3/2");
        assert_eq!(doc["satisfaction"], "cost");
    }
}
