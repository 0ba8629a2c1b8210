//! Run MES on a small instance and audit the result.
//!
//! cargo run --example quickstart

use pbprop::axioms::{audit_all, AuditLimits};
use pbprop::model::parse_json;
use pbprop::rules::{run_mes, TieBreak};
use pbprop::satisfaction::SatisfactionFunction;

fn main() {
    let inst = parse_json(include_str!("data/two_camps.json")).expect("valid instance");
    let card = SatisfactionFunction::cardinality(&inst);

    let run = run_mes(&inst, &card, &TieBreak::Lex).expect("cardinality is additive");
    println!("MES[card] picks {:?}", inst.ids_of(&run.outcome));
    for s in &run.trace.selections {
        println!("  round {}: {} at rho = {}", s.round, inst.id(s.project), s.value);
    }

    let report = audit_all(&inst, &card, &run.outcome, AuditLimits::default(), false).expect("small instance");
    for (axiom, result) in &report.results {
        let verdict = match result.passed() {
            Some(true) => "pass",
            Some(false) => "FAIL",
            None => "skipped",
        };
        println!("  {axiom:<10} {verdict}");
    }
}
