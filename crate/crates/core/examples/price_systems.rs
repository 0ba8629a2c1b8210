//! Price systems: check one by hand, read one off a rule trace, and search
//! for one with an LP.
//!
//! cargo run --example price_systems

use pbprop::model::parse_json;
use pbprop::pricing::{extract, find_price_system, verify_price_system, PriceSystem};
use pbprop::rules::{run_mes, run_seq_phragmen, TieBreak};
use pbprop::satisfaction::SatisfactionFunction;

fn main() {
    // Both voters split the hall; each keeps 1/4 unspent.
    let inst = parse_json(include_str!("data/shared_hall.json")).unwrap();
    let w = inst.resolve(&["p1"]).unwrap();
    let doc = serde_json::from_str(include_str!("data/shared_hall_prices.json")).unwrap();
    let ps = PriceSystem::from_json(&inst, &doc).unwrap();
    let report = verify_price_system(&inst, &w, &ps, true).unwrap();
    println!("hall only: C1-C5 {}, C6 {}", ok(report.passes(false, true)), ok(!report.c6.is_fail()));
    if let Some((cond, witness)) = report.first_failure() {
        let ids: Vec<&str> = witness.projects.iter().map(|&p| inst.id(p)).collect();
        println!("  {cond} fails on {ids:?}: {} > {}", witness.lhs, witness.rhs);
    }

    let inst = parse_json(include_str!("data/two_camps.json")).unwrap();
    let card = SatisfactionFunction::cardinality(&inst);
    for run in [run_mes(&inst, &card, &TieBreak::Lex).unwrap(), run_seq_phragmen(&inst, &TieBreak::Lex, false)] {
        match extract(&inst, &run.trace) {
            Ok(ps) => {
                let report = verify_price_system(&inst, &run.outcome, &ps, true).unwrap();
                println!(
                    "{} {:?}: B = {}, C1-C6 {}",
                    run.trace.rule,
                    inst.ids_of(&run.outcome),
                    ps.budget,
                    ok(report.passes(true, true))
                );
            }
            Err(e) => println!("{} {:?}: {e}", run.trace.rule, inst.ids_of(&run.outcome)),
        }
    }

    for ids in [&["p1"][..], &["p2", "p3"][..]] {
        let w = inst.resolve(ids).unwrap();
        let found = find_price_system(&inst, &w, true, true).unwrap();
        println!(
            "search {ids:?} with C6 and B > b: {}",
            found.map_or("none".to_string(), |ps| format!("B = {}", ps.budget))
        );
    }
}

fn ok(b: bool) -> &'static str {
    if b {
        "hold"
    } else {
        "fail"
    }
}
