//! For a cost map that is not DNS, build the instance on which MES with
//! cardinality satisfaction misses PJR-x for that map.
//!
//! cargo run --example dns_necessity -- [cost:value ...]
//! e.g. `1:1 2:1/2` (decreasing) or `1:1 2:3` (super-proportional)

use std::collections::BTreeMap;

use pbprop::axioms::{AuditLimits, Auditor, Axiom};
use pbprop::rational::Rational;
use pbprop::rules::{run_mes, TieBreak};
use pbprop::satisfaction::{dns_counterexample_instance, find_dns_violation, SatisfactionFunction};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let pairs = if args.is_empty() { vec!["1:1".to_string(), "2:1/2".to_string()] } else { args };
    let map: BTreeMap<Rational, Rational> = pairs
        .iter()
        .map(|pair| {
            let (c, v) = pair.split_once(':').expect("pairs look like cost:value");
            (c.parse().expect("cost"), v.parse().expect("value"))
        })
        .collect();

    let Some((x, y, inequality)) = find_dns_violation(&map) else {
        println!("the map is DNS; nothing to show");
        return;
    };
    println!("costs {x} < {y} break {inequality:?}");
    let ex = dns_counterexample_instance(&map, &x, &y).unwrap();
    let inst = &ex.instance;
    println!(
        "{:?} case: {} voters, {} projects, b = {}, beta = {}",
        ex.case,
        inst.num_voters(),
        inst.num_projects(),
        inst.budget(),
        ex.beta
    );

    let run = run_mes(inst, &SatisfactionFunction::cardinality(inst), &TieBreak::Lex).unwrap();
    println!("MES[card] picks {:?}", inst.ids_of(&run.outcome));
    // Many voters but only two ballot types, so a wider limit is cheap.
    let limits = AuditLimits { max_projects: 16, max_voters: 64 };
    match Auditor::with_limits(inst, &ex.mu, &run.outcome, limits).unwrap().check(Axiom::Pjrx) {
        Some(v) => println!(
            "PJR-x fails for the map: group {:?} wants {:?}, gets {} < {}",
            v.witness.group.iter().map(|i| i + 1).collect::<Vec<_>>(),
            inst.ids_of(&v.witness.projects),
            v.lhs,
            v.rhs
        ),
        None => println!("PJR-x holds (unexpected)"),
    }
}
