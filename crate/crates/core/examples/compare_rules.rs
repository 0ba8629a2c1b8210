//! Every rule on a batch of random instances, audited under cost and
//! cardinality satisfaction. Prints how often each axiom fails.
//!
//! cargo run --release --example compare_rules -- [instances]

use std::collections::BTreeMap;

use pbprop::axioms::{audit_all, AuditLimits, Axiom};
use pbprop::model::{generate_random, GeneratorParams};
use pbprop::rules::{run_gcr, run_maximin_support, run_mes, run_seq_phragmen, GcrGuard, RuleOutcome, TieBreak};
use pbprop::satisfaction::SatisfactionFunction as Sf;

fn main() {
    let count: u64 = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(200);
    // (rule, μ, axiom) -> failures
    let mut failures: BTreeMap<(String, &str, Axiom), u64> = BTreeMap::new();

    for seed in 0..count {
        let inst = generate_random(&GeneratorParams::small(5, 7), seed).unwrap();
        let cost = Sf::cost(&inst);
        let card = Sf::cardinality(&inst);
        let runs: Vec<(String, RuleOutcome)> = vec![
            ("mes[cost]".into(), run_mes(&inst, &cost, &TieBreak::Lex).unwrap()),
            ("mes[card]".into(), run_mes(&inst, &card, &TieBreak::Lex).unwrap()),
            ("phragmen".into(), run_seq_phragmen(&inst, &TieBreak::Lex, false)),
            ("maximin".into(), run_maximin_support(&inst, &TieBreak::Lex, false).unwrap()),
            ("gcr[cost]".into(), run_gcr(&inst, &cost, &TieBreak::Lex, GcrGuard::default()).unwrap()),
        ];
        for (rule, run) in runs {
            for (name, mu) in [("cost", &cost), ("card", &card)] {
                let report = audit_all(&inst, mu, &run.outcome, AuditLimits::default(), false).unwrap();
                for (axiom, result) in &report.results {
                    if result.passed() == Some(false) {
                        *failures.entry((rule.clone(), name, *axiom)).or_default() += 1;
                    }
                }
            }
        }
    }

    println!("{count} instances, 5 voters, 7 projects");
    print!("{:<12}{:<6}", "rule", "mu");
    for axiom in Axiom::ALL {
        print!("{:>10}", axiom.name());
    }
    println!();
    for rule in ["mes[cost]", "mes[card]", "phragmen", "maximin", "gcr[cost]"] {
        for mu in ["cost", "card"] {
            print!("{rule:<12}{mu:<6}");
            for axiom in Axiom::ALL {
                print!("{:>10}", failures.get(&(rule.to_string(), mu, axiom)).copied().unwrap_or(0));
            }
            println!();
        }
    }
}
