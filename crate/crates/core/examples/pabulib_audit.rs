//! Read a Pabulib file, run the equal-shares and Phragmén rules, and
//! compare both outcomes under several satisfaction functions.
//!
//! cargo run --example pabulib_audit -- [file.pb]

use pbprop::axioms::{audit_all, AuditLimits, Axiom};
use pbprop::model::parse_pabulib;
use pbprop::rules::{run_mes, run_seq_phragmen, TieBreak};
use pbprop::satisfaction::SatisfactionFunction as Sf;

fn main() {
    let text = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}")),
        None => include_str!("data/district.pb").to_string(),
    };
    let inst = parse_pabulib(&text).expect("valid pabulib file");
    println!("{} voters, {} projects, budget {}", inst.num_voters(), inst.num_projects(), inst.budget());

    let card = Sf::cardinality(&inst);
    let outcomes = [
        ("mes[card]", run_mes(&inst, &card, &TieBreak::Lex).unwrap().outcome),
        ("mes[cost]", run_mes(&inst, &Sf::cost(&inst), &TieBreak::Lex).unwrap().outcome),
        ("phragmen", run_seq_phragmen(&inst, &TieBreak::Lex, false).outcome),
    ];
    for (rule, w) in &outcomes {
        println!("\n{rule}: {:?}, cost {}", inst.ids_of(w), inst.total_cost(w).unwrap());
        for mu in [Sf::cost(&inst), Sf::cardinality(&inst), Sf::sqrt_cost(&inst)] {
            let report = audit_all(&inst, &mu, w, AuditLimits::default(), true).unwrap();
            let failed: Vec<&str> =
                Axiom::ALL.iter().filter(|a| report.result(**a).passed() == Some(false)).map(|a| a.name()).collect();
            println!(
                "  under {:<5} fails: {}",
                mu.kind().name(),
                if failed.is_empty() { "-".to_string() } else { failed.join(", ") }
            );
        }
    }
}
