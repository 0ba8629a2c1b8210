//! The fast auditors and load balancing against brute force, on every
//! feasible outcome of small instances.

mod common;

use pbprop::axioms::{Auditor, Axiom};
use pbprop::flow::optimal_max_load;
use pbprop::model::{Instance, ProjectSet};
use pbprop::satisfaction::SatisfactionFunction as Sf;
use rayon::prelude::*;

use common::naive;

const INSTANCES: u64 = 200;

fn all_outcomes(inst: &Instance) -> Vec<ProjectSet> {
    let projects: Vec<usize> = (0..inst.num_projects()).collect();
    naive::subsets(&projects)
        .into_iter()
        .map(|s| s.into_iter().collect::<ProjectSet>())
        .filter(|w| inst.is_outcome(w).unwrap())
        .collect()
}

fn functions(inst: &Instance, seed: u64) -> Vec<Sf> {
    vec![Sf::cost(inst), Sf::cardinality(inst), Sf::sqrt_cost(inst), common::random_table(inst, seed)]
}

enum Seen {
    Violation,
    Mismatch(String),
}

#[test]
fn ejr_family_matches_brute_force() {
    let seen: Vec<Seen> = (0..INSTANCES)
        .into_par_iter()
        .flat_map_iter(|seed| {
            let inst = common::random_instance_within(seed, 5, 5);
            let pairs = naive::cohesive_pairs(&inst);
            let mut out = Vec::new();
            for mu in functions(&inst, seed) {
                let mut auditor = Auditor::new(&inst, &mu, &ProjectSet::new()).unwrap();
                for w in all_outcomes(&inst) {
                    auditor.set_outcome(&w).unwrap();
                    let cases = [
                        (Axiom::Ejr, naive::ejr(&inst, &mu, &w, &pairs)),
                        (Axiom::Ejrx, naive::ejrx(&inst, &mu, &w, &pairs)),
                        (Axiom::Pjr, naive::pjr(&inst, &mu, &w, &pairs)),
                    ];
                    for (axiom, expected) in cases {
                        if !expected {
                            out.push(Seen::Violation);
                        }
                        if auditor.check(axiom).is_none() != expected {
                            out.push(Seen::Mismatch(format!(
                                "seed {seed} {axiom}[{}] W={:?}",
                                mu.kind(),
                                inst.ids_of(&w)
                            )));
                        }
                    }
                }
            }
            out
        })
        .collect();
    let violations = seen.iter().filter(|s| matches!(s, Seen::Violation)).count();
    let mismatches: Vec<&String> = seen
        .iter()
        .filter_map(|s| match s {
            Seen::Mismatch(m) => Some(m),
            _ => None,
        })
        .collect();
    assert!(violations > 100, "only {violations} violations seen");
    assert!(
        mismatches.is_empty(),
        "{} mismatches, first: {:?}",
        mismatches.len(),
        &mismatches[..mismatches.len().min(5)]
    );
}

#[test]
fn max_load_matches_linear_program() {
    (0..INSTANCES).into_par_iter().for_each(|seed| {
        let inst = common::random_instance_within(seed, 5, 5);
        let approved: Vec<usize> = (0..inst.num_projects()).filter(|&p| !inst.supporters(p).is_empty()).collect();
        for w in naive::subsets(&approved).into_iter().skip(1) {
            let w: ProjectSet = w.into_iter().collect();
            let lp = naive::min_max_load(&inst, &w).unwrap();
            assert_eq!(optimal_max_load(&inst, &w).unwrap(), lp, "seed {seed} W={:?}", inst.ids_of(&w));
        }
    });
}
