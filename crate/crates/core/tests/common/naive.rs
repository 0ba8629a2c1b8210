//! Brute-force reference implementations, written straight from the
//! definitions with no pruning.

use pbprop::lp::{LinearProgram, LpOutcome, Relation};
use pbprop::model::{Instance, ProjectSet, VoterSet};
use pbprop::rational::{Money, Rational};
use pbprop::satisfaction::SatisfactionFunction as Sf;

pub fn subsets<T: Ord + Clone>(items: &[T]) -> Vec<Vec<T>> {
    (0u64..1 << items.len())
        .map(|mask| (0..items.len()).filter(|k| mask >> k & 1 == 1).map(|k| items[k].clone()).collect())
        .collect()
}

/// `N'` is `T`-cohesive: non-empty, everyone approves all of `T`, and
/// `|N'| · b ≥ n · c(T)`.
pub fn cohesive(inst: &Instance, t: &ProjectSet, group: &VoterSet) -> bool {
    !group.is_empty()
        && group.iter().all(|&i| t.is_subset(inst.ballot(i)))
        && Rational::from(group.len()) * inst.budget().clone()
            >= Rational::from(inst.num_voters()) * inst.total_cost(t).unwrap()
}

fn satisfaction(inst: &Instance, mu: &Sf, voter: usize, w: &ProjectSet) -> Rational {
    let mine: ProjectSet = inst.ballot(voter).intersection(w).copied().collect();
    mu.evaluate(inst, &mine).unwrap()
}

/// Every `(T, N')` pair with `T ≠ ∅` and `N'` `T`-cohesive.
pub fn cohesive_pairs(inst: &Instance) -> Vec<(ProjectSet, VoterSet)> {
    let projects: Vec<usize> = (0..inst.num_projects()).collect();
    let voters: Vec<usize> = (0..inst.num_voters()).collect();
    let groups: Vec<VoterSet> = subsets(&voters).into_iter().map(|g| g.into_iter().collect()).collect();
    let mut out = Vec::new();
    for t in subsets(&projects).into_iter().skip(1) {
        let t: ProjectSet = t.into_iter().collect();
        for g in &groups {
            if cohesive(inst, &t, g) {
                out.push((t.clone(), g.clone()));
            }
        }
    }
    out
}

pub fn ejr(inst: &Instance, mu: &Sf, w: &ProjectSet, pairs: &[(ProjectSet, VoterSet)]) -> bool {
    pairs.iter().all(|(t, g)| {
        let need = mu.evaluate(inst, t).unwrap();
        g.iter().any(|&i| satisfaction(inst, mu, i, w) >= need)
    })
}

/// EJR up to any project: some member would reach `μ(T)` with any single
/// project of `T \ W` added.
pub fn ejrx(inst: &Instance, mu: &Sf, w: &ProjectSet, pairs: &[(ProjectSet, VoterSet)]) -> bool {
    pairs.iter().all(|(t, g)| {
        let need = mu.evaluate(inst, t).unwrap();
        g.iter().any(|&i| {
            t.difference(w).all(|&p| {
                let mut more = w.clone();
                more.insert(p);
                satisfaction(inst, mu, i, &more) > need
            }) || satisfaction(inst, mu, i, w) >= need
        })
    })
}

/// PJR: the group's combined share of `W` is worth at least `μ(T)`.
pub fn pjr(inst: &Instance, mu: &Sf, w: &ProjectSet, pairs: &[(ProjectSet, VoterSet)]) -> bool {
    pairs.iter().all(|(t, g)| {
        let covered: ProjectSet = g.iter().flat_map(|&i| inst.ballot(i).intersection(w).copied()).collect();
        mu.evaluate(inst, &covered).unwrap() >= mu.evaluate(inst, t).unwrap()
    })
}

/// Smallest achievable maximum voter load for `W`, by linear programming over
/// `x_{i,p} ≥ 0` with `Σ_i x_{i,p} = c(p)` and `Σ_p x_{i,p} ≤ λ`.
pub fn min_max_load(inst: &Instance, w: &ProjectSet) -> Option<Money> {
    let mut vars = Vec::new();
    for &p in w {
        for &i in inst.supporters(p) {
            vars.push((i, p));
        }
    }
    let lambda = vars.len();
    let mut lp = LinearProgram::new(lambda + 1);
    for &p in w {
        let coeffs = vars.iter().enumerate().filter(|(_, v)| v.1 == p).map(|(j, _)| (j, Rational::one())).collect();
        lp.constrain(coeffs, Relation::Eq, inst.cost(p).clone());
    }
    for i in 0..inst.num_voters() {
        let mut coeffs: Vec<_> =
            vars.iter().enumerate().filter(|(_, v)| v.0 == i).map(|(j, _)| (j, Rational::one())).collect();
        coeffs.push((lambda, -Rational::one()));
        lp.constrain(coeffs, Relation::Le, Rational::zero());
    }
    lp.maximize(vec![(lambda, -Rational::one())]);
    match lp.solve() {
        LpOutcome::Optimal { value, .. } => Some(-value),
        _ => None,
    }
}
