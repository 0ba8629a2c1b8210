//! Min-max load assignments for a project set, via exact max-flow.
//!
//! The optimal maximum load is `λ* = max_S c(S) / |N(S)|` over non-empty
//! `S ⊆ W`, where `N(S)` is the set of voters approving something in `S`.
//! It is found with Dinkelbach iteration on the network
//! `source → p (c(p))`, `p → i (∞, p ∈ A_i)`, `i → sink (λ)`; the maximizing
//! set certifies the value.

use std::collections::VecDeque;

use serde::Serialize;

use crate::model::{Instance, ModelError, ProjectIdx, ProjectSet, VoterIdx};
use crate::rational::{Money, Rational};

/// Loads `l_i(p)` for every voter and project, zero outside `W` and outside `A_i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LoadAssignment {
    pub loads: Vec<Vec<Money>>,
    pub max_load: Money,
}

impl LoadAssignment {
    /// `Σ_p l_i(p)`.
    pub fn voter_total(&self, voter: VoterIdx) -> Money {
        self.loads[voter].iter().sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LoadError {
    #[error("project `{0}` has no approvers and cannot carry a load")]
    Unapproved(String),
    #[error(transparent)]
    Model(#[from] ModelError),
}

struct Network {
    cap: Vec<Vec<Rational>>,
    flow: Vec<Vec<Rational>>,
    adj: Vec<Vec<usize>>,
}

impl Network {
    fn new(size: usize) -> Self {
        Network {
            cap: vec![vec![Rational::zero(); size]; size],
            flow: vec![vec![Rational::zero(); size]; size],
            adj: vec![Vec::new(); size],
        }
    }

    fn add_edge(&mut self, u: usize, v: usize, c: &Rational) {
        self.cap[u][v] += c;
        self.adj[u].push(v);
        self.adj[v].push(u);
    }

    fn residual(&self, u: usize, v: usize) -> Rational {
        &self.cap[u][v] - &self.flow[u][v]
    }

    /// Edmonds-Karp. Returns the flow value.
    fn max_flow(&mut self, s: usize, t: usize) -> Rational {
        let size = self.adj.len();
        let mut total = Rational::zero();
        loop {
            let mut parent = vec![usize::MAX; size];
            parent[s] = s;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                if u == t {
                    break;
                }
                for &v in &self.adj[u] {
                    if parent[v] == usize::MAX && self.residual(u, v).is_positive() {
                        parent[v] = u;
                        queue.push_back(v);
                    }
                }
            }
            if parent[t] == usize::MAX {
                return total;
            }
            let mut bottleneck: Option<Rational> = None;
            let mut v = t;
            while v != s {
                let u = parent[v];
                let r = self.residual(u, v);
                bottleneck = Some(match bottleneck {
                    Some(b) if b <= r => b,
                    _ => r,
                });
                v = u;
            }
            let b = bottleneck.expect("path has at least one arc");
            let mut v = t;
            while v != s {
                let u = parent[v];
                self.flow[u][v] += &b;
                self.flow[v][u] -= &b;
                v = u;
            }
            total += b;
        }
    }

    /// Nodes that can reach `t` in the residual graph.
    fn reaches(&self, t: usize) -> Vec<bool> {
        let mut seen = vec![false; self.adj.len()];
        seen[t] = true;
        let mut queue = VecDeque::from([t]);
        while let Some(v) = queue.pop_front() {
            for &u in &self.adj[v] {
                if !seen[u] && self.residual(u, v).is_positive() {
                    seen[u] = true;
                    queue.push_back(u);
                }
            }
        }
        seen
    }
}

/// A flow network over `projects` and the allowed voters, with every voter
/// arc capped at `lambda`. Node layout: source, sink, projects, voters.
struct LoadNetwork<'a> {
    net: Network,
    projects: &'a [ProjectIdx],
    voters: Vec<VoterIdx>,
}

const SOURCE: usize = 0;
const SINK: usize = 1;

impl<'a> LoadNetwork<'a> {
    fn build(inst: &Instance, projects: &'a [ProjectIdx], voters: &[bool], lambda: &Rational) -> Self {
        let voter_list: Vec<VoterIdx> = (0..inst.num_voters()).filter(|&i| voters[i]).collect();
        let mut voter_node = vec![usize::MAX; inst.num_voters()];
        for (k, &i) in voter_list.iter().enumerate() {
            voter_node[i] = 2 + projects.len() + k;
        }
        let mut net = Network::new(2 + projects.len() + voter_list.len());
        let total: Rational = projects.iter().map(|&p| inst.cost(p)).sum();
        let unbounded = total + Rational::one();
        for (k, &p) in projects.iter().enumerate() {
            net.add_edge(SOURCE, 2 + k, inst.cost(p));
            for &i in inst.supporters(p) {
                if voters[i] {
                    net.add_edge(2 + k, voter_node[i], &unbounded);
                }
            }
        }
        for k in 0..voter_list.len() {
            net.add_edge(2 + projects.len() + k, SINK, lambda);
        }
        LoadNetwork { net, projects, voters: voter_list }
    }

    /// Projects and voters on the source side of the maximal minimum cut.
    fn maximal_source_side(&self) -> (Vec<ProjectIdx>, Vec<VoterIdx>) {
        let reaches = self.net.reaches(SINK);
        let projects = (0..self.projects.len()).filter(|k| !reaches[2 + k]).map(|k| self.projects[k]).collect();
        let base = 2 + self.projects.len();
        let voters = (0..self.voters.len()).filter(|k| !reaches[base + k]).map(|k| self.voters[k]).collect();
        (projects, voters)
    }

    fn load(&self, project_pos: usize, voter_pos: usize) -> Rational {
        self.net.flow[2 + project_pos][2 + self.projects.len() + voter_pos].clone()
    }
}

fn neighbourhood(inst: &Instance, projects: &[ProjectIdx], voters: &[bool]) -> usize {
    let mut seen = vec![false; inst.num_voters()];
    for &p in projects {
        for &i in inst.supporters(p) {
            seen[i] |= voters[i];
        }
    }
    seen.iter().filter(|&&b| b).count()
}

fn density(inst: &Instance, projects: &[ProjectIdx], voters: &[bool]) -> Rational {
    let cost: Rational = projects.iter().map(|&p| inst.cost(p)).sum();
    &cost / neighbourhood(inst, projects, voters)
}

/// `λ*` together with the largest densest subset and the saturated network.
fn densest<'a>(inst: &Instance, projects: &'a [ProjectIdx], voters: &[bool]) -> (Rational, LoadNetwork<'a>) {
    let total: Rational = projects.iter().map(|&p| inst.cost(p)).sum();
    let mut lambda = density(inst, projects, voters);
    loop {
        let mut ln = LoadNetwork::build(inst, projects, voters, &lambda);
        let flow = ln.net.max_flow(SOURCE, SINK);
        if flow == total {
            return (lambda, ln);
        }
        let (better, _) = ln.maximal_source_side();
        let next = density(inst, &better, voters);
        debug_assert!(next > lambda, "Dinkelbach step must increase the ratio");
        lambda = next;
    }
}

fn validate(inst: &Instance, w: &ProjectSet) -> Result<Vec<ProjectIdx>, LoadError> {
    inst.total_cost(w)?;
    if let Some(&p) = w.iter().find(|&&p| inst.supporters(p).is_empty()) {
        return Err(LoadError::Unapproved(inst.id(p).to_string()));
    }
    Ok(w.iter().copied().collect())
}

/// The minimum over load assignments of the maximal voter load, `min s(l)`.
pub fn optimal_max_load(inst: &Instance, w: &ProjectSet) -> Result<Money, LoadError> {
    let projects = validate(inst, w)?;
    if projects.is_empty() {
        return Ok(Rational::zero());
    }
    Ok(densest(inst, &projects, &vec![true; inst.num_voters()]).0)
}

/// A load assignment for `W` minimizing the maximal voter load.
///
/// Among optimal assignments this returns the tiered one: the largest
/// densest subset is spread evenly over its approvers, then the rest of `W`
/// is balanced over the remaining voters, and so on.
pub fn balance_loads(inst: &Instance, w: &ProjectSet) -> Result<LoadAssignment, LoadError> {
    let mut remaining = validate(inst, w)?;
    let n = inst.num_voters();
    let mut loads = vec![vec![Rational::zero(); inst.num_projects()]; n];
    let mut voters = vec![true; n];
    let mut max_load = Rational::zero();
    while !remaining.is_empty() {
        let (lambda, ln) = densest(inst, &remaining, &voters);
        if max_load.is_zero() {
            max_load = lambda.clone();
        }
        let (tier, tier_voters) = ln.maximal_source_side();
        for (pos, &p) in remaining.iter().enumerate() {
            if !tier.contains(&p) {
                continue;
            }
            for (vpos, &i) in ln.voters.iter().enumerate() {
                let l = ln.load(pos, vpos);
                if l.is_positive() {
                    loads[i][p] = l;
                }
            }
        }
        for i in tier_voters {
            voters[i] = false;
        }
        remaining.retain(|p| !tier.contains(p));
    }
    Ok(LoadAssignment { loads, max_load })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::fixtures::*;

    fn check_valid(inst: &Instance, w: &ProjectSet, la: &LoadAssignment) {
        for p in 0..inst.num_projects() {
            let total: Rational = (0..inst.num_voters()).map(|i| &la.loads[i][p]).sum();
            let expected = if w.contains(&p) { inst.cost(p).clone() } else { Rational::zero() };
            assert_eq!(total, expected);
            for i in 0..inst.num_voters() {
                assert!(!la.loads[i][p].is_negative());
                if !inst.ballot(i).contains(&p) {
                    assert!(la.loads[i][p].is_zero());
                }
            }
        }
        let max = (0..inst.num_voters()).map(|i| la.voter_total(i)).max().unwrap();
        assert_eq!(max, la.max_load);
    }

    #[test]
    fn mes_example_all_projects() {
        let inst = mes_c6();
        let w = inst.all_projects();
        let la = balance_loads(&inst, &w).unwrap();
        check_valid(&inst, &w, &la);
        assert_eq!(la.max_load, q(5, 2));
        assert_eq!(la.voter_total(0), q(5, 2));
        assert_eq!(la.voter_total(1), q(5, 2));
    }

    #[test]
    fn even_split_and_disjoint() {
        let inst = priceable_not_pjrx();
        let la = balance_loads(&inst, &set(&inst, &["p1"])).unwrap();
        assert_eq!(la.max_load, int(2));
        let disjoint = Instance::from_ids(&[("a", int(2)), ("b", int(3))], &[vec!["a"], vec!["b"]], int(5)).unwrap();
        let la = balance_loads(&disjoint, &disjoint.all_projects()).unwrap();
        assert_eq!(la.voter_total(0), int(2));
        assert_eq!(la.voter_total(1), int(3));
        assert_eq!(la.max_load, int(3));
    }

    #[test]
    fn tiers_are_lexicographically_balanced() {
        // One heavy project shared by voters 1 and 2, a light one for voter 3 only.
        let inst = Instance::from_ids(
            &[("a", int(4)), ("b", int(1)), ("c", int(1))],
            &[vec!["a"], vec!["a", "c"], vec!["b", "c"]],
            int(6),
        )
        .unwrap();
        let w = inst.all_projects();
        let la = balance_loads(&inst, &w).unwrap();
        check_valid(&inst, &w, &la);
        assert_eq!(la.max_load, int(2));
        assert_eq!(la.voter_total(2), int(2));
        assert_eq!(optimal_max_load(&inst, &w).unwrap(), int(2));
    }

    #[test]
    fn unapproved_project_is_rejected() {
        let inst = Instance::from_ids(&[("a", int(1)), ("b", int(1))], &[vec!["a"]], int(2)).unwrap();
        assert_eq!(balance_loads(&inst, &inst.all_projects()), Err(LoadError::Unapproved("b".into())));
        assert_eq!(optimal_max_load(&inst, &ProjectSet::new()).unwrap(), int(0));
    }
}
