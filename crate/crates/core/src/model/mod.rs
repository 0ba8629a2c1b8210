//! Approval-based budgeting instances `(A, P, c, b)` and outcomes.

mod generate;
mod json;
mod pabulib;

use std::collections::{BTreeSet, HashMap};

use crate::rational::Money;

pub use generate::{generate_random, BudgetRule, GenerateError, GeneratorParams};
pub use json::{emit_json, parse_json, InstanceDoc, JsonError, ProjectDoc};
pub use pabulib::{parse_pabulib, PabulibError};

/// Dense project index into [`Instance::projects`].
pub type ProjectIdx = usize;

/// Zero-based voter index. Reports use `index + 1`.
pub type VoterIdx = usize;

/// A set of projects, ordered by index.
pub type ProjectSet = BTreeSet<ProjectIdx>;

/// A set of voters, ordered by index.
pub type VoterSet = BTreeSet<VoterIdx>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModelError {
    #[error("instance needs at least one voter")]
    NoVoters,
    #[error("instance needs at least one project")]
    NoProjects,
    #[error("budget must be strictly positive, got {0}")]
    NonPositiveBudget(Money),
    #[error("project `{id}` has non-positive cost {cost}")]
    NonPositiveCost { id: String, cost: Money },
    #[error("duplicate project id `{0}`")]
    DuplicateProject(String),
    #[error("unknown project `{0}`")]
    UnknownProject(String),
    #[error("project index {0} out of range")]
    ProjectOutOfRange(ProjectIdx),
    #[error("voter index {0} out of range")]
    VoterOutOfRange(VoterIdx),
    #[error("set costing {cost} exceeds the budget {budget}")]
    Infeasible { cost: Money, budget: Money },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Project {
    pub id: String,
    pub cost: Money,
}

impl Project {
    pub fn new(id: impl Into<String>, cost: Money) -> Self {
        Project { id: id.into(), cost }
    }
}

/// An approval-based budgeting instance. Immutable once built.
#[derive(Debug, Clone)]
pub struct Instance {
    projects: Vec<Project>,
    approvals: Vec<ProjectSet>,
    budget: Money,
    approvers: Vec<Vec<VoterIdx>>,
    index: HashMap<String, ProjectIdx>,
}

impl PartialEq for Instance {
    fn eq(&self, other: &Self) -> bool {
        self.projects == other.projects && self.approvals == other.approvals && self.budget == other.budget
    }
}

impl Eq for Instance {}

impl Instance {
    /// Validates and builds an instance. Voters may approve nothing.
    pub fn new(projects: Vec<Project>, approvals: Vec<ProjectSet>, budget: Money) -> Result<Self, ModelError> {
        if approvals.is_empty() {
            return Err(ModelError::NoVoters);
        }
        if projects.is_empty() {
            return Err(ModelError::NoProjects);
        }
        if !budget.is_positive() {
            return Err(ModelError::NonPositiveBudget(budget));
        }
        let mut index = HashMap::with_capacity(projects.len());
        for (idx, p) in projects.iter().enumerate() {
            if !p.cost.is_positive() {
                return Err(ModelError::NonPositiveCost { id: p.id.clone(), cost: p.cost.clone() });
            }
            if index.insert(p.id.clone(), idx).is_some() {
                return Err(ModelError::DuplicateProject(p.id.clone()));
            }
        }
        let mut approvers = vec![Vec::new(); projects.len()];
        for (voter, ballot) in approvals.iter().enumerate() {
            for &p in ballot {
                if p >= projects.len() {
                    return Err(ModelError::ProjectOutOfRange(p));
                }
                approvers[p].push(voter);
            }
        }
        Ok(Instance { projects, approvals, budget, approvers, index })
    }

    /// Builds an instance from project ids, per-voter approved ids, and a budget.
    pub fn from_ids<S: AsRef<str>>(
        projects: &[(&str, Money)],
        ballots: &[Vec<S>],
        budget: Money,
    ) -> Result<Self, ModelError> {
        let projects: Vec<Project> = projects.iter().map(|(id, cost)| Project::new(*id, cost.clone())).collect();
        let lookup: HashMap<&str, ProjectIdx> = projects.iter().enumerate().map(|(i, p)| (p.id.as_str(), i)).collect();
        let mut approvals = Vec::with_capacity(ballots.len());
        for ballot in ballots {
            let mut set = ProjectSet::new();
            for id in ballot {
                let id = id.as_ref();
                let idx = *lookup.get(id).ok_or_else(|| ModelError::UnknownProject(id.to_string()))?;
                set.insert(idx);
            }
            approvals.push(set);
        }
        Instance::new(projects, approvals, budget)
    }

    pub fn num_voters(&self) -> usize {
        self.approvals.len()
    }

    pub fn num_projects(&self) -> usize {
        self.projects.len()
    }

    pub fn budget(&self) -> &Money {
        &self.budget
    }

    pub fn projects(&self) -> &[Project] {
        &self.projects
    }

    pub fn project(&self, p: ProjectIdx) -> &Project {
        &self.projects[p]
    }

    pub fn cost(&self, p: ProjectIdx) -> &Money {
        &self.projects[p].cost
    }

    pub fn id(&self, p: ProjectIdx) -> &str {
        &self.projects[p].id
    }

    pub fn project_index(&self, id: &str) -> Option<ProjectIdx> {
        self.index.get(id).copied()
    }

    /// The approval ballot `A_i`.
    pub fn ballot(&self, voter: VoterIdx) -> &ProjectSet {
        &self.approvals[voter]
    }

    pub fn ballots(&self) -> &[ProjectSet] {
        &self.approvals
    }

    /// Approvers `N_p` of a project, unchecked.
    pub fn supporters(&self, p: ProjectIdx) -> &[VoterIdx] {
        &self.approvers[p]
    }

    pub fn all_projects(&self) -> ProjectSet {
        (0..self.num_projects()).collect()
    }

    /// Resolves project ids to indices.
    pub fn resolve<S: AsRef<str>>(&self, ids: &[S]) -> Result<ProjectSet, ModelError> {
        ids.iter()
            .map(|id| {
                let id = id.as_ref();
                self.project_index(id).ok_or_else(|| ModelError::UnknownProject(id.to_string()))
            })
            .collect()
    }

    /// Project ids of a set, in index order.
    pub fn ids_of(&self, set: &ProjectSet) -> Vec<String> {
        set.iter().map(|&p| self.id(p).to_string()).collect()
    }

    fn check_set(&self, s: &ProjectSet) -> Result<(), ModelError> {
        match s.iter().find(|&&p| p >= self.num_projects()) {
            Some(&p) => Err(ModelError::ProjectOutOfRange(p)),
            None => Ok(()),
        }
    }

    /// `c(s)`, the exact total cost of a project set.
    pub fn total_cost(&self, s: &ProjectSet) -> Result<Money, ModelError> {
        self.check_set(s)?;
        Ok(self.cost_of(s))
    }

    pub(crate) fn cost_of(&self, s: &ProjectSet) -> Money {
        s.iter().map(|&p| self.cost(p)).sum()
    }

    /// Whether `s` fits within the budget limit.
    pub fn is_outcome(&self, s: &ProjectSet) -> Result<bool, ModelError> {
        Ok(self.total_cost(s)? <= self.budget)
    }

    /// Whether no unchosen project fits into the residual budget of `s`.
    pub fn is_exhaustive(&self, s: &ProjectSet) -> Result<bool, ModelError> {
        let cost = self.total_cost(s)?;
        if cost > self.budget {
            return Err(ModelError::Infeasible { cost, budget: self.budget.clone() });
        }
        let residual = &self.budget - &cost;
        Ok((0..self.num_projects()).filter(|p| !s.contains(p)).all(|p| *self.cost(p) > residual))
    }

    /// The approver set `N_p`.
    pub fn approvers(&self, p: ProjectIdx) -> Result<VoterSet, ModelError> {
        if p >= self.num_projects() {
            return Err(ModelError::ProjectOutOfRange(p));
        }
        Ok(self.approvers[p].iter().copied().collect())
    }

    pub fn is_unit_cost(&self) -> bool {
        let one = Money::one();
        self.projects.iter().all(|p| p.cost == one)
    }
}
