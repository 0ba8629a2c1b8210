use serde::{Deserialize, Serialize};

use super::{Instance, ModelError};
use crate::rational::Money;

/// Wire form of an instance: `{"n", "budget", "projects": [{"id","cost"}], "approvals"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceDoc {
    pub n: usize,
    pub budget: Money,
    pub projects: Vec<ProjectDoc>,
    pub approvals: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProjectDoc {
    pub id: String,
    pub cost: Money,
}

#[derive(Debug, thiserror::Error)]
pub enum JsonError {
    #[error("invalid instance JSON: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("`n` is {n} but {ballots} approval ballots are listed")]
    VoterCount { n: usize, ballots: usize },
    #[error(transparent)]
    Invalid(#[from] ModelError),
}

impl From<&Instance> for InstanceDoc {
    fn from(inst: &Instance) -> Self {
        InstanceDoc {
            n: inst.num_voters(),
            budget: inst.budget().clone(),
            projects: inst.projects().iter().map(|p| ProjectDoc { id: p.id.clone(), cost: p.cost.clone() }).collect(),
            approvals: inst.ballots().iter().map(|b| inst.ids_of(b)).collect(),
        }
    }
}

impl TryFrom<InstanceDoc> for Instance {
    type Error = JsonError;

    fn try_from(doc: InstanceDoc) -> Result<Self, JsonError> {
        if doc.n != doc.approvals.len() {
            return Err(JsonError::VoterCount { n: doc.n, ballots: doc.approvals.len() });
        }
        let projects: Vec<(String, Money)> = doc.projects.into_iter().map(|p| (p.id, p.cost)).collect();
        let refs: Vec<(&str, Money)> = projects.iter().map(|(id, cost)| (id.as_str(), cost.clone())).collect();
        Ok(Instance::from_ids(&refs, &doc.approvals, doc.budget)?)
    }
}

pub fn parse_json(text: &str) -> Result<Instance, JsonError> {
    let doc: InstanceDoc = serde_json::from_str(text)?;
    Instance::try_from(doc)
}

pub fn emit_json(inst: &Instance) -> String {
    serde_json::to_string_pretty(&InstanceDoc::from(inst)).expect("instance serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::fixtures::*;
    use crate::rational::Rational;

    #[test]
    fn round_trip_worked_instances() {
        for inst in [b7(), incompat(), mes_c6(), local_bpjr_unit()] {
            assert_eq!(parse_json(&emit_json(&inst)).unwrap(), inst);
        }
    }

    #[test]
    fn fractional_cost() {
        let text = r#"{"n":1,"budget":"7","projects":[{"id":"a","cost":"5/2"}],"approvals":[["a"]]}"#;
        let inst = parse_json(text).unwrap();
        assert_eq!(*inst.cost(0), Rational::new(5, 2));
    }

    #[test]
    fn negative_cost_rejected() {
        let text = r#"{"n":1,"budget":"7","projects":[{"id":"a","cost":"-1"}],"approvals":[["a"]]}"#;
        assert!(matches!(parse_json(text), Err(JsonError::Invalid(ModelError::NonPositiveCost { .. }))));
    }

    #[test]
    fn schema_violations() {
        let wrong_n = r#"{"n":2,"budget":"7","projects":[{"id":"a","cost":"1"}],"approvals":[["a"]]}"#;
        assert!(matches!(parse_json(wrong_n), Err(JsonError::VoterCount { n: 2, ballots: 1 })));
        let unknown = r#"{"n":1,"budget":"7","projects":[{"id":"a","cost":"1"}],"approvals":[["b"]]}"#;
        assert!(matches!(parse_json(unknown), Err(JsonError::Invalid(ModelError::UnknownProject(_)))));
        assert!(matches!(parse_json("{\"n\":1}"), Err(JsonError::Syntax(_))));
    }
}
