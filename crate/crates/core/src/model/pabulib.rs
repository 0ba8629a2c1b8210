//! Reader for the Pabulib `.pb` layout (approval ballots only).

use std::collections::HashMap;

use super::{Instance, ModelError, Project, ProjectSet};
use crate::rational::Money;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PabulibError {
    #[error("missing section {0}")]
    MissingSection(&'static str),
    #[error("section {0} has no column header")]
    MissingHeader(&'static str),
    #[error("META is missing required key `{0}`")]
    MissingKey(&'static str),
    #[error("section {section} is missing column `{column}`")]
    MissingColumn { section: &'static str, column: &'static str },
    #[error("unsupported vote type `{0}` (only `approval` is supported)")]
    UnsupportedVoteType(String),
    #[error("malformed number for {field}: `{value}`")]
    MalformedNumber { field: String, value: String },
    #[error("voter `{voter}` approves unknown project `{project}`")]
    UnknownProject { voter: String, project: String },
    #[error("META declares {key} = {declared} but the file has {found}")]
    CountMismatch { key: &'static str, declared: usize, found: usize },
    #[error("line {line}: {message}")]
    Row { line: usize, message: String },
    #[error(transparent)]
    Invalid(#[from] ModelError),
}

const SECTIONS: [&str; 3] = ["META", "PROJECTS", "VOTES"];

struct Section {
    header: Vec<String>,
    rows: Vec<(usize, Vec<String>)>,
}

fn split_row(line: &str, line_no: usize) -> Result<Vec<String>, PabulibError> {
    let mut reader =
        csv::ReaderBuilder::new().delimiter(b';').has_headers(false).flexible(true).from_reader(line.as_bytes());
    match reader.records().next() {
        Some(Ok(record)) => Ok(record.iter().map(|f| f.trim().to_string()).collect()),
        Some(Err(e)) => Err(PabulibError::Row { line: line_no, message: e.to_string() }),
        None => Ok(Vec::new()),
    }
}

fn split_sections(text: &str) -> Result<HashMap<&'static str, Section>, PabulibError> {
    let mut sections: HashMap<&'static str, Section> = HashMap::new();
    let mut current: Option<&'static str> = None;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim_start_matches('\u{feff}').trim();
        if line.is_empty() {
            continue;
        }
        if let Some(name) = SECTIONS.iter().find(|s| line.eq_ignore_ascii_case(s)) {
            current = Some(name);
            sections.insert(name, Section { header: Vec::new(), rows: Vec::new() });
            continue;
        }
        let Some(name) = current else {
            return Err(PabulibError::Row { line: line_no, message: "content before the first section".into() });
        };
        let section = sections.get_mut(name).expect("current section exists");
        let fields = split_row(line, line_no)?;
        if section.header.is_empty() {
            section.header = fields.into_iter().map(|f| f.to_ascii_lowercase()).collect();
        } else {
            section.rows.push((line_no, fields));
        }
    }
    Ok(sections)
}

fn column(section: &Section, name: &'static str, label: &'static str) -> Result<usize, PabulibError> {
    section.header.iter().position(|h| h == name).ok_or(PabulibError::MissingColumn { section: label, column: name })
}

fn take<'s>(sections: &'s HashMap<&'static str, Section>, name: &'static str) -> Result<&'s Section, PabulibError> {
    let section = sections.get(name).ok_or(PabulibError::MissingSection(name))?;
    if section.header.is_empty() {
        return Err(PabulibError::MissingHeader(name));
    }
    Ok(section)
}

fn number(field: impl Into<String>, value: &str) -> Result<Money, PabulibError> {
    value.parse().map_err(|_| PabulibError::MalformedNumber { field: field.into(), value: value.to_string() })
}

fn count(key: &'static str, value: &str) -> Result<usize, PabulibError> {
    value.trim().parse().map_err(|_| PabulibError::MalformedNumber { field: key.into(), value: value.to_string() })
}

/// Parses a Pabulib `.pb` file into an [`Instance`].
///
/// The budget comes from META, costs from PROJECTS, and ballots from the
/// `vote` column of VOTES (comma-separated project ids). Decimal costs are
/// read exactly, so `2.5` becomes `5/2`. Voters with empty ballots are kept.
pub fn parse_pabulib(text: &str) -> Result<Instance, PabulibError> {
    let sections = split_sections(text)?;
    let meta_section = take(&sections, "META")?;
    let projects_section = take(&sections, "PROJECTS")?;
    let votes_section = take(&sections, "VOTES")?;

    let mut meta = HashMap::new();
    for (_, row) in &meta_section.rows {
        if let Some(key) = row.first() {
            let value = row.get(1).cloned().unwrap_or_default();
            meta.insert(key.to_ascii_lowercase(), value);
        }
    }
    let get = |key: &'static str| meta.get(key).ok_or(PabulibError::MissingKey(key));
    let num_projects = count("num_projects", get("num_projects")?)?;
    let num_votes = count("num_votes", get("num_votes")?)?;
    let budget = number("budget", get("budget")?)?;
    let vote_type = get("vote_type")?;
    if !vote_type.eq_ignore_ascii_case("approval") {
        return Err(PabulibError::UnsupportedVoteType(vote_type.clone()));
    }

    let id_col = column(projects_section, "project_id", "PROJECTS")?;
    let cost_col = column(projects_section, "cost", "PROJECTS")?;
    let mut projects = Vec::with_capacity(projects_section.rows.len());
    for (line, row) in &projects_section.rows {
        let missing = || PabulibError::Row { line: *line, message: "row is too short".into() };
        let id = row.get(id_col).ok_or_else(missing)?.clone();
        let cost = number(format!("cost of project {id}"), row.get(cost_col).ok_or_else(missing)?)?;
        projects.push(Project::new(id, cost));
    }
    if projects.len() != num_projects {
        return Err(PabulibError::CountMismatch { key: "num_projects", declared: num_projects, found: projects.len() });
    }
    let lookup: HashMap<&str, usize> = projects.iter().enumerate().map(|(i, p)| (p.id.as_str(), i)).collect();

    let voter_col = column(votes_section, "voter_id", "VOTES")?;
    let vote_col = column(votes_section, "vote", "VOTES")?;
    let mut approvals = Vec::with_capacity(votes_section.rows.len());
    for (line, row) in &votes_section.rows {
        let voter = row.get(voter_col).cloned().unwrap_or_else(|| line.to_string());
        let mut ballot = ProjectSet::new();
        let vote = row.get(vote_col).map(String::as_str).unwrap_or("");
        for project in vote.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let idx = lookup
                .get(project)
                .ok_or_else(|| PabulibError::UnknownProject { voter: voter.clone(), project: project.to_string() })?;
            ballot.insert(*idx);
        }
        approvals.push(ballot);
    }
    if approvals.len() != num_votes {
        return Err(PabulibError::CountMismatch { key: "num_votes", declared: num_votes, found: approvals.len() });
    }
    Ok(Instance::new(projects, approvals, budget)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::Rational;

    const MINIMAL: &str = "META\nkey;value\ndescription;tiny\nnum_projects;2\nnum_votes;1\nbudget;10\nvote_type;approval\nPROJECTS\nproject_id;cost;name\n1;5;Park\n2;5;Bench\nVOTES\nvoter_id;vote\n1;1,2\n";

    #[test]
    fn minimal_file() {
        let inst = parse_pabulib(MINIMAL).unwrap();
        assert_eq!(inst.num_voters(), 1);
        assert_eq!(inst.num_projects(), 2);
        assert_eq!(*inst.budget(), Rational::from_integer(10));
        assert_eq!(inst.ballot(0).len(), 2);
    }

    #[test]
    fn decimal_costs_are_exact() {
        let text = MINIMAL.replace("1;5;Park", "1;2.5;Park").replace("budget;10", "budget;7.5");
        let inst = parse_pabulib(&text).unwrap();
        assert_eq!(*inst.cost(0), Rational::new(5, 2));
        assert_eq!(*inst.budget(), Rational::new(15, 2));
    }

    #[test]
    fn quoted_fields_and_extra_columns() {
        let text = MINIMAL.replace("1;5;Park", "1;5;\"Park; with a pond\"");
        let inst = parse_pabulib(&text).unwrap();
        assert_eq!(*inst.cost(0), Rational::from_integer(5));
    }

    #[test]
    fn rejects_ordinal() {
        let text = MINIMAL.replace("vote_type;approval", "vote_type;ordinal");
        assert_eq!(parse_pabulib(&text).unwrap_err(), PabulibError::UnsupportedVoteType("ordinal".into()));
    }

    #[test]
    fn rejects_dangling_reference() {
        let text = MINIMAL.replace("1;1,2", "1;1,7");
        assert!(matches!(
            parse_pabulib(&text).unwrap_err(),
            PabulibError::UnknownProject { project, .. } if project == "7"
        ));
    }

    #[test]
    fn distinct_errors() {
        let no_votes = MINIMAL.split("VOTES").next().unwrap().to_string();
        assert_eq!(parse_pabulib(&no_votes).unwrap_err(), PabulibError::MissingSection("VOTES"));
        let no_budget = MINIMAL.replace("budget;10\n", "");
        assert_eq!(parse_pabulib(&no_budget).unwrap_err(), PabulibError::MissingKey("budget"));
        let bad_cost = MINIMAL.replace("1;5;Park", "1;five;Park");
        assert!(matches!(parse_pabulib(&bad_cost).unwrap_err(), PabulibError::MalformedNumber { .. }));
        let wrong_count = MINIMAL.replace("num_votes;1", "num_votes;3");
        assert!(matches!(
            parse_pabulib(&wrong_count).unwrap_err(),
            PabulibError::CountMismatch { key: "num_votes", declared: 3, found: 1 }
        ));
        let no_cost_col = MINIMAL.replace("project_id;cost;name", "project_id;price;name");
        assert!(matches!(parse_pabulib(&no_cost_col).unwrap_err(), PabulibError::MissingColumn { column: "cost", .. }));
    }

    #[test]
    fn empty_ballot_is_kept() {
        let text = MINIMAL.replace("num_votes;1", "num_votes;2").replace("1;1,2\n", "1;1,2\n2;\n");
        let inst = parse_pabulib(&text).unwrap();
        assert_eq!(inst.num_voters(), 2);
        assert!(inst.ballot(1).is_empty());
    }
}
