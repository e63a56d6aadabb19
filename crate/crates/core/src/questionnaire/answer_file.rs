//! JSON answer-file interchange format.
//!
//! ```json
//! {
//!   "ontology_id": "foaf",
//!   "ontology_type": "type2",
//!   "lexp": 1,
//!   "answers": { "Q1": { "subs": [50, 50, 50] }, "Q2": { "grade": 75 } },
//!   "notes": { "Q3": "imports foaf" }
//! }
//! ```
//!
//! An optional `"incomplete": true` marks a file written by an aborted
//! wizard run. Any other key is rejected.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::catalog::{OntologyType, QuestionId};
use super::session::{AnswerInput, EvaluationSession};
use super::QuestionnaireError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LeafEntry {
    pub grade: u8,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubsEntry {
    pub subs: Vec<u8>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AnswerEntry {
    Leaf(LeafEntry),
    Subs(SubsEntry),
}

impl From<&AnswerInput> for AnswerEntry {
    fn from(input: &AnswerInput) -> Self {
        match input {
            AnswerInput::Leaf(grade) => AnswerEntry::Leaf(LeafEntry { grade: *grade }),
            AnswerInput::Subs(subs) => AnswerEntry::Subs(SubsEntry { subs: subs.clone() }),
        }
    }
}

impl From<AnswerEntry> for AnswerInput {
    fn from(entry: AnswerEntry) -> Self {
        match entry {
            AnswerEntry::Leaf(l) => AnswerInput::Leaf(l.grade),
            AnswerEntry::Subs(s) => AnswerInput::Subs(s.subs),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnswerFile {
    pub ontology_id: String,
    pub ontology_type: OntologyType,
    pub lexp: u8,
    #[serde(default)]
    pub answers: BTreeMap<QuestionId, AnswerEntry>,
    #[serde(default)]
    pub notes: BTreeMap<QuestionId, String>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub incomplete: bool,
}

impl AnswerFile {
    pub fn from_json(text: &str) -> Result<Self, QuestionnaireError> {
        serde_json::from_str(text).map_err(|e| QuestionnaireError::Schema(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("answer file serializes");
        out.push('\n');
        out
    }

    pub fn from_session(session: &EvaluationSession, incomplete: bool) -> Self {
        AnswerFile {
            ontology_id: session.ontology_id.clone(),
            ontology_type: session.ontology_type(),
            lexp: session.lexp(),
            answers: session.answers().iter().map(|(q, a)| (*q, AnswerEntry::from(&a.input))).collect(),
            notes: session.notes.clone(),
            incomplete,
        }
    }

    /// Validate every answer through the session rules, in question order.
    pub fn to_session(&self) -> Result<EvaluationSession, QuestionnaireError> {
        let experienced = match self.lexp {
            0 => false,
            1 => true,
            other => return Err(QuestionnaireError::Schema(format!("lexp must be 0 or 1, got {other}"))),
        };
        let mut session = EvaluationSession::new(self.ontology_id.clone(), self.ontology_type, experienced);
        for (q, entry) in &self.answers {
            session.record_answer(*q, entry.clone().into())?;
        }
        session.notes = self.notes.clone();
        Ok(session)
    }
}
