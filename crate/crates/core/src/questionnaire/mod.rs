//! The question catalog, grading rules and per-evaluator session state.

mod answer_file;
mod catalog;
mod classify;
mod session;

use thiserror::Error;

pub use answer_file::{AnswerEntry, AnswerFile, LeafEntry, SubsEntry};
pub use catalog::{
    applicable_questions, catalog, Applicability, Goal, Metric, OntologyType, QuestionId, QuestionSpec, ALL_GRADES,
    NONZERO_GRADES,
};
pub use classify::{classify_hint, Confidence, TypeHint};
pub use session::{derive_nl, grade_question, AnswerInput, EvaluationSession, Grade, NlPolicy, RecordedAnswer};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuestionnaireError {
    #[error("{question}: expected {expected} sub-question grades, got {got}")]
    WrongArity { question: QuestionId, expected: usize, got: usize },
    #[error("{question}: grade {grade} not allowed (allowed: {allowed:?})")]
    IllegalGrade { question: QuestionId, grade: u8, allowed: Vec<u8> },
    #[error("{question} is not applicable to a {ontology_type} ontology")]
    NotApplicable { question: QuestionId, ontology_type: OntologyType },
    #[error("Q2 is fixed at 0 while Q1 records absent competencies")]
    Q2Locked,
    #[error("unknown question `{0}`")]
    UnknownQuestion(String),
    #[error("unknown ontology type `{0}` (expected type1 or type2)")]
    UnknownOntologyType(String),
    #[error("malformed answer file: {0}")]
    Schema(String),
}
