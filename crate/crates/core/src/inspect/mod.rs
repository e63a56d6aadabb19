//! Turtle-subset parsing and lexical evidence for grading Q3, Q8, Q12 and
//! Q13. Every suggestion is advisory: nothing here touches a session.

mod document;
mod evidence;
mod turtle;

use thiserror::Error;

pub use document::{local_name, namespace_of, Literal, Term, Triple, TripleDocument, RDF_TYPE};
pub use evidence::{
    annotation_coverage, conventions_of, declared_terms, naming_report, naming_report_with, redundancy_candidates,
    redundancy_candidates_with, reuse_evidence, segments, suggest_grades, suggest_grades_with, threshold_grade,
    Convention, Coverage, EvidenceEntry, EvidenceReport, FlaggedName, ManualCheck, MatchKind, Measure, NamingFlag,
    NamingReport, OwnNamespaces, RedundancyCandidate, ReuseEvidence, TermKind, VocabularyConfig,
};
pub use turtle::parse_turtle;

/// Well-known namespace IRIs.
pub mod vocab {
    pub use super::document::{DC, DCTERMS, OBO, OWL, RDF, RDFS, SKOS, XSD};
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InspectError {
    #[error("parse error at line {line}, column {column} near `{token}`: {message}")]
    Parse { line: usize, column: usize, token: String, message: String },
    #[error("unknown prefix in `{name}` at line {line}, column {column}")]
    UnknownPrefix { line: usize, column: usize, name: String },
    #[error("at least one own namespace is required")]
    NoOwnNamespace,
}
