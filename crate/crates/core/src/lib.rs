//! Ontology quality evaluation: a type-dependent 13-question rubric, a
//! logistic quality formula over per-goal mean grades, beta-regression
//! re-estimation of that formula, and lexical evidence extraction from
//! Turtle ontology files.

pub mod betareg;
pub mod inspect;
pub mod questionnaire;
pub mod scoring;
