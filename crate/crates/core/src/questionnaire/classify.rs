//! Keyword heuristic suggesting an ontology type from a free-text description.
//!
//! Purely advisory: the evaluator's declared type always wins.

use serde::Serialize;

use super::catalog::OntologyType;

const DOMAIN_CUES: &[&str] =
    &["abstract", "primitive", "generic", "general", "knowledge area", "subject", "domain of", "task", "vocabulary of"];

const APPLICATION_CUES: &[&str] =
    &["speciali", "specific", "instantiat", "particular", "application", "system", "university", "course", "company"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Confidence {
    Low,
    Medium,
    High,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TypeHint {
    pub suggested: OntologyType,
    pub confidence: Confidence,
    pub matched: Vec<&'static str>,
    pub rationale: String,
}

const RULE: &str = "an ontology modelling an abstract subject or knowledge area is Type 1; one that \
                    specializes or instantiates such a concept for a particular domain is Type 2";

pub fn classify_hint(description: &str) -> TypeHint {
    let text = description.to_lowercase();
    let hits = |cues: &[&'static str]| cues.iter().copied().filter(|c| text.contains(c)).collect::<Vec<_>>();
    let domain = hits(DOMAIN_CUES);
    let application = hits(APPLICATION_CUES);

    let (suggested, confidence, matched) = match domain.len().cmp(&application.len()) {
        std::cmp::Ordering::Less => {
            let c = if domain.is_empty() { Confidence::High } else { Confidence::Medium };
            (OntologyType::Application, c, application)
        }
        std::cmp::Ordering::Greater => {
            let c = if application.is_empty() { Confidence::High } else { Confidence::Medium };
            (OntologyType::DomainOrTask, c, domain)
        }
        std::cmp::Ordering::Equal => {
            let mut both = domain;
            both.extend(application);
            (OntologyType::DomainOrTask, Confidence::Low, both)
        }
    };

    let rationale = if confidence == Confidence::Low {
        format!("no decisive cue; defaulting to {} with low confidence. Rule: {RULE}.", suggested.label())
    } else {
        format!("cues {:?} point to {}. Rule: {RULE}.", matched, suggested.label())
    };
    TypeHint { suggested, confidence, matched, rationale }
}
