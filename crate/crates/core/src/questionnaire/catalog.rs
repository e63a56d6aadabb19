//! The static question catalog: goals, metrics, rubrics and applicability.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::QuestionnaireError;

/// Ontology type declared by the evaluator before grading starts.
///
/// Top-level ontologies are not representable: the rubric does not cover
/// their level of abstraction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OntologyType {
    /// Type 1: a domain or task ontology.
    #[serde(rename = "type1")]
    DomainOrTask,
    /// Type 2: an application ontology.
    #[serde(rename = "type2")]
    Application,
}

impl OntologyType {
    pub const ALL: [OntologyType; 2] = [OntologyType::DomainOrTask, OntologyType::Application];

    /// The one question that is never graded for this type.
    pub fn excluded_question(self) -> QuestionId {
        match self {
            OntologyType::DomainOrTask => QuestionId::Q4,
            OntologyType::Application => QuestionId::Q5,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            OntologyType::DomainOrTask => "Type 1 (domain or task ontology)",
            OntologyType::Application => "Type 2 (application ontology)",
        }
    }

    pub fn key(self) -> &'static str {
        match self {
            OntologyType::DomainOrTask => "type1",
            OntologyType::Application => "type2",
        }
    }
}

impl FromStr for OntologyType {
    type Err = QuestionnaireError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "type1" | "1" | "domain" | "task" => Ok(OntologyType::DomainOrTask),
            "type2" | "2" | "application" => Ok(OntologyType::Application),
            other => Err(QuestionnaireError::UnknownOntologyType(other.to_string())),
        }
    }
}

impl fmt::Display for OntologyType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum QuestionId {
    Q1,
    Q2,
    Q3,
    Q4,
    Q5,
    Q6,
    Q7,
    Q8,
    Q9,
    Q10,
    Q11,
    Q12,
    Q13,
}

impl QuestionId {
    pub const ALL: [QuestionId; 13] = [
        QuestionId::Q1,
        QuestionId::Q2,
        QuestionId::Q3,
        QuestionId::Q4,
        QuestionId::Q5,
        QuestionId::Q6,
        QuestionId::Q7,
        QuestionId::Q8,
        QuestionId::Q9,
        QuestionId::Q10,
        QuestionId::Q11,
        QuestionId::Q12,
        QuestionId::Q13,
    ];

    /// 1-based question number.
    pub fn number(self) -> u8 {
        self as u8 + 1
    }

    pub fn from_number(n: u8) -> Option<QuestionId> {
        QuestionId::ALL.get(usize::from(n).checked_sub(1)?).copied()
    }

    pub fn goal(self) -> Goal {
        match self {
            QuestionId::Q1 | QuestionId::Q2 | QuestionId::Q3 => Goal::Substitute,
            QuestionId::Q4 | QuestionId::Q5 | QuestionId::Q6 => Goal::OntologicalCommitments,
            QuestionId::Q7 | QuestionId::Q8 => Goal::IntelligentReasoning,
            QuestionId::Q9 | QuestionId::Q10 => Goal::EfficientComputation,
            QuestionId::Q11 | QuestionId::Q12 | QuestionId::Q13 => Goal::HumanExpression,
        }
    }

    pub fn spec(self) -> &'static QuestionSpec {
        &CATALOG[self as usize]
    }
}

impl fmt::Display for QuestionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q{}", self.number())
    }
}

impl FromStr for QuestionId {
    type Err = QuestionnaireError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let digits = t.strip_prefix(['Q', 'q']).unwrap_or(t);
        digits
            .parse::<u8>()
            .ok()
            .and_then(QuestionId::from_number)
            .ok_or_else(|| QuestionnaireError::UnknownQuestion(s.to_string()))
    }
}

/// The five goals, one per knowledge-representation role.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Goal {
    Substitute,
    OntologicalCommitments,
    IntelligentReasoning,
    EfficientComputation,
    HumanExpression,
}

impl Goal {
    pub const ALL: [Goal; 5] = [
        Goal::Substitute,
        Goal::OntologicalCommitments,
        Goal::IntelligentReasoning,
        Goal::EfficientComputation,
        Goal::HumanExpression,
    ];

    pub fn number(self) -> u8 {
        self as u8 + 1
    }

    pub fn from_number(n: u8) -> Option<Goal> {
        Goal::ALL.get(usize::from(n).checked_sub(1)?).copied()
    }

    pub fn role_name(self) -> &'static str {
        match self {
            Goal::Substitute => "Substitute",
            Goal::OntologicalCommitments => "Ontological Commitments",
            Goal::IntelligentReasoning => "Intelligent Reasoning",
            Goal::EfficientComputation => "Efficient Computation",
            Goal::HumanExpression => "Human Expression",
        }
    }

    pub fn questions(self) -> impl Iterator<Item = QuestionId> {
        QuestionId::ALL.into_iter().filter(move |q| q.goal() == self)
    }
}

impl fmt::Display for Goal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Goal {} ({})", self.number(), self.role_name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Metric {
    Completeness,
    Adaptability,
    Conciseness,
    Consistency,
    ComputationalEfficiency,
    Clarity,
}

impl Metric {
    pub fn name(self) -> &'static str {
        match self {
            Metric::Completeness => "Completeness",
            Metric::Adaptability => "Adaptability",
            Metric::Conciseness => "Conciseness",
            Metric::Consistency => "Consistency",
            Metric::ComputationalEfficiency => "Computational efficiency",
            Metric::Clarity => "Clarity",
        }
    }
}

/// Which types a question may be graded for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Applicability {
    Always,
    Only(OntologyType),
}

impl Applicability {
    pub fn admits(self, t: OntologyType) -> bool {
        match self {
            Applicability::Always => true,
            Applicability::Only(only) => only == t,
        }
    }
}

pub const ALL_GRADES: &[u8] = &[0, 25, 50, 75, 100];
pub const NONZERO_GRADES: &[u8] = &[25, 50, 75, 100];
const BINARY_GRADES: &[u8] = &[0, 100];
const ABSENT_ONLY: &[u8] = &[0];

/// One catalog entry.
///
/// Questions with sub-questions (Q1, Q11) first check that the graded
/// artifact exists at all: the leaf grade 0 records its absence, otherwise
/// the sub-question grades are averaged.
#[derive(Debug, Clone, PartialEq)]
pub struct QuestionSpec {
    pub id: QuestionId,
    pub goal: Goal,
    pub metric: Metric,
    pub text: &'static str,
    /// Existence check asked before the sub-questions, if any.
    pub precondition: Option<&'static str>,
    pub sub_questions: &'static [&'static str],
    /// Grades accepted as a single leaf answer.
    pub leaf_grades: &'static [u8],
    /// Grades accepted for each sub-question.
    pub sub_grades: &'static [u8],
    pub applicability: Applicability,
    pub how_to_verify: &'static str,
}

impl QuestionSpec {
    pub fn has_sub_questions(&self) -> bool {
        !self.sub_questions.is_empty()
    }

    pub fn applies_to(&self, t: OntologyType) -> bool {
        self.applicability.admits(t)
    }

    /// Every value that may appear in an answer to this question.
    pub fn allowed_grades(&self) -> Vec<u8> {
        let mut all: Vec<u8> = self.leaf_grades.iter().chain(self.sub_grades).copied().collect();
        all.sort_unstable();
        all.dedup();
        all
    }
}

static CATALOG: [QuestionSpec; 13] = [
    QuestionSpec {
        id: QuestionId::Q1,
        goal: Goal::Substitute,
        metric: Metric::Completeness,
        text: "Were the competency questions defined?",
        precondition: Some("Is there a document stating the ontology's competencies?"),
        sub_questions: &[
            "Does the document define the ontology objective?",
            "Does the document define the ontology stakeholders?",
            "Does the document define the use scenarios?",
        ],
        leaf_grades: ABSENT_ONLY,
        sub_grades: NONZERO_GRADES,
        applicability: Applicability::Always,
        how_to_verify: "Look for a competency document. Absent: grade 0. Present: grade each \
                        sub-question with 25, 50, 75 or 100; the question grade is their mean.",
    },
    QuestionSpec {
        id: QuestionId::Q2,
        goal: Goal::Substitute,
        metric: Metric::Completeness,
        text: "Were the competency questions answered?",
        precondition: None,
        sub_questions: &[],
        leaf_grades: NONZERO_GRADES,
        sub_grades: &[],
        applicability: Applicability::Always,
        how_to_verify: "Only gradeable when Q1 is not 0 (otherwise it is fixed at 0). Compare \
                        the model against the competency document: 25, 50, 75 or 100.",
    },
    QuestionSpec {
        id: QuestionId::Q3,
        goal: Goal::Substitute,
        metric: Metric::Adaptability,
        text: "Did the ontology reuse other ontologies?",
        precondition: None,
        sub_questions: &[],
        leaf_grades: BINARY_GRADES,
        sub_grades: &[],
        applicability: Applicability::Always,
        how_to_verify: "No reuse of external ontologies: 0. Any reuse: 100.",
    },
    QuestionSpec {
        id: QuestionId::Q4,
        goal: Goal::OntologicalCommitments,
        metric: Metric::Conciseness,
        text: "Did the ontology impose a minimal ontological commitment?",
        precondition: None,
        sub_questions: &[],
        leaf_grades: ALL_GRADES,
        sub_grades: &[],
        applicability: Applicability::Only(OntologyType::Application),
        how_to_verify: "Application ontologies only. Judge how much abstraction is used to define \
                        concepts: 0 when full of needless abstraction, otherwise 25 (very \
                        specific), 50 (moderate), 75 (many abstractions), 100 (full of them).",
    },
    QuestionSpec {
        id: QuestionId::Q5,
        goal: Goal::OntologicalCommitments,
        metric: Metric::Conciseness,
        text: "Did the ontology impose a maximum ontological commitment?",
        precondition: None,
        sub_questions: &[],
        leaf_grades: ALL_GRADES,
        sub_grades: &[],
        applicability: Applicability::Only(OntologyType::DomainOrTask),
        how_to_verify: "Domain or task ontologies only. Check whether primitive concepts are used \
                        to define the domain: 0 when no abstractions are used, otherwise 25 (very \
                        specific), 50 (moderate), 75 (many abstractions), 100 (full of them).",
    },
    QuestionSpec {
        id: QuestionId::Q6,
        goal: Goal::OntologicalCommitments,
        metric: Metric::Consistency,
        text: "Are the ontology properties coherent with the domain?",
        precondition: None,
        sub_questions: &[],
        leaf_grades: ALL_GRADES,
        sub_grades: &[],
        applicability: Applicability::Always,
        how_to_verify: "Check classes and properties against the modelled domain. Full of \
                        incoherences: 0. Some: 25, 50 or 75. None: 100.",
    },
    QuestionSpec {
        id: QuestionId::Q7,
        goal: Goal::IntelligentReasoning,
        metric: Metric::Consistency,
        text: "Are there contradictory axioms?",
        precondition: None,
        sub_questions: &[],
        leaf_grades: ALL_GRADES,
        sub_grades: &[],
        applicability: Applicability::Always,
        how_to_verify: "Check class hierarchies and property characteristics (functional, \
                        transitive, reflexive, ...) against the domain. Full of contradictions: \
                        0. Some: 25, 50 or 75. None: 100.",
    },
    QuestionSpec {
        id: QuestionId::Q8,
        goal: Goal::IntelligentReasoning,
        metric: Metric::Conciseness,
        text: "Are there redundant axioms?",
        precondition: None,
        sub_questions: &[],
        leaf_grades: ALL_GRADES,
        sub_grades: &[],
        applicability: Applicability::Always,
        how_to_verify: "Look for classes or properties that model the same thing. Full of \
                        redundancies: 0. Some: 25, 50 or 75. None: 100.",
    },
    QuestionSpec {
        id: QuestionId::Q9,
        goal: Goal::EfficientComputation,
        metric: Metric::ComputationalEfficiency,
        text: "Did the reasoner bring modelling errors?",
        precondition: None,
        sub_questions: &[],
        leaf_grades: ALL_GRADES,
        sub_grades: &[],
        applicability: Applicability::Always,
        how_to_verify: "Run a reasoner and keep its records. Full of errors or unresponsive: 0. \
                        Some errors: 25, 50 or 75. No errors: 100.",
    },
    QuestionSpec {
        id: QuestionId::Q10,
        goal: Goal::EfficientComputation,
        metric: Metric::ComputationalEfficiency,
        text: "Did the reasoner perform quickly?",
        precondition: None,
        sub_questions: &[],
        leaf_grades: ALL_GRADES,
        sub_grades: &[],
        applicability: Applicability::Always,
        how_to_verify: "Reasoner stops: 0. Noticeable delay: 25, 50 or 75. Runs quickly: 100.",
    },
    QuestionSpec {
        id: QuestionId::Q11,
        goal: Goal::HumanExpression,
        metric: Metric::Clarity,
        text: "Is the documentation consistent with the modelling?",
        precondition: Some("Does documentation for the ontology exist?"),
        sub_questions: &[
            "Are the terms written in the documentation the same as in the model?",
            "Does the documentation explain each term and justify each modelling detail?",
        ],
        leaf_grades: ABSENT_ONLY,
        sub_grades: NONZERO_GRADES,
        applicability: Applicability::Always,
        how_to_verify: "No documentation: 0. Otherwise grade both sub-questions with 25, 50, 75 \
                        or 100; the question grade is their mean.",
    },
    QuestionSpec {
        id: QuestionId::Q12,
        goal: Goal::HumanExpression,
        metric: Metric::Clarity,
        text: "Were the concepts well written?",
        precondition: None,
        sub_questions: &[],
        leaf_grades: ALL_GRADES,
        sub_grades: &[],
        applicability: Applicability::Always,
        how_to_verify: "Check that class and property names are understandable and correctly \
                        written in one language. Hard to read or badly written: 0. Some errors or \
                        mixed languages: 25, 50 or 75. Well written in one language: 100.",
    },
    QuestionSpec {
        id: QuestionId::Q13,
        goal: Goal::HumanExpression,
        metric: Metric::Clarity,
        text: "Are there annotations in the ontology that show the definitions of the concepts?",
        precondition: None,
        sub_questions: &[],
        leaf_grades: ALL_GRADES,
        sub_grades: &[],
        applicability: Applicability::Always,
        how_to_verify: "No annotations: 0. Some concepts annotated: 25, 50 or 75. Every concept \
                        annotated with its definition: 100.",
    },
];

/// The full catalog in Q1..Q13 order.
pub fn catalog() -> &'static [QuestionSpec] {
    &CATALOG
}

/// Questions gradeable for `t`, in catalog order. Always twelve entries.
pub fn applicable_questions(t: OntologyType) -> Vec<QuestionId> {
    CATALOG.iter().filter(|s| s.applies_to(t)).map(|s| s.id).collect()
}
