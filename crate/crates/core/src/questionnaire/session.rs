use std::collections::BTreeMap;
use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use super::catalog::{applicable_questions, Goal, OntologyType, QuestionId, QuestionSpec};
use super::QuestionnaireError;

/// A question grade, kept as an exact rational in `[0, 100]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Grade(Ratio<i64>);

impl Grade {
    pub const ZERO: Grade = Grade(Ratio::new_raw(0, 1));

    pub fn from_int(v: u8) -> Self {
        Grade(Ratio::from_integer(i64::from(v)))
    }

    pub fn ratio(self) -> Ratio<i64> {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == Ratio::from_integer(0)
    }

    pub fn to_f64(self) -> f64 {
        *self.0.numer() as f64 / *self.0.denom() as f64
    }

    /// Arithmetic mean of a non-empty set of grades.
    pub fn mean<I: IntoIterator<Item = Grade>>(grades: I) -> Option<Grade> {
        let (sum, n) = grades.into_iter().fold((Ratio::from_integer(0), 0i64), |(s, n), g| (s + g.0, n + 1));
        (n > 0).then(|| Grade(sum / n))
    }
}

impl fmt::Display for Grade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            let s = format!("{:.6}", self.to_f64());
            f.write_str(s.trim_end_matches('0'))
        }
    }
}

/// What the evaluator entered for one question.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnswerInput {
    Leaf(u8),
    Subs(Vec<u8>),
}

impl AnswerInput {
    pub fn leaf(grade: u8) -> Self {
        AnswerInput::Leaf(grade)
    }

    pub fn subs(subs: impl Into<Vec<u8>>) -> Self {
        AnswerInput::Subs(subs.into())
    }
}

/// Turn an entered answer into a question grade.
///
/// Leaf answers pass through; sub-question lists are averaged. For Q1 and
/// Q11 the only admissible leaf is 0 (the graded artifact is absent).
pub fn grade_question(spec: &QuestionSpec, input: &AnswerInput) -> Result<Grade, QuestionnaireError> {
    match input {
        AnswerInput::Leaf(grade) => {
            if !spec.leaf_grades.contains(grade) {
                return Err(QuestionnaireError::IllegalGrade {
                    question: spec.id,
                    grade: *grade,
                    allowed: spec.leaf_grades.to_vec(),
                });
            }
            Ok(Grade::from_int(*grade))
        }
        AnswerInput::Subs(subs) => {
            if subs.is_empty() || subs.len() != spec.sub_questions.len() {
                return Err(QuestionnaireError::WrongArity {
                    question: spec.id,
                    expected: spec.sub_questions.len(),
                    got: subs.len(),
                });
            }
            if let Some(bad) = subs.iter().find(|g| !spec.sub_grades.contains(g)) {
                return Err(QuestionnaireError::IllegalGrade {
                    question: spec.id,
                    grade: *bad,
                    allowed: spec.sub_grades.to_vec(),
                });
            }
            Ok(Grade::mean(subs.iter().map(|&g| Grade::from_int(g))).expect("arity checked above"))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecordedAnswer {
    pub input: AnswerInput,
    pub grade: Grade,
}

/// How the nullity flag is derived from unanswered questions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NlPolicy {
    /// Any unanswered applicable question sets the flag.
    #[default]
    Strict,
    /// Only a goal with no answered question sets the flag.
    GoalEmpty,
}

impl std::str::FromStr for NlPolicy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "strict" => Ok(NlPolicy::Strict),
            "goal-empty" | "goal_empty" => Ok(NlPolicy::GoalEmpty),
            other => Err(format!("unknown nl policy `{other}` (expected strict or goal-empty)")),
        }
    }
}

/// One evaluator's pass over one ontology.
#[derive(Debug, Clone, PartialEq)]
pub struct EvaluationSession {
    pub ontology_id: String,
    ontology_type: OntologyType,
    pub experienced: bool,
    answers: BTreeMap<QuestionId, RecordedAnswer>,
    pub notes: BTreeMap<QuestionId, String>,
}

impl EvaluationSession {
    pub fn new(ontology_id: impl Into<String>, ontology_type: OntologyType, experienced: bool) -> Self {
        EvaluationSession {
            ontology_id: ontology_id.into(),
            ontology_type,
            experienced,
            answers: BTreeMap::new(),
            notes: BTreeMap::new(),
        }
    }

    pub fn ontology_type(&self) -> OntologyType {
        self.ontology_type
    }

    /// The LExp covariate: 1 for an evaluator with vast experience.
    pub fn lexp(&self) -> u8 {
        u8::from(self.experienced)
    }

    pub fn answers(&self) -> &BTreeMap<QuestionId, RecordedAnswer> {
        &self.answers
    }

    pub fn grade(&self, q: QuestionId) -> Option<Grade> {
        self.answers.get(&q).map(|a| a.grade)
    }

    pub fn applicable(&self) -> Vec<QuestionId> {
        applicable_questions(self.ontology_type)
    }

    /// Q2 cannot be graded while Q1 records absent competencies.
    pub fn q2_locked(&self) -> bool {
        self.grade(QuestionId::Q1).is_some_and(Grade::is_zero)
    }

    /// Store a graded answer. On error the session is left untouched.
    pub fn record_answer(&mut self, q: QuestionId, input: AnswerInput) -> Result<Grade, QuestionnaireError> {
        let spec = q.spec();
        if !spec.applies_to(self.ontology_type) {
            return Err(QuestionnaireError::NotApplicable { question: q, ontology_type: self.ontology_type });
        }
        if q == QuestionId::Q2 && self.q2_locked() {
            return match input {
                AnswerInput::Leaf(0) => Ok(Grade::ZERO),
                _ => Err(QuestionnaireError::Q2Locked),
            };
        }
        let grade = grade_question(spec, &input)?;
        if q == QuestionId::Q1 {
            if grade.is_zero() {
                self.answers.insert(QuestionId::Q2, RecordedAnswer { input: AnswerInput::leaf(0), grade: Grade::ZERO });
            } else if self.q2_locked() {
                // Q2 was only ever forced; release it for a real grade.
                self.answers.remove(&QuestionId::Q2);
            }
        }
        self.answers.insert(q, RecordedAnswer { input, grade });
        Ok(grade)
    }

    pub fn clear_answer(&mut self, q: QuestionId) {
        if q == QuestionId::Q1 && self.q2_locked() {
            self.answers.remove(&QuestionId::Q2);
        }
        self.answers.remove(&q);
    }

    pub fn unanswered(&self) -> Vec<QuestionId> {
        self.applicable().into_iter().filter(|q| !self.answers.contains_key(q)).collect()
    }

    /// Answered grades belonging to `goal`.
    pub fn goal_grades(&self, goal: Goal) -> Vec<Grade> {
        goal.questions().filter_map(|q| self.grade(q)).collect()
    }

    pub fn is_complete(&self) -> bool {
        self.unanswered().is_empty()
    }
}

/// The nullity covariate Nl.
pub fn derive_nl(session: &EvaluationSession, policy: NlPolicy) -> u8 {
    let flagged = match policy {
        NlPolicy::Strict => !session.is_complete(),
        NlPolicy::GoalEmpty => Goal::ALL.iter().any(|&g| session.goal_grades(g).is_empty()),
    };
    u8::from(flagged)
}
