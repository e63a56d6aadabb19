//! Goal means and the logistic quality formula.
//!
//! The quality of an ontology is the logistic of the linear predictor
//!
//! ```text
//! b1 + b2·Cov_S·Sb + b3·Cov_C·Co + b4·Cov_R·Re + b5·Cov_Cp·Cp + b6·LExp + b7·Nl
//! ```
//!
//! where each `Cov` is the mean grade of one goal and the role selector
//! (`Sb`, `Co`, `Re`, `Cp`) switches goals in or out for partial quality.
//! Goal 5 (human expression) has no coefficient: its mean is reported only.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::questionnaire::{derive_nl, EvaluationSession, Goal, Grade, NlPolicy, OntologyType};

/// Per-goal mean grades.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GoalMeans {
    pub cov_s: Grade,
    pub cov_c: Grade,
    pub cov_r: Grade,
    pub cov_cp: Grade,
    pub cov_h: Grade,
}

impl GoalMeans {
    pub fn get(&self, goal: Goal) -> Grade {
        match goal {
            Goal::Substitute => self.cov_s,
            Goal::OntologicalCommitments => self.cov_c,
            Goal::IntelligentReasoning => self.cov_r,
            Goal::EfficientComputation => self.cov_cp,
            Goal::HumanExpression => self.cov_h,
        }
    }

    pub fn zero() -> Self {
        GoalMeans {
            cov_s: Grade::ZERO,
            cov_c: Grade::ZERO,
            cov_r: Grade::ZERO,
            cov_cp: Grade::ZERO,
            cov_h: Grade::ZERO,
        }
    }
}

/// Mean grade per goal over the answered questions. Unanswered goals give 0.
pub fn goal_means(session: &EvaluationSession) -> GoalMeans {
    let mean = |g: Goal| Grade::mean(session.goal_grades(g)).unwrap_or(Grade::ZERO);
    GoalMeans {
        cov_s: mean(Goal::Substitute),
        cov_c: mean(Goal::OntologicalCommitments),
        cov_r: mean(Goal::IntelligentReasoning),
        cov_cp: mean(Goal::EfficientComputation),
        cov_h: mean(Goal::HumanExpression),
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScoringError {
    #[error("unknown role `{0}` (expected sb, co, re, cp, he, all or none)")]
    UnknownRole(String),
    #[error("expected 7 coefficients, got {0}")]
    CoefficientCount(usize),
    #[error("coefficient file: {0}")]
    CoefficientFile(String),
}

/// Which goals enter the formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoleSelector {
    pub sb: bool,
    pub co: bool,
    pub re: bool,
    pub cp: bool,
}

impl RoleSelector {
    pub const ALL: RoleSelector = RoleSelector { sb: true, co: true, re: true, cp: true };
    pub const NONE: RoleSelector = RoleSelector { sb: false, co: false, re: false, cp: false };

    pub fn is_total(self) -> bool {
        self == RoleSelector::ALL
    }

    pub fn selects(self, goal: Goal) -> bool {
        match goal {
            Goal::Substitute => self.sb,
            Goal::OntologicalCommitments => self.co,
            Goal::IntelligentReasoning => self.re,
            Goal::EfficientComputation => self.cp,
            Goal::HumanExpression => false,
        }
    }

    /// The selector for a partial evaluation of exactly one goal.
    pub fn only(goal: Goal) -> RoleSelector {
        RoleSelector {
            sb: goal == Goal::Substitute,
            co: goal == Goal::OntologicalCommitments,
            re: goal == Goal::IntelligentReasoning,
            cp: goal == Goal::EfficientComputation,
        }
    }

    fn flag(b: bool) -> f64 {
        if b {
            1.0
        } else {
            0.0
        }
    }
}

impl Default for RoleSelector {
    fn default() -> Self {
        RoleSelector::ALL
    }
}

/// Parses `all`, `none`, or a comma list of `sb`, `co`, `re`, `cp`, `he`.
impl FromStr for RoleSelector {
    type Err = ScoringError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut sel = RoleSelector::NONE;
        for tok in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            match tok.to_ascii_lowercase().as_str() {
                "all" => sel = RoleSelector::ALL,
                "none" | "he" => {}
                "sb" => sel.sb = true,
                "co" => sel.co = true,
                "re" => sel.re = true,
                "cp" => sel.cp = true,
                _ => return Err(ScoringError::UnknownRole(tok.to_string())),
            }
        }
        Ok(sel)
    }
}

impl fmt::Display for RoleSelector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_total() {
            return f.write_str("all");
        }
        let names: Vec<&str> = [(self.sb, "sb"), (self.co, "co"), (self.re, "re"), (self.cp, "cp")]
            .into_iter()
            .filter_map(|(on, n)| on.then_some(n))
            .collect();
        if names.is_empty() {
            f.write_str("none")
        } else {
            f.write_str(&names.join(","))
        }
    }
}

/// The seven coefficients of the linear predictor.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Coefficients {
    pub b1: f64,
    pub b2: f64,
    pub b3: f64,
    pub b4: f64,
    pub b5: f64,
    pub b6: f64,
    /// Effective coefficient on the binary Nl flag.
    pub b7: f64,
}

impl Coefficients {
    /// The published estimate for the Nl term is printed as -25 applied to
    /// `0.1 × Nl`; the effective coefficient on Nl is therefore -2.5.
    pub const PUBLISHED_NL_ESTIMATE: f64 = -25.0;

    pub const DESCRIPTIONS: [&'static str; 7] = ["Const", "Cov x Sb", "Cov x Co", "Cov x Re", "Cov x Cp", "LExp", "Nl"];

    pub fn from_slice(values: &[f64]) -> Result<Self, ScoringError> {
        match *values {
            [b1, b2, b3, b4, b5, b6, b7] => Ok(Coefficients { b1, b2, b3, b4, b5, b6, b7 }),
            _ => Err(ScoringError::CoefficientCount(values.len())),
        }
    }

    /// Accepts either `{"b1": .., ..., "b7": ..}` or a 7-element array.
    pub fn from_json(text: &str) -> Result<Self, ScoringError> {
        if let Ok(values) = serde_json::from_str::<Vec<f64>>(text) {
            return Coefficients::from_slice(&values);
        }
        serde_json::from_str(text).map_err(|e| ScoringError::CoefficientFile(e.to_string()))
    }

    pub fn to_array(self) -> [f64; 7] {
        [self.b1, self.b2, self.b3, self.b4, self.b5, self.b6, self.b7]
    }
}

impl Default for Coefficients {
    fn default() -> Self {
        Coefficients { b1: -0.44, b2: 0.03, b3: 0.02, b4: 0.01, b5: 0.02, b6: -0.66, b7: -2.5 }
    }
}

/// Covariate vector `[1, Cov_S·Sb, Cov_C·Co, Cov_R·Re, Cov_Cp·Cp, LExp, Nl]`.
pub fn design_row(m: &GoalMeans, sel: RoleSelector, lexp: u8, nl: u8) -> [f64; 7] {
    [
        1.0,
        m.cov_s.to_f64() * RoleSelector::flag(sel.sb),
        m.cov_c.to_f64() * RoleSelector::flag(sel.co),
        m.cov_r.to_f64() * RoleSelector::flag(sel.re),
        m.cov_cp.to_f64() * RoleSelector::flag(sel.cp),
        f64::from(lexp),
        f64::from(nl),
    ]
}

pub fn linear_predictor(m: &GoalMeans, sel: RoleSelector, lexp: u8, nl: u8, c: &Coefficients) -> f64 {
    design_row(m, sel, lexp, nl).iter().zip(c.to_array()).map(|(x, b)| x * b).sum()
}

/// Standard logistic, evaluated without overflow for large |x|.
pub fn logistic(x: f64) -> f64 {
    if x >= 0.0 {
        1.0 / (1.0 + (-x).exp())
    } else {
        let e = x.exp();
        e / (1.0 + e)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Term {
    pub name: &'static str,
    pub coefficient: f64,
    pub covariate: f64,
    pub contribution: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QualityScore {
    pub value: f64,
    pub linear_predictor: f64,
    pub breakdown: Vec<Term>,
    pub lexp: u8,
    pub nl_used: u8,
    pub selector: RoleSelector,
    pub warnings: Vec<String>,
}

/// Score from explicit inputs.
pub fn score_from_means(m: &GoalMeans, sel: RoleSelector, lexp: u8, nl: u8, c: &Coefficients) -> QualityScore {
    let row = design_row(m, sel, lexp, nl);
    let breakdown: Vec<Term> = Coefficients::DESCRIPTIONS
        .iter()
        .zip(row)
        .zip(c.to_array())
        .map(|((&name, covariate), coefficient)| Term {
            name,
            coefficient,
            covariate,
            contribution: covariate * coefficient,
        })
        .collect();
    let eta = linear_predictor(m, sel, lexp, nl, c);
    let mut warnings = Vec::new();
    if sel == RoleSelector::NONE {
        warnings.push(
            "no goal with a coefficient is selected (human expression only): the score does not depend on any grade"
                .to_string(),
        );
    }
    QualityScore { value: logistic(eta), linear_predictor: eta, breakdown, lexp, nl_used: nl, selector: sel, warnings }
}

pub fn quality(session: &EvaluationSession, sel: RoleSelector, c: &Coefficients, policy: NlPolicy) -> QualityScore {
    let nl = derive_nl(session, policy);
    score_from_means(&goal_means(session), sel, session.lexp(), nl, c)
}

/// Quality over all roles with the published coefficients and strict Nl.
pub fn total_quality(session: &EvaluationSession) -> QualityScore {
    quality(session, RoleSelector::ALL, &Coefficients::default(), NlPolicy::Strict)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GoalMeanRow {
    pub goal: u8,
    pub role: &'static str,
    pub mean: f64,
    pub exact: String,
    pub answered: usize,
}

/// Everything the `score` command prints.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScoreReport {
    pub ontology_id: String,
    pub ontology_type: OntologyType,
    pub nl_policy: NlPolicy,
    pub unanswered: Vec<String>,
    pub goal_means: Vec<GoalMeanRow>,
    pub coefficients: Coefficients,
    pub score: QualityScore,
}

impl ScoreReport {
    pub fn new(session: &EvaluationSession, sel: RoleSelector, c: &Coefficients, policy: NlPolicy) -> Self {
        let means = goal_means(session);
        let goal_means = Goal::ALL
            .iter()
            .map(|&g| {
                let mean = means.get(g);
                GoalMeanRow {
                    goal: g.number(),
                    role: g.role_name(),
                    mean: mean.to_f64(),
                    exact: mean.ratio().to_string(),
                    answered: session.goal_grades(g).len(),
                }
            })
            .collect();
        ScoreReport {
            ontology_id: session.ontology_id.clone(),
            ontology_type: session.ontology_type(),
            nl_policy: policy,
            unanswered: session.unanswered().iter().map(ToString::to_string).collect(),
            goal_means,
            coefficients: *c,
            score: quality(session, sel, c, policy),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let s = &self.score;
        let kind = if s.selector.is_total() { "Total quality" } else { "Partial quality" };
        let _ = writeln!(out, "Ontology: {} ({})", self.ontology_id, self.ontology_type.label());
        let _ = writeln!(out);
        let _ = writeln!(out, "{:<6} {:<26} {:>12} {:>9}", "Goal", "Role", "Mean", "Answered");
        for row in &self.goal_means {
            let _ = writeln!(out, "{:<6} {:<26} {:>12.6} {:>9}", row.goal, row.role, row.mean, row.answered);
        }
        let _ = writeln!(out);
        let _ =
            writeln!(out, "Roles: {}   LExp: {}   Nl: {} ({:?} policy)", s.selector, s.lexp, s.nl_used, self.nl_policy);
        if !self.unanswered.is_empty() {
            let _ = writeln!(out, "Unanswered: {}", self.unanswered.join(", "));
        }
        let _ = writeln!(out);
        let _ = writeln!(out, "{:<10} {:>12} {:>12} {:>14}", "Term", "Coefficient", "Covariate", "Contribution");
        for t in &s.breakdown {
            let _ =
                writeln!(out, "{:<10} {:>12.4} {:>12.6} {:>14.9}", t.name, t.coefficient, t.covariate, t.contribution);
        }
        let _ = writeln!(out, "Linear predictor: {:.9}", s.linear_predictor);
        let _ = writeln!(out, "{kind}: {:.9}", s.value);
        for w in &s.warnings {
            let _ = writeln!(out, "warning: {w}");
        }
        out
    }
}
