use std::fmt::Write as _;
use std::fs;
use std::io::{BufRead, Write};
use std::path::{Path, PathBuf};

use foca_core::betareg::{self, FitReport, Observation};
use foca_core::inspect::{parse_turtle, suggest_grades, EvidenceReport, OwnNamespaces};
use foca_core::questionnaire::{AnswerFile, EvaluationSession, Goal, OntologyType, QuestionId};
use foca_core::scoring::{quality, Coefficients, RoleSelector, ScoreReport};
use serde::Serialize;

use crate::args::{
    CoefficientArgs, Command, EvaluateArgs, FitArgs, Format, InspectArgs, QuestionsArgs, ReportArgs, ScoreArgs,
};
use crate::error::CliError;
use crate::wizard::{run_wizard, WizardOptions};

/// Process-level inputs that are not command-line flags.
#[derive(Debug, Clone, Default)]
pub struct Environment {
    /// Coefficient file named by `FOCA_COEFFICIENTS`.
    pub coefficients_file: Option<PathBuf>,
}

impl Environment {
    pub fn from_process() -> Self {
        Environment { coefficients_file: std::env::var_os("FOCA_COEFFICIENTS").map(PathBuf::from) }
    }
}

pub fn run<R: BufRead, W: Write>(command: &Command, env: &Environment, input: R, out: &mut W) -> Result<(), CliError> {
    match command {
        Command::Questions(a) => emit(out, &questions(a)),
        Command::Evaluate(a) => evaluate(a, input, out),
        Command::Score(a) => emit(out, &score(a, env)?),
        Command::Inspect(a) => emit(out, &inspect(a)?),
        Command::Fit(a) => emit(out, &fit(a)?),
        Command::Report(a) => emit(out, &report(a, env)?),
    }
}

fn emit<W: Write>(out: &mut W, text: &str) -> Result<(), CliError> {
    out.write_all(text.as_bytes())?;
    out.flush()?;
    Ok(())
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::io(path, e))
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("output serializes");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct QuestionView {
    id: QuestionId,
    goal: u8,
    role: &'static str,
    metric: &'static str,
    text: &'static str,
    precondition: Option<&'static str>,
    sub_questions: &'static [&'static str],
    leaf_grades: &'static [u8],
    sub_grades: &'static [u8],
    applicable_to: Vec<OntologyType>,
    how_to_verify: &'static str,
}

pub fn questions(a: &QuestionsArgs) -> String {
    let goals: Vec<Goal> = Goal::ALL.into_iter().filter(|g| a.goal.is_none_or(|n| g.number() == n)).collect();
    if a.format == Format::Json {
        let views: Vec<QuestionView> = goals
            .iter()
            .flat_map(|g| g.questions())
            .map(|q| {
                let s = q.spec();
                QuestionView {
                    id: q,
                    goal: s.goal.number(),
                    role: s.goal.role_name(),
                    metric: s.metric.name(),
                    text: s.text,
                    precondition: s.precondition,
                    sub_questions: s.sub_questions,
                    leaf_grades: s.leaf_grades,
                    sub_grades: s.sub_grades,
                    applicable_to: OntologyType::ALL.into_iter().filter(|&t| s.applies_to(t)).collect(),
                    how_to_verify: s.how_to_verify,
                }
            })
            .collect();
        return to_json(&views);
    }
    let mut out = String::new();
    for g in goals {
        let _ = writeln!(out, "{g}");
        for q in g.questions() {
            let s = q.spec();
            let scope = match a.ontology_type {
                Some(t) if !s.applies_to(t) => format!("  [not applicable to {}]", t.key()),
                Some(_) => String::new(),
                None => OntologyType::ALL
                    .into_iter()
                    .find(|&t| !s.applies_to(t))
                    .map(|t| format!("  [not applicable to {}]", t.key()))
                    .unwrap_or_default(),
            };
            let _ = writeln!(out, "  {q} ({}){scope}", s.metric.name());
            let _ = writeln!(out, "    {}", s.text);
            if let Some(pre) = s.precondition {
                let _ = writeln!(out, "    First: {pre} (no records grade 0)");
            }
            for (i, sub) in s.sub_questions.iter().enumerate() {
                let _ = writeln!(out, "    {q}.{} {sub}", i + 1);
            }
            let grades = if s.has_sub_questions() { s.sub_grades } else { s.leaf_grades };
            let list: Vec<String> = grades.iter().map(u8::to_string).collect();
            let _ = writeln!(out, "    Grades: {}", list.join(", "));
            let _ = writeln!(out, "    How to verify: {}", s.how_to_verify);
        }
        let _ = writeln!(out);
    }
    out
}

fn evaluate<R: BufRead, W: Write>(a: &EvaluateArgs, input: R, out: &mut W) -> Result<(), CliError> {
    let outcome = run_wizard(input, out, &WizardOptions::with_order(&a.goal_order))?;
    write(&a.output, &outcome.file.to_json())?;
    let state = if outcome.file.incomplete { "partial answer file (input ended early)" } else { "answer file" };
    writeln!(out, "Wrote {state} to {}", a.output.display())?;
    Ok(())
}

/// Precedence: `--coefficients`, then `--coef-file`, then the environment,
/// then the built-in defaults.
pub fn resolve_coefficients(a: &CoefficientArgs, env: &Environment) -> Result<Coefficients, CliError> {
    if let Some(values) = &a.coefficients {
        return Ok(Coefficients::from_slice(values)?);
    }
    match a.coef_file.as_ref().or(env.coefficients_file.as_ref()) {
        Some(path) => Coefficients::from_json(&read(path)?).map_err(|e| CliError::in_file(path, e)),
        None => Ok(Coefficients::default()),
    }
}

fn load_session(path: &Path) -> Result<EvaluationSession, CliError> {
    let file = AnswerFile::from_json(&read(path)?).map_err(|e| CliError::in_file(path, e))?;
    file.to_session().map_err(|e| CliError::in_file(path, e))
}

fn score(a: &ScoreArgs, env: &Environment) -> Result<String, CliError> {
    let sel: RoleSelector = a.roles.parse()?;
    let c = resolve_coefficients(&a.coefficients, env)?;
    let report = ScoreReport::new(&load_session(&a.answers)?, sel, &c, a.nl_policy);
    Ok(match a.format {
        Format::Text => report.render_text(),
        Format::Json => report.to_json(),
    })
}

fn evidence(path: &Path, own_ns: &[String]) -> Result<EvidenceReport, CliError> {
    let own = OwnNamespaces::new(own_ns)?;
    let doc = parse_turtle(&read(path)?, &path.display().to_string()).map_err(|e| CliError::in_file(path, e))?;
    Ok(suggest_grades(&doc, &own))
}

fn merged_path(answers: &Path) -> PathBuf {
    let stem = answers.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    answers.with_file_name(format!("{stem}.inspected.json"))
}

fn inspect(a: &InspectArgs) -> Result<String, CliError> {
    let report = evidence(&a.ontology, &a.own_ns)?;
    let mut text = match a.format {
        Format::Text => report.render_text(),
        Format::Json => report.to_json(),
    };
    if let Some(answers) = &a.merge {
        let file = AnswerFile::from_json(&read(answers)?).map_err(|e| CliError::in_file(answers, e))?;
        let dest = a.merge_output.clone().unwrap_or_else(|| merged_path(answers));
        write(&dest, &report.annotate(&file).to_json())?;
        if a.format == Format::Text {
            let _ = writeln!(text, "\nSuggestions added as notes to {}", dest.display());
        }
    }
    Ok(text)
}

fn fit(a: &FitArgs) -> Result<String, CliError> {
    let data: Vec<Observation> = match (&a.dataset, a.simulate) {
        (Some(path), _) => {
            betareg::read_dataset(&read(path)?).map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))?
        }
        (None, Some(n)) => {
            let design = betareg::synthetic_design(n, a.seed);
            let data = betareg::simulate(&Coefficients::default().to_array(), a.phi, &design, a.seed.wrapping_add(1))?;
            if let Some(path) = &a.write_data {
                write(path, &betareg::write_dataset(&data))?;
            }
            data
        }
        (None, None) => return Err(CliError::Validation("give a dataset or --simulate N".into())),
    };
    let fit = betareg::fit(&data, None)?;
    let report = FitReport::new(&fit, &data);
    if let Some(path) = &a.residuals {
        write(path, &report.residuals.to_csv())?;
    }
    Ok(match a.format {
        Format::Text => report.render_text(),
        Format::Json => report.to_json(),
    })
}

#[derive(Serialize)]
struct PartialRow {
    goal: u8,
    role: &'static str,
    value: f64,
}

#[derive(Serialize)]
struct FullReport {
    score: ScoreReport,
    partials: Vec<PartialRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    evidence: Option<EvidenceReport>,
}

fn report(a: &ReportArgs, env: &Environment) -> Result<String, CliError> {
    let c = resolve_coefficients(&a.coefficients, env)?;
    let session = load_session(&a.answers)?;
    let score = ScoreReport::new(&session, RoleSelector::ALL, &c, a.nl_policy);
    let partials: Vec<PartialRow> = Goal::ALL
        .into_iter()
        .filter(|&g| g != Goal::HumanExpression)
        .map(|g| PartialRow {
            goal: g.number(),
            role: g.role_name(),
            value: quality(&session, RoleSelector::only(g), &c, a.nl_policy).value,
        })
        .collect();
    let evidence = a.ttl.as_deref().map(|p| evidence(p, &a.own_ns)).transpose()?;
    let full = FullReport { score, partials, evidence };
    if a.format == Format::Json {
        return Ok(to_json(&full));
    }
    let mut out = full.score.render_text();
    let _ = writeln!(out);
    let _ = writeln!(out, "Single-role partial quality");
    for p in &full.partials {
        let _ = writeln!(out, "  {:<2} {:<26} {:.9}", p.goal, p.role, p.value);
    }
    let _ = writeln!(out, "  5  {:<26} not scored (no role selector)", Goal::HumanExpression.role_name());
    if let Some(ev) = &full.evidence {
        let _ = writeln!(out);
        out.push_str(&ev.render_text());
    }
    Ok(out)
}
