use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use foca_core::questionnaire::{NlPolicy, OntologyType};

#[derive(Debug, Parser)]
#[command(name = "foca", version, about = "Questionnaire-based ontology quality evaluation")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the questions grouped by goal.
    Questions(QuestionsArgs),
    /// Answer the questionnaire interactively and write an answer file.
    Evaluate(EvaluateArgs),
    /// Compute total or partial quality from an answer file.
    Score(ScoreArgs),
    /// Extract advisory evidence from a Turtle ontology.
    Inspect(InspectArgs),
    /// Fit the beta regression to a dataset or simulated data.
    Fit(FitArgs),
    /// Score plus every single-role partial, with optional file evidence.
    Report(ReportArgs),
}

#[derive(Debug, Args)]
pub struct QuestionsArgs {
    /// Mark the question that does not apply to this ontology type.
    #[arg(long = "type", value_parser = parse_type)]
    pub ontology_type: Option<OntologyType>,
    /// Show only this goal (1-5).
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=5))]
    pub goal: Option<u8>,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct EvaluateArgs {
    /// Where to write the answer file.
    #[arg(long, short)]
    pub output: PathBuf,
    /// Goal order as a comma list, e.g. `5,4,3,2,1`.
    #[arg(long, value_delimiter = ',', value_parser = clap::value_parser!(u8).range(1..=5))]
    pub goal_order: Vec<u8>,
}

#[derive(Debug, Args, Clone)]
pub struct CoefficientArgs {
    /// All seven coefficients b1..b7 as a comma list.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, conflicts_with = "coef_file")]
    pub coefficients: Option<Vec<f64>>,
    /// JSON coefficient file (array of 7 or an object b1..b7). Defaults to
    /// `$FOCA_COEFFICIENTS` when set.
    #[arg(long)]
    pub coef_file: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ScoreArgs {
    pub answers: PathBuf,
    /// `all`, `none`, or a comma list of sb, co, re, cp (he selects nothing).
    #[arg(long, default_value = "all")]
    pub roles: String,
    #[arg(long, value_parser = parse_policy, default_value = "strict")]
    pub nl_policy: NlPolicy,
    #[command(flatten)]
    pub coefficients: CoefficientArgs,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct InspectArgs {
    pub ontology: PathBuf,
    /// Namespace IRI owned by the ontology; repeat for several.
    #[arg(long = "own-ns", required = true)]
    pub own_ns: Vec<String>,
    /// Copy this answer file with the suggestions added as notes.
    #[arg(long)]
    pub merge: Option<PathBuf>,
    /// Destination of the merged copy (default: `<answers>.inspected.json`).
    #[arg(long, requires = "merge")]
    pub merge_output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct FitArgs {
    /// Dataset with header `y,cov_s,cov_c,cov_r,cov_cp,lexp,nl`.
    #[arg(required_unless_present = "simulate", conflicts_with = "simulate")]
    pub dataset: Option<PathBuf>,
    /// Simulate this many observations from the published coefficients.
    #[arg(long)]
    pub simulate: Option<usize>,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Precision used for simulation.
    #[arg(long, default_value_t = 30.0)]
    pub phi: f64,
    /// Write the simulated dataset here.
    #[arg(long, requires = "simulate")]
    pub write_data: Option<PathBuf>,
    /// Write `index,residual` pairs here.
    #[arg(long)]
    pub residuals: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    pub answers: PathBuf,
    #[arg(long, value_parser = parse_policy, default_value = "strict")]
    pub nl_policy: NlPolicy,
    #[command(flatten)]
    pub coefficients: CoefficientArgs,
    /// Ontology file to inspect alongside the scores.
    #[arg(long, requires = "own_ns")]
    pub ttl: Option<PathBuf>,
    #[arg(long = "own-ns")]
    pub own_ns: Vec<String>,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

fn parse_type(s: &str) -> Result<OntologyType, String> {
    s.parse().map_err(|e: foca_core::questionnaire::QuestionnaireError| e.to_string())
}

fn parse_policy(s: &str) -> Result<NlPolicy, String> {
    s.parse()
}
