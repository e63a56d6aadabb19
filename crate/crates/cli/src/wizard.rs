//! Line-oriented questionnaire over any reader and writer.
//!
//! Every answer goes through the session rules, so the wizard never holds a
//! grade the library would reject. End of input stops the walk and yields
//! whatever was answered, flagged incomplete.

use std::io::{self, BufRead, Write};

use foca_core::questionnaire::{
    classify_hint, derive_nl, AnswerFile, AnswerInput, EvaluationSession, Goal, NlPolicy, OntologyType, QuestionId,
    QuestionSpec,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WizardOptions {
    pub goal_order: Vec<Goal>,
}

impl Default for WizardOptions {
    fn default() -> Self {
        WizardOptions { goal_order: Goal::ALL.to_vec() }
    }
}

impl WizardOptions {
    /// Goals named in `numbers` come first in that order; the rest follow
    /// in catalog order.
    pub fn with_order(numbers: &[u8]) -> Self {
        let mut goal_order: Vec<Goal> = Vec::new();
        for g in numbers.iter().filter_map(|&n| Goal::from_number(n)).chain(Goal::ALL) {
            if !goal_order.contains(&g) {
                goal_order.push(g);
            }
        }
        WizardOptions { goal_order }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WizardOutcome {
    pub file: AnswerFile,
    /// Nl under the strict policy, echoed to the evaluator.
    pub nl: u8,
}

struct EndOfInput;

enum Reply<T> {
    Value(T),
    Skip,
}

struct Prompter<'a, R, W> {
    input: R,
    out: &'a mut W,
}

impl<R: BufRead, W: Write> Prompter<'_, R, W> {
    fn ask(&mut self, prompt: &str) -> io::Result<Result<String, EndOfInput>> {
        write!(self.out, "{prompt}")?;
        self.out.flush()?;
        let mut line = String::new();
        if self.input.read_line(&mut line)? == 0 {
            writeln!(self.out)?;
            return Ok(Err(EndOfInput));
        }
        Ok(Ok(line.trim().to_string()))
    }

    /// Re-prompts until `parse` accepts the reply.
    fn ask_until<T>(
        &mut self,
        prompt: &str,
        mut parse: impl FnMut(&str) -> Result<T, String>,
    ) -> io::Result<Result<T, EndOfInput>> {
        loop {
            let line = match self.ask(prompt)? {
                Ok(l) => l,
                Err(e) => return Ok(Err(e)),
            };
            match parse(&line) {
                Ok(v) => return Ok(Ok(v)),
                Err(msg) => writeln!(self.out, "  {msg}")?,
            }
        }
    }
}

fn yes_no(s: &str) -> Result<bool, String> {
    match s.to_ascii_lowercase().as_str() {
        "y" | "yes" => Ok(true),
        "n" | "no" => Ok(false),
        _ => Err("answer y or n".to_string()),
    }
}

fn yes_no_skip(s: &str) -> Result<Reply<bool>, String> {
    if s.eq_ignore_ascii_case("skip") {
        return Ok(Reply::Skip);
    }
    yes_no(s).map(Reply::Value).map_err(|m| format!("{m} (or skip)"))
}

fn grade_reply(s: &str, allowed: &[u8]) -> Result<Reply<u8>, String> {
    if s.eq_ignore_ascii_case("skip") {
        return Ok(Reply::Skip);
    }
    let list = allowed.iter().map(u8::to_string).collect::<Vec<_>>().join(", ");
    match s.parse::<u8>() {
        Ok(g) if allowed.contains(&g) => Ok(Reply::Value(g)),
        _ => Err(format!("`{s}` is not allowed; choose one of {list} (or skip)")),
    }
}

fn parse_type(s: &str) -> Result<Reply<OntologyType>, String> {
    match s.to_ascii_lowercase().as_str() {
        "1" | "type1" => Ok(Reply::Value(OntologyType::DomainOrTask)),
        "2" | "type2" => Ok(Reply::Value(OntologyType::Application)),
        "?" => Ok(Reply::Skip),
        _ => Err("answer 1 or 2 (or ? for a hint)".to_string()),
    }
}

fn grade_list(grades: &[u8]) -> String {
    grades.iter().map(u8::to_string).collect::<Vec<_>>().join("/")
}

macro_rules! or_stop {
    ($e:expr, $done:expr) => {
        match $e? {
            Ok(v) => v,
            Err(EndOfInput) => return $done,
        }
    };
}

/// Run the questionnaire. I/O errors propagate; end of input does not.
pub fn run_wizard<R: BufRead, W: Write>(input: R, out: &mut W, options: &WizardOptions) -> io::Result<WizardOutcome> {
    let mut p = Prompter { input, out };
    let partial = |s: &EvaluationSession| Ok(finish(s, true));

    let mut session = EvaluationSession::new("", OntologyType::DomainOrTask, false);
    let id = or_stop!(p.ask("Ontology identifier: "), partial(&session));
    session.ontology_id = id;

    let ontology_type = loop {
        let reply = or_stop!(
            p.ask_until("Ontology type [1 = domain or task, 2 = application, ? = hint]: ", parse_type),
            partial(&session)
        );
        match reply {
            Reply::Value(t) => break t,
            Reply::Skip => {
                let text = or_stop!(p.ask("Describe the ontology in one line: "), partial(&session));
                let hint = classify_hint(&text);
                writeln!(
                    p.out,
                    "  hint: {} ({:?} confidence). {}",
                    hint.suggested.key(),
                    hint.confidence,
                    hint.rationale
                )?;
            }
        }
    };
    session = EvaluationSession::new(session.ontology_id, ontology_type, false);

    let experienced =
        or_stop!(p.ask_until("Does the evaluator have vast experience? [y/n]: ", yes_no), partial(&session));
    session.experienced = experienced;

    for &goal in &options.goal_order {
        writeln!(p.out)?;
        writeln!(p.out, "{goal}")?;
        for q in goal.questions() {
            let spec = q.spec();
            if !spec.applies_to(ontology_type) {
                continue;
            }
            writeln!(p.out)?;
            writeln!(p.out, "{q}. {}", spec.text)?;
            writeln!(p.out, "  How to verify: {}", spec.how_to_verify)?;
            if q == QuestionId::Q2 && session.q2_locked() {
                writeln!(p.out, "  Q2 set to 0: Q1 records that no competency questions exist.")?;
                continue;
            }
            let answer = or_stop!(ask_question(&mut p, spec), partial(&session));
            if let Some(input) = answer {
                session.record_answer(q, input).map_err(|e| io::Error::new(io::ErrorKind::InvalidData, e))?;
            }
        }
    }

    let outcome = finish(&session, false);
    writeln!(p.out)?;
    writeln!(p.out, "Nl (strict policy): {}", outcome.nl)?;
    let unanswered = session.unanswered();
    if !unanswered.is_empty() {
        let names: Vec<String> = unanswered.iter().map(ToString::to_string).collect();
        writeln!(p.out, "Unanswered: {}", names.join(", "))?;
    }
    Ok(outcome)
}

/// `Ok(None)` means the evaluator skipped the question.
fn ask_question<R: BufRead, W: Write>(
    p: &mut Prompter<'_, R, W>,
    spec: &QuestionSpec,
) -> io::Result<Result<Option<AnswerInput>, EndOfInput>> {
    if let Some(pre) = spec.precondition.filter(|_| spec.has_sub_questions()) {
        let exists = match p.ask_until(&format!("  {pre} [y/n/skip]: "), yes_no_skip)? {
            Ok(Reply::Value(b)) => b,
            Ok(Reply::Skip) => return Ok(Ok(None)),
            Err(e) => return Ok(Err(e)),
        };
        if !exists {
            return Ok(Ok(Some(AnswerInput::leaf(0))));
        }
        let mut subs = Vec::with_capacity(spec.sub_questions.len());
        for (i, sub) in spec.sub_questions.iter().enumerate() {
            let prompt = format!("  {}.{} {sub} [{}]: ", spec.id, i + 1, grade_list(spec.sub_grades));
            match p.ask_until(&prompt, |s| grade_reply(s, spec.sub_grades))? {
                Ok(Reply::Value(g)) => subs.push(g),
                Ok(Reply::Skip) => return Ok(Ok(None)),
                Err(e) => return Ok(Err(e)),
            }
        }
        return Ok(Ok(Some(AnswerInput::subs(subs))));
    }
    let prompt = format!("  Grade [{}]: ", grade_list(spec.leaf_grades));
    Ok(match p.ask_until(&prompt, |s| grade_reply(s, spec.leaf_grades))? {
        Ok(Reply::Value(g)) => Ok(Some(AnswerInput::leaf(g))),
        Ok(Reply::Skip) => Ok(None),
        Err(e) => Err(e),
    })
}

fn finish(session: &EvaluationSession, incomplete: bool) -> WizardOutcome {
    WizardOutcome { file: AnswerFile::from_session(session, incomplete), nl: derive_nl(session, NlPolicy::Strict) }
}
