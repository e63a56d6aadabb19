//! Lexical evidence for the questions a file can partly answer.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::Serialize;

use super::document::{
    local_name, namespace_of, Term, TripleDocument, DC, DCTERMS, OBO, OWL, RDF, RDFS, RDF_TYPE, SKOS, XSD,
};
use super::InspectError;
use crate::questionnaire::{AnswerFile, QuestionId};

/// Measured ratio in `[0, 1]` to a rubric grade.
pub fn threshold_grade(c: f64) -> u8 {
    if c >= 0.95 {
        100
    } else if c >= 0.6 {
        75
    } else if c >= 0.3 {
        50
    } else if c > 0.0 {
        25
    } else {
        0
    }
}

/// IRIs that decide which subjects are terms and what counts as annotation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VocabularyConfig {
    pub class_types: BTreeSet<String>,
    pub property_types: BTreeSet<String>,
    pub annotation_predicates: BTreeSet<String>,
    pub label_predicates: BTreeSet<String>,
}

impl Default for VocabularyConfig {
    fn default() -> Self {
        let set = |items: &[String]| items.iter().cloned().collect::<BTreeSet<String>>();
        VocabularyConfig {
            class_types: set(&[format!("{OWL}Class"), format!("{RDFS}Class")]),
            property_types: set(&[
                format!("{OWL}ObjectProperty"),
                format!("{OWL}DatatypeProperty"),
                format!("{OWL}AnnotationProperty"),
                format!("{RDF}Property"),
            ]),
            annotation_predicates: set(&[
                format!("{RDFS}comment"),
                format!("{SKOS}definition"),
                format!("{DC}description"),
                format!("{DCTERMS}description"),
                format!("{OBO}IAO_0000115"),
            ]),
            label_predicates: set(&[format!("{RDFS}label"), format!("{SKOS}prefLabel")]),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TermKind {
    Class,
    Property,
}

/// Subjects typed as a class or property, in IRI order. A subject typed as
/// both is reported as a class.
pub fn declared_terms(doc: &TripleDocument, config: &VocabularyConfig) -> BTreeMap<Term, TermKind> {
    let mut out = BTreeMap::new();
    for t in doc.triples.iter().filter(|t| t.predicate == RDF_TYPE) {
        let Some(ty) = t.object.iri() else { continue };
        if config.class_types.contains(ty) {
            out.insert(t.subject.clone(), TermKind::Class);
        } else if config.property_types.contains(ty) {
            out.entry(t.subject.clone()).or_insert(TermKind::Property);
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Coverage {
    pub annotated: usize,
    pub total: usize,
    pub ratio: f64,
}

pub fn annotation_coverage(doc: &TripleDocument, config: &VocabularyConfig) -> Coverage {
    let terms = declared_terms(doc, config);
    let annotated: BTreeSet<&Term> = doc
        .triples
        .iter()
        .filter(|t| config.annotation_predicates.contains(&t.predicate) && terms.contains_key(&t.subject))
        .map(|t| &t.subject)
        .collect();
    let (annotated, total) = (annotated.len(), terms.len());
    Coverage { annotated, total, ratio: if total == 0 { 0.0 } else { annotated as f64 / total as f64 } }
}

/// The ontology's own namespaces. Never empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OwnNamespaces(Vec<String>);

impl OwnNamespaces {
    pub fn new<I, S>(namespaces: I) -> Result<Self, InspectError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let v: Vec<String> = namespaces.into_iter().map(Into::into).filter(|s: &String| !s.is_empty()).collect();
        if v.is_empty() {
            return Err(InspectError::NoOwnNamespace);
        }
        Ok(OwnNamespaces(v))
    }

    pub fn as_slice(&self) -> &[String] {
        &self.0
    }

    pub fn owns(&self, iri: &str) -> bool {
        self.0.iter().any(|ns| iri.starts_with(ns.as_str()))
    }
}

const BUILT_IN: [&str; 4] = [RDF, RDFS, OWL, XSD];

fn is_built_in(iri: &str) -> bool {
    BUILT_IN.iter().any(|ns| iri.starts_with(ns))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReuseEvidence {
    /// Objects of `owl:imports`, in document order.
    pub imports: Vec<String>,
    /// IRI occurrences outside both the own and the built-in namespaces.
    pub foreign_term_count: usize,
    pub foreign_namespaces: BTreeSet<String>,
    pub suggested_grade: u8,
}

pub fn reuse_evidence(doc: &TripleDocument, own: &OwnNamespaces) -> ReuseEvidence {
    let import = format!("{OWL}imports");
    let imports: Vec<String> = doc
        .triples
        .iter()
        .filter(|t| t.predicate == import)
        .filter_map(|t| t.object.iri().map(str::to_string))
        .collect();
    let mut foreign_term_count = 0;
    let mut foreign_namespaces = BTreeSet::new();
    for t in &doc.triples {
        for iri in [t.subject.iri(), Some(t.predicate.as_str()), t.object.iri()].into_iter().flatten() {
            if !own.owns(iri) && !is_built_in(iri) {
                foreign_term_count += 1;
                foreign_namespaces.insert(namespace_of(iri).to_string());
            }
        }
    }
    let reused = !imports.is_empty() || foreign_term_count > 0;
    ReuseEvidence { imports, foreign_term_count, foreign_namespaces, suggested_grade: if reused { 100 } else { 0 } }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Convention {
    UpperCamel,
    LowerCamel,
    SnakeCase,
    KebabCase,
}

impl Convention {
    const ORDER: [Convention; 4] =
        [Convention::UpperCamel, Convention::LowerCamel, Convention::SnakeCase, Convention::KebabCase];

    pub fn name(self) -> &'static str {
        match self {
            Convention::UpperCamel => "UpperCamel",
            Convention::LowerCamel => "lowerCamel",
            Convention::SnakeCase => "snake_case",
            Convention::KebabCase => "kebab-case",
        }
    }
}

/// Conventions a name is consistent with. A single lowercase word fits
/// three of them.
pub fn conventions_of(name: &str) -> BTreeSet<Convention> {
    let mut out = BTreeSet::new();
    let Some(first) = name.chars().next() else { return out };
    let has_upper = name.chars().any(char::is_uppercase);
    let alnum = |extra: char| name.chars().all(|c| c.is_alphanumeric() || c == extra);
    if !name.contains(['_', '-']) && name.chars().all(char::is_alphanumeric) {
        if first.is_uppercase() {
            out.insert(Convention::UpperCamel);
        } else if first.is_lowercase() {
            out.insert(Convention::LowerCamel);
        }
    }
    if !has_upper && first.is_lowercase() {
        if alnum('_') {
            out.insert(Convention::SnakeCase);
        }
        if alnum('-') {
            out.insert(Convention::KebabCase);
        }
    }
    out
}

/// Words of an identifier, split at separators, case humps and
/// letter/digit boundaries.
pub fn segments(name: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut prev: Option<char> = None;
    for c in name.chars() {
        if !c.is_alphanumeric() {
            if !cur.is_empty() {
                out.push(std::mem::take(&mut cur));
            }
            prev = None;
            continue;
        }
        let boundary = match prev {
            Some(p) => (p.is_lowercase() && c.is_uppercase()) || (p.is_ascii_digit() != c.is_ascii_digit()),
            None => false,
        };
        if boundary && !cur.is_empty() {
            out.push(std::mem::take(&mut cur));
        }
        cur.push(c);
        prev = Some(c);
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum Script {
    Latin,
    Greek,
    Cyrillic,
    Arabic,
    Hebrew,
    Cjk,
    Other,
}

fn script_of(c: char) -> Option<Script> {
    if !c.is_alphabetic() {
        return None;
    }
    Some(match c as u32 {
        0x41..=0x5A | 0x61..=0x7A | 0xC0..=0x24F | 0x1E00..=0x1EFF => Script::Latin,
        0x370..=0x3FF | 0x1F00..=0x1FFF => Script::Greek,
        0x400..=0x52F => Script::Cyrillic,
        0x590..=0x5FF => Script::Hebrew,
        0x600..=0x6FF => Script::Arabic,
        0x3040..=0x30FF | 0x4E00..=0x9FFF | 0xAC00..=0xD7AF => Script::Cjk,
        _ => Script::Other,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum NamingFlag {
    TooShort,
    Abbreviation,
    DigitSegment,
    MixedScripts,
    ConventionMismatch,
}

impl NamingFlag {
    pub fn describe(self) -> &'static str {
        match self {
            NamingFlag::TooShort => "two characters or fewer",
            NamingFlag::Abbreviation => "looks like an abbreviation of another term",
            NamingFlag::DigitSegment => "contains a digits-only segment",
            NamingFlag::MixedScripts => "mixes writing scripts",
            NamingFlag::ConventionMismatch => "departs from the dominant case convention",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FlaggedName {
    pub iri: String,
    pub local_name: String,
    pub kind: TermKind,
    pub flags: Vec<NamingFlag>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NamingReport {
    pub total: usize,
    pub flagged: Vec<FlaggedName>,
    pub class_convention: Option<Convention>,
    pub property_convention: Option<Convention>,
    pub violation_ratio: f64,
    pub suggested_grade: u8,
    pub caveat: Option<String>,
}

/// Abbreviations are short single words that are a strict prefix of the
/// first word of another term, at least two letters longer.
fn is_abbreviation(name: &str, others: &[&str]) -> bool {
    let n = name.chars().count();
    if !(3..=4).contains(&n) || segments(name).len() != 1 {
        return false;
    }
    let lower = name.to_lowercase();
    others.iter().any(|o| {
        segments(o).first().is_some_and(|w| {
            let w = w.to_lowercase();
            w.chars().count() >= n + 2 && w.starts_with(&lower)
        })
    })
}

fn dominant(names: &[&str]) -> Option<Convention> {
    let mut counts: BTreeMap<Convention, usize> = BTreeMap::new();
    for n in names {
        for c in conventions_of(n) {
            *counts.entry(c).or_default() += 1;
        }
    }
    // Ties go to the earlier convention in `ORDER`.
    Convention::ORDER
        .into_iter()
        .filter(|c| counts.contains_key(c))
        .max_by(|a, b| counts[a].cmp(&counts[b]).then_with(|| b.cmp(a)))
}

pub fn naming_report(doc: &TripleDocument) -> NamingReport {
    naming_report_with(doc, &VocabularyConfig::default())
}

pub fn naming_report_with(doc: &TripleDocument, config: &VocabularyConfig) -> NamingReport {
    let terms: Vec<(String, String, TermKind)> = declared_terms(doc, config)
        .into_iter()
        .filter_map(|(t, k)| t.iri().map(|i| (i.to_string(), local_name(i).to_string(), k)))
        .filter(|(_, n, _)| !n.is_empty())
        .collect();
    let names: Vec<&str> = terms.iter().map(|(_, n, _)| n.as_str()).collect();

    let mut lexical: Vec<Vec<NamingFlag>> = Vec::with_capacity(terms.len());
    for (i, (_, name, _)) in terms.iter().enumerate() {
        let mut flags = Vec::new();
        if name.chars().count() <= 2 {
            flags.push(NamingFlag::TooShort);
        }
        let others: Vec<&str> = names.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, n)| *n).collect();
        if is_abbreviation(name, &others) {
            flags.push(NamingFlag::Abbreviation);
        }
        if segments(name).iter().any(|s| s.chars().all(|c| c.is_ascii_digit())) {
            flags.push(NamingFlag::DigitSegment);
        }
        if name.chars().filter_map(script_of).collect::<BTreeSet<_>>().len() > 1 {
            flags.push(NamingFlag::MixedScripts);
        }
        lexical.push(flags);
    }

    let group_convention = |kind: TermKind| {
        let clean: Vec<&str> = terms
            .iter()
            .zip(&lexical)
            .filter(|((_, _, k), f)| *k == kind && f.is_empty())
            .map(|((_, n, _), _)| n.as_str())
            .collect();
        dominant(&clean)
    };
    let class_convention = group_convention(TermKind::Class);
    let property_convention = group_convention(TermKind::Property);

    let mut flagged = Vec::new();
    for ((iri, name, kind), mut flags) in terms.iter().cloned().zip(lexical) {
        let dom = match kind {
            TermKind::Class => class_convention,
            TermKind::Property => property_convention,
        };
        if dom.is_some_and(|d| !conventions_of(&name).contains(&d)) {
            flags.push(NamingFlag::ConventionMismatch);
        }
        if !flags.is_empty() {
            flagged.push(FlaggedName { iri, local_name: name, kind, flags });
        }
    }

    let total = terms.len();
    let (violation_ratio, suggested_grade, caveat) = if total == 0 {
        (0.0, 0, Some("insufficient evidence: no declared classes or properties".to_string()))
    } else {
        let r = flagged.len() as f64 / total as f64;
        (r, threshold_grade(1.0 - r), None)
    };
    NamingReport { total, flagged, class_convention, property_convention, violation_ratio, suggested_grade, caveat }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MatchKind {
    /// Same label literal (lexical form and language).
    ExactLabel,
    /// Same local name after case folding and dropping `_`, `-` and spaces.
    NormalizedName,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RedundancyCandidate {
    pub first: String,
    pub second: String,
    pub kind: MatchKind,
    pub shared: String,
}

fn normalize_name(name: &str) -> String {
    name.chars().filter(|c| !matches!(c, '_' | '-' | ' ')).flat_map(char::to_lowercase).collect()
}

pub fn redundancy_candidates(doc: &TripleDocument) -> Vec<RedundancyCandidate> {
    redundancy_candidates_with(doc, &VocabularyConfig::default())
}

pub fn redundancy_candidates_with(doc: &TripleDocument, config: &VocabularyConfig) -> Vec<RedundancyCandidate> {
    let terms: Vec<String> =
        declared_terms(doc, config).into_keys().filter_map(|t| t.iri().map(str::to_string)).collect();
    let term_set: BTreeSet<&str> = terms.iter().map(String::as_str).collect();

    let mut pairs: BTreeMap<(String, String), (MatchKind, String)> = BTreeMap::new();
    let mut add = |a: &str, b: &str, kind: MatchKind, shared: String| {
        let key = if a < b { (a.to_string(), b.to_string()) } else { (b.to_string(), a.to_string()) };
        pairs
            .entry(key)
            .and_modify(|e| {
                if kind < e.0 {
                    *e = (kind, shared.clone());
                }
            })
            .or_insert((kind, shared));
    };

    let mut by_label: BTreeMap<(String, Option<String>), BTreeSet<&str>> = BTreeMap::new();
    for t in doc.triples.iter().filter(|t| config.label_predicates.contains(&t.predicate)) {
        if let (Some(s), Some(l)) = (t.subject.iri(), t.object.literal()) {
            if term_set.contains(s) {
                by_label.entry((l.lexical.clone(), l.language.clone())).or_default().insert(s);
            }
        }
    }
    let mut by_name: BTreeMap<String, BTreeSet<&str>> = BTreeMap::new();
    for t in &terms {
        let key = normalize_name(local_name(t));
        if !key.is_empty() {
            by_name.entry(key).or_default().insert(t);
        }
    }
    for ((label, _), group) in &by_label {
        let g: Vec<&str> = group.iter().copied().collect();
        for i in 0..g.len() {
            for j in i + 1..g.len() {
                add(g[i], g[j], MatchKind::ExactLabel, label.clone());
            }
        }
    }
    for (key, group) in &by_name {
        let g: Vec<&str> = group.iter().copied().collect();
        for i in 0..g.len() {
            for j in i + 1..g.len() {
                add(g[i], g[j], MatchKind::NormalizedName, key.clone());
            }
        }
    }
    let mut out: Vec<RedundancyCandidate> = pairs
        .into_iter()
        .map(|((first, second), (kind, shared))| RedundancyCandidate { first, second, kind, shared })
        .collect();
    out.sort_by(|a, b| a.kind.cmp(&b.kind).then_with(|| (&a.first, &a.second).cmp(&(&b.first, &b.second))));
    out
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Measure {
    pub name: String,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvidenceEntry {
    pub question: QuestionId,
    pub measured: Vec<Measure>,
    pub suggested_grade: u8,
    pub rationale: String,
    pub caveat: Option<String>,
    pub advisory: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ManualCheck {
    pub question: QuestionId,
    pub instruction: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvidenceReport {
    pub source: String,
    pub triples: usize,
    pub entries: Vec<EvidenceEntry>,
    pub manual_checks: Vec<ManualCheck>,
    pub coverage: Coverage,
    pub reuse: ReuseEvidence,
    pub naming: NamingReport,
    pub redundancy: Vec<RedundancyCandidate>,
    pub notes: Vec<String>,
}

fn measure(name: &str, value: f64) -> Measure {
    Measure { name: name.to_string(), value }
}

/// Q8 from redundancy candidates: none gives 100; otherwise the share of
/// terms outside every candidate pair goes through the threshold table,
/// capped at 75 since some redundancy exists.
fn redundancy_grade(candidates: &[RedundancyCandidate], total: usize) -> (u8, f64) {
    if candidates.is_empty() {
        return (100, 1.0);
    }
    let involved: BTreeSet<&str> = candidates.iter().flat_map(|c| [c.first.as_str(), c.second.as_str()]).collect();
    let clean = 1.0 - involved.len() as f64 / total.max(1) as f64;
    (threshold_grade(clean).min(75), clean)
}

pub fn suggest_grades(doc: &TripleDocument, own: &OwnNamespaces) -> EvidenceReport {
    suggest_grades_with(doc, own, &VocabularyConfig::default())
}

pub fn suggest_grades_with(doc: &TripleDocument, own: &OwnNamespaces, config: &VocabularyConfig) -> EvidenceReport {
    let coverage = annotation_coverage(doc, config);
    let reuse = reuse_evidence(doc, own);
    let naming = naming_report_with(doc, config);
    let redundancy = redundancy_candidates_with(doc, config);
    let total_terms = declared_terms(doc, config).len();
    let (q8, q8_clean) = redundancy_grade(&redundancy, total_terms);

    let entries = vec![
        EvidenceEntry {
            question: QuestionId::Q3,
            measured: vec![
                measure("imports", reuse.imports.len() as f64),
                measure("foreign_terms", reuse.foreign_term_count as f64),
                measure("foreign_namespaces", reuse.foreign_namespaces.len() as f64),
            ],
            suggested_grade: reuse.suggested_grade,
            rationale: if reuse.suggested_grade == 100 {
                format!(
                    "{} import(s) and {} use(s) of terms from {} foreign namespace(s)",
                    reuse.imports.len(),
                    reuse.foreign_term_count,
                    reuse.foreign_namespaces.len()
                )
            } else {
                "no imports and no terms outside the own and built-in namespaces".to_string()
            },
            caveat: None,
            advisory: true,
        },
        EvidenceEntry {
            question: QuestionId::Q8,
            measured: vec![measure("candidate_pairs", redundancy.len() as f64), measure("clean_share", q8_clean)],
            suggested_grade: q8,
            rationale: if redundancy.is_empty() {
                "no terms share a label or a normalized local name".to_string()
            } else {
                format!("{} candidate pair(s) share a label or normalized local name", redundancy.len())
            },
            caveat: Some("lexical comparison only; synonyms with different names are not detected".to_string()),
            advisory: true,
        },
        EvidenceEntry {
            question: QuestionId::Q12,
            measured: vec![
                measure("names", naming.total as f64),
                measure("flagged", naming.flagged.len() as f64),
                measure("violation_ratio", naming.violation_ratio),
            ],
            suggested_grade: naming.suggested_grade,
            rationale: format!(
                "{} of {} local names flagged; dominant convention: classes {}, properties {}",
                naming.flagged.len(),
                naming.total,
                naming.class_convention.map_or("none", Convention::name),
                naming.property_convention.map_or("none", Convention::name)
            ),
            caveat: Some(naming.caveat.clone().unwrap_or_else(|| {
                "spelling and language correctness are not checked; the flags are a proxy".to_string()
            })),
            advisory: true,
        },
        EvidenceEntry {
            question: QuestionId::Q13,
            measured: vec![
                measure("annotated", coverage.annotated as f64),
                measure("terms", coverage.total as f64),
                measure("ratio", coverage.ratio),
            ],
            suggested_grade: threshold_grade(coverage.ratio),
            rationale: format!(
                "{} of {} declared classes and properties carry a definition-style annotation",
                coverage.annotated, coverage.total
            ),
            caveat: None,
            advisory: true,
        },
    ];
    let manual_checks = vec![
        ManualCheck {
            question: QuestionId::Q7,
            instruction: "run a description-logic reasoner and check for contradictory axioms".to_string(),
        },
        ManualCheck {
            question: QuestionId::Q9,
            instruction: "run a reasoner and check that it completes without errors".to_string(),
        },
        ManualCheck {
            question: QuestionId::Q10,
            instruction: "time the reasoner on the ontology and judge its responsiveness".to_string(),
        },
    ];
    EvidenceReport {
        source: doc.source_name.clone(),
        triples: doc.triples.len(),
        entries,
        manual_checks,
        coverage,
        reuse,
        naming,
        redundancy,
        notes: vec![
            "suggestions are advisory; the evaluator's grades are authoritative".to_string(),
            "ratio to grade: >= 0.95 -> 100, >= 0.6 -> 75, >= 0.3 -> 50, > 0 -> 25, else 0".to_string(),
        ],
    }
}

impl EvidenceReport {
    pub fn entry(&self, q: QuestionId) -> Option<&EvidenceEntry> {
        self.entries.iter().find(|e| e.question == q)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("evidence report serializes");
        s.push('\n');
        s
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "Evidence for {} ({} triples)", self.source, self.triples);
        let _ = writeln!(out);
        let _ = writeln!(out, "{:<8} {:>9}  Rationale", "Question", "Suggested");
        for e in &self.entries {
            let _ = writeln!(out, "{:<8} {:>9}  {}", e.question.to_string(), e.suggested_grade, e.rationale);
            if let Some(c) = &e.caveat {
                let _ = writeln!(out, "{:<8} {:>9}  note: {}", "", "", c);
            }
        }
        let _ = writeln!(out);
        if !self.naming.flagged.is_empty() {
            let _ = writeln!(out, "Flagged names:");
            for f in &self.naming.flagged {
                let why: Vec<&str> = f.flags.iter().map(|x| x.describe()).collect();
                let _ = writeln!(out, "  {} ({}): {}", f.local_name, f.iri, why.join("; "));
            }
            let _ = writeln!(out);
        }
        if !self.redundancy.is_empty() {
            let _ = writeln!(out, "Redundancy candidates:");
            for r in &self.redundancy {
                let kind = match r.kind {
                    MatchKind::ExactLabel => "same label",
                    MatchKind::NormalizedName => "same normalized name",
                };
                let _ = writeln!(out, "  {} <-> {} ({kind} \"{}\")", r.first, r.second, r.shared);
            }
            let _ = writeln!(out);
        }
        let _ = writeln!(out, "Manual checks:");
        for m in &self.manual_checks {
            let _ = writeln!(out, "  {}: {}", m.question, m.instruction);
        }
        let _ = writeln!(out);
        for n in &self.notes {
            let _ = writeln!(out, "Note: {n}");
        }
        out
    }

    /// A copy of `file` with each suggestion appended to that question's
    /// note. Grades are left untouched.
    pub fn annotate(&self, file: &AnswerFile) -> AnswerFile {
        let mut copy = file.clone();
        for e in &self.entries {
            let line = format!("inspect suggests {} ({})", e.suggested_grade, e.rationale);
            copy.notes
                .entry(e.question)
                .and_modify(|n| {
                    n.push('\n');
                    n.push_str(&line);
                })
                .or_insert(line);
        }
        copy
    }
}
