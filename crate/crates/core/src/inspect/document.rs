use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

pub const RDF: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
pub const RDFS: &str = "http://www.w3.org/2000/01/rdf-schema#";
pub const OWL: &str = "http://www.w3.org/2002/07/owl#";
pub const XSD: &str = "http://www.w3.org/2001/XMLSchema#";
pub const SKOS: &str = "http://www.w3.org/2004/02/skos/core#";
pub const DC: &str = "http://purl.org/dc/elements/1.1/";
pub const DCTERMS: &str = "http://purl.org/dc/terms/";
pub const OBO: &str = "http://purl.obolibrary.org/obo/";

pub const RDF_TYPE: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Literal {
    pub lexical: String,
    pub language: Option<String>,
    /// `None` for plain strings, including language-tagged ones.
    pub datatype: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Term {
    Iri(String),
    Blank(String),
    Literal(Literal),
}

impl Term {
    pub fn iri(&self) -> Option<&str> {
        match self {
            Term::Iri(s) => Some(s),
            _ => None,
        }
    }

    pub fn literal(&self) -> Option<&Literal> {
        match self {
            Term::Literal(l) => Some(l),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Triple {
    pub subject: Term,
    pub predicate: String,
    pub object: Term,
}

/// A parsed document. Triples keep document order.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct TripleDocument {
    pub prefixes: BTreeMap<String, String>,
    pub triples: Vec<Triple>,
    pub source_name: String,
}

impl TripleDocument {
    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    /// Triples sorted, for multiset comparison.
    pub fn sorted_triples(&self) -> Vec<Triple> {
        let mut t = self.triples.clone();
        t.sort();
        t
    }

    /// One line per triple in N-Triples syntax, sorted, so equal multisets
    /// serialize identically.
    pub fn to_canonical(&self) -> String {
        let mut lines: Vec<String> = self.triples.iter().map(|t| t.to_string()).collect();
        lines.sort();
        let mut out = lines.join("\n");
        if !out.is_empty() {
            out.push('\n');
        }
        out
    }
}

fn escape_iri(s: &str, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    for c in s.chars() {
        match c {
            '\u{0}'..='\u{20}' | '<' | '>' | '"' | '{' | '}' | '|' | '^' | '`' | '\\' => {
                write!(f, "\\u{:04X}", c as u32)?
            }
            _ => f.write_fmt(format_args!("{c}"))?,
        }
    }
    Ok(())
}

fn escape_string(s: &str, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    for c in s.chars() {
        match c {
            '"' => f.write_str("\\\"")?,
            '\\' => f.write_str("\\\\")?,
            '\n' => f.write_str("\\n")?,
            '\r' => f.write_str("\\r")?,
            '\t' => f.write_str("\\t")?,
            c if (c as u32) < 0x20 || c == '\u{7f}' => write!(f, "\\u{:04X}", c as u32)?,
            _ => f.write_fmt(format_args!("{c}"))?,
        }
    }
    Ok(())
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Iri(i) => {
                f.write_str("<")?;
                escape_iri(i, f)?;
                f.write_str(">")
            }
            Term::Blank(b) => write!(f, "_:{b}"),
            Term::Literal(l) => {
                f.write_str("\"")?;
                escape_string(&l.lexical, f)?;
                f.write_str("\"")?;
                if let Some(lang) = &l.language {
                    write!(f, "@{lang}")
                } else if let Some(dt) = &l.datatype {
                    f.write_str("^^<")?;
                    escape_iri(dt, f)?;
                    f.write_str(">")
                } else {
                    Ok(())
                }
            }
        }
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {} .", self.subject, Term::Iri(self.predicate.clone()), self.object)
    }
}

/// Namespace part of an IRI: everything up to the last `#` or `/`.
pub fn namespace_of(iri: &str) -> &str {
    match iri.rfind(['#', '/']) {
        Some(i) => &iri[..=i],
        None => iri,
    }
}

/// Local part of an IRI: everything after the last `#` or `/`.
pub fn local_name(iri: &str) -> &str {
    match iri.rfind(['#', '/']) {
        Some(i) => &iri[i + 1..],
        None => iri,
    }
}
