//! Parser for a Turtle subset.
//!
//! Supported: `@prefix`/`PREFIX` directives, `<iri>` references, prefixed
//! names (including the empty prefix), the `a` keyword, quoted literals in
//! all four quote styles with language tags or datatypes, numeric and
//! boolean literals, `;`/`,` lists, `_:label` blank nodes and `#` comments.
//! Collections, anonymous blank nodes and base declarations are rejected.

use std::collections::BTreeMap;

use super::document::{Literal, Term, Triple, TripleDocument, RDF_TYPE, XSD};
use super::InspectError;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Iri(String),
    PName { prefix: String, local: String },
    Blank(String),
    Str(String),
    LangTag(String),
    Carets,
    Integer(String),
    Decimal(String),
    Double(String),
    Boolean(String),
    A,
    AtPrefix,
    SparqlPrefix,
    Dot,
    Semicolon,
    Comma,
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    text: String,
    line: usize,
    column: usize,
}

struct Lexer {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    column: usize,
}

fn is_name_start(c: char) -> bool {
    c.is_alphabetic() || c == '_'
}

fn is_name_char(c: char) -> bool {
    c.is_alphanumeric() || matches!(c, '_' | '-' | '.' | '\u{b7}')
}

const LOCAL_ESCAPES: &str = "_~.-!$&'()*+,;=/?#@%";

impl Lexer {
    fn new(text: &str) -> Self {
        Lexer { chars: text.chars().collect(), pos: 0, line: 1, column: 1 }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn peek_at(&self, k: usize) -> Option<char> {
        self.chars.get(self.pos + k).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn error(&self, line: usize, column: usize, token: impl Into<String>, message: impl Into<String>) -> InspectError {
        InspectError::Parse { line, column, token: token.into(), message: message.into() }
    }

    fn skip_trivia(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.bump();
            } else if c == '#' {
                while let Some(c) = self.peek() {
                    if c == '\n' {
                        break;
                    }
                    self.bump();
                }
            } else {
                break;
            }
        }
    }

    fn tokens(mut self) -> Result<Vec<Spanned>, InspectError> {
        let mut out = Vec::new();
        loop {
            self.skip_trivia();
            let (line, column, start) = (self.line, self.column, self.pos);
            let Some(c) = self.peek() else { break };
            let tok = self.token(c, line, column)?;
            let text: String = self.chars[start..self.pos].iter().collect();
            out.push(Spanned { tok, text, line, column });
        }
        Ok(out)
    }

    fn token(&mut self, c: char, line: usize, column: usize) -> Result<Tok, InspectError> {
        match c {
            '<' => self.iri(line, column),
            '"' | '\'' => self.string(c, line, column),
            '@' => {
                self.bump();
                let word = self.take_while(|c| c.is_ascii_alphanumeric() || c == '-');
                match word.as_str() {
                    "" => Err(self.error(line, column, "@", "expected a directive or language tag after `@`")),
                    "prefix" => Ok(Tok::AtPrefix),
                    "base" => Err(self.error(line, column, "@base", "unsupported construct: base declarations")),
                    _ => Ok(Tok::LangTag(word)),
                }
            }
            '^' => {
                self.bump();
                if self.peek() == Some('^') {
                    self.bump();
                    Ok(Tok::Carets)
                } else {
                    Err(self.error(line, column, "^", "expected `^^`"))
                }
            }
            '(' | ')' => {
                self.bump();
                Err(self.error(line, column, c.to_string(), "unsupported construct: collections `( … )`"))
            }
            '[' | ']' => {
                self.bump();
                Err(self.error(line, column, c.to_string(), "unsupported construct: anonymous blank nodes `[ … ]`"))
            }
            ';' => {
                self.bump();
                Ok(Tok::Semicolon)
            }
            ',' => {
                self.bump();
                Ok(Tok::Comma)
            }
            '.' if !self.peek_at(1).is_some_and(|d| d.is_ascii_digit()) => {
                self.bump();
                Ok(Tok::Dot)
            }
            '_' if self.peek_at(1) == Some(':') => {
                self.bump();
                self.bump();
                let label = self.name_run(false)?;
                if label.is_empty() {
                    return Err(self.error(line, column, "_:", "empty blank node label"));
                }
                Ok(Tok::Blank(label))
            }
            c if c.is_ascii_digit() || matches!(c, '+' | '-' | '.') => self.number(line, column),
            c if is_name_start(c) || c == ':' => self.word(line, column),
            other => {
                self.bump();
                Err(self.error(line, column, other.to_string(), "unexpected character"))
            }
        }
    }

    fn take_while(&mut self, pred: impl Fn(char) -> bool) -> String {
        let mut s = String::new();
        while let Some(c) = self.peek().filter(|&c| pred(c)) {
            s.push(c);
            self.bump();
        }
        s
    }

    fn hex_escape(&mut self, digits: usize, line: usize, column: usize) -> Result<char, InspectError> {
        let hex: String = (0..digits).filter_map(|_| self.bump()).collect();
        u32::from_str_radix(&hex, 16)
            .ok()
            .filter(|_| hex.len() == digits)
            .and_then(char::from_u32)
            .ok_or_else(|| self.error(line, column, format!("\\u{hex}"), "invalid unicode escape"))
    }

    fn iri(&mut self, line: usize, column: usize) -> Result<Tok, InspectError> {
        self.bump();
        let mut s = String::new();
        loop {
            match self.bump() {
                None => return Err(self.error(line, column, format!("<{s}"), "unterminated IRI")),
                Some('>') => return Ok(Tok::Iri(s)),
                Some('\\') => match self.bump() {
                    Some('u') => s.push(self.hex_escape(4, line, column)?),
                    Some('U') => s.push(self.hex_escape(8, line, column)?),
                    _ => return Err(self.error(line, column, format!("<{s}\\"), "invalid escape in IRI")),
                },
                Some(c) if c.is_whitespace() || matches!(c, '<' | '"' | '{' | '}' | '|' | '^' | '`') => {
                    return Err(self.error(line, column, format!("<{s}{c}"), "illegal character in IRI"))
                }
                Some(c) => s.push(c),
            }
        }
    }

    fn string(&mut self, quote: char, line: usize, column: usize) -> Result<Tok, InspectError> {
        let long = self.peek_at(1) == Some(quote) && self.peek_at(2) == Some(quote);
        for _ in 0..if long { 3 } else { 1 } {
            self.bump();
        }
        let mut s = String::new();
        loop {
            let Some(c) = self.bump() else {
                return Err(self.error(line, column, format!("{quote}{s}"), "unterminated string literal"));
            };
            if c == quote {
                if !long {
                    return Ok(Tok::Str(s));
                }
                if self.peek() == Some(quote) && self.peek_at(1) == Some(quote) {
                    // A run of more than three quotes closes on the last three.
                    while self.peek_at(2) == Some(quote) {
                        s.push(quote);
                        self.bump();
                    }
                    self.bump();
                    self.bump();
                    return Ok(Tok::Str(s));
                }
                s.push(c);
                continue;
            }
            match c {
                '\\' => {
                    let e = self.bump();
                    s.push(match e {
                        Some('t') => '\t',
                        Some('b') => '\u{8}',
                        Some('n') => '\n',
                        Some('r') => '\r',
                        Some('f') => '\u{c}',
                        Some('"') => '"',
                        Some('\'') => '\'',
                        Some('\\') => '\\',
                        Some('u') => self.hex_escape(4, line, column)?,
                        Some('U') => self.hex_escape(8, line, column)?,
                        _ => {
                            return Err(self.error(
                                self.line,
                                self.column,
                                format!("\\{}", e.map(String::from).unwrap_or_default()),
                                "invalid string escape",
                            ))
                        }
                    });
                }
                '\n' | '\r' if !long => {
                    return Err(self.error(line, column, format!("{quote}{s}"), "line break in single-quoted string"))
                }
                c => s.push(c),
            }
        }
    }

    fn number(&mut self, line: usize, column: usize) -> Result<Tok, InspectError> {
        let mut s = String::new();
        if let Some(sign @ ('+' | '-')) = self.peek() {
            s.push(sign);
            self.bump();
        }
        let int = self.take_while(|c| c.is_ascii_digit());
        s.push_str(&int);
        let mut frac = String::new();
        if self.peek() == Some('.') && self.peek_at(1).is_some_and(|c| c.is_ascii_digit()) {
            self.bump();
            frac = self.take_while(|c| c.is_ascii_digit());
            s.push('.');
            s.push_str(&frac);
        }
        let mut exp = false;
        if let Some(e @ ('e' | 'E')) = self.peek() {
            let signed = matches!(self.peek_at(1), Some('+' | '-'));
            let digit_at = if signed { 2 } else { 1 };
            if self.peek_at(digit_at).is_some_and(|c| c.is_ascii_digit()) {
                self.bump();
                s.push(e);
                if signed {
                    s.push(self.bump().expect("peeked"));
                }
                s.push_str(&self.take_while(|c| c.is_ascii_digit()));
                exp = true;
            }
        }
        if int.is_empty() && frac.is_empty() {
            return Err(self.error(line, column, s, "malformed number"));
        }
        Ok(if exp {
            Tok::Double(s)
        } else if s.contains('.') {
            Tok::Decimal(s)
        } else {
            Tok::Integer(s)
        })
    }

    /// Name characters with local-name escapes; trailing dots are left
    /// unread since they terminate the statement.
    fn name_run(&mut self, allow_colon: bool) -> Result<String, InspectError> {
        let mut s = String::new();
        let mut raw_len = Vec::new();
        loop {
            match self.peek() {
                Some('\\') if allow_colon => {
                    let (line, column) = (self.line, self.column);
                    self.bump();
                    match self.bump() {
                        Some(e) if LOCAL_ESCAPES.contains(e) => {
                            s.push(e);
                            raw_len.push(2);
                        }
                        other => {
                            return Err(self.error(
                                line,
                                column,
                                format!("\\{}", other.map(String::from).unwrap_or_default()),
                                "invalid escape in local name",
                            ))
                        }
                    }
                }
                Some('%') if allow_colon => {
                    let ok = self.peek_at(1).is_some_and(|c| c.is_ascii_hexdigit())
                        && self.peek_at(2).is_some_and(|c| c.is_ascii_hexdigit());
                    if !ok {
                        return Err(self.error(self.line, self.column, "%", "malformed percent escape"));
                    }
                    for _ in 0..3 {
                        s.push(self.bump().expect("peeked"));
                    }
                    raw_len.push(1);
                    raw_len.push(1);
                    raw_len.push(1);
                }
                Some(c) if is_name_char(c) || (allow_colon && c == ':') => {
                    s.push(c);
                    raw_len.push(1);
                    self.bump();
                }
                _ => break,
            }
        }
        // Give back trailing unescaped dots.
        while s.ends_with('.') && raw_len.last() == Some(&1) {
            s.pop();
            raw_len.pop();
            self.pos -= 1;
            self.column -= 1;
        }
        Ok(s)
    }

    fn word(&mut self, line: usize, column: usize) -> Result<Tok, InspectError> {
        let prefix = if self.peek() == Some(':') { String::new() } else { self.name_run(false)? };
        if self.peek() == Some(':') {
            self.bump();
            let local = self.name_run(true)?;
            return Ok(Tok::PName { prefix, local });
        }
        match prefix.as_str() {
            "a" => Ok(Tok::A),
            "true" | "false" => Ok(Tok::Boolean(prefix)),
            w if w.eq_ignore_ascii_case("prefix") => Ok(Tok::SparqlPrefix),
            w if w.eq_ignore_ascii_case("base") => {
                Err(self.error(line, column, w, "unsupported construct: base declarations"))
            }
            w => Err(self.error(line, column, w, "unexpected bare word (missing prefix colon?)")),
        }
    }
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    eof: (usize, usize),
    prefixes: BTreeMap<String, String>,
    triples: Vec<Triple>,
}

impl Parser {
    fn peek(&self) -> Option<&Spanned> {
        self.toks.get(self.pos)
    }

    fn next(&mut self, expected: &str) -> Result<Spanned, InspectError> {
        match self.toks.get(self.pos) {
            Some(t) => {
                self.pos += 1;
                Ok(t.clone())
            }
            None => Err(InspectError::Parse {
                line: self.eof.0,
                column: self.eof.1,
                token: "end of input".into(),
                message: format!("expected {expected}"),
            }),
        }
    }

    fn unexpected(t: &Spanned, expected: &str) -> InspectError {
        InspectError::Parse {
            line: t.line,
            column: t.column,
            token: t.text.clone(),
            message: format!("expected {expected}"),
        }
    }

    fn expect(&mut self, want: Tok, expected: &str) -> Result<(), InspectError> {
        let t = self.next(expected)?;
        if t.tok == want {
            Ok(())
        } else {
            Err(Self::unexpected(&t, expected))
        }
    }

    fn resolve(&self, t: &Spanned, prefix: &str, local: &str) -> Result<String, InspectError> {
        match self.prefixes.get(prefix) {
            Some(ns) => Ok(format!("{ns}{local}")),
            None => Err(InspectError::UnknownPrefix { line: t.line, column: t.column, name: t.text.clone() }),
        }
    }

    fn document(&mut self) -> Result<(), InspectError> {
        while let Some(t) = self.peek() {
            match t.tok {
                Tok::AtPrefix => {
                    self.pos += 1;
                    self.prefix_body()?;
                    self.expect(Tok::Dot, "`.` after @prefix directive")?;
                }
                Tok::SparqlPrefix => {
                    self.pos += 1;
                    self.prefix_body()?;
                }
                _ => {
                    self.statement()?;
                    self.expect(Tok::Dot, "`.` ending the statement")?;
                }
            }
        }
        Ok(())
    }

    fn prefix_body(&mut self) -> Result<(), InspectError> {
        let name = self.next("a prefix name such as `ex:`")?;
        let prefix = match &name.tok {
            Tok::PName { prefix, local } if local.is_empty() => prefix.clone(),
            _ => return Err(Self::unexpected(&name, "a prefix name such as `ex:`")),
        };
        let iri = self.next("an IRI in angle brackets")?;
        match iri.tok {
            Tok::Iri(ns) => {
                self.prefixes.insert(prefix, ns);
                Ok(())
            }
            _ => Err(Self::unexpected(&iri, "an IRI in angle brackets")),
        }
    }

    fn statement(&mut self) -> Result<(), InspectError> {
        let t = self.next("a subject")?;
        let subject = match &t.tok {
            Tok::Iri(i) => Term::Iri(i.clone()),
            Tok::PName { prefix, local } => Term::Iri(self.resolve(&t, prefix, local)?),
            Tok::Blank(b) => Term::Blank(b.clone()),
            _ => return Err(Self::unexpected(&t, "a subject (IRI, prefixed name or blank node)")),
        };
        loop {
            let predicate = self.verb()?;
            loop {
                let object = self.object()?;
                self.triples.push(Triple { subject: subject.clone(), predicate: predicate.clone(), object });
                if self.peek().is_some_and(|t| t.tok == Tok::Comma) {
                    self.pos += 1;
                } else {
                    break;
                }
            }
            // `;` may repeat and may trail before the final `.`.
            let mut saw_semicolon = false;
            while self.peek().is_some_and(|t| t.tok == Tok::Semicolon) {
                self.pos += 1;
                saw_semicolon = true;
            }
            if !saw_semicolon || self.peek().is_none_or(|t| t.tok == Tok::Dot) {
                return Ok(());
            }
        }
    }

    fn verb(&mut self) -> Result<String, InspectError> {
        let t = self.next("a predicate")?;
        match &t.tok {
            Tok::A => Ok(RDF_TYPE.to_string()),
            Tok::Iri(i) => Ok(i.clone()),
            Tok::PName { prefix, local } => self.resolve(&t, prefix, local),
            _ => Err(Self::unexpected(&t, "a predicate (IRI, prefixed name or `a`)")),
        }
    }

    fn object(&mut self) -> Result<Term, InspectError> {
        let t = self.next("an object")?;
        let typed = |lexical: &str, dt: &str| {
            Term::Literal(Literal {
                lexical: lexical.to_string(),
                language: None,
                datatype: Some(format!("{XSD}{dt}")),
            })
        };
        Ok(match &t.tok {
            Tok::Iri(i) => Term::Iri(i.clone()),
            Tok::PName { prefix, local } => Term::Iri(self.resolve(&t, prefix, local)?),
            Tok::Blank(b) => Term::Blank(b.clone()),
            Tok::Integer(s) => typed(s, "integer"),
            Tok::Decimal(s) => typed(s, "decimal"),
            Tok::Double(s) => typed(s, "double"),
            Tok::Boolean(s) => typed(s, "boolean"),
            Tok::Str(s) => {
                let mut lit = Literal { lexical: s.clone(), language: None, datatype: None };
                match self.peek().map(|t| t.tok.clone()) {
                    Some(Tok::LangTag(lang)) => {
                        self.pos += 1;
                        lit.language = Some(lang);
                    }
                    Some(Tok::Carets) => {
                        self.pos += 1;
                        let d = self.next("a datatype IRI")?;
                        lit.datatype = Some(match &d.tok {
                            Tok::Iri(i) => i.clone(),
                            Tok::PName { prefix, local } => self.resolve(&d, prefix, local)?,
                            _ => return Err(Self::unexpected(&d, "a datatype IRI")),
                        });
                    }
                    _ => {}
                }
                Term::Literal(lit)
            }
            _ => return Err(Self::unexpected(&t, "an object (IRI, blank node or literal)")),
        })
    }
}

/// Parse `text` into a document named `source_name`.
pub fn parse_turtle(text: &str, source_name: &str) -> Result<TripleDocument, InspectError> {
    let lexer = Lexer::new(text);
    let toks = lexer.tokens()?;
    let eof = text.lines().enumerate().last().map_or((1, 1), |(i, l)| (i + 1, l.chars().count() + 1));
    let mut parser = Parser { toks, pos: 0, eof, prefixes: BTreeMap::new(), triples: Vec::new() };
    parser.document()?;
    Ok(TripleDocument { prefixes: parser.prefixes, triples: parser.triples, source_name: source_name.to_string() })
}
