use std::fs;
use std::path::{Path, PathBuf};

use foca_core::inspect::{parse_turtle, InspectError, Literal, Term, Triple, TripleDocument};
use proptest::prelude::*;

fn fixture_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/turtle")
}

fn sorted_lines(text: &str) -> Vec<String> {
    let mut v: Vec<String> = text.lines().filter(|l| !l.trim().is_empty()).map(str::to_string).collect();
    v.sort();
    v
}

#[test]
fn fixtures_match_hand_counted_triples() {
    let mut seen = 0;
    let mut paths: Vec<PathBuf> = fs::read_dir(fixture_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "ttl"))
        .collect();
    paths.sort();
    for ttl in paths {
        let expected = fs::read_to_string(ttl.with_extension("nt")).unwrap();
        let doc = parse_turtle(&fs::read_to_string(&ttl).unwrap(), ttl.to_str().unwrap())
            .unwrap_or_else(|e| panic!("{}: {e}", ttl.display()));
        assert_eq!(sorted_lines(&doc.to_canonical()), sorted_lines(&expected), "{}", ttl.display());
        assert_eq!(doc.triples.len(), sorted_lines(&expected).len());
        seen += 1;
    }
    assert!(seen >= 15, "only {seen} fixtures");
}

#[test]
fn fixtures_round_trip_to_fixed_point() {
    for entry in fs::read_dir(fixture_dir()).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_none_or(|e| e != "ttl") {
            continue;
        }
        let doc = parse_turtle(&fs::read_to_string(&path).unwrap(), "f").unwrap();
        let once = doc.to_canonical();
        let again = parse_turtle(&once, "f").unwrap();
        assert_eq!(again.sorted_triples(), doc.sorted_triples(), "{}", path.display());
        assert_eq!(again.to_canonical(), once);
    }
}

#[test]
fn error_fixtures_fail_as_documented() {
    let mut seen = 0;
    for entry in fs::read_dir(fixture_dir().join("errors")).unwrap() {
        let path = entry.unwrap().path();
        let text = fs::read_to_string(&path).unwrap();
        let spec = text.lines().next().unwrap().strip_prefix("# expect: ").unwrap();
        let (kind, token) = spec.split_once(' ').unwrap();
        let err = parse_turtle(&text, "e").unwrap_err();
        match (kind, &err) {
            ("unsupported", InspectError::Parse { token: t, message, .. }) => {
                assert_eq!(t, token, "{}", path.display());
                assert!(message.starts_with("unsupported construct"), "{message}");
            }
            ("parse", InspectError::Parse { token: t, .. }) => assert!(t.starts_with(token), "{}: {t}", path.display()),
            ("unknown-prefix", InspectError::UnknownPrefix { name, .. }) => assert_eq!(name, token),
            _ => panic!("{}: {err:?}", path.display()),
        }
        let (InspectError::Parse { line, .. } | InspectError::UnknownPrefix { line, .. }) = err else { unreachable!() };
        assert!(line >= 2, "error should point past the expectation comment");
        seen += 1;
    }
    assert!(seen >= 5);
}

fn text() -> impl Strategy<Value = String> {
    proptest::collection::vec(
        prop_oneof![
            8 => proptest::char::range('a', 'z'),
            1 => Just('"'), 1 => Just('\\'), 1 => Just('\n'), 1 => Just('\t'), 1 => Just('\''),
            1 => Just('é'), 1 => Just('😀'), 1 => Just(' '), 1 => Just('#'), 1 => Just('\u{1}'),
        ],
        0..12,
    )
    .prop_map(|v| v.into_iter().collect())
}

fn iri() -> impl Strategy<Value = String> {
    ("[a-z]{1,6}", prop_oneof![Just('/'), Just('#')], "[A-Za-z0-9_.-]{0,6}")
        .prop_map(|(h, sep, l)| format!("http://{h}.org{sep}{l}"))
}

fn blank() -> impl Strategy<Value = Term> {
    "[a-z][a-z0-9]{0,4}".prop_map(Term::Blank)
}

fn literal() -> impl Strategy<Value = Term> {
    (
        text(),
        prop_oneof![
            Just(None),
            "[a-z]{2}(-[A-Z]{2})?".prop_map(|l| Some((true, l))),
            iri().prop_map(|d| Some((false, d)))
        ],
    )
        .prop_map(|(lexical, tag)| {
            let (language, datatype) = match tag {
                None => (None, None),
                Some((true, l)) => (Some(l), None),
                Some((false, d)) => (None, Some(d)),
            };
            Term::Literal(Literal { lexical, language, datatype })
        })
}

fn triple() -> impl Strategy<Value = Triple> {
    (prop_oneof![iri().prop_map(Term::Iri), blank()], iri(), prop_oneof![iri().prop_map(Term::Iri), blank(), literal()])
        .prop_map(|(subject, predicate, object)| Triple { subject, predicate, object })
}

proptest! {
    #[test]
    fn canonical_form_round_trips(triples in proptest::collection::vec(triple(), 0..20)) {
        let doc = TripleDocument { triples, ..TripleDocument::default() };
        let once = doc.to_canonical();
        let parsed = parse_turtle(&once, "p").unwrap();
        prop_assert_eq!(parsed.sorted_triples(), doc.sorted_triples());
        prop_assert_eq!(parsed.to_canonical(), once);
    }
}
