use std::path::PathBuf;

use transprop::code::interp::{run_function, ExecOutcome};
use transprop::code::Corpus;
use transprop::inspect::Inspector;
use transprop::Lang;

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/corpus")
}

#[test]
fn every_fixture_parses_in_both_languages() {
    let corpus = Corpus::load(&corpus_dir()).unwrap();
    assert!(corpus.in_lang(Lang::Java).len() >= 50);
    for u in corpus.units() {
        assert!(u.ast.is_some(), "{} ({}): {:?}", u.id, u.lang, u.parse_error);
    }
}

#[test]
fn interpreter_reproduces_python_expected_values() {
    let corpus = Corpus::load(&corpus_dir()).unwrap();
    for u in corpus.units() {
        let ast = u.ast.as_ref().unwrap();
        for t in u.tests.iter() {
            match run_function(ast, u.lang, &t.inputs, 1_000_000) {
                ExecOutcome::Ok(v) => assert!(
                    v == t.expected,
                    "{} ({}): {:?} gave {v:?}, expected {:?}",
                    u.id,
                    u.lang,
                    t.inputs,
                    t.expected
                ),
                other => panic!("{} ({}): {:?} gave {other:?}", u.id, u.lang, t.inputs),
            }
        }
    }
}

#[test]
fn inspections_match_hand_recorded_counts() {
    let corpus = Corpus::load(&corpus_dir()).unwrap();
    let inspector = Inspector::default();
    let mut checked = 0;
    for u in corpus.units() {
        let expected = u
            .meta
            .counts
            .get(&u.lang)
            .unwrap_or_else(|| panic!("{} has no {} counts", u.id, u.lang));
        assert_eq!(
            &inspector.counts(&u.source, u.lang).unwrap(),
            expected,
            "{} ({})",
            u.id,
            u.lang
        );
        checked += 1;
    }
    assert!(checked >= 100);
}
