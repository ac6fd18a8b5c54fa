mod common;

use transprop::code::parse_program;
use transprop::inspect::Inspector;
use transprop::translator::{MockBackend, MockConfig, TranslationRequest};
use transprop::Lang;

/// Fraction of faulty candidates over every fixture, eight per query.
fn fault_rate(backend: &MockBackend, sources: &[&str], t: f64) -> f64 {
    let mut faulty = 0;
    let mut total = 0;
    for s in sources {
        let req = TranslationRequest::new(s, Lang::Java, Lang::Py, 8, t);
        for i in 0..8 {
            faulty += backend.candidate(&req, i).unwrap().fault.is_some() as usize;
            total += 1;
        }
    }
    faulty as f64 / total as f64
}

#[test]
fn fault_rate_grows_with_distance_from_the_optimum() {
    let corpus = common::corpus();
    let sources: Vec<&str> = corpus.in_lang(Lang::Java).iter().map(|u| u.source.as_str()).collect();
    for seed in 0..3 {
        let backend = MockBackend::new(MockConfig {
            seed,
            ..MockConfig::default()
        });
        let mut previous = 0.0;
        for step in 0..=10 {
            let d = step as f64 * 0.1;
            let rate = fault_rate(&backend, &sources, 0.35 + d);
            let q = backend.config().fault_probability(0.35 + d);
            assert!((rate - q).abs() <= 0.05, "seed {seed} distance {d}: rate {rate}, q {q}");
            assert!(
                rate + 0.05 >= previous,
                "seed {seed} distance {d}: {rate} after {previous}"
            );
            previous = rate;
        }
        assert_eq!(fault_rate(&backend, &sources, 0.35), 0.0);
    }
}

#[test]
fn compiles_agrees_with_the_parser_on_every_mock_output() {
    let corpus = common::corpus();
    let inspector = Inspector::default();
    let backend = MockBackend::default();
    let mut broken = 0;
    for u in corpus.in_lang(Lang::Java) {
        for t in [0.35, 0.9, 1.6] {
            let req = TranslationRequest::new(&u.source, Lang::Java, Lang::Py, 6, t);
            for i in 0..6 {
                let text = backend.candidate(&req, i).unwrap().text;
                let parses = parse_program(&text, Lang::Py).is_ok();
                broken += !parses as usize;
                assert_eq!(
                    inspector.compiles(&text, Lang::Py).unwrap(),
                    parses,
                    "{}:\n{text}",
                    u.id
                );
            }
        }
    }
    assert!(broken > 0);
    for u in corpus.in_lang(Lang::Py) {
        assert!(inspector.compiles(&u.source, Lang::Py).unwrap(), "{}", u.id);
    }
}
