mod common;

use std::sync::Arc;

use common::*;
use proptest::prelude::*;
use transprop::bundled;
use transprop::digest::{digest_fields, seed_of};
use transprop::dsl::PropertySpec;
use transprop::engine::{dedup, pools_from_corpus, run_property, run_suite, RunContext, SuiteConfig};
use transprop::inspect::Inspector;
use transprop::translator::{Backend, MockBackend, MockConfig, Rig, TranslateError, TranslationRequest, Translator};

/// One faithful candidate at a seeded position, unparsable text elsewhere.
struct OneGood {
    mock: MockBackend,
    seed: u64,
}

impl Backend for OneGood {
    fn id(&self) -> String {
        format!("one-good:{}", self.seed)
    }

    fn translate(&self, req: &TranslationRequest) -> Result<Vec<String>, TranslateError> {
        let at = seed_of(&digest_fields([req.source.as_bytes(), &self.seed.to_le_bytes()])) as usize % req.beam;
        let good = self
            .mock
            .candidate(&TranslationRequest { beam: 1, ..req.clone() }, 0)?
            .text;
        Ok((0..req.beam)
            .map(|i| if i == at { good.clone() } else { "def broken(:\n".into() })
            .collect())
    }
}

fn low_k_specs() -> Vec<PropertySpec> {
    bundled::testing_specs()
        .unwrap()
        .into_iter()
        .filter(|s| s.k <= 2)
        .collect()
}

#[test]
fn faithful_mock_yields_no_violations() {
    let specs = bundled::testing_specs().unwrap();
    let t = mock_translator(MockConfig::default(), None);
    let s = suite(&specs, &corpus(), &t, 1, 0.35, (50, 250), 7);
    assert_eq!(s.reports.len(), 38);
    assert_eq!((s.tv, s.vp, s.vsp), (0, 0, 0));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn one_satisfying_combination_means_no_violation(seed in any::<u64>(), beam in 2usize..4) {
        let specs = low_k_specs();
        let backend = OneGood { mock: MockBackend::default(), seed };
        let t = Translator::new(Arc::new(backend), None);
        let s = suite(&specs, &corpus(), &t, beam, 0.35, (8, 8), seed);
        prop_assert_eq!(s.tv, 0);
        // Every unit with a compiles postcondition had a combination to judge.
        prop_assert!(s.reports.iter().map(|r| r.total_tests).sum::<usize>() > 0);
    }

    #[test]
    fn sampled_plus_skipped_is_the_budget(seed in any::<u64>(), b1 in 1usize..12, bk in 1usize..12, t in 0.05f64..1.5) {
        let specs = bundled::testing_specs().unwrap();
        let tr = mock_translator(MockConfig::default(), None);
        let s = suite(&specs, &corpus(), &tr, 1, t, (b1, bk), seed);
        for r in &s.reports {
            prop_assert_eq!(r.total_tests + r.skipped, r.budget);
            prop_assert_eq!(r.budget, if r.k == 1 { b1 } else { bk });
            prop_assert_eq!(r.total_tests, r.passed + r.failing_units);
            prop_assert!(r.vacuous <= r.passed);
            prop_assert!(r.violations.len() <= r.failing_units);
            prop_assert_eq!(r.skipped, r.skip_reasons.values().sum::<usize>());
        }
        prop_assert!(s.vsp <= s.vp && s.vp <= s.reports.len());
    }
}

#[test]
fn all_faulty_pairs_are_violations() {
    let t = mock_translator(
        MockConfig {
            rig: Rig::AllFaulty,
            ..MockConfig::default()
        },
        None,
    );
    let s = suite(&low_k_specs(), &corpus(), &t, 2, 0.35, (10, 10), 3);
    assert!(s.tv > 0);
    let one = mock_translator(
        MockConfig {
            rig: Rig::OneFaithful,
            ..MockConfig::default()
        },
        None,
    );
    assert_eq!(suite(&low_k_specs(), &corpus(), &one, 2, 0.35, (10, 10), 3).tv, 0);
}

#[test]
fn dedup_is_idempotent_and_sorted() {
    let specs = bundled::testing_specs().unwrap();
    let t = mock_translator(MockConfig::default(), None);
    let s = suite(&specs, &corpus(), &t, 1, 1.2, (40, 40), 9);
    assert!(s.tv > 0);
    for r in &s.reports {
        let again = dedup(r.violations.clone());
        assert_eq!(again, r.violations);
        assert!(r.violations.windows(2).all(|w| w[0].fingerprint < w[1].fingerprint));
        let doubled: Vec<_> = r.violations.iter().chain(&r.violations).cloned().collect();
        assert_eq!(dedup(doubled), r.violations);
    }
}

#[test]
fn reports_do_not_depend_on_thread_count() {
    let specs = bundled::testing_specs().unwrap();
    let corpus = corpus();
    let inspector = Inspector::default();
    let cfg = SuiteConfig {
        budget_one_safety: 15,
        budget_k_safety: 15,
        budget: None,
    };
    let run = |jobs| {
        let t = mock_translator(MockConfig::default(), None);
        let ctx = RunContext {
            translator: &t,
            inspector: &inspector,
            params: t.params(1, 0.9),
            seed: 4,
            jobs,
        };
        serde_json::to_string(&run_suite(&specs, &corpus, &cfg, &ctx).unwrap()).unwrap()
    };
    let sequential = run(1);
    assert_eq!(sequential, run(4));
    assert_eq!(sequential, run(0));
}

#[test]
fn seed_changes_the_sample() {
    let specs = bundled::testing_specs().unwrap();
    let t = mock_translator(MockConfig::default(), None);
    let a = suite(&specs, &corpus(), &t, 1, 1.0, (20, 20), 1);
    let b = suite(&specs, &corpus(), &t, 1, 1.0, (20, 20), 2);
    assert_ne!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
}

#[test]
fn guarded_properties_report_vacuous_passes() {
    // Unparsable candidates make every `compiles(..) ==> ..` guard false.
    let specs: Vec<PropertySpec> = bundled::testing_specs()
        .unwrap()
        .into_iter()
        .filter(|s| s.name == "retValues")
        .collect();
    assert_eq!(specs.len(), 1);
    let t = mock_translator(
        MockConfig {
            rig: Rig::AllFaulty,
            ..MockConfig::default()
        },
        None,
    );
    let s = suite(&specs, &corpus(), &t, 1, 0.35, (60, 60), 5);
    let r = &s.reports[0];
    assert!(r.vacuous > 0, "{r:?}");
    assert!(r.vacuous <= r.passed);
}

#[test]
fn pools_hold_only_the_input_language() {
    let corpus = corpus();
    for spec in bundled::testing_specs().unwrap() {
        let pools = pools_from_corpus(&spec, &corpus).unwrap();
        assert_eq!(pools.len(), spec.inputs.len());
        for (input, pool) in spec.inputs.iter().zip(&pools) {
            let lang = spec.lang_of(input).unwrap();
            assert!(!pool.is_empty());
            assert!(pool.iter().all(|p| p.lang == lang));
        }
    }
}

#[test]
fn empty_budget_is_an_empty_report() {
    let spec = &bundled::testing_specs().unwrap()[0];
    let corpus = corpus();
    let inspector = Inspector::default();
    let t = mock_translator(MockConfig::default(), None);
    let ctx = RunContext {
        translator: &t,
        inspector: &inspector,
        params: t.params(1, 0.35),
        seed: 0,
        jobs: 1,
    };
    let r = run_property(spec, &pools_from_corpus(spec, &corpus).unwrap(), 0, &ctx).unwrap();
    assert_eq!((r.total_tests, r.skipped, r.violations.len()), (0, 0, 0));
    assert_eq!(t.backend_calls(), 0);
}
