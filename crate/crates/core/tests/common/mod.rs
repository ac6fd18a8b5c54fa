#![allow(dead_code)]

use std::path::PathBuf;
use std::sync::Arc;

use transprop::code::Corpus;
use transprop::dsl::PropertySpec;
use transprop::engine::{run_suite, RunContext, SuiteConfig, SuiteReport};
use transprop::inspect::Inspector;
use transprop::translator::{MockBackend, MockConfig, QueryCache, Translator};

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/corpus")
}

pub fn corpus() -> Corpus {
    Corpus::load(&corpus_dir()).unwrap()
}

pub fn mock_translator(config: MockConfig, cache: Option<QueryCache>) -> Translator {
    Translator::new(Arc::new(MockBackend::new(config)), cache)
}

pub fn suite(
    specs: &[PropertySpec],
    corpus: &Corpus,
    translator: &Translator,
    beam: usize,
    temperature: f64,
    budgets: (usize, usize),
    seed: u64,
) -> SuiteReport {
    let inspector = Inspector::default();
    let ctx = RunContext {
        translator,
        inspector: &inspector,
        params: translator.params(beam, temperature),
        seed,
        jobs: 0,
    };
    let cfg = SuiteConfig {
        budget_one_safety: budgets.0,
        budget_k_safety: budgets.1,
        budget: None,
    };
    run_suite(specs, corpus, &cfg, &ctx).unwrap()
}
