mod common;

use common::*;
use transprop::bundled;
use transprop::engine::{bound_from_unit, run_property, RunContext};
use transprop::inspect::Inspector;
use transprop::search::{count_fitness, search_translation, SearchConfig, SearchOutcome};
use transprop::translator::{MockConfig, Translator, TranslatorParams};
use transprop::Lang;

fn config(seed: u64, t: f64, search_budget: usize) -> SearchConfig {
    SearchConfig {
        search_budget,
        test_budget: 20,
        init: TranslatorParams::new(1, t),
        seed,
        jobs: 0,
    }
}

/// Every property re-run on `program` at the given params, as iteration
/// `iteration` of a search with `seed` would run it.
fn retest(
    o: &SearchOutcome,
    program: &transprop::engine::BoundProgram,
    t: &Translator,
    iteration: usize,
) -> (usize, usize) {
    let specs = bundled::search_specs().unwrap();
    let inspector = Inspector::default();
    let ctx = RunContext {
        translator: t,
        inspector: &inspector,
        params: o.trace[iteration - 1].params.clone(),
        seed: transprop::digest::seed_of(&transprop::digest::digest_fields([
            o.seed.to_le_bytes(),
            (iteration as u64).to_le_bytes(),
        ])),
        jobs: 0,
    };
    let pools = vec![vec![program.clone()]];
    let reports: Vec<_> = specs
        .iter()
        .map(|s| run_property(s, &pools, 20, &ctx).unwrap())
        .collect();
    count_fitness(&reports)
}

#[test]
fn trace_invariants_hold_across_programs() {
    let specs = bundled::search_specs().unwrap();
    let inspector = Inspector::default();
    let corpus = corpus();
    let mut successes = 0;
    let units = corpus.in_lang(Lang::Java);
    for (i, u) in units.iter().enumerate().step_by(3) {
        let t = mock_translator(MockConfig::default(), None);
        let cfg = config(i as u64, 1.2, 8);
        let program = bound_from_unit(u);
        let o = search_translation(&specs, &program, &cfg, &t, &inspector).unwrap();
        assert!(!o.trace.is_empty() && o.trace.len() <= cfg.search_budget);
        assert_eq!(o.success, o.trace.last().unwrap().vp == 0);
        // Only the last iteration can be violation-free.
        assert!(o.trace[..o.trace.len() - 1].iter().all(|e| e.vp > 0));
        let best = |e: &transprop::search::TraceEntry| (e.best_vp.unwrap(), e.best_tv.unwrap());
        assert!(o.trace.windows(2).all(|w| best(&w[1]) <= best(&w[0])));
        for e in &o.trace {
            assert!(best(e) <= (e.vp, e.tv));
            assert!((0.0001..=2.0).contains(&e.params.temperature));
        }
        // The returned translation comes from the entry that set the minimum.
        let at = o
            .trace
            .iter()
            .position(|e| (e.vp, e.tv) == (o.min_vp.unwrap(), o.min_tv.unwrap()))
            .unwrap();
        let kept = if o.success { o.trace.len() - 1 } else { at };
        assert_eq!(o.best_params.as_ref(), Some(&o.trace[kept].params));
        let again = t
            .translate(&program.text, Lang::Java, Lang::Py, &o.trace[kept].params)
            .unwrap();
        assert_eq!(o.best_translation.as_deref(), Some(again.candidates[0].as_str()));
        if o.success {
            successes += 1;
            assert_eq!(retest(&o, &program, &t, o.trace.len()), (0, 0));
        }
    }
    assert!(successes > 0);
}

#[test]
fn faithful_start_returns_after_one_iteration() {
    let specs = bundled::search_specs().unwrap();
    let inspector = Inspector::default();
    let corpus = corpus();
    let u = corpus.get("gcd", Lang::Java).unwrap();
    let t = mock_translator(MockConfig::default(), None);
    let o = search_translation(&specs, &bound_from_unit(u), &config(1, 0.35, 20), &t, &inspector).unwrap();
    assert!(o.success);
    assert_eq!(o.iterations(), 1);
    assert_eq!((o.min_vp, o.min_tv), (Some(0), Some(0)));
}

#[test]
fn hopeless_search_spends_the_whole_budget() {
    let specs = bundled::search_specs().unwrap();
    let inspector = Inspector::default();
    let corpus = corpus();
    let u = corpus.get("sum_to_n", Lang::Java).unwrap();
    let t = mock_translator(
        MockConfig {
            gain: 100.0,
            t_star: 5.0,
            ..MockConfig::default()
        },
        None,
    );
    let o = search_translation(&specs, &bound_from_unit(u), &config(2, 1.0, 5), &t, &inspector).unwrap();
    assert!(!o.success);
    assert_eq!(o.iterations(), 5);
    assert!(o.best_translation.is_some());
    assert!(o.min_vp.unwrap() > 0);
}

#[test]
fn search_is_deterministic() {
    let specs = bundled::search_specs().unwrap();
    let inspector = Inspector::default();
    let corpus = corpus();
    let u = corpus.get("collatz_steps", Lang::Java).unwrap();
    let run = || {
        let t = mock_translator(MockConfig::default(), None);
        let o = search_translation(&specs, &bound_from_unit(u), &config(8, 1.6, 10), &t, &inspector).unwrap();
        serde_json::to_string(&o).unwrap()
    };
    assert_eq!(run(), run());
}
