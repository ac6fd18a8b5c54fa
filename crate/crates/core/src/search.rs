//! Property-guided search over translator parameters for one program.
//!
//! Each iteration tests every property with the program as the only input,
//! scores the parameters by (violated properties, total violations) in
//! lexicographic order, returns at once when no property is violated, and
//! otherwise perturbs the temperature with Gaussian noise.

use serde::{Deserialize, Serialize};

use crate::digest::{digest_fields, seed_of};
use crate::dsl::PropertySpec;
use crate::engine::{run_property, BoundProgram, EngineError, RunContext, TestReport};
use crate::inspect::Inspector;
use crate::transforms::SeededRng;
use crate::translator::{Translator, TranslatorParams};

pub const DEFAULT_SEARCH_BUDGET: usize = 20;
pub const DEFAULT_TEST_BUDGET: usize = 50;
pub const DEFAULT_INIT_TEMPERATURE: f64 = 0.1;
/// Standard deviation of the temperature noise (variance 0.01).
pub const MUTATION_SIGMA: f64 = 0.1;

/// `(VP, TV)`: properties with at least one violation, and all violations.
pub fn count_fitness(reports: &[TestReport]) -> (usize, usize) {
    let vp = reports.iter().filter(|r| !r.violations.is_empty()).count();
    let tv = reports.iter().map(|r| r.violations.len()).sum();
    (vp, tv)
}

/// Temperature plus `N(0, sigma^2)`, clamped to the valid range; every
/// other field is unchanged.
pub fn mutate_params(params: &TranslatorParams, rng: &mut SeededRng) -> TranslatorParams {
    let mut next = params.clone();
    next.temperature = TranslatorParams::clamp_temperature(params.temperature + rng.gaussian(MUTATION_SIGMA));
    next
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceEntry {
    /// 1-based.
    pub iteration: usize,
    pub params: TranslatorParams,
    pub vp: usize,
    pub tv: usize,
    /// Best fitness after this iteration; `None` stands for infinity.
    pub best_vp: Option<usize>,
    pub best_tv: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchOutcome {
    pub schema_version: u32,
    pub program_id: String,
    pub seed: u64,
    pub best_translation: Option<String>,
    /// Parameters that produced `best_translation`.
    pub best_params: Option<TranslatorParams>,
    pub min_vp: Option<usize>,
    pub min_tv: Option<usize>,
    /// Set when an iteration had no violated property.
    pub success: bool,
    pub trace: Vec<TraceEntry>,
}

impl SearchOutcome {
    pub fn iterations(&self) -> usize {
        self.trace.len()
    }
}

#[derive(Debug, thiserror::Error)]
#[error("search aborted after {} iterations: {source}", partial.trace.len())]
pub struct SearchError {
    #[source]
    pub source: EngineError,
    /// Trace up to the failing iteration.
    pub partial: Box<SearchOutcome>,
}

pub struct SearchConfig {
    pub search_budget: usize,
    pub test_budget: usize,
    pub init: TranslatorParams,
    pub seed: u64,
    /// Worker threads for each property run; 0 uses the global pool.
    pub jobs: usize,
}

fn iteration_seed(seed: u64, iteration: usize) -> u64 {
    seed_of(&digest_fields([seed.to_le_bytes(), (iteration as u64).to_le_bytes()]))
}

fn better(vp: usize, tv: usize, best: Option<(usize, usize)>) -> bool {
    match best {
        None => true,
        Some((bvp, btv)) => vp < bvp || (vp == bvp && tv < btv),
    }
}

/// Runs the search for `program`, the sole input of every property.
/// `properties` must be nonempty and search-compatible.
pub fn search_translation(
    properties: &[PropertySpec],
    program: &BoundProgram,
    cfg: &SearchConfig,
    translator: &Translator,
    inspector: &Inspector,
) -> Result<SearchOutcome, SearchError> {
    let mut outcome = SearchOutcome {
        schema_version: crate::engine::SCHEMA_VERSION,
        program_id: program.id.clone(),
        seed: cfg.seed,
        best_translation: None,
        best_params: None,
        min_vp: None,
        min_tv: None,
        success: false,
        trace: Vec::new(),
    };
    let dst = properties
        .first()
        .and_then(|p| p.query_block.first())
        .map(|q| q.dst_lang)
        .expect("at least one property with a query");
    let mut mutation = SeededRng::new(cfg.seed);
    let mut params = cfg.init.clone();
    params.backend_id = translator.backend_id();
    let mut best: Option<(usize, usize)> = None;
    for iteration in 1..=cfg.search_budget {
        let fail = |source: EngineError, outcome: &SearchOutcome| SearchError {
            source,
            partial: Box::new(outcome.clone()),
        };
        let ctx = RunContext {
            translator,
            inspector,
            params: params.clone(),
            seed: iteration_seed(cfg.seed, iteration),
            jobs: cfg.jobs,
        };
        let pools = vec![vec![program.clone()]];
        let mut reports = Vec::with_capacity(properties.len());
        for prop in properties {
            reports.push(run_property(prop, &pools, cfg.test_budget, &ctx).map_err(|e| fail(e, &outcome))?);
        }
        // Every property translates the same program with the same
        // parameters, so the cache hands all of them this translation.
        let tr = translator
            .translate(&program.text, program.lang, dst, &params)
            .map_err(|e| fail(e.into(), &outcome))?
            .candidates[0]
            .clone();
        let (vp, tv) = count_fitness(&reports);
        if vp == 0 || better(vp, tv, best) {
            best = Some((vp, tv));
            outcome.best_translation = Some(tr);
            outcome.best_params = Some(params.clone());
        }
        outcome.min_vp = best.map(|b| b.0);
        outcome.min_tv = best.map(|b| b.1);
        outcome.trace.push(TraceEntry {
            iteration,
            params: params.clone(),
            vp,
            tv,
            best_vp: outcome.min_vp,
            best_tv: outcome.min_tv,
        });
        if vp == 0 {
            outcome.success = true;
            return Ok(outcome);
        }
        params = mutate_params(&params, &mut mutation);
    }
    Ok(outcome)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn report(violations: usize) -> TestReport {
        let mut r: TestReport = serde_json::from_value(serde_json::json!({
            "property": "p", "k": 1, "transform": "none", "family": "arity",
            "syntactic": true, "budget": 1, "total_tests": 1, "skipped": 0,
            "skip_reasons": {}, "passed": 0, "vacuous": 0, "failing_units": 0,
            "violations": [], "params": TranslatorParams::new(1, 0.1), "seed": 0
        }))
        .unwrap();
        r.violations = (0..violations)
            .map(|i| crate::engine::ViolationRecord {
                fingerprint: i.to_string(),
                bound_inputs: Vec::new(),
                bound_outputs: Vec::new(),
                failed_clause: String::new(),
            })
            .collect();
        r
    }

    #[test]
    fn fitness_counts_properties_and_violations() {
        assert_eq!(count_fitness(&[]), (0, 0));
        assert_eq!(count_fitness(&[report(0), report(0)]), (0, 0));
        assert_eq!(count_fitness(&[report(2), report(0), report(3)]), (2, 5));
    }

    #[test]
    fn lexicographic_order() {
        assert!(better(3, 100, None));
        assert!(better(1, 50, Some((2, 1))));
        assert!(better(2, 0, Some((2, 1))));
        assert!(!better(2, 1, Some((2, 1))));
        assert!(!better(3, 0, Some((2, 1))));
    }

    #[test]
    fn mutation_stays_in_range_and_only_moves_temperature() {
        let mut rng = SeededRng::new(1);
        let mut p = TranslatorParams::new(2, 1.99);
        p.extra.insert("k".into(), "v".into());
        for _ in 0..500 {
            let q = mutate_params(&p, &mut rng);
            assert!((0.0001..=2.0).contains(&q.temperature));
            assert_eq!((q.beam, &q.extra), (p.beam, &p.extra));
            p = q;
        }
    }
}
