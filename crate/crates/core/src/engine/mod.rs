//! Budgeted metamorphic testing of one property.
//!
//! Each budget unit samples inputs, derives variants, checks preconditions
//! (resampling up to [`MAX_RESAMPLES`] times), translates every output and
//! evaluates the postcondition on all `N^k` candidate combinations. A unit
//! is a violation only when every combination fails.

pub mod eval;
mod report;

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::code::corpus::Corpus;
use crate::code::{render, ProgramUnit};
use crate::digest::{digest_fields, seed_of, Hasher};
use crate::dsl::{render_expr, PropertySpec};
use crate::inspect::{InspectError, Inspector};
use crate::transforms::{self, SeededRng};
use crate::translator::{TranslateError, Translator, TranslatorParams};

pub use eval::{Binding, BoundProgram, Env, Evaluator, Val, Verdict};
pub use report::{family_of, render_table, SuiteReport, SCHEMA_VERSION};

pub const MAX_RESAMPLES: usize = 100;
pub const DEFAULT_BUDGET_ONE_SAFETY: usize = 500;
pub const DEFAULT_BUDGET_K_SAFETY: usize = 2500;

/// Budget used for a property with `k` queries.
pub fn default_budget(k: usize) -> usize {
    if k <= 1 {
        DEFAULT_BUDGET_ONE_SAFETY
    } else {
        DEFAULT_BUDGET_K_SAFETY
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundInput {
    pub name: String,
    pub id: String,
    /// Source text; for variants, the rendered variant.
    pub text: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundOutput {
    pub name: String,
    pub candidates: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ViolationRecord {
    pub fingerprint: String,
    pub bound_inputs: Vec<BoundInput>,
    pub bound_outputs: Vec<BoundOutput>,
    /// Postcondition followed by the inspection values of the first
    /// candidate combination.
    pub failed_clause: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TestReport {
    pub property: String,
    pub k: usize,
    /// Transformation used, `none` for 1-safety properties.
    pub transform: String,
    /// Table column: the semantic inspection if any, else the count.
    pub family: String,
    pub syntactic: bool,
    pub budget: usize,
    /// Units that reached a verdict.
    pub total_tests: usize,
    pub skipped: usize,
    pub skip_reasons: BTreeMap<String, usize>,
    pub passed: usize,
    /// Passing units whose every satisfying combination was vacuous.
    pub vacuous: usize,
    /// Failing units before de-duplication.
    pub failing_units: usize,
    pub violations: Vec<ViolationRecord>,
    pub params: TranslatorParams,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl TestReport {
    /// Unique failing tests over total tests, in percent.
    pub fn percentage(&self) -> f64 {
        if self.total_tests == 0 {
            0.0
        } else {
            100.0 * self.violations.len() as f64 / self.total_tests as f64
        }
    }

    fn empty(spec: &PropertySpec, budget: usize, params: &TranslatorParams, seed: u64) -> Self {
        TestReport {
            property: spec.name.clone(),
            k: spec.k,
            transform: spec.transform().map_or("none".to_string(), |t| t.name().to_string()),
            family: family_of(spec).to_string(),
            syntactic: spec.is_syntactic(),
            budget,
            total_tests: 0,
            skipped: 0,
            skip_reasons: BTreeMap::new(),
            passed: 0,
            vacuous: 0,
            failing_units: 0,
            violations: Vec::new(),
            params: params.clone(),
            seed,
            error: None,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum EngineError {
    #[error(transparent)]
    Translate(#[from] TranslateError),
    #[error("property `{0}` has no candidate programs for input `{1}`")]
    EmptyPool(String, String),
}

/// Programs an input identifier may be bound to.
pub type Pool = Vec<BoundProgram>;

pub fn bound_from_unit(u: &ProgramUnit) -> BoundProgram {
    BoundProgram {
        id: u.id.clone(),
        text: Arc::from(u.source.as_str()),
        lang: u.lang,
        ast: u.ast.clone(),
        tests: Arc::clone(&u.tests),
    }
}

/// One pool per spec input: corpus programs of the input's language, and
/// only parsable ones when the input feeds a transformation.
pub fn pools_from_corpus(spec: &PropertySpec, corpus: &Corpus) -> Result<Vec<Pool>, EngineError> {
    spec.inputs
        .iter()
        .map(|input| {
            let lang = spec.lang_of(input);
            let transformed = spec.derived_vars.iter().any(|d| d.call.args.contains(input));
            let pool: Pool = corpus
                .units()
                .iter()
                .filter(|u| Some(u.lang) == lang && (!transformed || u.ast.is_some()))
                .map(bound_from_unit)
                .collect();
            if pool.is_empty() {
                Err(EngineError::EmptyPool(spec.name.clone(), input.clone()))
            } else {
                Ok(pool)
            }
        })
        .collect()
}

/// Everything one property run needs besides the property itself.
pub struct RunContext<'a> {
    pub translator: &'a Translator,
    pub inspector: &'a Inspector,
    pub params: TranslatorParams,
    pub seed: u64,
    /// Worker threads for budget units; 0 uses the global pool.
    pub jobs: usize,
}

enum UnitResult {
    Pass { vacuous: bool },
    Skip(String),
    Violation(Box<ViolationRecord>),
}

struct Sampled {
    env: Env,
    inputs: Vec<BoundInput>,
    draws: Vec<u64>,
}

fn unit_seed(seed: u64, property: &str, unit: usize, attempt: usize) -> u64 {
    seed_of(&digest_fields([
        seed.to_le_bytes().as_slice(),
        property.as_bytes(),
        &(unit as u64).to_le_bytes(),
        &(attempt as u64).to_le_bytes(),
    ]))
}

/// Samples inputs and derives variants for one attempt.
fn sample(spec: &PropertySpec, pools: &[Pool], rng: &mut SeededRng, inspector: &Inspector) -> Sampled {
    let mut env = Env::new();
    let mut inputs = Vec::new();
    for (name, pool) in spec.inputs.iter().zip(pools) {
        let p = pool[rng.below(pool.len())].clone();
        inputs.push(BoundInput {
            name: name.clone(),
            id: p.id.clone(),
            text: None,
        });
        env.insert(name.clone(), Binding::Program(p));
    }
    let mut draws = Vec::new();
    for d in &spec.derived_vars {
        let args: Vec<&BoundProgram> = d
            .call
            .args
            .iter()
            .filter_map(|a| match env.get(a) {
                Some(Binding::Program(p)) => Some(p),
                _ => None,
            })
            .collect();
        let asts: Option<Vec<&crate::code::FunctionAst>> = if args.len() == d.call.args.len() {
            args.iter().map(|p| p.ast.as_deref()).collect()
        } else {
            None
        };
        let binding = match asts {
            None => Binding::Null,
            Some(asts) => {
                let outcome = transforms::apply(d.call.func, &asts, rng);
                draws.extend(outcome.rng_draws.iter().copied());
                match outcome.result {
                    None => Binding::Null,
                    Some(ast) => {
                        let text = render(&ast, d.call.lang);
                        inspector.prime(&text, d.call.lang, &ast);
                        let suites: Vec<&[crate::code::TestCase]> = args.iter().map(|p| p.tests.as_slice()).collect();
                        let ids: Vec<&str> = args.iter().map(|p| p.id.as_str()).collect();
                        Binding::Program(BoundProgram {
                            id: format!("{}({})", d.call.func, ids.join(",")),
                            text: Arc::from(text.as_str()),
                            lang: d.call.lang,
                            ast: Some(Arc::new(ast)),
                            tests: Arc::new(outcome.adapter.apply(&suites)),
                        })
                    }
                }
            }
        };
        inputs.push(BoundInput {
            name: d.name.clone(),
            id: match &binding {
                Binding::Program(p) => p.id.clone(),
                Binding::Null => "null".into(),
            },
            text: match &binding {
                Binding::Program(p) => Some(p.text.to_string()),
                Binding::Null => None,
            },
        });
        env.insert(d.name.clone(), binding);
    }
    Sampled { env, inputs, draws }
}

fn fingerprint(property: &str, inputs: &[BoundInput], draws: &[u64]) -> String {
    let mut h = Hasher::new().field(property);
    for i in inputs {
        h = h.field(&i.name).field(&i.id);
    }
    let bytes: Vec<u8> = draws.iter().flat_map(|d| d.to_le_bytes()).collect();
    h.field(bytes).finish()
}

fn skip_reason(e: &InspectError) -> String {
    match e {
        InspectError::Unavailable(m) if m.starts_with("skipped: unsupported") => m.clone(),
        InspectError::Unavailable(_) => "inspection unavailable".into(),
        InspectError::ToolchainMissing(m) => format!("toolchain missing: {m}"),
        InspectError::SandboxFailure(_) => "sandbox failure".into(),
    }
}

fn run_unit(
    spec: &PropertySpec,
    pools: &[Pool],
    ctx: &RunContext<'_>,
    unit: usize,
) -> Result<UnitResult, TranslateError> {
    let mut accepted = None;
    for attempt in 0..=MAX_RESAMPLES {
        let mut rng = SeededRng::new(unit_seed(ctx.seed, &spec.name, unit, attempt));
        let s = sample(spec, pools, &mut rng, ctx.inspector);
        let ev = Evaluator {
            env: &s.env,
            inspector: ctx.inspector,
        };
        let ok = spec
            .preconditions
            .iter()
            .all(|p| ev.verdict(p).map(|v| v.holds).unwrap_or(false));
        if ok {
            accepted = Some(s);
            break;
        }
    }
    let Some(s) = accepted else {
        return Ok(UnitResult::Skip(format!(
            "preconditions unsatisfied after {MAX_RESAMPLES} resamples"
        )));
    };
    let mut env = s.env;
    let mut outputs: Vec<(String, BoundProgram, Arc<Vec<String>>)> = Vec::new();
    for q in &spec.query_block {
        let src = match env.get(&q.source) {
            Some(Binding::Program(p)) => p.clone(),
            _ => return Ok(UnitResult::Skip("query on a null program".into())),
        };
        let result = ctx
            .translator
            .translate(&src.text, q.src_lang, q.dst_lang, &ctx.params)?;
        let template = BoundProgram {
            id: format!("{}->{}", src.id, q.dst_lang),
            text: Arc::from(""),
            lang: q.dst_lang,
            ast: None,
            tests: Arc::clone(&src.tests),
        };
        outputs.push((q.target.clone(), template, result.candidates));
        env.insert(q.target.clone(), Binding::Null);
    }
    let combos: usize = outputs.iter().map(|(_, _, c)| c.len()).product();
    let mut any_unavailable: Option<String> = None;
    let mut vacuous_only = true;
    let mut holds_somewhere = false;
    let mut first_env = None;
    for combo in 0..combos {
        let mut rest = combo;
        for (name, template, cands) in &outputs {
            let pick = rest % cands.len();
            rest /= cands.len();
            let mut p = template.clone();
            p.text = Arc::from(cands[pick].as_str());
            env.insert(name.clone(), Binding::Program(p));
        }
        if combo == 0 {
            first_env = Some(env.clone());
        }
        let ev = Evaluator {
            env: &env,
            inspector: ctx.inspector,
        };
        match ev.verdict(&spec.postcondition) {
            Ok(v) if v.holds => {
                holds_somewhere = true;
                vacuous_only &= v.vacuous;
            }
            Ok(_) => {}
            Err(e) => {
                any_unavailable.get_or_insert_with(|| skip_reason(&e));
            }
        }
    }
    if holds_somewhere {
        return Ok(UnitResult::Pass { vacuous: vacuous_only });
    }
    if let Some(reason) = any_unavailable {
        return Ok(UnitResult::Skip(reason));
    }
    let env0 = first_env.expect("at least one combination");
    let ev = Evaluator {
        env: &env0,
        inspector: ctx.inspector,
    };
    let values: Vec<String> = eval::inspection_values(&ev, &spec.postcondition)
        .into_iter()
        .map(|(call, v)| format!("{call} = {v}"))
        .collect();
    Ok(UnitResult::Violation(Box::new(ViolationRecord {
        fingerprint: fingerprint(&spec.name, &s.inputs, &s.draws),
        bound_inputs: s.inputs,
        bound_outputs: outputs
            .iter()
            .map(|(name, _, c)| BoundOutput {
                name: name.clone(),
                candidates: c.as_ref().clone(),
            })
            .collect(),
        failed_clause: format!("{} where {}", render_expr(&spec.postcondition), values.join("; ")),
    })))
}

/// Tests one property for `budget` units. Backend failures abort the run.
pub fn run_property(
    spec: &PropertySpec,
    pools: &[Pool],
    budget: usize,
    ctx: &RunContext<'_>,
) -> Result<TestReport, EngineError> {
    for (input, pool) in spec.inputs.iter().zip(pools) {
        if pool.is_empty() {
            return Err(EngineError::EmptyPool(spec.name.clone(), input.clone()));
        }
    }
    let work = |u: usize| run_unit(spec, pools, ctx, u);
    let results: Vec<Result<UnitResult, TranslateError>> = if ctx.jobs == 1 {
        (0..budget).map(work).collect()
    } else if ctx.jobs == 0 {
        (0..budget).into_par_iter().map(work).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(ctx.jobs)
            .build()
            .expect("thread pool");
        pool.install(|| (0..budget).into_par_iter().map(work).collect())
    };
    let mut report = TestReport::empty(spec, budget, &ctx.params, ctx.seed);
    let mut failing = Vec::new();
    for r in results {
        match r? {
            UnitResult::Pass { vacuous } => {
                report.total_tests += 1;
                report.passed += 1;
                report.vacuous += vacuous as usize;
            }
            UnitResult::Skip(reason) => {
                report.skipped += 1;
                *report.skip_reasons.entry(reason).or_default() += 1;
            }
            UnitResult::Violation(v) => {
                report.total_tests += 1;
                report.failing_units += 1;
                failing.push(*v);
            }
        }
    }
    report.violations = dedup(failing);
    Ok(report)
}

/// One record per fingerprint, the first seen, sorted by fingerprint.
pub fn dedup(violations: Vec<ViolationRecord>) -> Vec<ViolationRecord> {
    let mut unique: BTreeMap<String, ViolationRecord> = BTreeMap::new();
    for v in violations {
        unique.entry(v.fingerprint.clone()).or_insert(v);
    }
    unique.into_values().collect()
}

/// Knobs for a whole suite.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub budget_one_safety: usize,
    pub budget_k_safety: usize,
    /// Overrides both budgets when set.
    pub budget: Option<usize>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            budget_one_safety: DEFAULT_BUDGET_ONE_SAFETY,
            budget_k_safety: DEFAULT_BUDGET_K_SAFETY,
            budget: None,
        }
    }
}

impl SuiteConfig {
    pub fn budget_for(&self, k: usize) -> usize {
        self.budget.unwrap_or(if k <= 1 {
            self.budget_one_safety
        } else {
            self.budget_k_safety
        })
    }
}

/// Runs every spec; a spec without candidate programs is reported with an
/// error and the suite continues, while backend failures abort it.
pub fn run_suite(
    specs: &[PropertySpec],
    corpus: &Corpus,
    cfg: &SuiteConfig,
    ctx: &RunContext<'_>,
) -> Result<SuiteReport, EngineError> {
    let mut reports = Vec::with_capacity(specs.len());
    for spec in specs {
        let budget = cfg.budget_for(spec.k);
        let report = match pools_from_corpus(spec, corpus) {
            Ok(pools) => run_property(spec, &pools, budget, ctx)?,
            Err(e @ EngineError::EmptyPool(..)) => {
                let mut r = TestReport::empty(spec, budget, &ctx.params, ctx.seed);
                r.skipped = budget;
                r.skip_reasons.insert("no candidate programs".into(), budget);
                r.error = Some(e.to_string());
                r
            }
            Err(e) => return Err(e),
        };
        reports.push(report);
    }
    Ok(SuiteReport::new(reports, ctx.seed, &ctx.params))
}
