//! `transprop`: property testing of code translators and property-guided
//! parameter search.
//!
//! Exit codes: 0 on a completed run, 1 when the run completed but failed
//! its goal (violations under `--fail-on-violation`, an unsuccessful
//! search, corpus errors), 2 on configuration, I/O or backend errors.

mod config;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use transprop::code::{Corpus, ProgramUnit, TestCase};
use transprop::dsl::validate_search_spec;
use transprop::engine::{bound_from_unit, render_table, run_suite, RunContext, SuiteConfig};
use transprop::inspect::Inspector;
use transprop::search::{search_translation, SearchConfig};
use transprop::translator::{QueryCache, Translator, TranslatorParams};
use transprop::{bundled, Lang};

use config::{RunConfig, CACHE_DIR_ENV};

#[derive(Parser)]
#[command(name = "transprop", version, about = "Property-based testing of code translators")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Test the translator against a property suite over a corpus.
    Test(Common),
    /// Search translator parameters for one program.
    Search {
        /// Source file; tests come from `--tests` or a sibling tests.json.
        program: PathBuf,
        #[arg(long)]
        tests: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Validate a corpus directory and print per-program status.
    CorpusCheck(Common),
}

#[derive(Args, Default)]
struct Common {
    /// TOML run configuration; flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    corpus: Option<PathBuf>,
    /// Glob of .ksp files; repeatable. Defaults to the bundled specs.
    #[arg(long)]
    specs: Vec<String>,
    /// mock, http://host:port[/prefix] or cmd:<command line>.
    #[arg(long)]
    backend: Option<String>,
    #[arg(long)]
    beam: Option<usize>,
    #[arg(long)]
    temperature: Option<f64>,
    /// Testing budget for every property, overriding the 1-safety and
    /// k-safety defaults.
    #[arg(long)]
    budget: Option<usize>,
    #[arg(long)]
    search_budget: Option<usize>,
    #[arg(long)]
    test_budget: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long)]
    cache_dir: Option<PathBuf>,
    /// Output directory for reports.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    fail_on_violation: bool,
}

impl Common {
    fn resolve(&self) -> Result<RunConfig, String> {
        let mut c = match &self.config {
            Some(p) => RunConfig::load(p)?,
            None => RunConfig::default(),
        };
        if let Ok(dir) = std::env::var(CACHE_DIR_ENV) {
            if !dir.is_empty() {
                c.cache_dir = Some(dir.into());
            }
        }
        macro_rules! overlay {
            ($($field:ident),*) => {$(
                if let Some(v) = &self.$field {
                    c.$field = v.clone().into();
                }
            )*};
        }
        overlay!(
            corpus,
            backend,
            beam,
            temperature,
            search_budget,
            test_budget,
            seed,
            jobs,
            cache_dir,
            out
        );
        if self.budget.is_some() {
            c.budget = self.budget;
        }
        if !self.specs.is_empty() {
            c.specs = self.specs.clone();
        }
        c.validate()?;
        Ok(c)
    }
}

fn translator(c: &RunConfig) -> Result<Translator, String> {
    let cache = match &c.cache_dir {
        Some(d) => Some(QueryCache::open(d).map_err(|e| e.to_string())?),
        None => None,
    };
    Ok(Translator::new(c.backend()?, cache))
}

fn write(path: &Path, text: &str) -> Result<(), String> {
    if let Some(parent) = path.parent() {
        std::fs::create_dir_all(parent).map_err(|e| format!("{}: {e}", parent.display()))?;
    }
    std::fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))
}

fn cmd_test(common: &Common) -> Result<u8, String> {
    let c = common.resolve()?;
    let corpus_dir = c
        .corpus
        .as_ref()
        .ok_or("no corpus given (--corpus or `corpus` in the config)")?;
    let corpus = Corpus::load(corpus_dir).map_err(|e| e.to_string())?;
    let specs = c.load_specs(bundled::testing_specs)?;
    let translator = translator(&c)?;
    let inspector = Inspector::new(c.toolchain.clone());
    let ctx = RunContext {
        translator: &translator,
        inspector: &inspector,
        params: translator.params(c.beam, c.temperature),
        seed: c.seed,
        jobs: c.jobs,
    };
    let suite_cfg = SuiteConfig {
        budget_one_safety: c.budget_one_safety,
        budget_k_safety: c.budget_k_safety,
        budget: c.budget,
    };
    let suite = run_suite(&specs, &corpus, &suite_cfg, &ctx).map_err(|e| e.to_string())?;
    let table = render_table(&suite);
    print!("{table}");
    if let Some(out) = &c.out {
        let json = serde_json::to_string_pretty(&suite).expect("reports serialize");
        write(&out.join("report.json"), &(json + "\n"))?;
        write(&out.join("table.txt"), &table)?;
    }
    eprintln!("backend calls: {}", translator.backend_calls());
    Ok(u8::from(common.fail_on_violation && suite.tv > 0))
}

fn lang_of(path: &Path) -> Result<Lang, String> {
    let ext = path.extension().and_then(|e| e.to_str()).unwrap_or("");
    ext.parse().map_err(|e| format!("{}: {e}", path.display()))
}

fn cmd_search(program: &Path, tests: Option<&Path>, common: &Common) -> Result<u8, String> {
    let c = common.resolve()?;
    let lang = lang_of(program)?;
    let source = std::fs::read_to_string(program).map_err(|e| format!("{}: {e}", program.display()))?;
    let tests_path = tests
        .map(Path::to_path_buf)
        .or_else(|| Some(program.with_file_name("tests.json")).filter(|p| p.exists()));
    let cases: Vec<TestCase> = match &tests_path {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display()))?;
            serde_json::from_str(&text).map_err(|e| format!("{}: {e}", p.display()))?
        }
        None => Vec::new(),
    };
    let id = program
        .parent()
        .and_then(|d| d.file_name())
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| "program".into());
    let unit = ProgramUnit::new(id, lang, source, cases);
    if let Some(e) = &unit.parse_error {
        return Err(format!("{}: {e}", program.display()));
    }
    let specs = c.load_specs(bundled::search_specs)?;
    for s in &specs {
        let v = validate_search_spec(s);
        if !v.ok {
            return Err(format!("{} is not search-compatible: {}", s.name, v.reasons.join("; ")));
        }
    }
    let translator = translator(&c)?;
    let inspector = Inspector::new(c.toolchain.clone());
    let cfg = SearchConfig {
        search_budget: c.search_budget,
        test_budget: c.test_budget,
        init: TranslatorParams::new(c.beam, c.temperature),
        seed: c.seed,
        jobs: c.jobs,
    };
    let outcome = match search_translation(&specs, &bound_from_unit(&unit), &cfg, &translator, &inspector) {
        Ok(o) => o,
        Err(e) => {
            if let Some(out) = &c.out {
                let json = serde_json::to_string_pretty(&e.partial).expect("traces serialize");
                write(&out.join("trace.json"), &(json + "\n"))?;
            }
            return Err(e.to_string());
        }
    };
    let dst = specs[0].query_block[0].dst_lang;
    for e in &outcome.trace {
        println!(
            "iteration {:>2}  temperature {:.4}  VP {:>2}  TV {:>4}  best ({}, {})",
            e.iteration,
            e.params.temperature,
            e.vp,
            e.tv,
            e.best_vp.map_or("inf".into(), |v| v.to_string()),
            e.best_tv.map_or("inf".into(), |v| v.to_string()),
        );
    }
    println!(
        "{}",
        if outcome.success {
            "no property violated"
        } else {
            "search budget exhausted"
        }
    );
    if let Some(out) = &c.out {
        let json = serde_json::to_string_pretty(&outcome).expect("traces serialize");
        write(&out.join("trace.json"), &(json + "\n"))?;
        if let Some(t) = &outcome.best_translation {
            write(&out.join(format!("translation.{}", dst.extension())), t)?;
        }
    } else if let Some(t) = &outcome.best_translation {
        println!("{t}");
    }
    Ok(u8::from(!outcome.success))
}

fn cmd_corpus_check(common: &Common) -> Result<u8, String> {
    let c = common.resolve()?;
    let dir = c
        .corpus
        .as_ref()
        .ok_or("no corpus given (--corpus or `corpus` in the config)")?;
    let status = Corpus::check(dir).map_err(|e| e.to_string())?;
    let mut failed = 0;
    for s in &status {
        let langs: Vec<&str> = s.languages.iter().map(|l| l.tag()).collect();
        let verdict = if !s.errors.is_empty() {
            failed += 1;
            "error"
        } else if !s.warnings.is_empty() {
            "warn"
        } else {
            "ok"
        };
        println!("{verdict:<5} {} [{}] {} tests", s.id, langs.join(","), s.tests);
        for w in &s.warnings {
            println!("      warning: {w}");
        }
        for e in &s.errors {
            println!("      error: {e}");
        }
    }
    println!("{} programs, {} with errors", status.len(), failed);
    Ok(u8::from(failed > 0))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Test(common) => cmd_test(common),
        Command::Search { program, tests, common } => cmd_search(program, tests.as_deref(), common),
        Command::CorpusCheck(common) => cmd_corpus_check(common),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
