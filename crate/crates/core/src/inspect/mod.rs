//! The five program inspections. Results are memoized per source text, so
//! repeated questions about the same translation cost one evaluation.

mod cpp;
mod toolchain;

use std::sync::Arc;

use dashmap::DashMap;

use crate::code::corpus::Counts;
use crate::code::interp::{run_function, ExecOutcome};
use crate::code::{parse_program, walk_stmts, FunctionAst, TestCase};
use crate::digest::digest_fields;
use crate::dsl::InspectFn;
use crate::lang::Lang;

pub use toolchain::{ToolchainConfig, DEFAULT_TIMEOUT_MS};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InspectError {
    /// The program cannot be inspected, e.g. a count on unparsable text.
    #[error("inspection unavailable: {0}")]
    Unavailable(String),
    #[error("toolchain missing: {0}")]
    ToolchainMissing(String),
    #[error("sandbox failure: {0}")]
    SandboxFailure(String),
}

/// `if` and `switch` statements; each `else if` is its own `if`, ternaries
/// are not counted.
pub fn count_conditionals(f: &FunctionAst) -> usize {
    let mut n = 0;
    walk_stmts(&f.body, &mut |s| n += s.is_conditional() as usize);
    n
}

/// `for`, `while` and `do` loops; comprehensions are not counted.
pub fn count_loops(f: &FunctionAst) -> usize {
    let mut n = 0;
    walk_stmts(&f.body, &mut |s| n += s.is_loop() as usize);
    n
}

pub fn ast_counts(f: &FunctionAst) -> Counts {
    Counts {
        arity: f.arity(),
        num_conditionals: count_conditionals(f),
        num_loops: count_loops(f),
    }
}

/// Pointwise `retValues` equality: equal lengths and every pair `Ok` with
/// equal values.
pub fn ret_values_equal(a: &[ExecOutcome], b: &[ExecOutcome]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.same_as(y))
}

type Key = (String, Lang);

/// Memoizing inspection front end bound to one toolchain configuration.
#[derive(Debug, Default)]
pub struct Inspector {
    config: ToolchainConfig,
    parsed: DashMap<Key, Result<Arc<FunctionAst>, String>>,
    compiled: DashMap<Key, bool>,
    executed: DashMap<(String, Lang, String), Arc<Vec<ExecOutcome>>>,
}

impl Inspector {
    pub fn new(config: ToolchainConfig) -> Self {
        Inspector {
            config,
            ..Inspector::default()
        }
    }

    pub fn config(&self) -> &ToolchainConfig {
        &self.config
    }

    fn key(text: &str, lang: Lang) -> Key {
        (digest_fields([text]), lang)
    }

    /// Subset parse of `text`, memoized.
    pub fn parse(&self, text: &str, lang: Lang) -> Result<Arc<FunctionAst>, InspectError> {
        let key = Self::key(text, lang);
        self.parsed
            .entry(key)
            .or_insert_with(|| parse_program(text, lang).map(Arc::new).map_err(|e| e.to_string()))
            .clone()
            .map_err(InspectError::Unavailable)
    }

    /// Records a tree already known to render as `text`, skipping a reparse.
    pub fn prime(&self, text: &str, lang: Lang, ast: &FunctionAst) {
        self.parsed
            .entry(Self::key(text, lang))
            .or_insert_with(|| Ok(Arc::new(ast.clone())));
    }

    pub fn counts(&self, text: &str, lang: Lang) -> Result<Counts, InspectError> {
        if lang == Lang::Cpp {
            return cpp::counts(text).ok_or_else(|| InspectError::Unavailable("no C++ parameter list found".into()));
        }
        Ok(ast_counts(self.parse(text, lang)?.as_ref()))
    }

    pub fn arity(&self, text: &str, lang: Lang) -> Result<usize, InspectError> {
        Ok(self.counts(text, lang)?.arity)
    }

    pub fn num_conditionals(&self, text: &str, lang: Lang) -> Result<usize, InspectError> {
        Ok(self.counts(text, lang)?.num_conditionals)
    }

    pub fn num_loops(&self, text: &str, lang: Lang) -> Result<usize, InspectError> {
        Ok(self.counts(text, lang)?.num_loops)
    }

    /// Python is only checked for parsing. Without a configured command,
    /// Java and Python fall back to the subset parser; C++ has no fallback.
    pub fn compiles(&self, text: &str, lang: Lang) -> Result<bool, InspectError> {
        let key = Self::key(text, lang);
        if let Some(v) = self.compiled.get(&key) {
            return Ok(*v);
        }
        let v = match self.config.compile_template(lang) {
            Some(t) => toolchain::compile(t, text, lang, &self.config)?,
            None if lang == Lang::Cpp => {
                return Err(InspectError::ToolchainMissing(
                    "no C++ compile command configured".into(),
                ))
            }
            None => self.parse(text, lang).is_ok(),
        };
        self.compiled.insert(key, v);
        Ok(v)
    }

    /// One outcome per test case. A program that does not compile yields
    /// `CompileFail` for every case.
    pub fn ret_values(
        &self,
        text: &str,
        lang: Lang,
        tests: &[TestCase],
    ) -> Result<Arc<Vec<ExecOutcome>>, InspectError> {
        if lang == Lang::Cpp {
            return Err(InspectError::Unavailable(
                "skipped: unsupported (no C++ execution)".into(),
            ));
        }
        let tests_key = digest_fields([serde_json::to_vec(tests).expect("tests serialize")]);
        let key = (digest_fields([text]), lang, tests_key);
        if let Some(v) = self.executed.get(&key) {
            return Ok(Arc::clone(&v));
        }
        let out = if !self.compiles(text, lang)? {
            vec![ExecOutcome::CompileFail; tests.len()]
        } else if let (Lang::Py, Some(t)) = (lang, self.config.py_run.as_deref()) {
            toolchain::run_python(t, text, tests, &self.config)?
        } else {
            // Compiled by an external tool but outside the subset: an error.
            let ast = self.parse(text, lang)?;
            tests
                .iter()
                .map(|t| run_function(&ast, lang, &t.inputs, self.config.step_limit))
                .collect()
        };
        let out = Arc::new(out);
        self.executed.insert(key, Arc::clone(&out));
        Ok(out)
    }

    /// Integer inspections by name.
    pub fn count(&self, func: InspectFn, text: &str, lang: Lang) -> Result<usize, InspectError> {
        let c = self.counts(text, lang)?;
        Ok(match func {
            InspectFn::Arity => c.arity,
            InspectFn::NumConditionals => c.num_conditionals,
            InspectFn::NumLoops => c.num_loops,
            InspectFn::Compiles | InspectFn::RetValues => {
                unreachable!("{func} is not a count")
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::Value;

    #[test]
    fn else_if_chain_counts_each_if() {
        let i = Inspector::default();
        let src = "int f(int a) { if (a > 0) { return 1; } else if (a < 0) { return -1; } return 0; }";
        assert_eq!(i.num_conditionals(src, Lang::Java).unwrap(), 2);
    }

    #[test]
    fn nested_for_loops_count_twice() {
        let i = Inspector::default();
        let src = "def f(n):\n    s = 0\n    for a in range(n):\n        for b in range(n):\n            s += 1\n    xs = [x for x in range(n)]\n    return s\n";
        assert_eq!(i.num_loops(src, Lang::Py).unwrap(), 2);
        assert_eq!(i.arity("def f():\n    return 1\n", Lang::Py).unwrap(), 0);
    }

    #[test]
    fn broken_python_does_not_compile_and_has_no_counts() {
        let i = Inspector::default();
        let src = "def f(a)\n    return a\n";
        assert!(!i.compiles(src, Lang::Py).unwrap());
        assert!(matches!(i.arity(src, Lang::Py), Err(InspectError::Unavailable(_))));
        let tests = vec![TestCase {
            inputs: vec![Value::Int(1)],
            expected: Value::Int(1),
        }];
        let out = i.ret_values(src, Lang::Py, &tests).unwrap();
        assert_eq!(out[0], ExecOutcome::CompileFail);
    }

    #[test]
    fn cpp_needs_a_compiler_and_cannot_run() {
        let i = Inspector::default();
        let src = "int f(int a) { return a; }";
        assert!(matches!(
            i.compiles(src, Lang::Cpp),
            Err(InspectError::ToolchainMissing(_))
        ));
        assert!(i.ret_values(src, Lang::Cpp, &[]).is_err());
        assert_eq!(i.arity(src, Lang::Cpp).unwrap(), 1);
    }

    #[test]
    fn timeout_never_equals_a_value() {
        let a = vec![ExecOutcome::Timeout];
        let b = vec![ExecOutcome::Ok(Value::Int(1))];
        assert!(!ret_values_equal(&a, &b));
        assert!(!ret_values_equal(&a, &a));
    }
}
