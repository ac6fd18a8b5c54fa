mod common;

use std::sync::OnceLock;

use proptest::prelude::*;
use transprop::code::interp::{run_function, ExecOutcome};
use transprop::code::{parse_program, render, walk_stmts, Corpus, FunctionAst, ProgramUnit, Stmt, TestCase};
use transprop::dsl::TransformFn;
use transprop::inspect::ast_counts;
use transprop::transforms::{apply, SeededRng};
use transprop::translator::lower::java_to_python;
use transprop::Lang;

const STEP_LIMIT: u64 = 1_000_000;

fn corpus() -> &'static Corpus {
    static CORPUS: OnceLock<Corpus> = OnceLock::new();
    CORPUS.get_or_init(common::corpus)
}

fn java() -> Vec<&'static ProgramUnit> {
    corpus().in_lang(Lang::Java)
}

fn ast(u: &ProgramUnit) -> &FunctionAst {
    u.ast.as_deref().unwrap()
}

fn has(f: &FunctionAst, pred: fn(&Stmt) -> bool) -> bool {
    let mut found = false;
    walk_stmts(&f.body, &mut |s| found |= pred(s));
    found
}

fn reparse(f: &FunctionAst, lang: Lang) -> FunctionAst {
    let text = render(f, lang);
    parse_program(&text, lang).unwrap_or_else(|e| panic!("{e}\n{text}"))
}

/// The recorded values come from python3 on the original program.
fn agrees(f: &FunctionAst, lang: Lang, cases: &[TestCase]) -> Result<(), TestCaseError> {
    for t in cases {
        match run_function(f, lang, &t.inputs, STEP_LIMIT) {
            ExecOutcome::Ok(v) if v == t.expected => {}
            other => {
                return Err(TestCaseError::fail(format!(
                    "{}{:?}: {other:?}, expected {:?}",
                    f.name, t.inputs, t.expected
                )))
            }
        }
    }
    Ok(())
}

const UNARY: [TransformFn; 6] = [
    TransformFn::RenameParam,
    TransformFn::AddParam,
    TransformFn::AddConditional,
    TransformFn::AddLoop,
    TransformFn::RmLoop,
    TransformFn::ChBranchCond,
];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn transforms_are_pure_functions_of_input_and_seed(i in 0usize..57, j in 0usize..57, t in 0usize..7, seed in any::<u64>()) {
        let units = java();
        let (f, g) = (ast(units[i % units.len()]), ast(units[j % units.len()]));
        let func = TransformFn::ALL[t];
        let args: Vec<&FunctionAst> = if func == TransformFn::Merge { vec![f, g] } else { vec![f] };
        let a = apply(func, &args, &mut SeededRng::new(seed));
        let b = apply(func, &args, &mut SeededRng::new(seed));
        prop_assert_eq!(a, b);
    }

    #[test]
    fn behavior_preserving_transforms_keep_return_values(i in 0usize..57, j in 0usize..57, t in 0usize..4, seed in any::<u64>()) {
        let units = java();
        let (u, w) = (units[i % units.len()], units[j % units.len()]);
        let func = [TransformFn::RenameParam, TransformFn::AddParam, TransformFn::AddConditional, TransformFn::AddLoop][t];
        prop_assert!(func.preserves_behavior());
        let mut rng = SeededRng::new(seed);
        let out = apply(func, &[ast(u)], &mut rng);
        if let Some(v) = out.result {
            let cases = out.adapter.apply(&[u.tests.as_slice()]);
            agrees(&reparse(&v, Lang::Java), Lang::Java, &cases)?;
            // The variant stays translatable: its faithful Python lowering agrees too.
            let py = java_to_python(&reparse(&v, Lang::Java)).unwrap();
            agrees(&reparse(&py, Lang::Py), Lang::Py, &cases)?;
        } else {
            prop_assert_eq!(func, TransformFn::RenameParam);
            prop_assert_eq!(ast(u).arity(), 0);
        }
        let out = apply(TransformFn::Merge, &[ast(u), ast(w)], &mut rng);
        if let Some(m) = out.result {
            let cases = out.adapter.apply(&[u.tests.as_slice(), w.tests.as_slice()]);
            agrees(&reparse(&m, Lang::Java), Lang::Java, &cases)?;
        }
    }

    #[test]
    fn structural_deltas_are_exact(i in 0usize..57, j in 0usize..57, seed in any::<u64>()) {
        let units = java();
        let (u, w) = (units[i % units.len()], units[j % units.len()]);
        let (f, g) = (ast(u), ast(w));
        // Base counts are the hand-recorded ones, not recomputed.
        let (cf, cg) = (u.meta.counts[&Lang::Java], w.meta.counts[&Lang::Java]);
        let mut rng = SeededRng::new(seed);
        for func in UNARY {
            let out = apply(func, &[f], &mut rng);
            let Some(v) = out.result else { continue };
            let c = ast_counts(&reparse(&v, Lang::Java));
            let expected = match func {
                TransformFn::AddParam => (cf.arity + 1, cf.num_conditionals, cf.num_loops),
                TransformFn::AddConditional => (cf.arity, cf.num_conditionals + 1, cf.num_loops),
                TransformFn::AddLoop => (cf.arity, cf.num_conditionals, cf.num_loops + 1),
                TransformFn::RmLoop => {
                    prop_assert!(c.num_loops < cf.num_loops);
                    prop_assert!(c.num_conditionals <= cf.num_conditionals);
                    continue;
                }
                _ => (cf.arity, cf.num_conditionals, cf.num_loops),
            };
            prop_assert_eq!((c.arity, c.num_conditionals, c.num_loops), expected, "{}", func);
        }
        let out = apply(TransformFn::Merge, &[f, g], &mut rng);
        if let Some(m) = out.result {
            let c = ast_counts(&reparse(&m, Lang::Java));
            prop_assert_eq!(c.arity, cf.arity + cg.arity + 1);
            prop_assert_eq!(c.num_conditionals, cf.num_conditionals + cg.num_conditionals + 1);
            prop_assert_eq!(c.num_loops, cf.num_loops + cg.num_loops);
        }
    }

    #[test]
    fn null_exactly_when_the_target_is_absent(i in 0usize..57, seed in any::<u64>()) {
        let units = java();
        let f = ast(units[i % units.len()]);
        let mut rng = SeededRng::new(seed);
        prop_assert_eq!(apply(TransformFn::RenameParam, &[f], &mut rng).result.is_none(), f.params.is_empty());
        prop_assert_eq!(apply(TransformFn::RmLoop, &[f], &mut rng).result.is_none(), !has(f, Stmt::is_for_loop));
        prop_assert_eq!(apply(TransformFn::ChBranchCond, &[f], &mut rng).result.is_none(), !has(f, Stmt::is_conditional));
        for func in [TransformFn::AddParam, TransformFn::AddConditional, TransformFn::AddLoop] {
            prop_assert!(apply(func, &[f], &mut rng).result.is_some());
        }
    }
}

#[test]
fn corpus_exercises_both_sides_of_the_null_contract() {
    let units = java();
    let fors = units.iter().filter(|u| has(ast(u), Stmt::is_for_loop)).count();
    let conds = units.iter().filter(|u| has(ast(u), Stmt::is_conditional)).count();
    assert!(fors > 0 && fors < units.len());
    assert!(conds > 0 && conds < units.len());
}
