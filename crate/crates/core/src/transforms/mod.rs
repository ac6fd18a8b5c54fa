//! The seven program transformations. Each is a pure function of the input
//! tree and the random stream; a `None` result means the function has no
//! site the transformation could apply to.

mod gen;
mod rng;
mod sites;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::code::{
    identifiers, stmt_exprs_mut, AssignOp, BinOp, Expr, FunctionAst, Param, Stmt, TestCase, TypeTag, Value,
};
use crate::dsl::TransformFn;

pub use gen::logical_depth;
pub use rng::SeededRng;

use sites::{block_mut, insert_sites, stmt_sites};

/// How a source program's test cases become test cases of the variant.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TestAdapter {
    Same,
    /// One trailing argument with this value.
    AppendFiller(Value),
    /// Run one side of a merged function, filling the other side's
    /// parameters; the flag comes last.
    Merge {
        first: bool,
        first_fillers: Vec<Value>,
        second_fillers: Vec<Value>,
    },
}

impl TestAdapter {
    /// `suites[i]` holds the tests of the i-th transform argument.
    pub fn apply(&self, suites: &[&[TestCase]]) -> Vec<TestCase> {
        let extend = |cases: &[TestCase], pre: &[Value], post: &[Value]| -> Vec<TestCase> {
            cases
                .iter()
                .map(|t| {
                    let mut inputs = pre.to_vec();
                    inputs.extend(t.inputs.iter().cloned());
                    inputs.extend(post.iter().cloned());
                    TestCase {
                        inputs,
                        expected: t.expected.clone(),
                    }
                })
                .collect()
        };
        match self {
            TestAdapter::Same => suites[0].to_vec(),
            TestAdapter::AppendFiller(v) => extend(suites[0], &[], std::slice::from_ref(v)),
            TestAdapter::Merge {
                first: true,
                second_fillers,
                ..
            } => {
                let mut post = second_fillers.clone();
                post.push(Value::Bool(true));
                extend(suites[0], &[], &post)
            }
            TestAdapter::Merge {
                first: false,
                first_fillers,
                ..
            } => extend(suites[1], first_fillers, &[Value::Bool(false)]),
        }
    }
}

/// Result of one transformation attempt.
#[derive(Debug, Clone, PartialEq)]
pub struct TransformOutcome {
    pub result: Option<FunctionAst>,
    pub applied_site: String,
    /// Values drawn from the random stream by this attempt.
    pub rng_draws: Vec<u64>,
    pub adapter: TestAdapter,
}

impl TransformOutcome {
    fn null(reason: impl Into<String>, rng: &SeededRng, start: usize) -> Self {
        TransformOutcome {
            result: None,
            applied_site: reason.into(),
            rng_draws: rng.draws_since(start),
            adapter: TestAdapter::Same,
        }
    }

    fn done(f: FunctionAst, site: String, rng: &SeededRng, start: usize, adapter: TestAdapter) -> Self {
        TransformOutcome {
            result: Some(f),
            applied_site: site,
            rng_draws: rng.draws_since(start),
            adapter,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TransformError {
    #[error("functions cannot be merged: {0}")]
    IncompatibleFunctions(String),
}

/// Neutral argument used for added or merged-away parameters.
pub fn filler(ty: &TypeTag) -> Value {
    match ty {
        TypeTag::Int | TypeTag::Long => Value::Int(0),
        TypeTag::Double => Value::Float(0.0),
        TypeTag::Boolean => Value::Bool(false),
        TypeTag::Str => Value::Str(String::new()),
        TypeTag::Array(_) => Value::List(Vec::new()),
        TypeTag::Void | TypeTag::Object | TypeTag::Any => Value::Null,
    }
}

/// Dispatches a DSL transform call. Merge failures become a null outcome.
pub fn apply(func: TransformFn, args: &[&FunctionAst], rng: &mut SeededRng) -> TransformOutcome {
    match func {
        TransformFn::RenameParam => rename_param(args[0], rng),
        TransformFn::AddParam => add_param(args[0], rng),
        TransformFn::AddConditional => add_conditional(args[0], rng),
        TransformFn::AddLoop => add_loop(args[0], rng),
        TransformFn::RmLoop => rm_loop(args[0], rng),
        TransformFn::ChBranchCond => ch_branch_cond(args[0], rng),
        TransformFn::Merge => {
            let start = rng.position();
            merge_functions(args[0], args[1], rng).unwrap_or_else(|e| TransformOutcome::null(e.to_string(), rng, start))
        }
    }
}

fn fresh(prefix: &str, used: &BTreeSet<String>, rng: &mut SeededRng) -> String {
    for _ in 0..16 {
        let name = format!("{prefix}{}", rng.below(100));
        if !used.contains(&name) {
            return name;
        }
    }
    (100..)
        .map(|n| format!("{prefix}{n}"))
        .find(|n| !used.contains(n))
        .expect("unbounded suffixes")
}

/// Visits every statement, including `for` headers, mutably.
fn for_each_stmt_mut(body: &mut [Stmt], f: &mut dyn FnMut(&mut Stmt)) {
    for stmt in body {
        f(stmt);
        if let Stmt::For { init, update, .. } = stmt {
            for s in [init, update].into_iter().flatten() {
                for_each_stmt_mut(std::slice::from_mut(s.as_mut()), f);
            }
        }
        for block in stmt.child_blocks_mut() {
            for_each_stmt_mut(block, f);
        }
    }
}

fn rename_in_body(body: &mut [Stmt], old: &str, new: &str) {
    for_each_stmt_mut(body, &mut |s| {
        match s {
            Stmt::Decl { name, .. } | Stmt::ForEach { var: name, .. } if name == old => *name = new.to_string(),
            _ => {}
        }
        for e in stmt_exprs_mut(s) {
            e.walk_mut(&mut |e| match e {
                Expr::Var(n) | Expr::Comprehension { var: n, .. } if n == old => *n = new.to_string(),
                _ => {}
            });
        }
    });
}

/// Names the function itself introduces: parameters and locals.
fn declared_names(f: &FunctionAst) -> BTreeSet<String> {
    let mut out: BTreeSet<String> = f.params.iter().map(|p| p.name.clone()).collect();
    crate::code::walk_stmts(&f.body, &mut |s| match s {
        Stmt::Decl { name, .. } | Stmt::ForEach { var: name, .. } => {
            out.insert(name.clone());
        }
        _ => {}
    });
    out
}

/// Renames one uniformly chosen parameter to a fresh name.
pub fn rename_param(f: &FunctionAst, rng: &mut SeededRng) -> TransformOutcome {
    let start = rng.position();
    if f.params.is_empty() {
        return TransformOutcome::null("no parameters", rng, start);
    }
    let i = rng.below(f.params.len());
    let old = f.params[i].name.clone();
    let new = fresh("v", &identifiers(f), rng);
    let mut out = f.clone();
    out.params[i].name = new.clone();
    rename_in_body(&mut out.body, &old, &new);
    let site = format!("param {i}: {old} -> {new}");
    TransformOutcome::done(out, site, rng, start, TestAdapter::Same)
}

/// Appends an unused `int` or `boolean` parameter.
pub fn add_param(f: &FunctionAst, rng: &mut SeededRng) -> TransformOutcome {
    let start = rng.position();
    let ty = rng.pick(&[TypeTag::Int, TypeTag::Boolean]).clone();
    let name = fresh("p", &identifiers(f), rng);
    let mut out = f.clone();
    out.params.push(Param::new(name.clone(), ty.clone()));
    let adapter = TestAdapter::AppendFiller(filler(&ty));
    let site = format!("param {}: {ty} {name}", f.params.len());
    TransformOutcome::done(out, site, rng, start, adapter)
}

/// Inserts `if (<random condition>) { print }` at a random reachable gap.
pub fn add_conditional(f: &FunctionAst, rng: &mut SeededRng) -> TransformOutcome {
    let start = rng.position();
    let sites = insert_sites(f, false);
    let site = rng.pick(&sites).clone();
    let cond = gen::condition(&site.scope, rng, 2);
    let stmt = Stmt::If {
        cond,
        then_body: vec![Stmt::Print(vec![Expr::Str("reached".into())])],
        else_body: None,
    };
    let mut out = f.clone();
    block_mut(&mut out.body, &site.path).insert(site.pos, stmt);
    TransformOutcome::done(out, site.describe(), rng, start, TestAdapter::Same)
}

/// Inserts, among the top-level statements, a counted loop of at most three
/// iterations that only accumulates into a fresh local.
pub fn add_loop(f: &FunctionAst, rng: &mut SeededRng) -> TransformOutcome {
    let start = rng.position();
    let sites = insert_sites(f, true);
    let site = rng.pick(&sites).clone();
    let mut used = identifiers(f);
    let counter = fresh("k", &used, rng);
    used.insert(counter.clone());
    let acc = fresh("acc", &used, rng);
    let bound = rng.range_incl(1, 3);
    let decl = Stmt::Decl {
        ty: TypeTag::Int,
        name: acc.clone(),
        init: Some(Expr::Int(0)),
    };
    let lp = Stmt::For {
        init: Some(Box::new(Stmt::Decl {
            ty: TypeTag::Int,
            name: counter.clone(),
            init: Some(Expr::Int(0)),
        })),
        cond: Some(Expr::binary(BinOp::Lt, Expr::var(&counter), Expr::Int(bound))),
        update: Some(Box::new(Stmt::IncDec {
            target: Expr::var(&counter),
            increment: true,
        })),
        body: vec![Stmt::Assign {
            target: Expr::var(&acc),
            op: AssignOp::Add,
            value: Expr::var(&counter),
        }],
    };
    let mut out = f.clone();
    let block = block_mut(&mut out.body, &site.path);
    block.insert(site.pos, lp);
    block.insert(site.pos, decl);
    TransformOutcome::done(out, site.describe(), rng, start, TestAdapter::Same)
}

/// Deletes one uniformly chosen `for` loop with everything inside it.
pub fn rm_loop(f: &FunctionAst, rng: &mut SeededRng) -> TransformOutcome {
    let start = rng.position();
    let sites = stmt_sites(f, &Stmt::is_for_loop);
    if sites.is_empty() {
        return TransformOutcome::null("no for-loop", rng, start);
    }
    let site = rng.pick(&sites).clone();
    let mut out = f.clone();
    block_mut(&mut out.body, &site.path).remove(site.index);
    TransformOutcome::done(out, site.describe(), rng, start, TestAdapter::Same)
}

/// Replaces the condition of one uniformly chosen `if`, or the scrutinee of
/// one `switch`, with a fresh expression of the same type.
pub fn ch_branch_cond(f: &FunctionAst, rng: &mut SeededRng) -> TransformOutcome {
    let start = rng.position();
    let sites = stmt_sites(f, &Stmt::is_conditional);
    if sites.is_empty() {
        return TransformOutcome::null("no if or switch", rng, start);
    }
    let site = rng.pick(&sites).clone();
    let mut out = f.clone();
    let stmt = &mut block_mut(&mut out.body, &site.path)[site.index];
    match stmt {
        Stmt::If { cond, .. } => *cond = gen::condition(&site.scope, rng, 2),
        Stmt::Switch { scrutinee, cases, .. } => {
            let labels: Vec<Expr> = cases.iter().flat_map(|c| c.labels.iter().cloned()).collect();
            *scrutinee = if labels.iter().any(|l| matches!(l, Expr::Str(_))) {
                gen::string_term(&site.scope, &labels, rng)
            } else {
                gen::int_term(&site.scope, rng)
            };
        }
        _ => unreachable!("sites only hold conditionals"),
    }
    TransformOutcome::done(out, site.describe(), rng, start, TestAdapter::Same)
}

fn merged_return(a: &TypeTag, b: &TypeTag) -> Option<TypeTag> {
    match (a, b) {
        _ if a == b => Some(a.clone()),
        (TypeTag::Int, TypeTag::Double) | (TypeTag::Double, TypeTag::Int) => Some(TypeTag::Double),
        _ => None,
    }
}

/// `f.params ++ g.params ++ [flag]` with body `if (flag) {f} else {g}`.
/// Names of `g` that clash with names of `f` are renamed first. Which side
/// the variant's tests exercise is drawn from `rng`.
pub fn merge_functions(
    f: &FunctionAst,
    g: &FunctionAst,
    rng: &mut SeededRng,
) -> Result<TransformOutcome, TransformError> {
    let start = rng.position();
    let ret = merged_return(&f.ret, &g.ret)
        .ok_or_else(|| TransformError::IncompatibleFunctions(format!("return types {} and {}", f.ret, g.ret)))?;
    let mut used: BTreeSet<String> = identifiers(f);
    used.extend(identifiers(g));
    let f_names = declared_names(f);
    let mut g2 = g.clone();
    for name in declared_names(g) {
        if f_names.contains(&name) || name == f.name {
            let new = fresh("m", &used, rng);
            used.insert(new.clone());
            for p in &mut g2.params {
                if p.name == name {
                    p.name = new.clone();
                }
            }
            rename_in_body(&mut g2.body, &name, &new);
        }
    }
    let flag = if used.contains("flag") {
        fresh("flag", &used, rng)
    } else {
        "flag".to_string()
    };
    let mut params = f.params.clone();
    params.extend(g2.params.iter().cloned());
    params.push(Param::new(flag.clone(), TypeTag::Boolean));
    let body = vec![Stmt::If {
        cond: Expr::var(&flag),
        then_body: f.body.clone(),
        else_body: Some(g2.body),
    }];
    let merged = FunctionAst {
        name: f.name.clone(),
        ret,
        params,
        body,
    };
    let first = rng.coin();
    let adapter = TestAdapter::Merge {
        first,
        first_fillers: f.params.iter().map(|p| filler(&p.ty)).collect(),
        second_fillers: g.params.iter().map(|p| filler(&p.ty)).collect(),
    };
    let site = format!("merge {} + {} on {flag}", f.name, g.name);
    Ok(TransformOutcome::done(merged, site, rng, start, adapter))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::parse_java;

    fn java(src: &str) -> FunctionAst {
        parse_java(src).unwrap()
    }

    #[test]
    fn rename_param_renames_uses() {
        let f = java("int f(int a, int b) { return a + b; }");
        let out = rename_param(&f, &mut SeededRng::new(3));
        let g = out.result.unwrap();
        let renamed: Vec<&str> = g.params.iter().map(|p| p.name.as_str()).collect();
        assert_eq!(renamed.iter().filter(|n| **n == "a" || **n == "b").count(), 1);
        assert!(identifiers(&g).iter().all(|n| n != "a" || renamed.contains(&"a")));
    }

    #[test]
    fn zero_param_rename_is_null() {
        let f = java("int f() { return 1; }");
        assert!(rename_param(&f, &mut SeededRng::new(1)).result.is_none());
    }

    #[test]
    fn same_seed_same_outcome() {
        let f = java("int f(int a) { int s = 0; for (int i = 0; i < a; i++) { s += i; } return s; }");
        for t in TransformFn::ALL {
            if t == TransformFn::Merge {
                continue;
            }
            let a = apply(t, &[&f], &mut SeededRng::new(77));
            let b = apply(t, &[&f], &mut SeededRng::new(77));
            assert_eq!(a, b, "{t}");
        }
    }

    #[test]
    fn loop_free_rm_loop_and_branch_free_ch_cond_are_null() {
        let f = java("int f(int a) { return a; }");
        assert!(rm_loop(&f, &mut SeededRng::new(0)).result.is_none());
        assert!(ch_branch_cond(&f, &mut SeededRng::new(0)).result.is_none());
    }

    #[test]
    fn nothing_is_inserted_after_a_return() {
        let f = java("int f(int a) { return a; }");
        for seed in 0..50 {
            let g = add_conditional(&f, &mut SeededRng::new(seed)).result.unwrap();
            assert!(matches!(g.body.last(), Some(Stmt::Return(_))));
        }
    }

    #[test]
    fn merge_renames_clashing_names_of_the_second_function() {
        let f = java("int f(int a) { int t = a; return t; }");
        let g = java("int g(int a, int t) { return a - t; }");
        let m = merge_functions(&f, &g, &mut SeededRng::new(5)).unwrap().result.unwrap();
        let names: BTreeSet<&str> = m.params.iter().map(|p| p.name.as_str()).collect();
        assert_eq!(names.len(), 4);
        assert_eq!(m.params.last().unwrap().ty, TypeTag::Boolean);
    }

    #[test]
    fn merge_refuses_unrelated_return_types() {
        let f = java("int f() { return 1; }");
        let g = java("String g() { return \"x\"; }");
        assert!(merge_functions(&f, &g, &mut SeededRng::new(0)).is_err());
    }

    #[test]
    fn merge_adapter_fills_the_other_side() {
        let t = |v: i64| TestCase {
            inputs: vec![Value::Int(v)],
            expected: Value::Int(v),
        };
        let a = TestAdapter::Merge {
            first: false,
            first_fillers: vec![Value::Int(0), Value::Bool(false)],
            second_fillers: vec![Value::Int(0)],
        };
        let out = a.apply(&[&[t(1)], &[t(2)]]);
        assert_eq!(
            out[0].inputs,
            vec![Value::Int(0), Value::Bool(false), Value::Int(2), Value::Bool(false)]
        );
    }
}
