//! Random side-effect-free expressions over in-scope variables.
//!
//! Conditions have logical depth at most 2 and use only `<`, `>`, `==`,
//! `&&`, `||` and `!` over integer and boolean variables and constants in
//! `[-10, 10]`, so every generated condition parses in both subsets and
//! evaluates without error.

use super::rng::SeededRng;
use super::sites::Scope;
use crate::code::{BinOp, Expr, TypeTag};

const CONST_RANGE: (i64, i64) = (-10, 10);

fn vars_of(scope: &Scope, want: impl Fn(&TypeTag) -> bool) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    for (name, ty) in scope.iter().rev() {
        // Later declarations shadow nothing in Java, but keep the list unique.
        if want(ty) && !out.contains(name) {
            out.push(name.clone());
        }
    }
    out.sort();
    out
}

pub(super) fn int_vars(scope: &Scope) -> Vec<String> {
    vars_of(scope, |t| matches!(t, TypeTag::Int))
}

pub(super) fn bool_vars(scope: &Scope) -> Vec<String> {
    vars_of(scope, |t| matches!(t, TypeTag::Boolean))
}

pub(super) fn str_vars(scope: &Scope) -> Vec<String> {
    vars_of(scope, |t| matches!(t, TypeTag::Str))
}

fn constant(rng: &mut SeededRng) -> Expr {
    Expr::Int(rng.range_incl(CONST_RANGE.0, CONST_RANGE.1))
}

/// An integer variable or a constant.
pub(super) fn int_term(scope: &Scope, rng: &mut SeededRng) -> Expr {
    let vars = int_vars(scope);
    if !vars.is_empty() && rng.coin() {
        Expr::var(rng.pick(&vars).clone())
    } else {
        constant(rng)
    }
}

fn atom(scope: &Scope, rng: &mut SeededRng) -> Expr {
    let bools = bool_vars(scope);
    if !bools.is_empty() && rng.below(3) == 0 {
        return Expr::var(rng.pick(&bools).clone());
    }
    let op = *rng.pick(&[BinOp::Lt, BinOp::Gt, BinOp::Eq]);
    Expr::binary(op, int_term(scope, rng), int_term(scope, rng))
}

/// A boolean condition whose `&&`/`||`/`!` nesting is at most `depth`.
pub(super) fn condition(scope: &Scope, rng: &mut SeededRng, depth: u32) -> Expr {
    if depth == 0 {
        return atom(scope, rng);
    }
    match rng.below(4) {
        0 => atom(scope, rng),
        1 => Expr::logical_not(condition(scope, rng, depth - 1)),
        k => {
            let op = if k == 2 { BinOp::And } else { BinOp::Or };
            let l = condition(scope, rng, depth - 1);
            let r = condition(scope, rng, depth - 1);
            Expr::binary(op, l, r)
        }
    }
}

/// A value for a string `switch`: a string variable or one of the labels.
pub(super) fn string_term(scope: &Scope, labels: &[Expr], rng: &mut SeededRng) -> Expr {
    let mut options: Vec<Expr> = str_vars(scope).into_iter().map(Expr::Var).collect();
    options.extend(labels.iter().filter(|l| matches!(l, Expr::Str(_))).cloned());
    if options.is_empty() {
        return Expr::Str(String::new());
    }
    rng.pick(&options).clone()
}

/// Logical nesting depth of a generated condition.
pub fn logical_depth(e: &Expr) -> u32 {
    match e {
        Expr::Unary { expr, .. } => 1 + logical_depth(expr),
        Expr::Binary { op, lhs, rhs } if op.is_logical() => 1 + logical_depth(lhs).max(logical_depth(rhs)),
        _ => 0,
    }
}
