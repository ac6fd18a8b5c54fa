//! Rendering then parsing returns the same tree, for generated subset
//! functions as well as the fixtures.

mod common;

use proptest::prelude::*;
use transprop::code::{parse_program, render, AssignOp, BinOp, Expr, FunctionAst, Param, Stmt, TypeTag, UnaryOp};
use transprop::Lang;

const VARS: [&str; 4] = ["a", "b", "t0", "t1"];

fn int_expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        (0i64..100).prop_map(Expr::Int),
        proptest::sample::select(&VARS[..]).prop_map(Expr::var)
    ];
    leaf.prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            (
                proptest::sample::select(vec![BinOp::Add, BinOp::Sub, BinOp::Mul, BinOp::Div, BinOp::Mod]),
                inner.clone(),
                inner.clone()
            )
                .prop_map(|(op, l, r)| Expr::binary(op, l, r)),
            // A negated literal would fold into a negative literal.
            inner
                .prop_filter("no literal operand", |e| !matches!(
                    e,
                    Expr::Int(_) | Expr::Unary { .. }
                ))
                .prop_map(|e| Expr::Unary {
                    op: UnaryOp::Neg,
                    expr: Box::new(e)
                }),
        ]
    })
}

fn bool_expr() -> impl Strategy<Value = Expr> {
    let cmp = (
        proptest::sample::select(vec![BinOp::Lt, BinOp::Le, BinOp::Gt, BinOp::Ge, BinOp::Eq, BinOp::Ne]),
        int_expr(),
        int_expr(),
    )
        .prop_map(|(op, l, r)| Expr::binary(op, l, r));
    let leaf = prop_oneof![cmp, any::<bool>().prop_map(Expr::Bool)];
    leaf.prop_recursive(2, 8, 2, |inner| {
        prop_oneof![
            (
                proptest::sample::select(vec![BinOp::And, BinOp::Or]),
                inner.clone(),
                inner.clone()
            )
                .prop_map(|(op, l, r)| Expr::binary(op, l, r)),
            inner.prop_map(Expr::logical_not),
        ]
    })
}

fn stmt() -> impl Strategy<Value = Stmt> {
    let target = proptest::sample::select(&VARS[..]).prop_map(Expr::var);
    let simple = prop_oneof![
        (
            target.clone(),
            proptest::sample::select(vec![AssignOp::Set, AssignOp::Add, AssignOp::Sub, AssignOp::Mul]),
            int_expr()
        )
            .prop_map(|(target, op, value)| Stmt::Assign { target, op, value }),
        (target, any::<bool>()).prop_map(|(target, increment)| Stmt::IncDec { target, increment }),
        int_expr().prop_map(|e| Stmt::Return(Some(e))),
    ];
    simple.prop_recursive(3, 16, 3, |inner| {
        let block = proptest::collection::vec(inner, 1..3);
        prop_oneof![
            (bool_expr(), block.clone(), proptest::option::of(block.clone())).prop_map(
                |(cond, then_body, else_body)| Stmt::If {
                    cond,
                    then_body,
                    else_body
                }
            ),
            (bool_expr(), block).prop_map(|(cond, body)| Stmt::While { cond, body }),
        ]
    })
}

/// Drops statements after a terminal one; the parsers keep them, but
/// generated dead code says nothing about rendering.
fn trim(body: Vec<Stmt>) -> Vec<Stmt> {
    let mut out = Vec::new();
    for mut s in body {
        for b in s.child_blocks_mut() {
            *b = trim(std::mem::take(b));
        }
        let end = s.is_terminal();
        out.push(s);
        if end {
            break;
        }
    }
    out
}

fn function() -> impl Strategy<Value = FunctionAst> {
    (int_expr(), proptest::collection::vec(stmt(), 0..5), int_expr()).prop_map(|(init, body, ret)| {
        let mut full = vec![
            Stmt::Decl {
                ty: TypeTag::Int,
                name: "t0".into(),
                init: Some(init),
            },
            Stmt::Decl {
                ty: TypeTag::Int,
                name: "t1".into(),
                init: None,
            },
        ];
        full.extend(body);
        full.push(Stmt::Return(Some(ret)));
        FunctionAst {
            name: "f".into(),
            ret: TypeTag::Int,
            params: vec![Param::new("a", TypeTag::Int), Param::new("b", TypeTag::Int)],
            body: trim(full),
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn java_render_parse_is_identity(f in function()) {
        let text = render(&f, Lang::Java);
        let back = parse_program(&text, Lang::Java).map_err(|e| TestCaseError::fail(format!("{e}\n{text}")))?;
        prop_assert_eq!(back, f, "{}", text);
    }

    #[test]
    fn python_rendering_is_a_fixed_point(f in function()) {
        let text = render(&f, Lang::Py);
        let once = parse_program(&text, Lang::Py).map_err(|e| TestCaseError::fail(format!("{e}\n{text}")))?;
        let again = render(&once, Lang::Py);
        prop_assert_eq!(&again, &text);
        prop_assert_eq!(parse_program(&again, Lang::Py).unwrap(), once);
    }
}

#[test]
fn fixtures_round_trip_in_their_own_language() {
    let corpus = common::corpus();
    for u in corpus.units() {
        let f = u.ast.as_deref().unwrap();
        let text = render(f, u.lang);
        assert_eq!(&parse_program(&text, u.lang).unwrap(), f, "{}\n{text}", u.id);
    }
}
