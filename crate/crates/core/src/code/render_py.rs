//! Canonical Python pretty-printer. Round-trips every tree the Python
//! parser produces; Java-only nodes (C-style `for`, `do`/`while`, blocks)
//! are lowered to equivalent Python shapes.

use super::ast::*;
use super::render_java::{float_literal, quote};

const INDENT: &str = "    ";

pub fn render_py(f: &FunctionAst) -> String {
    let mut out = String::new();
    let params: Vec<String> = f
        .params
        .iter()
        .map(|p| match py_type(&p.ty) {
            Some(t) => format!("{}: {}", p.name, t),
            None => p.name.clone(),
        })
        .collect();
    let ret = py_type(&f.ret).map(|t| format!(" -> {t}")).unwrap_or_default();
    out.push_str(&format!("def {}({}){}:\n", f.name, params.join(", "), ret));
    suite(&mut out, &f.body, 1);
    out
}

fn py_type(t: &TypeTag) -> Option<String> {
    Some(match t {
        TypeTag::Int | TypeTag::Long => "int".into(),
        TypeTag::Double => "float".into(),
        TypeTag::Boolean => "bool".into(),
        TypeTag::Str => "str".into(),
        TypeTag::Void => "None".into(),
        TypeTag::Object => "object".into(),
        TypeTag::Array(inner) => match py_type(inner) {
            Some(i) => format!("list[{i}]"),
            None => "list".into(),
        },
        TypeTag::Any => return None,
    })
}

fn pad(out: &mut String, depth: usize) {
    for _ in 0..depth {
        out.push_str(INDENT);
    }
}

fn suite(out: &mut String, body: &[Stmt], depth: usize) {
    let before = out.len();
    for s in body {
        stmt(out, s, depth);
    }
    if out.len() == before {
        pad(out, depth);
        out.push_str("pass\n");
    }
}

fn line(out: &mut String, depth: usize, text: &str) {
    pad(out, depth);
    out.push_str(text);
    out.push('\n');
}

fn simple(s: &Stmt) -> Option<String> {
    Some(match s {
        Stmt::Decl { name, init, .. } => {
            format!(
                "{} = {}",
                name,
                init.as_ref().map(expr).unwrap_or_else(|| "None".into())
            )
        }
        Stmt::Assign { target, op, value } => {
            format!("{} {} {}", expr(target), op.symbol(), expr(value))
        }
        Stmt::IncDec { target, increment } => {
            format!("{} {} 1", expr(target), if *increment { "+=" } else { "-=" })
        }
        Stmt::Expr(e) => expr(e),
        _ => return None,
    })
}

fn stmt(out: &mut String, s: &Stmt, depth: usize) {
    if let Some(text) = simple(s) {
        line(out, depth, &text);
        return;
    }
    match s {
        Stmt::If {
            cond,
            then_body,
            else_body,
        } => {
            line(out, depth, &format!("if {}:", expr(cond)));
            suite(out, then_body, depth + 1);
            let mut rest = else_body.as_deref();
            loop {
                match rest {
                    None => break,
                    Some(
                        [Stmt::If {
                            cond,
                            then_body,
                            else_body,
                        }],
                    ) => {
                        line(out, depth, &format!("elif {}:", expr(cond)));
                        suite(out, then_body, depth + 1);
                        rest = else_body.as_deref();
                    }
                    Some(body) => {
                        line(out, depth, "else:");
                        suite(out, body, depth + 1);
                        break;
                    }
                }
            }
        }
        Stmt::Switch {
            scrutinee,
            cases,
            default,
        } => {
            line(out, depth, &format!("match {}:", expr(scrutinee)));
            for case in cases {
                let labels: Vec<String> = case.labels.iter().map(expr).collect();
                line(out, depth + 1, &format!("case {}:", labels.join(" | ")));
                suite(out, &case.body, depth + 2);
            }
            if let Some(body) = default {
                line(out, depth + 1, "case _:");
                suite(out, body, depth + 2);
            }
        }
        Stmt::For {
            init,
            cond,
            update,
            body,
        } => {
            // Only reached for trees that never came from Python source.
            if let Some(init) = init {
                stmt(out, init, depth);
            }
            let cond = cond.as_ref().map(expr).unwrap_or_else(|| "True".into());
            line(out, depth, &format!("while {cond}:"));
            let mut inner = body.clone();
            if let Some(update) = update {
                inner.push((**update).clone());
            }
            suite(out, &inner, depth + 1);
        }
        Stmt::ForEach { var, iter, body, .. } => {
            line(out, depth, &format!("for {} in {}:", var, expr(iter)));
            suite(out, body, depth + 1);
        }
        Stmt::While { cond, body } => {
            line(out, depth, &format!("while {}:", expr(cond)));
            suite(out, body, depth + 1);
        }
        Stmt::DoWhile { body, cond } => {
            line(out, depth, "while True:");
            let mut inner = body.clone();
            inner.push(Stmt::If {
                cond: Expr::logical_not(cond.clone()),
                then_body: vec![Stmt::Break],
                else_body: None,
            });
            suite(out, &inner, depth + 1);
        }
        Stmt::Return(None) => line(out, depth, "return"),
        Stmt::Return(Some(e)) => line(out, depth, &format!("return {}", expr(e))),
        Stmt::Break => line(out, depth, "break"),
        Stmt::Continue => line(out, depth, "continue"),
        Stmt::Print(args) => {
            let args: Vec<String> = args.iter().map(expr).collect();
            line(out, depth, &format!("print({})", args.join(", ")));
        }
        Stmt::Block(body) => {
            for s in body {
                stmt(out, s, depth);
            }
        }
        Stmt::Decl { .. } | Stmt::Assign { .. } | Stmt::IncDec { .. } | Stmt::Expr(_) => unreachable!(),
    }
}

// ---- expressions -----------------------------------------------------

const TERNARY: u8 = 0;
const OR: u8 = 1;
const AND: u8 = 2;
const NOT: u8 = 3;
const CMP: u8 = 4;
const UNARY: u8 = 20;
const POSTFIX: u8 = 30;

fn binop_level(op: BinOp) -> u8 {
    match op {
        BinOp::Or => OR,
        BinOp::And => AND,
        op if op.is_comparison() => CMP,
        BinOp::BitOr => 5,
        BinOp::BitXor => 6,
        BinOp::BitAnd => 7,
        BinOp::Shl | BinOp::Shr => 8,
        BinOp::Add | BinOp::Sub => 9,
        _ => 10,
    }
}

fn binop_symbol(op: BinOp) -> &'static str {
    match op {
        BinOp::Add => "+",
        BinOp::Sub => "-",
        BinOp::Mul => "*",
        BinOp::Div => "/",
        BinOp::FloorDiv => "//",
        BinOp::Mod => "%",
        BinOp::Lt => "<",
        BinOp::Le => "<=",
        BinOp::Gt => ">",
        BinOp::Ge => ">=",
        BinOp::Eq => "==",
        BinOp::Ne => "!=",
        BinOp::And => "and",
        BinOp::Or => "or",
        BinOp::BitAnd => "&",
        BinOp::BitOr => "|",
        BinOp::BitXor => "^",
        BinOp::Shl => "<<",
        BinOp::Shr => ">>",
    }
}

fn level(e: &Expr) -> u8 {
    match e {
        Expr::Ternary { .. } => TERNARY,
        Expr::Binary { op, .. } => binop_level(*op),
        Expr::Unary { op: UnaryOp::Not, .. } => NOT,
        Expr::Unary { op: UnaryOp::Neg, .. } => UNARY,
        Expr::Int(v) if *v < 0 => UNARY,
        Expr::Float(v) if v.is_sign_negative() => UNARY,
        _ => POSTFIX,
    }
}

fn wrap(e: &Expr, min: u8) -> String {
    let s = expr(e);
    if level(e) < min {
        format!("({s})")
    } else {
        s
    }
}

pub fn expr(e: &Expr) -> String {
    match e {
        Expr::Int(v) => v.to_string(),
        Expr::Float(v) => float_literal(*v),
        Expr::Bool(true) => "True".into(),
        Expr::Bool(false) => "False".into(),
        Expr::Str(s) => quote(s),
        Expr::Null => "None".into(),
        Expr::Var(n) => n.clone(),
        Expr::Unary {
            op: UnaryOp::Not,
            expr: inner,
        } => format!("not {}", wrap(inner, NOT)),
        Expr::Unary {
            op: UnaryOp::Neg,
            expr: inner,
        } => {
            let s = wrap(inner, UNARY);
            if s.starts_with('-') {
                format!("-({s})")
            } else {
                format!("-{s}")
            }
        }
        Expr::Binary { op, lhs, rhs } => {
            let l = binop_level(*op);
            // Comparisons do not chain: both operands sit strictly above.
            let lmin = if l == CMP { CMP + 1 } else { l };
            format!("{} {} {}", wrap(lhs, lmin), binop_symbol(*op), wrap(rhs, l + 1))
        }
        Expr::Ternary { cond, then, otherwise } => {
            format!("{} if {} else {}", wrap(then, OR), wrap(cond, OR), expr(otherwise))
        }
        Expr::Call { func, args } => format!("{}({})", func, list(args)),
        Expr::Method { recv, name, args } => {
            format!("{}.{}({})", wrap(recv, POSTFIX), name, list(args))
        }
        Expr::Field { recv, name } => format!("{}.{}", wrap(recv, POSTFIX), name),
        Expr::Index { base, index } => format!("{}[{}]", wrap(base, POSTFIX), expr(index)),
        Expr::NewArray { elem, dims } => new_array(elem, dims),
        Expr::ArrayLit { items, .. } => format!("[{}]", list(items)),
        Expr::Cast { ty, expr: inner } => match ty {
            TypeTag::Int | TypeTag::Long => format!("int({})", expr(inner)),
            TypeTag::Double => format!("float({})", expr(inner)),
            TypeTag::Str => format!("str({})", expr(inner)),
            TypeTag::Boolean => format!("bool({})", expr(inner)),
            _ => expr(inner),
        },
        Expr::Comprehension { elem, var, iter, cond } => {
            let cond = cond
                .as_ref()
                .map(|c| format!(" if {}", wrap(c, OR)))
                .unwrap_or_default();
            format!("[{} for {} in {}{}]", expr(elem), var, wrap(iter, OR), cond)
        }
    }
}

fn filler(elem: &TypeTag) -> &'static str {
    match elem {
        TypeTag::Double => "0.0",
        TypeTag::Boolean => "False",
        TypeTag::Str => "\"\"",
        TypeTag::Int | TypeTag::Long => "0",
        _ => "None",
    }
}

fn new_array(elem: &TypeTag, dims: &[Expr]) -> String {
    match dims {
        [] => "[]".into(),
        [n] => format!("[{}] * {}", filler(elem), wrap(n, 10)),
        [n, rest @ ..] => format!("[{} for _ in range({})]", new_array(elem, rest), expr(n)),
    }
}

fn list(args: &[Expr]) -> String {
    args.iter().map(expr).collect::<Vec<_>>().join(", ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::py_parser::parse_python;

    #[test]
    fn round_trips_a_mixed_function() {
        let src = "def f(a: list[int], n: int) -> int:\n    s = 0\n    for i in range(n):\n        s += a[i] * (i - 1)\n    if s > 10:\n        return 1\n    elif not (s < 0 or n == 2):\n        s = -s\n    else:\n        pass\n    match n % 3:\n        case 0 | 1:\n            s += 1\n        case _:\n            return s\n    while n > 0 and s != 2:\n        n -= 1\n    xs = [x * 2 for x in a if x > 0]\n    print(\"s\", s)\n    return s - (n - 1) if s > 3 else max(s, len(xs))\n";
        let ast = parse_python(src).unwrap();
        let text = render_py(&ast);
        assert_eq!(parse_python(&text).unwrap(), ast, "{text}");
        assert_eq!(render_py(&ast), text);
    }

    #[test]
    fn empty_body_renders_pass() {
        let f = FunctionAst {
            name: "f".into(),
            ret: TypeTag::Any,
            params: vec![],
            body: vec![],
        };
        let text = render_py(&f);
        assert_eq!(text, "def f():\n    pass\n");
        assert_eq!(parse_python(&text).unwrap(), f);
    }
}
