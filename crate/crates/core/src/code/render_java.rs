//! Canonical Java pretty-printer. Every branch and loop body gets braces so
//! that `parse_java(render_java(f)) == f` for parser-produced trees.

use super::ast::*;

const INDENT: &str = "    ";

pub fn render_java(f: &FunctionAst) -> String {
    let mut out = String::new();
    let params: Vec<String> = f
        .params
        .iter()
        .map(|p| format!("{} {}", java_type(&p.ty), p.name))
        .collect();
    out.push_str(&format!(
        "public static {} {}({}) {{\n",
        java_type(&f.ret),
        f.name,
        params.join(", ")
    ));
    stmts(&mut out, &f.body, 1);
    out.push_str("}\n");
    out
}

pub(crate) fn java_type(t: &TypeTag) -> String {
    match t {
        TypeTag::Any => "Object".into(),
        TypeTag::Array(inner) => format!("{}[]", java_type(inner)),
        other => other.to_string(),
    }
}

fn pad(out: &mut String, depth: usize) {
    for _ in 0..depth {
        out.push_str(INDENT);
    }
}

fn stmts(out: &mut String, body: &[Stmt], depth: usize) {
    for s in body {
        stmt(out, s, depth);
    }
}

fn braced(out: &mut String, body: &[Stmt], depth: usize) {
    out.push_str("{\n");
    stmts(out, body, depth + 1);
    pad(out, depth);
    out.push('}');
}

/// A statement without its trailing semicolon, as used in `for` headers.
fn simple(s: &Stmt) -> String {
    match s {
        Stmt::Decl { ty, name, init } => match init {
            Some(e) => format!("{} {} = {}", java_type(ty), name, init_expr(e)),
            None => format!("{} {}", java_type(ty), name),
        },
        Stmt::Assign { target, op, value } => {
            format!("{} {} {}", expr(target), op.symbol(), expr(value))
        }
        Stmt::IncDec { target, increment } => {
            format!("{}{}", expr(target), if *increment { "++" } else { "--" })
        }
        Stmt::Expr(e) => expr(e),
        other => unreachable!("not a simple statement: {other:?}"),
    }
}

fn init_expr(e: &Expr) -> String {
    match e {
        Expr::ArrayLit { elem: None, items } => brace_list(items),
        other => expr(other),
    }
}

fn brace_list(items: &[Expr]) -> String {
    let parts: Vec<String> = items.iter().map(init_expr).collect();
    format!("{{{}}}", parts.join(", "))
}

fn stmt(out: &mut String, s: &Stmt, depth: usize) {
    pad(out, depth);
    match s {
        Stmt::Decl { .. } | Stmt::Assign { .. } | Stmt::IncDec { .. } | Stmt::Expr(_) => {
            out.push_str(&simple(s));
            out.push_str(";\n");
        }
        Stmt::If {
            cond,
            then_body,
            else_body,
        } => {
            if_chain(out, cond, then_body, else_body.as_deref(), depth);
            out.push('\n');
        }
        Stmt::Switch {
            scrutinee,
            cases,
            default,
        } => {
            out.push_str(&format!("switch ({}) {{\n", expr(scrutinee)));
            for case in cases {
                for label in &case.labels {
                    pad(out, depth + 1);
                    out.push_str(&format!("case {}:\n", expr(label)));
                }
                arm(out, &case.body, depth + 2);
            }
            if let Some(body) = default {
                pad(out, depth + 1);
                out.push_str("default:\n");
                arm(out, body, depth + 2);
            }
            pad(out, depth);
            out.push_str("}\n");
        }
        Stmt::For {
            init,
            cond,
            update,
            body,
        } => {
            let init = init.as_deref().map(simple).unwrap_or_default();
            let cond = cond.as_ref().map(expr).unwrap_or_default();
            let update = update.as_deref().map(simple).unwrap_or_default();
            out.push_str(&format!("for ({init}; {cond}; {update}) "));
            braced(out, body, depth);
            out.push('\n');
        }
        Stmt::ForEach { ty, var, iter, body } => {
            out.push_str(&format!("for ({} {} : {}) ", java_type(ty), var, expr(iter)));
            braced(out, body, depth);
            out.push('\n');
        }
        Stmt::While { cond, body } => {
            out.push_str(&format!("while ({}) ", expr(cond)));
            braced(out, body, depth);
            out.push('\n');
        }
        Stmt::DoWhile { body, cond } => {
            out.push_str("do ");
            braced(out, body, depth);
            out.push_str(&format!(" while ({});\n", expr(cond)));
        }
        Stmt::Return(None) => out.push_str("return;\n"),
        Stmt::Return(Some(e)) => out.push_str(&format!("return {};\n", expr(e))),
        Stmt::Break => out.push_str("break;\n"),
        Stmt::Continue => out.push_str("continue;\n"),
        Stmt::Print(args) => {
            let args: Vec<String> = args.iter().map(expr).collect();
            out.push_str(&format!("System.out.println({});\n", args.join(" + ")));
        }
        Stmt::Block(body) => {
            braced(out, body, depth);
            out.push('\n');
        }
    }
}

fn if_chain(out: &mut String, cond: &Expr, then_body: &[Stmt], else_body: Option<&[Stmt]>, depth: usize) {
    out.push_str(&format!("if ({}) ", expr(cond)));
    braced(out, then_body, depth);
    match else_body {
        None => {}
        Some(
            [Stmt::If {
                cond,
                then_body,
                else_body,
            }],
        ) => {
            out.push_str(" else ");
            if_chain(out, cond, then_body, else_body.as_deref(), depth);
        }
        Some(body) => {
            out.push_str(" else ");
            braced(out, body, depth);
        }
    }
}

/// A switch arm body; `break;` is implied unless the arm already leaves.
fn arm(out: &mut String, body: &[Stmt], depth: usize) {
    stmts(out, body, depth);
    if !matches!(body.last(), Some(Stmt::Return(_) | Stmt::Continue)) {
        pad(out, depth);
        out.push_str("break;\n");
    }
}

// ---- expressions -----------------------------------------------------

const TERNARY: u8 = 0;
const UNARY: u8 = 20;
const POSTFIX: u8 = 30;

pub(crate) fn binop_level(op: BinOp) -> u8 {
    match op {
        BinOp::Or => 1,
        BinOp::And => 2,
        BinOp::BitOr => 3,
        BinOp::BitXor => 4,
        BinOp::BitAnd => 5,
        BinOp::Eq | BinOp::Ne => 6,
        BinOp::Lt | BinOp::Le | BinOp::Gt | BinOp::Ge => 7,
        BinOp::Shl | BinOp::Shr => 8,
        BinOp::Add | BinOp::Sub => 9,
        BinOp::Mul | BinOp::Div | BinOp::FloorDiv | BinOp::Mod => 10,
    }
}

fn binop_symbol(op: BinOp) -> &'static str {
    match op {
        BinOp::Add => "+",
        BinOp::Sub => "-",
        BinOp::Mul => "*",
        BinOp::Div | BinOp::FloorDiv => "/",
        BinOp::Mod => "%",
        BinOp::Lt => "<",
        BinOp::Le => "<=",
        BinOp::Gt => ">",
        BinOp::Ge => ">=",
        BinOp::Eq => "==",
        BinOp::Ne => "!=",
        BinOp::And => "&&",
        BinOp::Or => "||",
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
        Expr::Unary { .. } | Expr::Cast { .. } => UNARY,
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

pub fn float_literal(v: f64) -> String {
    format!("{v:?}")
}

pub(crate) fn quote(s: &str) -> String {
    let mut out = String::from("\"");
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            '\r' => out.push_str("\\r"),
            '\0' => out.push_str("\\0"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

pub fn expr(e: &Expr) -> String {
    match e {
        Expr::Int(v) => v.to_string(),
        Expr::Float(v) => float_literal(*v),
        Expr::Bool(b) => b.to_string(),
        Expr::Str(s) => quote(s),
        Expr::Null => "null".into(),
        Expr::Var(n) => n.clone(),
        Expr::Unary { op, expr: inner } => {
            let sym = match op {
                UnaryOp::Neg => "-",
                UnaryOp::Not => "!",
            };
            let s = wrap(inner, UNARY);
            // `- -x` must not lex as a decrement.
            if s.starts_with('-') {
                format!("{sym}({s})")
            } else {
                format!("{sym}{s}")
            }
        }
        Expr::Binary { op, lhs, rhs } => {
            let l = binop_level(*op);
            format!("{} {} {}", wrap(lhs, l), binop_symbol(*op), wrap(rhs, l + 1))
        }
        Expr::Ternary { cond, then, otherwise } => {
            format!("{} ? {} : {}", wrap(cond, 1), expr(then), expr(otherwise))
        }
        Expr::Call { func, args } => format!("{}({})", func, list(args)),
        Expr::Method { recv, name, args } => {
            format!("{}.{}({})", wrap(recv, POSTFIX), name, list(args))
        }
        Expr::Field { recv, name } => format!("{}.{}", wrap(recv, POSTFIX), name),
        Expr::Index { base, index } => format!("{}[{}]", wrap(base, POSTFIX), expr(index)),
        Expr::NewArray { elem, dims } => {
            let dims: String = dims.iter().map(|d| format!("[{}]", expr(d))).collect();
            format!("new {}{}", java_type(elem), dims)
        }
        Expr::ArrayLit { elem: Some(t), items } => {
            format!("new {}[]{}", java_type(t), brace_list(items))
        }
        Expr::ArrayLit { elem: None, items } => brace_list(items),
        Expr::Cast { ty, expr: inner } => format!("({}) {}", java_type(ty), wrap(inner, UNARY)),
        Expr::Comprehension { .. } => "/* comprehension */ null".into(),
    }
}

fn list(args: &[Expr]) -> String {
    args.iter().map(expr).collect::<Vec<_>>().join(", ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::java_parser::parse_java;

    #[test]
    fn round_trips_a_mixed_function() {
        let src = r#"
            static int f(int[] a, int n) {
                int s = 0, t;
                for (int i = 0; i < n; i++) { s += a[i] * (i - 1); }
                if (s > 10) return 1; else if (s < 0) { s = -s; } else { }
                switch (n % 3) { case 0: case 1: s++; break; default: return s; }
                do { n--; } while (n > 0 && !(s == 2));
                int[][] g = new int[n][2];
                int[] h = {1, 2};
                System.out.println("s=" + s);
                return s > 3 ? s - (n - 1) : Math.max(s, (int) 2.5);
            }
        "#;
        let ast = parse_java(src).unwrap();
        let text = render_java(&ast);
        assert_eq!(parse_java(&text).unwrap(), ast, "{text}");
        assert_eq!(render_java(&ast), text);
    }

    #[test]
    fn empty_body() {
        let f = FunctionAst {
            name: "f".into(),
            ret: TypeTag::Void,
            params: vec![],
            body: vec![],
        };
        let text = render_java(&f);
        assert_eq!(text, "public static void f() {\n}\n");
        assert_eq!(parse_java(&text).unwrap(), f);
    }
}
