//! C++ emitter for Java-subset trees. C++ is never parsed back; the output
//! only needs to be accepted by a C++17 compiler and keyword-countable.

use super::ast::*;
use super::render_java::{binop_level, float_literal, quote};

const INDENT: &str = "    ";

pub fn render_cpp(f: &FunctionAst) -> String {
    let mut out = String::new();
    let params: Vec<String> = f
        .params
        .iter()
        .map(|p| format!("{} {}", cpp_type(&p.ty), p.name))
        .collect();
    out.push_str(&format!("{} {}({}) {{\n", cpp_type(&f.ret), f.name, params.join(", ")));
    stmts(&mut out, &f.body, 1);
    out.push_str("}\n");
    out
}

fn cpp_type(t: &TypeTag) -> String {
    match t {
        TypeTag::Int => "int".into(),
        TypeTag::Long => "long long".into(),
        TypeTag::Double => "double".into(),
        TypeTag::Boolean => "bool".into(),
        TypeTag::Str => "std::string".into(),
        TypeTag::Void => "void".into(),
        TypeTag::Object | TypeTag::Any => "auto".into(),
        TypeTag::Array(inner) => format!("std::vector<{}>", cpp_type(inner)),
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

fn simple(s: &Stmt) -> String {
    match s {
        Stmt::Decl { ty, name, init } => match init {
            Some(Expr::ArrayLit { items, .. }) => format!("{} {} = {{{}}}", cpp_type(ty), name, list(items)),
            Some(e) => format!("{} {} = {}", cpp_type(ty), name, expr(e)),
            None => format!("{} {}{{}}", cpp_type(ty), name),
        },
        Stmt::Assign { target, op, value } => {
            format!("{} {} {}", expr(target), op.symbol(), expr(value))
        }
        Stmt::IncDec { target, increment } => {
            format!("{}{}", expr(target), if *increment { "++" } else { "--" })
        }
        Stmt::Expr(e) => expr(e),
        _ => String::new(),
    }
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
            out.push_str(&format!("if ({}) ", expr(cond)));
            braced(out, then_body, depth);
            if let Some(body) = else_body {
                out.push_str(" else ");
                braced(out, body, depth);
            }
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
                pad(out, depth + 2);
                braced(out, &case.body, depth + 2);
                out.push('\n');
                pad(out, depth + 2);
                out.push_str("break;\n");
            }
            if let Some(body) = default {
                pad(out, depth + 1);
                out.push_str("default:\n");
                pad(out, depth + 2);
                braced(out, body, depth + 2);
                out.push('\n');
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
        Stmt::ForEach { var, iter, body, .. } => {
            out.push_str(&format!("for (auto {} : {}) ", var, expr(iter)));
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
            let mut parts: Vec<String> = vec!["std::cout".into()];
            parts.extend(args.iter().map(|a| wrap(a, 9)));
            parts.push("std::endl".into());
            out.push_str(&parts.join(" << "));
            out.push_str(";\n");
        }
        Stmt::Block(body) => {
            braced(out, body, depth);
            out.push('\n');
        }
    }
}

fn level(e: &Expr) -> u8 {
    match e {
        Expr::Ternary { .. } => 0,
        Expr::Binary { op, .. } => binop_level(*op),
        Expr::Unary { .. } | Expr::Cast { .. } => 20,
        Expr::Int(v) if *v < 0 => 20,
        Expr::Float(v) if v.is_sign_negative() => 20,
        _ => 30,
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

fn symbol(op: BinOp) -> &'static str {
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

fn expr(e: &Expr) -> String {
    match e {
        Expr::Int(v) => v.to_string(),
        Expr::Float(v) => float_literal(*v),
        Expr::Bool(b) => b.to_string(),
        Expr::Str(s) => format!("std::string({})", quote(s)),
        Expr::Null => "nullptr".into(),
        Expr::Var(n) => n.clone(),
        Expr::Unary { op, expr: inner } => {
            let sym = if *op == UnaryOp::Neg { "-" } else { "!" };
            format!("{sym}({})", expr(inner))
        }
        Expr::Binary { op, lhs, rhs } => {
            let l = binop_level(*op);
            format!("{} {} {}", wrap(lhs, l), symbol(*op), wrap(rhs, l + 1))
        }
        Expr::Ternary { cond, then, otherwise } => {
            format!("({} ? {} : {})", wrap(cond, 1), expr(then), expr(otherwise))
        }
        Expr::Call { func, args } => {
            let name = match func.as_str() {
                "Math.max" => "std::max",
                "Math.min" => "std::min",
                "Math.abs" => "std::abs",
                "Math.sqrt" => "std::sqrt",
                "Math.pow" => "std::pow",
                "String.valueOf" | "Integer.toString" => "std::to_string",
                other => other,
            };
            format!("{}({})", name, list(args))
        }
        Expr::Method { recv, name, args } => {
            let name = match name.as_str() {
                "length" => "size",
                other => other,
            };
            format!("{}.{}({})", wrap(recv, 30), name, list(args))
        }
        Expr::Field { recv, name } if name == "length" => {
            format!("(int){}.size()", wrap(recv, 30))
        }
        Expr::Field { recv, name } => match (recv.as_ref(), name.as_str()) {
            (Expr::Var(c), "MAX_VALUE") if c == "Integer" => "INT_MAX".into(),
            (Expr::Var(c), "MIN_VALUE") if c == "Integer" => "INT_MIN".into(),
            _ => format!("{}.{}", wrap(recv, 30), name),
        },
        Expr::Index { base, index } => format!("{}[{}]", wrap(base, 30), expr(index)),
        Expr::NewArray { elem, dims } => new_array(elem, dims),
        Expr::ArrayLit { elem, items } => {
            let ty = elem
                .as_ref()
                .map(|t| cpp_type(&TypeTag::array_of(t.clone())))
                .unwrap_or_default();
            format!("{ty}{{{}}}", list(items))
        }
        Expr::Cast { ty, expr: inner } => format!("({})({})", cpp_type(ty), expr(inner)),
        Expr::Comprehension { .. } => "{}".into(),
    }
}

fn new_array(elem: &TypeTag, dims: &[Expr]) -> String {
    let mut ty = elem.clone();
    for _ in 0..dims.len() {
        ty = TypeTag::array_of(ty);
    }
    match dims {
        [] => format!("{}()", cpp_type(&ty)),
        [n] => format!("{}({})", cpp_type(&ty), expr(n)),
        [n, rest @ ..] => format!("{}({}, {})", cpp_type(&ty), expr(n), new_array(elem, rest)),
    }
}

fn list(args: &[Expr]) -> String {
    args.iter().map(expr).collect::<Vec<_>>().join(", ")
}
