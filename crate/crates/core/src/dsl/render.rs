//! Canonical text for properties. Rendering then parsing yields a spec
//! equal to the original.

use super::*;

pub fn render_spec(spec: &PropertySpec) -> String {
    let mut out = String::new();
    for i in &spec.inputs {
        out.push_str(&format!("input {i};\n"));
    }
    for d in &spec.derived_vars {
        let mut args: Vec<String> = d.call.args.clone();
        args.push(format!("\"{}\"", d.call.lang));
        out.push_str(&format!("var {} := {}({});\n", d.name, d.call.func, args.join(", ")));
    }
    for p in &spec.preconditions {
        out.push_str(&format!("requires {};\n", render_expr(p)));
    }
    for o in &spec.outputs {
        out.push_str(&format!("output {o};\n"));
    }
    out.push_str("{\n");
    for q in &spec.query_block {
        out.push_str(&format!(
            "  {} = transpile({}, \"{}\", \"{}\")\n",
            q.target, q.source, q.src_lang, q.dst_lang
        ));
    }
    out.push_str("}\n");
    out.push_str(&format!("ensures {};\n", render_expr(&spec.postcondition)));
    out
}

fn level(e: &Expr) -> u8 {
    match e {
        Expr::Binary { op: BinOp::Implies, .. } => 0,
        Expr::Binary { op: BinOp::Or, .. } => 1,
        Expr::Binary { op: BinOp::And, .. } => 2,
        Expr::Binary { op, .. } if op.is_comparison() => 3,
        Expr::Binary { .. } => 4,
        Expr::Unary { .. } => 5,
        _ => 6,
    }
}

fn wrap(e: &Expr, min: u8) -> String {
    let s = render_expr(e);
    if level(e) < min {
        format!("({s})")
    } else {
        s
    }
}

pub fn render_expr(e: &Expr) -> String {
    match e {
        Expr::Int(v) => v.to_string(),
        Expr::Bool(b) => b.to_string(),
        Expr::Null => "null".into(),
        Expr::Ident(n) => n.clone(),
        Expr::Inspect { func, program, lang } => format!("{func}({program}, \"{lang}\")"),
        Expr::Unary { op, expr } => {
            let sym = if *op == UnOp::Not { "!" } else { "-" };
            format!("{sym}{}", wrap(expr, 5))
        }
        Expr::Binary { op, lhs, rhs } => {
            let l = level(e);
            let (lmin, rmin) = match op {
                BinOp::Implies => (1, 0),
                op if op.is_comparison() => (4, 4),
                _ => (l, l + 1),
            };
            format!("{} {} {}", wrap(lhs, lmin), op.symbol(), wrap(rhs, rmin))
        }
    }
}
