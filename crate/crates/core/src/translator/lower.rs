//! Statement-by-statement Java to Python lowering over the shared tree.
//!
//! The output keeps the counts the inspections look at: one Python loop per
//! Java loop and one Python conditional per Java conditional, with the single
//! exception of `do`/`while`, whose exit test becomes an `if`. Arithmetic is
//! rewritten where the dialects disagree: integer `/` and `%` truncate in
//! Java, so they become `int(a / b)` and `a - b * int(a / b)`.

use std::collections::HashMap;

use crate::code::{AssignOp, BinOp, Expr, FunctionAst, ParseError, Stmt, TypeTag, UnaryOp};

type Lowered<T> = Result<T, ParseError>;

fn unsupported<T>(what: impl Into<String>) -> Lowered<T> {
    Err(ParseError::unsupported(what, 0, 0))
}

pub fn java_to_python(f: &FunctionAst) -> Lowered<FunctionAst> {
    let mut l = Lowerer {
        scopes: vec![f.params.iter().map(|p| (p.name.clone(), p.ty.clone())).collect()],
        ret: f.ret.clone(),
    };
    let body = l.block(&f.body)?;
    Ok(FunctionAst {
        name: f.name.clone(),
        ret: f.ret.clone(),
        params: f.params.clone(),
        body,
    })
}

struct Lowerer {
    scopes: Vec<HashMap<String, TypeTag>>,
    ret: TypeTag,
}

fn call(func: &str, args: Vec<Expr>) -> Expr {
    Expr::Call {
        func: func.into(),
        args,
    }
}

fn int_div(l: Expr, r: Expr) -> Expr {
    call("int", vec![Expr::binary(BinOp::Div, l, r)])
}

fn trunc_mod(l: Expr, r: Expr) -> Expr {
    let q = int_div(l.clone(), r.clone());
    Expr::binary(BinOp::Sub, l, Expr::binary(BinOp::Mul, r, q))
}

fn is_integral(t: &TypeTag) -> bool {
    t.is_integral() || *t == TypeTag::Boolean
}

/// Assignments to plain variables anywhere in `body`.
fn assigned_vars(body: &[Stmt]) -> Vec<String> {
    let mut out = Vec::new();
    crate::code::walk_stmts(body, &mut |s| match s {
        Stmt::Assign {
            target: Expr::Var(n), ..
        }
        | Stmt::IncDec {
            target: Expr::Var(n), ..
        } => out.push(n.clone()),
        Stmt::Decl { name, .. } => out.push(name.clone()),
        _ => {}
    });
    out
}

fn vars_in(e: &Expr) -> Vec<String> {
    let mut out = Vec::new();
    e.walk(&mut |e| {
        if let Expr::Var(n) = e {
            out.push(n.clone());
        }
    });
    out
}

/// `continue` statements that belong to the enclosing loop, not to a loop
/// nested inside `body`, get `extra` placed in front of them.
fn before_continue(body: Vec<Stmt>, extra: &[Stmt]) -> Vec<Stmt> {
    let mut out = Vec::with_capacity(body.len());
    for s in body {
        match s {
            Stmt::Continue => {
                out.extend(extra.iter().cloned());
                out.push(Stmt::Continue);
            }
            s if s.is_loop() => out.push(s),
            mut s => {
                for block in s.child_blocks_mut() {
                    let taken = std::mem::take(block);
                    *block = before_continue(taken, extra);
                }
                out.push(s);
            }
        }
    }
    out
}

impl Lowerer {
    fn lookup(&self, name: &str) -> TypeTag {
        self.scopes
            .iter()
            .rev()
            .find_map(|s| s.get(name).cloned())
            .unwrap_or(TypeTag::Any)
    }

    fn declare(&mut self, name: &str, ty: &TypeTag) {
        self.scopes
            .last_mut()
            .expect("a scope is always open")
            .insert(name.to_string(), ty.clone());
    }

    fn ty(&self, e: &Expr) -> TypeTag {
        match e {
            Expr::Int(_) => TypeTag::Int,
            Expr::Float(_) => TypeTag::Double,
            Expr::Bool(_) => TypeTag::Boolean,
            Expr::Str(_) => TypeTag::Str,
            Expr::Null => TypeTag::Object,
            Expr::Var(n) => self.lookup(n),
            Expr::Unary { op: UnaryOp::Not, .. } => TypeTag::Boolean,
            Expr::Unary { expr, .. } => self.ty(expr),
            Expr::Binary { op, lhs, rhs } => {
                let (l, r) = (self.ty(lhs), self.ty(rhs));
                if op.is_comparison() || op.is_logical() {
                    TypeTag::Boolean
                } else if *op == BinOp::Add && (l == TypeTag::Str || r == TypeTag::Str) {
                    TypeTag::Str
                } else {
                    promote(&l, &r)
                }
            }
            Expr::Ternary { then, .. } => self.ty(then),
            Expr::Call { func, args } => match func.as_str() {
                "Math.max" | "Math.min" => promote(&self.ty(&args[0]), &self.ty(&args[1])),
                "Math.abs" => self.ty(&args[0]),
                "Integer.parseInt" => TypeTag::Int,
                "String.valueOf" => TypeTag::Str,
                _ => TypeTag::Any,
            },
            Expr::Method { name, .. } => match name.as_str() {
                "length" => TypeTag::Int,
                "isEmpty" | "equals" => TypeTag::Boolean,
                "toUpperCase" | "toLowerCase" => TypeTag::Str,
                _ => TypeTag::Any,
            },
            Expr::Field { name, .. } => match name.as_str() {
                "length" | "MAX_VALUE" | "MIN_VALUE" => TypeTag::Int,
                _ => TypeTag::Any,
            },
            Expr::Index { base, .. } => match self.ty(base) {
                TypeTag::Array(inner) => *inner,
                _ => TypeTag::Any,
            },
            Expr::NewArray { elem, dims } => (0..dims.len()).fold(elem.clone(), |t, _| TypeTag::array_of(t)),
            Expr::ArrayLit { elem, items } => TypeTag::array_of(
                elem.clone()
                    .or_else(|| items.first().map(|i| self.ty(i)))
                    .unwrap_or(TypeTag::Any),
            ),
            Expr::Cast { ty, .. } => ty.clone(),
            Expr::Comprehension { .. } => TypeTag::Any,
        }
    }

    /// Value stored into a slot of type `slot`: ints widen to floats as in
    /// Java.
    fn coerce(&self, slot: &TypeTag, e: &Expr, lowered: Expr) -> Expr {
        if *slot == TypeTag::Double && self.ty(e).is_integral() {
            call("float", vec![lowered])
        } else {
            lowered
        }
    }

    fn as_string(&self, e: &Expr) -> Lowered<Expr> {
        let lowered = self.expr(e)?;
        Ok(match self.ty(e) {
            TypeTag::Str => lowered,
            TypeTag::Boolean => Expr::Ternary {
                cond: Box::new(lowered),
                then: Box::new(Expr::Str("true".into())),
                otherwise: Box::new(Expr::Str("false".into())),
            },
            _ => call("str", vec![lowered]),
        })
    }

    fn expr(&self, e: &Expr) -> Lowered<Expr> {
        Ok(match e {
            Expr::Int(_) | Expr::Float(_) | Expr::Bool(_) | Expr::Str(_) | Expr::Null | Expr::Var(_) => e.clone(),
            Expr::Unary { op, expr } => Expr::Unary {
                op: *op,
                expr: Box::new(self.expr(expr)?),
            },
            Expr::Binary { op, lhs, rhs } => {
                let (lt, rt) = (self.ty(lhs), self.ty(rhs));
                if *op == BinOp::Add && (lt == TypeTag::Str || rt == TypeTag::Str) {
                    return Ok(Expr::binary(BinOp::Add, self.as_string(lhs)?, self.as_string(rhs)?));
                }
                let (l, r) = (self.expr(lhs)?, self.expr(rhs)?);
                match op {
                    BinOp::Div if is_integral(&lt) && is_integral(&rt) => int_div(l, r),
                    BinOp::Mod => trunc_mod(l, r),
                    BinOp::FloorDiv => return unsupported("floor division in Java"),
                    _ => Expr::binary(*op, l, r),
                }
            }
            Expr::Ternary { cond, then, otherwise } => Expr::Ternary {
                cond: Box::new(self.expr(cond)?),
                then: Box::new(self.expr(then)?),
                otherwise: Box::new(self.expr(otherwise)?),
            },
            Expr::Call { func, args } => {
                let args = args.iter().map(|a| self.expr(a)).collect::<Lowered<Vec<_>>>()?;
                let name = match func.as_str() {
                    "Math.max" => "max",
                    "Math.min" => "min",
                    "Math.abs" => "abs",
                    "Integer.parseInt" => "int",
                    "String.valueOf" => "str",
                    other => return unsupported(other.to_string()),
                };
                call(name, args)
            }
            Expr::Method { recv, name, args } => {
                let r = self.expr(recv)?;
                match (name.as_str(), args.as_slice()) {
                    ("length", []) => call("len", vec![r]),
                    ("isEmpty", []) => Expr::binary(BinOp::Eq, call("len", vec![r]), Expr::Int(0)),
                    ("equals", [a]) => Expr::binary(BinOp::Eq, r, self.expr(a)?),
                    ("toUpperCase", []) | ("toLowerCase", []) => Expr::Method {
                        recv: Box::new(r),
                        name: if name == "toUpperCase" { "upper" } else { "lower" }.into(),
                        args: Vec::new(),
                    },
                    _ => return unsupported(format!("method {name}")),
                }
            }
            Expr::Field { recv, name } => match (recv.as_ref(), name.as_str()) {
                (Expr::Var(c), "MAX_VALUE") if c == "Integer" => Expr::Int(i32::MAX as i64),
                (Expr::Var(c), "MIN_VALUE") if c == "Integer" => Expr::Int(i32::MIN as i64),
                (_, "length") => call("len", vec![self.expr(recv)?]),
                _ => return unsupported(format!("field {name}")),
            },
            Expr::Index { base, index } => Expr::Index {
                base: Box::new(self.expr(base)?),
                index: Box::new(self.expr(index)?),
            },
            Expr::NewArray { elem, dims } => Expr::NewArray {
                elem: elem.clone(),
                dims: dims.iter().map(|d| self.expr(d)).collect::<Lowered<_>>()?,
            },
            Expr::ArrayLit { items, .. } => Expr::ArrayLit {
                elem: None,
                items: items.iter().map(|i| self.expr(i)).collect::<Lowered<_>>()?,
            },
            Expr::Cast { ty, expr } => Expr::Cast {
                ty: ty.clone(),
                expr: Box::new(self.expr(expr)?),
            },
            Expr::Comprehension { .. } => return unsupported("comprehension in Java"),
        })
    }

    fn block(&mut self, body: &[Stmt]) -> Lowered<Vec<Stmt>> {
        self.scopes.push(HashMap::new());
        let mut out = Vec::new();
        for s in body {
            match self.stmt(s) {
                Ok(v) => out.extend(v),
                Err(e) => {
                    self.scopes.pop();
                    return Err(e);
                }
            }
        }
        self.scopes.pop();
        Ok(out)
    }

    fn assign(&self, target: &Expr, op: AssignOp, value: &Expr) -> Lowered<Stmt> {
        let t = self.expr(target)?;
        let tt = self.ty(target);
        let vt = self.ty(value);
        let v = self.expr(value)?;
        let integral = is_integral(&tt) && is_integral(&vt);
        Ok(match op {
            AssignOp::Div if integral => Stmt::Assign {
                target: t.clone(),
                op: AssignOp::Set,
                value: int_div(t, v),
            },
            AssignOp::Mod => Stmt::Assign {
                target: t.clone(),
                op: AssignOp::Set,
                value: trunc_mod(t, v),
            },
            AssignOp::Add if tt == TypeTag::Str => Stmt::Assign {
                target: t,
                op,
                value: self.as_string(value)?,
            },
            AssignOp::Set => Stmt::Assign {
                target: t,
                op,
                value: self.coerce(&tt, value, v),
            },
            _ => Stmt::Assign {
                target: t,
                op,
                value: v,
            },
        })
    }

    /// `for (int i = a; i < b; i++)` with neither `i` nor anything `b`
    /// mentions assigned in the body becomes `for i in range(a, b)`.
    fn range_loop(&mut self, init: &Stmt, cond: &Expr, update: &Stmt, body: &[Stmt]) -> Lowered<Option<Stmt>> {
        let Stmt::Decl {
            ty: TypeTag::Int,
            name,
            init: Some(start),
        } = init
        else {
            return Ok(None);
        };
        let step = match update {
            Stmt::IncDec {
                target: Expr::Var(v),
                increment,
            } if v == name => {
                if *increment {
                    1
                } else {
                    -1
                }
            }
            Stmt::Assign {
                target: Expr::Var(v),
                op: op @ (AssignOp::Add | AssignOp::Sub),
                value: Expr::Int(k),
            } if v == name && *k > 0 => {
                if *op == AssignOp::Add {
                    *k
                } else {
                    -*k
                }
            }
            _ => return Ok(None),
        };
        let Expr::Binary { op, lhs, rhs } = cond else {
            return Ok(None);
        };
        if !matches!(lhs.as_ref(), Expr::Var(v) if v == name) {
            return Ok(None);
        }
        let assigned = assigned_vars(body);
        if assigned.contains(name) || vars_in(rhs).iter().any(|v| assigned.contains(v)) {
            return Ok(None);
        }
        let bound = self.expr(rhs)?;
        let stop = match (op, step > 0) {
            (BinOp::Lt, true) | (BinOp::Gt, false) => bound,
            (BinOp::Le, true) => Expr::binary(BinOp::Add, bound, Expr::Int(1)),
            (BinOp::Ge, false) => Expr::binary(BinOp::Sub, bound, Expr::Int(1)),
            _ => return Ok(None),
        };
        let mut args = vec![self.expr(start)?, stop];
        if step != 1 {
            args.push(Expr::Int(step));
        }
        self.scopes.push(HashMap::from([(name.clone(), TypeTag::Int)]));
        let body = self.block(body);
        self.scopes.pop();
        Ok(Some(Stmt::ForEach {
            ty: TypeTag::Any,
            var: name.clone(),
            iter: call("range", args),
            body: body?,
        }))
    }

    fn stmt(&mut self, s: &Stmt) -> Lowered<Vec<Stmt>> {
        Ok(match s {
            Stmt::Decl { ty, name, init } => {
                let value = match init {
                    Some(e) => {
                        let v = self.expr(e)?;
                        self.coerce(ty, e, v)
                    }
                    None => default_value(ty),
                };
                self.declare(name, ty);
                vec![Stmt::Assign {
                    target: Expr::var(name),
                    op: AssignOp::Set,
                    value,
                }]
            }
            Stmt::Assign { target, op, value } => vec![self.assign(target, *op, value)?],
            Stmt::IncDec { target, increment } => vec![Stmt::Assign {
                target: self.expr(target)?,
                op: if *increment { AssignOp::Add } else { AssignOp::Sub },
                value: Expr::Int(1),
            }],
            Stmt::Expr(e) => vec![Stmt::Expr(self.expr(e)?)],
            Stmt::If {
                cond,
                then_body,
                else_body,
            } => vec![Stmt::If {
                cond: self.expr(cond)?,
                then_body: self.block(then_body)?,
                else_body: match else_body {
                    Some(b) => Some(self.block(b)?),
                    None => None,
                },
            }],
            Stmt::Switch {
                scrutinee,
                cases,
                default,
            } => {
                let mut lowered = Vec::with_capacity(cases.len());
                for c in cases {
                    lowered.push(crate::code::SwitchCase {
                        labels: c.labels.clone(),
                        body: self.block(&c.body)?,
                    });
                }
                vec![Stmt::Switch {
                    scrutinee: self.expr(scrutinee)?,
                    cases: lowered,
                    default: match default {
                        Some(b) => Some(self.block(b)?),
                        None => None,
                    },
                }]
            }
            Stmt::For {
                init,
                cond,
                update,
                body,
            } => {
                if let (Some(i), Some(c), Some(u)) = (init, cond, update) {
                    if let Some(r) = self.range_loop(i, c, u, body)? {
                        return Ok(vec![r]);
                    }
                }
                self.scopes.push(HashMap::new());
                let result = self.c_style_for(init.as_deref(), cond.as_ref(), update.as_deref(), body);
                self.scopes.pop();
                result?
            }
            Stmt::ForEach { ty, var, iter, body } => {
                let iter = self.expr(iter)?;
                self.scopes.push(HashMap::from([(var.clone(), ty.clone())]));
                let body = self.block(body);
                self.scopes.pop();
                vec![Stmt::ForEach {
                    ty: TypeTag::Any,
                    var: var.clone(),
                    iter,
                    body: body?,
                }]
            }
            Stmt::While { cond, body } => vec![Stmt::While {
                cond: self.expr(cond)?,
                body: self.block(body)?,
            }],
            Stmt::DoWhile { body, cond } => {
                let exit = Stmt::If {
                    cond: Expr::logical_not(self.expr(cond)?),
                    then_body: vec![Stmt::Break],
                    else_body: None,
                };
                let mut inner = before_continue(self.block(body)?, std::slice::from_ref(&exit));
                inner.push(exit);
                vec![Stmt::While {
                    cond: Expr::Bool(true),
                    body: inner,
                }]
            }
            Stmt::Return(Some(e)) => {
                let v = self.expr(e)?;
                vec![Stmt::Return(Some(self.coerce(&self.ret.clone(), e, v)))]
            }
            Stmt::Return(None) => vec![Stmt::Return(None)],
            Stmt::Break => vec![Stmt::Break],
            Stmt::Continue => vec![Stmt::Continue],
            Stmt::Print(args) => vec![Stmt::Print(args.iter().map(|a| self.expr(a)).collect::<Lowered<_>>()?)],
            Stmt::Block(b) => self.block(b)?,
        })
    }

    /// `init; while cond: body; update`, repeating `update` before every
    /// `continue` of this loop.
    fn c_style_for(
        &mut self,
        init: Option<&Stmt>,
        cond: Option<&Expr>,
        update: Option<&Stmt>,
        body: &[Stmt],
    ) -> Lowered<Vec<Stmt>> {
        let mut out = match init {
            Some(i) => self.stmt(i)?,
            None => Vec::new(),
        };
        let update = match update {
            Some(u) => self.stmt(u)?,
            None => Vec::new(),
        };
        let cond = match cond {
            Some(c) => self.expr(c)?,
            None => Expr::Bool(true),
        };
        let mut inner = before_continue(self.block(body)?, &update);
        inner.extend(update);
        out.push(Stmt::While { cond, body: inner });
        Ok(out)
    }
}

fn promote(l: &TypeTag, r: &TypeTag) -> TypeTag {
    match (l, r) {
        (TypeTag::Double, _) | (_, TypeTag::Double) => TypeTag::Double,
        (a, b) if a.is_integral() && b.is_integral() => TypeTag::Int,
        (TypeTag::Boolean, TypeTag::Boolean) => TypeTag::Boolean,
        _ => TypeTag::Any,
    }
}

fn default_value(ty: &TypeTag) -> Expr {
    match ty {
        TypeTag::Int | TypeTag::Long => Expr::Int(0),
        TypeTag::Double => Expr::Float(0.0),
        TypeTag::Boolean => Expr::Bool(false),
        _ => Expr::Null,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::interp::run_function;
    use crate::code::{parse_java, parse_python, render_py, Value};
    use crate::lang::Lang;

    fn same_behavior(src: &str, inputs: &[Vec<Value>]) {
        let j = parse_java(src).unwrap();
        let text = render_py(&java_to_python(&j).unwrap());
        let p = parse_python(&text).unwrap_or_else(|e| panic!("{e}\n{text}"));
        for args in inputs {
            let a = run_function(&j, Lang::Java, args, 100_000);
            let b = run_function(&p, Lang::Py, args, 100_000);
            assert!(a.same_as(&b), "{args:?}: {a:?} vs {b:?}\n{text}");
        }
    }

    #[test]
    fn truncating_division_and_remainder() {
        let src = "int f(int a, int b) { int q = a / b; q %= 5; return q * 10 + a % b; }";
        let ins: Vec<Vec<Value>> = [(-31, 4), (31, -4), (7, 2), (-7, -2)]
            .iter()
            .map(|(a, b)| vec![Value::Int(*a), Value::Int(*b)])
            .collect();
        same_behavior(src, &ins);
    }

    #[test]
    fn c_style_loop_with_continue_keeps_its_update() {
        let src = "int f(int n) { int s = 0; for (int i = 0; i < n; i += 1) { if (i % 2 == 0) { continue; } s += i; n = n; } return s; }";
        same_behavior(src, &[vec![Value::Int(9)]]);
    }

    #[test]
    fn range_loops_and_string_concatenation() {
        let src = "String f(int n, boolean b) { String s = \"\"; for (int i = n; i >= 0; i--) { s += i; } return s + b + 1.5; }";
        same_behavior(src, &[vec![Value::Int(4), Value::Bool(true)]]);
    }

    #[test]
    fn do_while_runs_once() {
        let src = "int f(int n) { int k = 0; do { k++; } while (k < n); return k; }";
        same_behavior(src, &[vec![Value::Int(0)], vec![Value::Int(3)]]);
    }
}
