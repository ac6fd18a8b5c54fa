//! Tree-walking interpreter for the Java and Python subsets. Each dialect
//! keeps its own arithmetic: Java truncates integer division and remainder,
//! Python floors them and `/` always yields a float.

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt::Write as _;
use std::rc::Rc;

use serde::{Deserialize, Serialize};

use super::ast::*;
use super::value::Value;
use crate::lang::Lang;

/// Default bound on executed statements and loop iterations per call.
pub const DEFAULT_STEP_LIMIT: u64 = 1_000_000;

/// Largest list the interpreter will materialize (`range`, repetition, `new`).
const MAX_LIST: i64 = 10_000_000;

/// Result of running one test case.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "detail", rename_all = "snake_case")]
pub enum ExecOutcome {
    Ok(Value),
    Crash(String),
    Timeout,
    CompileFail,
}

impl ExecOutcome {
    pub fn is_ok(&self) -> bool {
        matches!(self, ExecOutcome::Ok(_))
    }

    /// Pointwise equality used by `retValues`: only two `Ok` values can match.
    pub fn same_as(&self, other: &ExecOutcome) -> bool {
        match (self, other) {
            (ExecOutcome::Ok(a), ExecOutcome::Ok(b)) => a == b,
            _ => false,
        }
    }
}

/// Runs `f` on `inputs` under `dialect` semantics.
pub fn run_function(f: &FunctionAst, dialect: Lang, inputs: &[Value], step_limit: u64) -> ExecOutcome {
    if inputs.len() != f.arity() {
        return ExecOutcome::Crash(format!("expected {} arguments, got {}", f.arity(), inputs.len()));
    }
    let mut m = Machine {
        dialect,
        steps: 0,
        limit: step_limit,
        vars: HashMap::new(),
        types: HashMap::new(),
        fname: &f.name,
    };
    for (p, v) in f.params.iter().zip(inputs) {
        let rv = RVal::from_value(v);
        let rv = if dialect == Lang::Java { coerce(&p.ty, rv) } else { rv };
        m.types.insert(p.name.clone(), p.ty.clone());
        m.vars.insert(p.name.clone(), rv);
    }
    match m.block(&f.body) {
        Ok(Flow::Return(v)) => {
            let v = if dialect == Lang::Java { coerce(&f.ret, v) } else { v };
            ExecOutcome::Ok(v.to_value())
        }
        Ok(_) => ExecOutcome::Ok(Value::Null),
        Err(Fault::Timeout) => ExecOutcome::Timeout,
        Err(Fault::Crash(msg)) => ExecOutcome::Crash(msg),
    }
}

#[derive(Debug, Clone)]
enum RVal {
    Null,
    Bool(bool),
    Int(i64),
    Float(f64),
    Str(Rc<str>),
    List(Rc<RefCell<Vec<RVal>>>),
}

impl RVal {
    fn from_value(v: &Value) -> RVal {
        match v {
            Value::Null => RVal::Null,
            Value::Bool(b) => RVal::Bool(*b),
            Value::Int(i) => RVal::Int(*i),
            Value::Float(x) => RVal::Float(*x),
            Value::Str(s) => RVal::Str(Rc::from(s.as_str())),
            Value::List(items) => list(items.iter().map(RVal::from_value).collect()),
        }
    }

    fn to_value(&self) -> Value {
        match self {
            RVal::Null => Value::Null,
            RVal::Bool(b) => Value::Bool(*b),
            RVal::Int(i) => Value::Int(*i),
            RVal::Float(x) => Value::Float(*x),
            RVal::Str(s) => Value::Str(s.to_string()),
            RVal::List(items) => Value::List(items.borrow().iter().map(RVal::to_value).collect()),
        }
    }

    fn type_name(&self) -> &'static str {
        match self {
            RVal::Null => "null",
            RVal::Bool(_) => "bool",
            RVal::Int(_) => "int",
            RVal::Float(_) => "float",
            RVal::Str(_) => "str",
            RVal::List(_) => "list",
        }
    }
}

fn list(items: Vec<RVal>) -> RVal {
    RVal::List(Rc::new(RefCell::new(items)))
}

fn coerce(ty: &TypeTag, v: RVal) -> RVal {
    match (ty, v) {
        (TypeTag::Double, RVal::Int(i)) => RVal::Float(i as f64),
        (TypeTag::Int | TypeTag::Long, RVal::Float(x)) => RVal::Int(x as i64),
        (TypeTag::Array(inner), RVal::List(items)) => {
            let mut items_mut = items.borrow_mut();
            for it in items_mut.iter_mut() {
                let old = std::mem::replace(it, RVal::Null);
                *it = coerce(inner, old);
            }
            drop(items_mut);
            RVal::List(items)
        }
        (_, v) => v,
    }
}

enum Flow {
    Normal,
    Break,
    Continue,
    Return(RVal),
}

enum Fault {
    Crash(String),
    Timeout,
}

type R<T> = Result<T, Fault>;

fn crash<T>(msg: impl Into<String>) -> R<T> {
    Err(Fault::Crash(msg.into()))
}

struct Machine<'a> {
    dialect: Lang,
    steps: u64,
    limit: u64,
    vars: HashMap<String, RVal>,
    types: HashMap<String, TypeTag>,
    fname: &'a str,
}

impl Machine<'_> {
    fn tick(&mut self) -> R<()> {
        self.steps += 1;
        if self.steps > self.limit {
            Err(Fault::Timeout)
        } else {
            Ok(())
        }
    }

    fn java(&self) -> bool {
        self.dialect == Lang::Java
    }

    fn block(&mut self, body: &[Stmt]) -> R<Flow> {
        for s in body {
            match self.stmt(s)? {
                Flow::Normal => {}
                other => return Ok(other),
            }
        }
        Ok(Flow::Normal)
    }

    fn loop_body(&mut self, body: &[Stmt]) -> R<Option<Flow>> {
        self.tick()?;
        match self.block(body)? {
            Flow::Break => Ok(Some(Flow::Normal)),
            Flow::Return(v) => Ok(Some(Flow::Return(v))),
            Flow::Normal | Flow::Continue => Ok(None),
        }
    }

    fn stmt(&mut self, s: &Stmt) -> R<Flow> {
        self.tick()?;
        match s {
            Stmt::Decl { ty, name, init } => {
                let v = match init {
                    Some(e) => self.eval(e)?,
                    None => default_for(ty),
                };
                self.types.insert(name.clone(), ty.clone());
                self.vars.insert(name.clone(), coerce(ty, v));
            }
            Stmt::Assign { target, op, value } => {
                let rhs = self.eval(value)?;
                let v = match op.binary() {
                    None => rhs,
                    Some(bop) => {
                        let cur = self.eval(target)?;
                        self.binop(bop, cur, rhs)?
                    }
                };
                self.store(target, v)?;
            }
            Stmt::IncDec { target, increment } => {
                let cur = self.eval(target)?;
                let op = if *increment { BinOp::Add } else { BinOp::Sub };
                let v = self.binop(op, cur, RVal::Int(1))?;
                self.store(target, v)?;
            }
            Stmt::Expr(e) => {
                self.eval(e)?;
            }
            Stmt::If {
                cond,
                then_body,
                else_body,
            } => {
                let c = self.eval(cond)?;
                if self.truthy(&c)? {
                    return self.block(then_body);
                } else if let Some(body) = else_body {
                    return self.block(body);
                }
            }
            Stmt::Switch {
                scrutinee,
                cases,
                default,
            } => {
                let v = self.eval(scrutinee)?;
                for case in cases {
                    for label in &case.labels {
                        let l = self.eval(label)?;
                        if values_equal(&v, &l) {
                            return self.block(&case.body);
                        }
                    }
                }
                if let Some(body) = default {
                    return self.block(body);
                }
            }
            Stmt::For {
                init,
                cond,
                update,
                body,
            } => {
                if let Some(init) = init {
                    self.stmt(init)?;
                }
                loop {
                    if let Some(c) = cond {
                        let c = self.eval(c)?;
                        if !self.truthy(&c)? {
                            break;
                        }
                    }
                    if let Some(flow) = self.loop_body(body)? {
                        return Ok(flow);
                    }
                    if let Some(u) = update {
                        self.stmt(u)?;
                    }
                }
            }
            Stmt::ForEach { ty, var, iter, body } => {
                let it = self.eval(iter)?;
                let items: Vec<RVal> = match it {
                    RVal::List(items) => items.borrow().clone(),
                    RVal::Str(s) if !self.java() => {
                        s.chars().map(|c| RVal::Str(Rc::from(c.to_string().as_str()))).collect()
                    }
                    other => return crash(format!("cannot iterate over {}", other.type_name())),
                };
                if self.java() {
                    self.types.insert(var.clone(), ty.clone());
                }
                for item in items {
                    let item = if self.java() { coerce(ty, item) } else { item };
                    self.vars.insert(var.clone(), item);
                    if let Some(flow) = self.loop_body(body)? {
                        return Ok(flow);
                    }
                }
            }
            Stmt::While { cond, body } => loop {
                let c = self.eval(cond)?;
                if !self.truthy(&c)? {
                    break;
                }
                if let Some(flow) = self.loop_body(body)? {
                    return Ok(flow);
                }
            },
            Stmt::DoWhile { body, cond } => loop {
                if let Some(flow) = self.loop_body(body)? {
                    return Ok(flow);
                }
                let c = self.eval(cond)?;
                if !self.truthy(&c)? {
                    break;
                }
            },
            Stmt::Return(e) => {
                let v = match e {
                    Some(e) => self.eval(e)?,
                    None => RVal::Null,
                };
                return Ok(Flow::Return(v));
            }
            Stmt::Break => return Ok(Flow::Break),
            Stmt::Continue => return Ok(Flow::Continue),
            Stmt::Print(args) => {
                for a in args {
                    self.eval(a)?;
                }
            }
            Stmt::Block(body) => return self.block(body),
        }
        Ok(Flow::Normal)
    }

    fn store(&mut self, target: &Expr, v: RVal) -> R<()> {
        match target {
            Expr::Var(name) => {
                let v = match (self.java(), self.types.get(name)) {
                    (true, Some(ty)) => coerce(ty, v),
                    _ => v,
                };
                self.vars.insert(name.clone(), v);
                Ok(())
            }
            Expr::Index { base, index } => {
                let b = self.eval(base)?;
                let i = self.eval(index)?;
                let RVal::List(items) = b else {
                    return crash(format!("cannot assign into {}", b.type_name()));
                };
                let mut items = items.borrow_mut();
                let idx = self.index_of(&i, items.len())?;
                let v = match &items[idx] {
                    RVal::Float(_) if self.java() => match v {
                        RVal::Int(x) => RVal::Float(x as f64),
                        other => other,
                    },
                    RVal::Int(_) if self.java() => match v {
                        RVal::Float(x) => RVal::Int(x as i64),
                        other => other,
                    },
                    _ => v,
                };
                items[idx] = v;
                Ok(())
            }
            _ => crash("invalid assignment target"),
        }
    }

    fn index_of(&self, i: &RVal, len: usize) -> R<usize> {
        let RVal::Int(i) = *i else {
            return crash(format!("index must be an integer, got {}", i.type_name()));
        };
        let len = len as i64;
        let j = if !self.java() && i < 0 { i + len } else { i };
        if j < 0 || j >= len {
            return crash(format!("index {i} out of range for length {len}"));
        }
        Ok(j as usize)
    }

    fn truthy(&self, v: &RVal) -> R<bool> {
        match v {
            RVal::Bool(b) => Ok(*b),
            _ if self.java() => crash(format!("condition is {}, not boolean", v.type_name())),
            RVal::Null => Ok(false),
            RVal::Int(i) => Ok(*i != 0),
            RVal::Float(x) => Ok(*x != 0.0),
            RVal::Str(s) => Ok(!s.is_empty()),
            RVal::List(items) => Ok(!items.borrow().is_empty()),
        }
    }

    fn lookup(&self, name: &str) -> R<RVal> {
        match self.vars.get(name) {
            Some(v) => Ok(v.clone()),
            None if self.java() && name == "Integer" => crash("bare class reference"),
            None => crash(format!("name `{name}` is not defined")),
        }
    }

    fn eval(&mut self, e: &Expr) -> R<RVal> {
        match e {
            Expr::Int(i) => Ok(RVal::Int(*i)),
            Expr::Float(x) => Ok(RVal::Float(*x)),
            Expr::Bool(b) => Ok(RVal::Bool(*b)),
            Expr::Str(s) => Ok(RVal::Str(Rc::from(s.as_str()))),
            Expr::Null => Ok(RVal::Null),
            Expr::Var(name) => self.lookup(name),
            Expr::Unary { op, expr } => {
                let v = self.eval(expr)?;
                match op {
                    UnaryOp::Not => Ok(RVal::Bool(!self.truthy(&v)?)),
                    UnaryOp::Neg => match v {
                        RVal::Int(i) => i
                            .checked_neg()
                            .map(RVal::Int)
                            .ok_or(())
                            .or_else(|_| crash("integer overflow")),
                        RVal::Float(x) => Ok(RVal::Float(-x)),
                        RVal::Bool(b) if !self.java() => Ok(RVal::Int(-(b as i64))),
                        other => crash(format!("cannot negate {}", other.type_name())),
                    },
                }
            }
            Expr::Binary {
                op: BinOp::And,
                lhs,
                rhs,
            } => {
                let l = self.eval(lhs)?;
                if !self.truthy(&l)? {
                    return Ok(if self.java() { RVal::Bool(false) } else { l });
                }
                let r = self.eval(rhs)?;
                if self.java() {
                    Ok(RVal::Bool(self.truthy(&r)?))
                } else {
                    Ok(r)
                }
            }
            Expr::Binary {
                op: BinOp::Or,
                lhs,
                rhs,
            } => {
                let l = self.eval(lhs)?;
                if self.truthy(&l)? {
                    return Ok(if self.java() { RVal::Bool(true) } else { l });
                }
                let r = self.eval(rhs)?;
                if self.java() {
                    Ok(RVal::Bool(self.truthy(&r)?))
                } else {
                    Ok(r)
                }
            }
            Expr::Binary { op, lhs, rhs } => {
                let l = self.eval(lhs)?;
                let r = self.eval(rhs)?;
                self.binop(*op, l, r)
            }
            Expr::Ternary { cond, then, otherwise } => {
                let c = self.eval(cond)?;
                if self.truthy(&c)? {
                    self.eval(then)
                } else {
                    self.eval(otherwise)
                }
            }
            Expr::Call { func, args } => {
                let mut vals = Vec::with_capacity(args.len());
                for a in args {
                    vals.push(self.eval(a)?);
                }
                self.call(func, vals)
            }
            Expr::Method { recv, name, args } => {
                let r = self.eval(recv)?;
                let mut vals = Vec::with_capacity(args.len());
                for a in args {
                    vals.push(self.eval(a)?);
                }
                self.method(r, name, vals)
            }
            Expr::Field { recv, name } => {
                if let Expr::Var(cls) = recv.as_ref() {
                    if self.java() && !self.vars.contains_key(cls) {
                        return static_field(cls, name);
                    }
                }
                let r = self.eval(recv)?;
                match (&r, name.as_str()) {
                    (RVal::List(items), "length") if self.java() => Ok(RVal::Int(items.borrow().len() as i64)),
                    _ => crash(format!("{} has no field `{name}`", r.type_name())),
                }
            }
            Expr::Index { base, index } => {
                let b = self.eval(base)?;
                let i = self.eval(index)?;
                match b {
                    RVal::List(items) => {
                        let items = items.borrow();
                        let idx = self.index_of(&i, items.len())?;
                        Ok(items[idx].clone())
                    }
                    RVal::Str(s) if !self.java() => {
                        let chars: Vec<char> = s.chars().collect();
                        let idx = self.index_of(&i, chars.len())?;
                        Ok(RVal::Str(Rc::from(chars[idx].to_string().as_str())))
                    }
                    other => crash(format!("cannot index {}", other.type_name())),
                }
            }
            Expr::NewArray { elem, dims } => {
                let mut sizes = Vec::with_capacity(dims.len());
                for d in dims {
                    match self.eval(d)? {
                        RVal::Int(n) if n < 0 => return crash("negative array size"),
                        RVal::Int(n) if n > MAX_LIST => return crash("array too large"),
                        RVal::Int(n) => sizes.push(n as usize),
                        other => return crash(format!("array size must be int, got {}", other.type_name())),
                    }
                }
                self.steps += sizes.iter().product::<usize>() as u64 / 16;
                Ok(new_array(elem, &sizes))
            }
            Expr::ArrayLit { elem, items } => {
                let mut vals = Vec::with_capacity(items.len());
                for it in items {
                    let v = self.eval(it)?;
                    vals.push(match elem {
                        Some(t) if self.java() => coerce(t, v),
                        _ => v,
                    });
                }
                Ok(list(vals))
            }
            Expr::Cast { ty, expr } => {
                let v = self.eval(expr)?;
                match (ty, v) {
                    (TypeTag::Int | TypeTag::Long, RVal::Float(x)) => {
                        if x.is_nan() {
                            Ok(RVal::Int(0))
                        } else {
                            Ok(RVal::Int(x.trunc().clamp(i32::MIN as f64, i32::MAX as f64) as i64))
                        }
                    }
                    (TypeTag::Double, RVal::Int(i)) => Ok(RVal::Float(i as f64)),
                    (_, v) => Ok(v),
                }
            }
            Expr::Comprehension { elem, var, iter, cond } => {
                let it = self.eval(iter)?;
                let items: Vec<RVal> = match it {
                    RVal::List(items) => items.borrow().clone(),
                    RVal::Str(s) => s.chars().map(|c| RVal::Str(Rc::from(c.to_string().as_str()))).collect(),
                    other => return crash(format!("cannot iterate over {}", other.type_name())),
                };
                // Comprehension variables do not leak into the enclosing scope.
                let saved = self.vars.remove(var);
                let mut out = Vec::new();
                let mut result = Ok(());
                for item in items {
                    if let Err(e) = self.tick() {
                        result = Err(e);
                        break;
                    }
                    self.vars.insert(var.clone(), item);
                    if let Some(c) = cond {
                        match self.eval(c).and_then(|v| self.truthy(&v)) {
                            Ok(true) => {}
                            Ok(false) => continue,
                            Err(e) => {
                                result = Err(e);
                                break;
                            }
                        }
                    }
                    match self.eval(elem) {
                        Ok(v) => out.push(v),
                        Err(e) => {
                            result = Err(e);
                            break;
                        }
                    }
                }
                self.vars.remove(var);
                if let Some(v) = saved {
                    self.vars.insert(var.clone(), v);
                }
                result.map(|_| list(out))
            }
        }
    }

    fn binop(&mut self, op: BinOp, l: RVal, r: RVal) -> R<RVal> {
        use RVal::*;
        if op == BinOp::Eq {
            return Ok(Bool(values_equal(&l, &r)));
        }
        if op == BinOp::Ne {
            return Ok(Bool(!values_equal(&l, &r)));
        }
        // Python booleans are integers in arithmetic.
        let (l, r) = if self.java() {
            (l, r)
        } else {
            (bool_to_int(l), bool_to_int(r))
        };
        match (op, &l, &r) {
            (BinOp::Add, Str(a), _) if self.java() => Ok(Str(Rc::from(format!("{a}{}", java_str(&r)).as_str()))),
            (BinOp::Add, _, Str(b)) if self.java() => Ok(Str(Rc::from(format!("{}{b}", java_str(&l)).as_str()))),
            (BinOp::Add, Str(a), Str(b)) => Ok(Str(Rc::from(format!("{a}{b}").as_str()))),
            (BinOp::Add, List(a), List(b)) if !self.java() => {
                let mut v = a.borrow().clone();
                v.extend(b.borrow().iter().cloned());
                Ok(list(v))
            }
            (BinOp::Mul, List(a), Int(n)) | (BinOp::Mul, Int(n), List(a)) if !self.java() => {
                let n = (*n).max(0);
                let a = a.borrow();
                if n * a.len() as i64 > MAX_LIST {
                    return crash("list too large");
                }
                self.steps += (n as u64 * a.len() as u64) / 16;
                let mut v = Vec::with_capacity(n as usize * a.len());
                for _ in 0..n {
                    v.extend(a.iter().cloned());
                }
                Ok(list(v))
            }
            (BinOp::Mul, Str(s), Int(n)) | (BinOp::Mul, Int(n), Str(s)) if !self.java() => {
                let n = (*n).max(0);
                if n * s.len() as i64 > MAX_LIST {
                    return crash("string too large");
                }
                Ok(Str(Rc::from(s.repeat(n as usize).as_str())))
            }
            (_, Int(a), Int(b)) => self.int_op(op, *a, *b),
            (_, Int(_) | Float(_), Int(_) | Float(_)) => {
                let a = as_f64(&l);
                let b = as_f64(&r);
                self.float_op(op, a, b)
            }
            (BinOp::Lt | BinOp::Le | BinOp::Gt | BinOp::Ge, Str(a), Str(b)) if !self.java() => {
                let ord = a.cmp(b);
                Ok(Bool(compare(op, ord)))
            }
            (BinOp::And | BinOp::Or | BinOp::BitAnd | BinOp::BitOr | BinOp::BitXor, Bool(a), Bool(b)) => {
                Ok(Bool(match op {
                    BinOp::And | BinOp::BitAnd => *a && *b,
                    BinOp::Or | BinOp::BitOr => *a || *b,
                    _ => a ^ b,
                }))
            }
            _ => crash(format!(
                "unsupported operand types for {:?}: {} and {}",
                op,
                l.type_name(),
                r.type_name()
            )),
        }
    }

    fn int_op(&self, op: BinOp, a: i64, b: i64) -> R<RVal> {
        let overflow = || Fault::Crash("integer overflow".into());
        let v = match op {
            BinOp::Add => a.checked_add(b).ok_or_else(overflow)?,
            BinOp::Sub => a.checked_sub(b).ok_or_else(overflow)?,
            BinOp::Mul => a.checked_mul(b).ok_or_else(overflow)?,
            BinOp::Div if !self.java() => {
                if b == 0 {
                    return crash("division by zero");
                }
                return Ok(RVal::Float(a as f64 / b as f64));
            }
            BinOp::Div => {
                if b == 0 {
                    return crash("/ by zero");
                }
                a.checked_div(b).ok_or_else(overflow)?
            }
            BinOp::FloorDiv => {
                if b == 0 {
                    return crash("integer division by zero");
                }
                a.checked_div_euclid(b).ok_or_else(overflow)?;
                floor_div(a, b)
            }
            BinOp::Mod if self.java() => {
                if b == 0 {
                    return crash("/ by zero");
                }
                a.checked_rem(b).ok_or_else(overflow)?
            }
            BinOp::Mod => {
                if b == 0 {
                    return crash("integer modulo by zero");
                }
                a - b * floor_div(a, b)
            }
            BinOp::Lt | BinOp::Le | BinOp::Gt | BinOp::Ge => return Ok(RVal::Bool(compare(op, a.cmp(&b)))),
            BinOp::BitAnd => a & b,
            BinOp::BitOr => a | b,
            BinOp::BitXor => a ^ b,
            BinOp::Shl => {
                if !(0..63).contains(&b) {
                    return crash("shift count out of range");
                }
                a.checked_shl(b as u32).ok_or_else(overflow)?
            }
            BinOp::Shr => {
                if !(0..63).contains(&b) {
                    return crash("shift count out of range");
                }
                a >> b
            }
            BinOp::And | BinOp::Or | BinOp::Eq | BinOp::Ne => unreachable!("handled by the caller"),
        };
        Ok(RVal::Int(v))
    }

    fn float_op(&self, op: BinOp, a: f64, b: f64) -> R<RVal> {
        let py_zero = !self.java() && b == 0.0;
        let v = match op {
            BinOp::Add => a + b,
            BinOp::Sub => a - b,
            BinOp::Mul => a * b,
            BinOp::Div => {
                if py_zero {
                    return crash("float division by zero");
                }
                a / b
            }
            BinOp::FloorDiv => {
                if py_zero {
                    return crash("float floor division by zero");
                }
                (a / b).floor()
            }
            BinOp::Mod => {
                if py_zero {
                    return crash("float modulo");
                }
                if self.java() {
                    a % b
                } else {
                    a - b * (a / b).floor()
                }
            }
            BinOp::Lt | BinOp::Le | BinOp::Gt | BinOp::Ge => {
                return match a.partial_cmp(&b) {
                    Some(ord) => Ok(RVal::Bool(compare(op, ord))),
                    None => Ok(RVal::Bool(false)),
                }
            }
            _ => return crash(format!("unsupported float operator {op:?}")),
        };
        Ok(RVal::Float(v))
    }

    fn call(&mut self, func: &str, args: Vec<RVal>) -> R<RVal> {
        if func == self.fname {
            return crash("recursion is not supported by the builtin interpreter");
        }
        if self.java() {
            java_call(func, args)
        } else {
            self.py_call(func, args)
        }
    }

    fn py_call(&mut self, func: &str, args: Vec<RVal>) -> R<RVal> {
        use RVal::*;
        match (func, args.as_slice()) {
            ("len", [Str(s)]) => Ok(Int(s.chars().count() as i64)),
            ("len", [List(items)]) => Ok(Int(items.borrow().len() as i64)),
            ("abs", [Int(i)]) => i
                .checked_abs()
                .map(Int)
                .ok_or(())
                .or_else(|_| crash("integer overflow")),
            ("abs", [Float(x)]) => Ok(Float(x.abs())),
            ("abs", [Bool(b)]) => Ok(Int(*b as i64)),
            ("max" | "min", [List(items)]) => {
                let items = items.borrow().clone();
                self.extremum(func == "max", items)
            }
            ("max" | "min", [_, _, ..]) => self.extremum(func == "max", args),
            ("sum", [List(items)]) => {
                let items = items.borrow().clone();
                let mut acc = Int(0);
                for it in items {
                    acc = self.binop(BinOp::Add, acc, it)?;
                }
                Ok(acc)
            }
            ("range", _) => {
                let ints: Vec<i64> = args
                    .iter()
                    .map(|a| match bool_to_int(a.clone()) {
                        Int(i) => Ok(i),
                        other => Err(Fault::Crash(format!("range() argument is {}", other.type_name()))),
                    })
                    .collect::<R<_>>()?;
                let (start, stop, step) = match ints.as_slice() {
                    [n] => (0, *n, 1),
                    [a, b] => (*a, *b, 1),
                    [a, b, s] => (*a, *b, *s),
                    _ => return crash("range() takes 1 to 3 arguments"),
                };
                if step == 0 {
                    return crash("range() arg 3 must not be zero");
                }
                let count = if step > 0 {
                    (stop - start + step - 1).max(0) / step
                } else {
                    (start - stop - step - 1).max(0) / -step
                };
                if count > MAX_LIST {
                    return crash("range too large");
                }
                self.steps += count as u64 / 16;
                Ok(list((0..count).map(|k| Int(start + k * step)).collect()))
            }
            ("int", [Int(i)]) => Ok(Int(*i)),
            ("int", [Bool(b)]) => Ok(Int(*b as i64)),
            ("int", [Float(x)]) => {
                if !x.is_finite() {
                    return crash("cannot convert float to integer");
                }
                Ok(Int(x.trunc() as i64))
            }
            ("int", [Str(s)]) => match s.trim().parse::<i64>() {
                Ok(i) => Ok(Int(i)),
                Err(_) => crash(format!("invalid literal for int(): {s:?}")),
            },
            ("float", [Int(i)]) => Ok(Float(*i as f64)),
            ("float", [Float(x)]) => Ok(Float(*x)),
            ("float", [Str(s)]) => match s.trim().parse::<f64>() {
                Ok(x) => Ok(Float(x)),
                Err(_) => crash(format!("could not convert string to float: {s:?}")),
            },
            ("str", [v]) => Ok(Str(Rc::from(py_str(v).as_str()))),
            ("bool", [v]) => Ok(Bool(self.truthy(v)?)),
            ("sorted", [List(items)]) => {
                let mut v = items.borrow().clone();
                sort_values(&mut v)?;
                Ok(list(v))
            }
            ("list", [List(items)]) => Ok(list(items.borrow().clone())),
            ("print", _) => Ok(Null),
            _ => crash(format!("unknown function `{func}` with {} arguments", args.len())),
        }
    }

    fn extremum(&mut self, max: bool, items: Vec<RVal>) -> R<RVal> {
        let mut it = items.into_iter();
        let Some(mut best) = it.next() else {
            return crash("max() arg is an empty sequence");
        };
        for v in it {
            let op = if max { BinOp::Gt } else { BinOp::Lt };
            if let RVal::Bool(true) = self.binop(op, v.clone(), best.clone())? {
                best = v;
            }
        }
        Ok(best)
    }

    fn method(&mut self, recv: RVal, name: &str, args: Vec<RVal>) -> R<RVal> {
        use RVal::*;
        match (&recv, name, args.as_slice()) {
            (Str(s), "length", []) if self.java() => Ok(Int(s.chars().count() as i64)),
            (Str(s), "isEmpty", []) if self.java() => Ok(Bool(s.is_empty())),
            (Str(s), "equals", [other]) if self.java() => Ok(Bool(matches!(other, Str(o) if o == s))),
            (Str(s), "toUpperCase", []) if self.java() => Ok(Str(Rc::from(s.to_uppercase().as_str()))),
            (Str(s), "toLowerCase", []) if self.java() => Ok(Str(Rc::from(s.to_lowercase().as_str()))),
            (Str(s), "upper", []) if !self.java() => Ok(Str(Rc::from(s.to_uppercase().as_str()))),
            (Str(s), "lower", []) if !self.java() => Ok(Str(Rc::from(s.to_lowercase().as_str()))),
            (List(items), "append", [v]) if !self.java() => {
                items.borrow_mut().push(v.clone());
                Ok(Null)
            }
            (List(items), "pop", []) if !self.java() => match items.borrow_mut().pop() {
                Some(v) => Ok(v),
                None => crash("pop from empty list"),
            },
            _ => crash(format!(
                "{} has no method `{name}` with {} arguments",
                recv.type_name(),
                args.len()
            )),
        }
    }
}

fn java_call(func: &str, args: Vec<RVal>) -> R<RVal> {
    use RVal::*;
    match (func, args.as_slice()) {
        ("Math.max", [Int(a), Int(b)]) => Ok(Int(*a.max(b))),
        ("Math.min", [Int(a), Int(b)]) => Ok(Int(*a.min(b))),
        ("Math.max", [a, b]) => Ok(Float(as_f64(a).max(as_f64(b)))),
        ("Math.min", [a, b]) => Ok(Float(as_f64(a).min(as_f64(b)))),
        ("Math.abs", [Int(a)]) => Ok(Int(a.wrapping_abs())),
        ("Math.abs", [Float(x)]) => Ok(Float(x.abs())),
        ("Integer.parseInt", [Str(s)]) => match s.parse::<i32>() {
            Ok(i) => Ok(Int(i as i64)),
            Err(_) => crash(format!("NumberFormatException: {s}")),
        },
        _ => crash(format!("unknown method `{func}` with {} arguments", args.len())),
    }
}

fn static_field(cls: &str, name: &str) -> R<RVal> {
    match (cls, name) {
        ("Integer", "MAX_VALUE") => Ok(RVal::Int(i32::MAX as i64)),
        ("Integer", "MIN_VALUE") => Ok(RVal::Int(i32::MIN as i64)),
        _ => crash(format!("unknown field {cls}.{name}")),
    }
}

fn default_for(ty: &TypeTag) -> RVal {
    match ty {
        TypeTag::Int | TypeTag::Long => RVal::Int(0),
        TypeTag::Double => RVal::Float(0.0),
        TypeTag::Boolean => RVal::Bool(false),
        _ => RVal::Null,
    }
}

fn new_array(elem: &TypeTag, sizes: &[usize]) -> RVal {
    match sizes {
        [] => default_for(elem),
        [n, rest @ ..] => list((0..*n).map(|_| new_array(elem, rest)).collect()),
    }
}

fn bool_to_int(v: RVal) -> RVal {
    match v {
        RVal::Bool(b) => RVal::Int(b as i64),
        other => other,
    }
}

fn as_f64(v: &RVal) -> f64 {
    match v {
        RVal::Int(i) => *i as f64,
        RVal::Float(x) => *x,
        RVal::Bool(b) => *b as i64 as f64,
        _ => f64::NAN,
    }
}

fn floor_div(a: i64, b: i64) -> i64 {
    let q = a / b;
    if (a % b != 0) && ((a < 0) != (b < 0)) {
        q - 1
    } else {
        q
    }
}

fn compare(op: BinOp, ord: std::cmp::Ordering) -> bool {
    use std::cmp::Ordering::*;
    match op {
        BinOp::Lt => ord == Less,
        BinOp::Le => ord != Greater,
        BinOp::Gt => ord == Greater,
        BinOp::Ge => ord != Less,
        _ => false,
    }
}

/// Structural equality inside the interpreter: exact on floats, numeric
/// across int/float/bool as Python does.
fn values_equal(a: &RVal, b: &RVal) -> bool {
    use RVal::*;
    match (a, b) {
        (Null, Null) => true,
        (Str(x), Str(y)) => x == y,
        (List(x), List(y)) => {
            Rc::ptr_eq(x, y) || {
                let (x, y) = (x.borrow(), y.borrow());
                x.len() == y.len() && x.iter().zip(y.iter()).all(|(p, q)| values_equal(p, q))
            }
        }
        (Bool(x), Bool(y)) => x == y,
        (Int(_) | Float(_) | Bool(_), Int(_) | Float(_) | Bool(_)) => as_f64(a) == as_f64(b),
        _ => false,
    }
}

fn sort_values(v: &mut [RVal]) -> R<()> {
    let all_num = v
        .iter()
        .all(|x| matches!(x, RVal::Int(_) | RVal::Float(_) | RVal::Bool(_)));
    let all_str = v.iter().all(|x| matches!(x, RVal::Str(_)));
    if all_num {
        v.sort_by(|a, b| as_f64(a).partial_cmp(&as_f64(b)).unwrap_or(std::cmp::Ordering::Equal));
        Ok(())
    } else if all_str {
        v.sort_by(|a, b| match (a, b) {
            (RVal::Str(x), RVal::Str(y)) => x.cmp(y),
            _ => std::cmp::Ordering::Equal,
        });
        Ok(())
    } else {
        crash("cannot sort mixed values")
    }
}

fn java_str(v: &RVal) -> String {
    match v {
        RVal::Null => "null".into(),
        RVal::Bool(b) => b.to_string(),
        RVal::Int(i) => i.to_string(),
        RVal::Float(x) => {
            if x.fract() == 0.0 && x.abs() < 1e7 {
                format!("{x:.1}")
            } else {
                format!("{x}")
            }
        }
        RVal::Str(s) => s.to_string(),
        RVal::List(_) => "[array]".into(),
    }
}

fn py_str(v: &RVal) -> String {
    match v {
        RVal::Null => "None".into(),
        RVal::Bool(true) => "True".into(),
        RVal::Bool(false) => "False".into(),
        RVal::Int(i) => i.to_string(),
        RVal::Float(x) => {
            if x.fract() == 0.0 && x.abs() < 1e16 {
                format!("{x:.1}")
            } else {
                format!("{x}")
            }
        }
        RVal::Str(s) => s.to_string(),
        RVal::List(items) => {
            let mut out = String::from("[");
            for (i, it) in items.borrow().iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                match it {
                    RVal::Str(s) => {
                        let _ = write!(out, "'{s}'");
                    }
                    other => out.push_str(&py_str(other)),
                }
            }
            out.push(']');
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::{parse_java, parse_python};

    fn java(src: &str, inputs: &[Value]) -> ExecOutcome {
        run_function(&parse_java(src).unwrap(), Lang::Java, inputs, DEFAULT_STEP_LIMIT)
    }

    fn py(src: &str, inputs: &[Value]) -> ExecOutcome {
        run_function(&parse_python(src).unwrap(), Lang::Py, inputs, DEFAULT_STEP_LIMIT)
    }

    #[test]
    fn integer_division_differs_by_dialect() {
        let j = "int f(int a, int b) { return a / b * 10 + a % b; }";
        assert_eq!(
            java(j, &[Value::Int(-7), Value::Int(2)]),
            ExecOutcome::Ok(Value::Int(-31))
        );
        let p = "def f(a, b):\n    return a // b * 10 + a % b\n";
        assert_eq!(
            py(p, &[Value::Int(-7), Value::Int(2)]),
            ExecOutcome::Ok(Value::Int(-39))
        );
    }

    #[test]
    fn infinite_loop_times_out() {
        let j = "int f(int a) { while (true) { a++; } }";
        assert_eq!(
            run_function(&parse_java(j).unwrap(), Lang::Java, &[Value::Int(0)], 10_000),
            ExecOutcome::Timeout
        );
    }

    #[test]
    fn index_error_is_a_crash() {
        let j = "int f(int[] a) { return a[3]; }";
        assert!(matches!(java(j, &[Value::List(vec![])]), ExecOutcome::Crash(_)));
    }

    #[test]
    fn arrays_are_shared_references() {
        let j = "int f(int n) { int[] a = new int[n]; int[] b = a; b[0] = 5; return a[0]; }";
        assert_eq!(java(j, &[Value::Int(2)]), ExecOutcome::Ok(Value::Int(5)));
    }

    #[test]
    fn double_return_widens() {
        let j = "double f(int a) { return a; }";
        assert_eq!(java(j, &[Value::Int(2)]), ExecOutcome::Ok(Value::Float(2.0)));
    }

    #[test]
    fn timeout_never_equals_ok() {
        assert!(!ExecOutcome::Timeout.same_as(&ExecOutcome::Ok(Value::Int(1))));
        assert!(!ExecOutcome::Timeout.same_as(&ExecOutcome::Timeout));
    }
}
