//! Shared syntax tree for the Java and Python subsets.
//!
//! Both front ends lower into the same node kinds so that inspection,
//! transformation and the reference interpreter are written once. Nodes that
//! only one surface syntax can express (C-style `for`, `do`/`while`, `switch`,
//! comprehensions, floor division) are still plain variants here; the
//! renderer of the other language either lowers them or refuses.

use std::fmt;

/// Static type of a parameter, local or return value.
///
/// Python sources without annotations carry [`TypeTag::Any`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum TypeTag {
    Int,
    Long,
    Double,
    Boolean,
    Str,
    Void,
    Object,
    Array(Box<TypeTag>),
    Any,
}

impl TypeTag {
    pub fn array_of(elem: TypeTag) -> Self {
        TypeTag::Array(Box::new(elem))
    }

    pub fn is_integral(&self) -> bool {
        matches!(self, TypeTag::Int | TypeTag::Long)
    }

    pub fn is_numeric(&self) -> bool {
        matches!(self, TypeTag::Int | TypeTag::Long | TypeTag::Double)
    }
}

impl fmt::Display for TypeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TypeTag::Int => f.write_str("int"),
            TypeTag::Long => f.write_str("long"),
            TypeTag::Double => f.write_str("double"),
            TypeTag::Boolean => f.write_str("boolean"),
            TypeTag::Str => f.write_str("String"),
            TypeTag::Void => f.write_str("void"),
            TypeTag::Object => f.write_str("Object"),
            TypeTag::Array(elem) => write!(f, "{elem}[]"),
            TypeTag::Any => f.write_str("?"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Param {
    pub name: String,
    pub ty: TypeTag,
}

impl Param {
    pub fn new(name: impl Into<String>, ty: TypeTag) -> Self {
        Param { name: name.into(), ty }
    }
}

/// One top-level function: the unit every inspection and transform works on.
#[derive(Debug, Clone, PartialEq)]
pub struct FunctionAst {
    pub name: String,
    pub ret: TypeTag,
    pub params: Vec<Param>,
    pub body: Vec<Stmt>,
}

impl FunctionAst {
    pub fn arity(&self) -> usize {
        self.params.len()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AssignOp {
    Set,
    Add,
    Sub,
    Mul,
    Div,
    Mod,
}

impl AssignOp {
    pub fn symbol(self) -> &'static str {
        match self {
            AssignOp::Set => "=",
            AssignOp::Add => "+=",
            AssignOp::Sub => "-=",
            AssignOp::Mul => "*=",
            AssignOp::Div => "/=",
            AssignOp::Mod => "%=",
        }
    }

    /// The binary operator a compound assignment applies, if any.
    pub fn binary(self) -> Option<BinOp> {
        match self {
            AssignOp::Set => None,
            AssignOp::Add => Some(BinOp::Add),
            AssignOp::Sub => Some(BinOp::Sub),
            AssignOp::Mul => Some(BinOp::Mul),
            AssignOp::Div => Some(BinOp::Div),
            AssignOp::Mod => Some(BinOp::Mod),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SwitchCase {
    pub labels: Vec<Expr>,
    pub body: Vec<Stmt>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Stmt {
    /// Typed local declaration (Java).
    Decl {
        ty: TypeTag,
        name: String,
        init: Option<Expr>,
    },
    Assign {
        target: Expr,
        op: AssignOp,
        value: Expr,
    },
    /// `x++` / `x--` in statement position (Java).
    IncDec {
        target: Expr,
        increment: bool,
    },
    Expr(Expr),
    If {
        cond: Expr,
        then_body: Vec<Stmt>,
        else_body: Option<Vec<Stmt>>,
    },
    /// Java `switch` or Python `match` over literal labels; no fallthrough.
    Switch {
        scrutinee: Expr,
        cases: Vec<SwitchCase>,
        default: Option<Vec<Stmt>>,
    },
    /// C-style counted loop (Java).
    For {
        init: Option<Box<Stmt>>,
        cond: Option<Expr>,
        update: Option<Box<Stmt>>,
        body: Vec<Stmt>,
    },
    /// `for (T x : e)` in Java, `for x in e:` in Python.
    ForEach {
        ty: TypeTag,
        var: String,
        iter: Expr,
        body: Vec<Stmt>,
    },
    While {
        cond: Expr,
        body: Vec<Stmt>,
    },
    DoWhile {
        body: Vec<Stmt>,
        cond: Expr,
    },
    Return(Option<Expr>),
    Break,
    Continue,
    Print(Vec<Expr>),
    Block(Vec<Stmt>),
}

impl Stmt {
    /// Statements after which nothing in the same block is reachable.
    pub fn is_terminal(&self) -> bool {
        matches!(self, Stmt::Return(_) | Stmt::Break | Stmt::Continue)
    }

    pub fn is_loop(&self) -> bool {
        matches!(
            self,
            Stmt::For { .. } | Stmt::ForEach { .. } | Stmt::While { .. } | Stmt::DoWhile { .. }
        )
    }

    pub fn is_for_loop(&self) -> bool {
        matches!(self, Stmt::For { .. } | Stmt::ForEach { .. })
    }

    pub fn is_conditional(&self) -> bool {
        matches!(self, Stmt::If { .. } | Stmt::Switch { .. })
    }

    /// Direct child statement lists, in source order.
    pub fn child_blocks(&self) -> Vec<&Vec<Stmt>> {
        match self {
            Stmt::If {
                then_body, else_body, ..
            } => {
                let mut out = vec![then_body];
                if let Some(e) = else_body {
                    out.push(e);
                }
                out
            }
            Stmt::Switch { cases, default, .. } => {
                let mut out: Vec<&Vec<Stmt>> = cases.iter().map(|c| &c.body).collect();
                if let Some(d) = default {
                    out.push(d);
                }
                out
            }
            Stmt::For { body, .. }
            | Stmt::ForEach { body, .. }
            | Stmt::While { body, .. }
            | Stmt::DoWhile { body, .. }
            | Stmt::Block(body) => vec![body],
            _ => Vec::new(),
        }
    }

    pub fn child_blocks_mut(&mut self) -> Vec<&mut Vec<Stmt>> {
        match self {
            Stmt::If {
                then_body, else_body, ..
            } => {
                let mut out = vec![then_body];
                if let Some(e) = else_body {
                    out.push(e);
                }
                out
            }
            Stmt::Switch { cases, default, .. } => {
                let mut out: Vec<&mut Vec<Stmt>> = cases.iter_mut().map(|c| &mut c.body).collect();
                if let Some(d) = default {
                    out.push(d);
                }
                out
            }
            Stmt::For { body, .. }
            | Stmt::ForEach { body, .. }
            | Stmt::While { body, .. }
            | Stmt::DoWhile { body, .. }
            | Stmt::Block(body) => vec![body],
            _ => Vec::new(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum UnaryOp {
    Neg,
    Not,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    FloorDiv,
    Mod,
    Lt,
    Le,
    Gt,
    Ge,
    Eq,
    Ne,
    And,
    Or,
    BitAnd,
    BitOr,
    BitXor,
    Shl,
    Shr,
}

impl BinOp {
    pub fn is_comparison(self) -> bool {
        matches!(
            self,
            BinOp::Lt | BinOp::Le | BinOp::Gt | BinOp::Ge | BinOp::Eq | BinOp::Ne
        )
    }

    pub fn is_logical(self) -> bool {
        matches!(self, BinOp::And | BinOp::Or)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Int(i64),
    Float(f64),
    Bool(bool),
    Str(String),
    Null,
    Var(String),
    Unary {
        op: UnaryOp,
        expr: Box<Expr>,
    },
    Binary {
        op: BinOp,
        lhs: Box<Expr>,
        rhs: Box<Expr>,
    },
    Ternary {
        cond: Box<Expr>,
        then: Box<Expr>,
        otherwise: Box<Expr>,
    },
    /// Free or qualified function call: `f(x)`, `Math.max(a, b)`, `len(x)`.
    Call {
        func: String,
        args: Vec<Expr>,
    },
    Method {
        recv: Box<Expr>,
        name: String,
        args: Vec<Expr>,
    },
    Field {
        recv: Box<Expr>,
        name: String,
    },
    Index {
        base: Box<Expr>,
        index: Box<Expr>,
    },
    /// `new T[d0][d1]...`
    NewArray {
        elem: TypeTag,
        dims: Vec<Expr>,
    },
    /// `new T[]{..}` (elem present), bare `{..}` initializer or Python list.
    ArrayLit {
        elem: Option<TypeTag>,
        items: Vec<Expr>,
    },
    Cast {
        ty: TypeTag,
        expr: Box<Expr>,
    },
    /// `[elem for var in iter if cond]` (Python).
    Comprehension {
        elem: Box<Expr>,
        var: String,
        iter: Box<Expr>,
        cond: Option<Box<Expr>>,
    },
}

impl Expr {
    pub fn var(name: impl Into<String>) -> Self {
        Expr::Var(name.into())
    }

    pub fn binary(op: BinOp, lhs: Expr, rhs: Expr) -> Self {
        Expr::Binary {
            op,
            lhs: Box::new(lhs),
            rhs: Box::new(rhs),
        }
    }

    pub fn logical_not(expr: Expr) -> Self {
        Expr::Unary {
            op: UnaryOp::Not,
            expr: Box::new(expr),
        }
    }

    /// Visits this expression and every sub-expression, pre-order.
    pub fn walk<'a>(&'a self, f: &mut dyn FnMut(&'a Expr)) {
        f(self);
        match self {
            Expr::Unary { expr, .. } | Expr::Cast { expr, .. } => expr.walk(f),
            Expr::Binary { lhs, rhs, .. } => {
                lhs.walk(f);
                rhs.walk(f);
            }
            Expr::Ternary { cond, then, otherwise } => {
                cond.walk(f);
                then.walk(f);
                otherwise.walk(f);
            }
            Expr::Call { args, .. } => args.iter().for_each(|a| a.walk(f)),
            Expr::Method { recv, args, .. } => {
                recv.walk(f);
                args.iter().for_each(|a| a.walk(f));
            }
            Expr::Field { recv, .. } => recv.walk(f),
            Expr::Index { base, index } => {
                base.walk(f);
                index.walk(f);
            }
            Expr::NewArray { dims, .. } => dims.iter().for_each(|d| d.walk(f)),
            Expr::ArrayLit { items, .. } => items.iter().for_each(|i| i.walk(f)),
            Expr::Comprehension { elem, iter, cond, .. } => {
                elem.walk(f);
                iter.walk(f);
                if let Some(c) = cond {
                    c.walk(f);
                }
            }
            Expr::Int(_) | Expr::Float(_) | Expr::Bool(_) | Expr::Str(_) | Expr::Null | Expr::Var(_) => {}
        }
    }

    pub fn walk_mut(&mut self, f: &mut dyn FnMut(&mut Expr)) {
        f(self);
        match self {
            Expr::Unary { expr, .. } | Expr::Cast { expr, .. } => expr.walk_mut(f),
            Expr::Binary { lhs, rhs, .. } => {
                lhs.walk_mut(f);
                rhs.walk_mut(f);
            }
            Expr::Ternary { cond, then, otherwise } => {
                cond.walk_mut(f);
                then.walk_mut(f);
                otherwise.walk_mut(f);
            }
            Expr::Call { args, .. } => args.iter_mut().for_each(|a| a.walk_mut(f)),
            Expr::Method { recv, args, .. } => {
                recv.walk_mut(f);
                args.iter_mut().for_each(|a| a.walk_mut(f));
            }
            Expr::Field { recv, .. } => recv.walk_mut(f),
            Expr::Index { base, index } => {
                base.walk_mut(f);
                index.walk_mut(f);
            }
            Expr::NewArray { dims, .. } => dims.iter_mut().for_each(|d| d.walk_mut(f)),
            Expr::ArrayLit { items, .. } => items.iter_mut().for_each(|i| i.walk_mut(f)),
            Expr::Comprehension { elem, iter, cond, .. } => {
                elem.walk_mut(f);
                iter.walk_mut(f);
                if let Some(c) = cond {
                    c.walk_mut(f);
                }
            }
            Expr::Int(_) | Expr::Float(_) | Expr::Bool(_) | Expr::Str(_) | Expr::Null | Expr::Var(_) => {}
        }
    }
}

/// Pre-order walk over every statement in a body, descending into nested
/// blocks (including `for` init/update clauses).
pub fn walk_stmts<'a>(body: &'a [Stmt], f: &mut dyn FnMut(&'a Stmt)) {
    for stmt in body {
        f(stmt);
        if let Stmt::For { init, update, .. } = stmt {
            if let Some(i) = init {
                walk_stmts(std::slice::from_ref(i.as_ref()), f);
            }
            if let Some(u) = update {
                walk_stmts(std::slice::from_ref(u.as_ref()), f);
            }
        }
        for block in stmt.child_blocks() {
            walk_stmts(block, f);
        }
    }
}

/// Expressions directly owned by a statement (not those of nested statements).
pub fn stmt_exprs(stmt: &Stmt) -> Vec<&Expr> {
    match stmt {
        Stmt::Decl { init, .. } => init.iter().collect(),
        Stmt::Assign { target, value, .. } => vec![target, value],
        Stmt::IncDec { target, .. } => vec![target],
        Stmt::Expr(e) => vec![e],
        Stmt::If { cond, .. } => vec![cond],
        Stmt::Switch { scrutinee, cases, .. } => {
            let mut out = vec![scrutinee];
            for c in cases {
                out.extend(c.labels.iter());
            }
            out
        }
        Stmt::For { cond, .. } => cond.iter().collect(),
        Stmt::ForEach { iter, .. } => vec![iter],
        Stmt::While { cond, .. } | Stmt::DoWhile { cond, .. } => vec![cond],
        Stmt::Return(e) => e.iter().collect(),
        Stmt::Print(args) => args.iter().collect(),
        Stmt::Break | Stmt::Continue | Stmt::Block(_) => Vec::new(),
    }
}

pub fn stmt_exprs_mut(stmt: &mut Stmt) -> Vec<&mut Expr> {
    match stmt {
        Stmt::Decl { init, .. } => init.iter_mut().collect(),
        Stmt::Assign { target, value, .. } => vec![target, value],
        Stmt::IncDec { target, .. } => vec![target],
        Stmt::Expr(e) => vec![e],
        Stmt::If { cond, .. } => vec![cond],
        Stmt::Switch { scrutinee, cases, .. } => {
            let mut out = vec![scrutinee];
            for c in cases {
                out.extend(c.labels.iter_mut());
            }
            out
        }
        Stmt::For { cond, .. } => cond.iter_mut().collect(),
        Stmt::ForEach { iter, .. } => vec![iter],
        Stmt::While { cond, .. } | Stmt::DoWhile { cond, .. } => vec![cond],
        Stmt::Return(e) => e.iter_mut().collect(),
        Stmt::Print(args) => args.iter_mut().collect(),
        Stmt::Break | Stmt::Continue | Stmt::Block(_) => Vec::new(),
    }
}

/// Every identifier that appears in the function: parameter names, declared
/// locals, loop variables and variable references.
pub fn identifiers(f: &FunctionAst) -> std::collections::BTreeSet<String> {
    let mut out: std::collections::BTreeSet<String> = f.params.iter().map(|p| p.name.clone()).collect();
    out.insert(f.name.clone());
    walk_stmts(&f.body, &mut |s| {
        match s {
            Stmt::Decl { name, .. } => {
                out.insert(name.clone());
            }
            Stmt::ForEach { var, .. } => {
                out.insert(var.clone());
            }
            _ => {}
        }
        for e in stmt_exprs(s) {
            e.walk(&mut |e| match e {
                Expr::Var(n) => {
                    out.insert(n.clone());
                }
                Expr::Comprehension { var, .. } => {
                    out.insert(var.clone());
                }
                _ => {}
            });
        }
    });
    out
}
