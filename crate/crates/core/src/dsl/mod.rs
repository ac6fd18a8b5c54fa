//! The property language: `input`/`output`/`var` declarations, `requires`
//! preconditions, a block of `transpile` queries and one `ensures` clause.

mod lexer;
mod parser;
mod render;
mod search;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::lang::Lang;

pub use parser::parse_spec;
pub use render::{render_expr, render_spec};
pub use search::{validate_search_spec, SearchValidation};

/// The seven program transformations available to `var` declarations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum TransformFn {
    RenameParam,
    AddParam,
    AddConditional,
    AddLoop,
    RmLoop,
    ChBranchCond,
    Merge,
}

impl TransformFn {
    pub const ALL: [TransformFn; 7] = [
        TransformFn::RenameParam,
        TransformFn::AddParam,
        TransformFn::AddConditional,
        TransformFn::AddLoop,
        TransformFn::RmLoop,
        TransformFn::ChBranchCond,
        TransformFn::Merge,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TransformFn::RenameParam => "renameParam",
            TransformFn::AddParam => "addParam",
            TransformFn::AddConditional => "addConditional",
            TransformFn::AddLoop => "addLoop",
            TransformFn::RmLoop => "rmLoop",
            TransformFn::ChBranchCond => "chBranchCond",
            TransformFn::Merge => "merge",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|t| t.name() == name)
    }

    /// Number of program arguments.
    pub fn arity(self) -> usize {
        if self == TransformFn::Merge {
            2
        } else {
            1
        }
    }

    /// Whether the variant keeps or grows the code the model must translate,
    /// so that success on the variant says something about the original.
    pub fn search_compatible(self) -> bool {
        !matches!(self, TransformFn::RmLoop | TransformFn::Merge)
    }

    /// Whether the transform preserves input/output behavior.
    pub fn preserves_behavior(self) -> bool {
        !matches!(self, TransformFn::RmLoop | TransformFn::ChBranchCond)
    }
}

impl fmt::Display for TransformFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The five program inspections usable in conditions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum InspectFn {
    Arity,
    NumConditionals,
    NumLoops,
    Compiles,
    RetValues,
}

impl InspectFn {
    pub const ALL: [InspectFn; 5] = [
        InspectFn::Arity,
        InspectFn::NumConditionals,
        InspectFn::NumLoops,
        InspectFn::Compiles,
        InspectFn::RetValues,
    ];

    pub fn name(self) -> &'static str {
        match self {
            InspectFn::Arity => "arity",
            InspectFn::NumConditionals => "numConditionals",
            InspectFn::NumLoops => "numLoops",
            InspectFn::Compiles => "compiles",
            InspectFn::RetValues => "retValues",
        }
    }

    /// Short column label used in report tables.
    pub fn short(self) -> &'static str {
        match self {
            InspectFn::Arity => "arity",
            InspectFn::NumConditionals => "numC",
            InspectFn::NumLoops => "numL",
            InspectFn::Compiles => "comp",
            InspectFn::RetValues => "retV",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|i| i.name() == name)
    }

    pub fn result_type(self) -> Type {
        match self {
            InspectFn::Compiles => Type::Bool,
            InspectFn::RetValues => Type::ValueSet,
            _ => Type::Int,
        }
    }

    /// Counting inspections only look at structure, never execute.
    pub fn is_syntactic(self) -> bool {
        matches!(
            self,
            InspectFn::Arity | InspectFn::NumConditionals | InspectFn::NumLoops
        )
    }
}

impl fmt::Display for InspectFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Static types of condition expressions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Type {
    Int,
    Bool,
    Program,
    Null,
    ValueSet,
}

impl fmt::Display for Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Type::Int => "integer",
            Type::Bool => "boolean",
            Type::Program => "program",
            Type::Null => "null",
            Type::ValueSet => "value set",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BinOp {
    Implies,
    Or,
    And,
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
    Add,
    Sub,
}

impl BinOp {
    pub fn symbol(self) -> &'static str {
        match self {
            BinOp::Implies => "==>",
            BinOp::Or => "||",
            BinOp::And => "&&",
            BinOp::Eq => "==",
            BinOp::Ne => "!=",
            BinOp::Lt => "<",
            BinOp::Le => "<=",
            BinOp::Gt => ">",
            BinOp::Ge => ">=",
            BinOp::Add => "+",
            BinOp::Sub => "-",
        }
    }

    pub fn is_comparison(self) -> bool {
        matches!(
            self,
            BinOp::Eq | BinOp::Ne | BinOp::Lt | BinOp::Le | BinOp::Gt | BinOp::Ge
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum UnOp {
    Not,
    Neg,
}

/// A well-typed condition expression.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Expr {
    Int(i64),
    Bool(bool),
    Null,
    Ident(String),
    Inspect {
        func: InspectFn,
        program: String,
        lang: Lang,
    },
    Unary {
        op: UnOp,
        expr: Box<Expr>,
    },
    Binary {
        op: BinOp,
        lhs: Box<Expr>,
        rhs: Box<Expr>,
    },
}

impl Expr {
    /// Identifiers mentioned anywhere in the expression, including the
    /// program argument of inspection calls.
    pub fn idents(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.collect_idents(&mut out);
        out
    }

    fn collect_idents<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            Expr::Ident(n) | Expr::Inspect { program: n, .. } => out.push(n),
            Expr::Unary { expr, .. } => expr.collect_idents(out),
            Expr::Binary { lhs, rhs, .. } => {
                lhs.collect_idents(out);
                rhs.collect_idents(out);
            }
            Expr::Int(_) | Expr::Bool(_) | Expr::Null => {}
        }
    }

    /// Inspection functions used anywhere in the expression.
    pub fn inspections(&self) -> Vec<InspectFn> {
        let mut out = Vec::new();
        self.collect_inspections(&mut out);
        out.sort();
        out.dedup();
        out
    }

    fn collect_inspections(&self, out: &mut Vec<InspectFn>) {
        match self {
            Expr::Inspect { func, .. } => out.push(*func),
            Expr::Unary { expr, .. } => expr.collect_inspections(out),
            Expr::Binary { lhs, rhs, .. } => {
                lhs.collect_inspections(out);
                rhs.collect_inspections(out);
            }
            _ => {}
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TransformCall {
    pub func: TransformFn,
    pub args: Vec<String>,
    pub lang: Lang,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DerivedVar {
    pub name: String,
    pub call: TransformCall,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QueryStmt {
    pub target: String,
    pub source: String,
    pub src_lang: Lang,
    pub dst_lang: Lang,
}

/// A parsed, type-checked k-safety property. `k` is the number of queries.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PropertySpec {
    pub name: String,
    pub inputs: Vec<String>,
    pub derived_vars: Vec<DerivedVar>,
    pub preconditions: Vec<Expr>,
    pub outputs: Vec<String>,
    pub query_block: Vec<QueryStmt>,
    pub postcondition: Expr,
    pub k: usize,
    pub search_compatible: bool,
}

impl PropertySpec {
    /// Language of a program identifier as fixed by its uses.
    pub fn lang_of(&self, ident: &str) -> Option<Lang> {
        if let Some(q) = self.query_block.iter().find(|q| q.target == ident) {
            return Some(q.dst_lang);
        }
        if let Some(d) = self.derived_vars.iter().find(|d| d.name == ident) {
            return Some(d.call.lang);
        }
        if let Some(q) = self.query_block.iter().find(|q| q.source == ident) {
            return Some(q.src_lang);
        }
        for d in &self.derived_vars {
            if d.call.args.iter().any(|a| a == ident) {
                return Some(d.call.lang);
            }
        }
        None
    }

    /// Every inspection used by the pre- and postconditions.
    pub fn inspections(&self) -> Vec<InspectFn> {
        let mut out = self.postcondition.inspections();
        for p in &self.preconditions {
            out.extend(p.inspections());
        }
        out.sort();
        out.dedup();
        out
    }

    /// Whether the property only looks at program structure.
    pub fn is_syntactic(&self) -> bool {
        self.inspections().iter().all(|i| i.is_syntactic())
    }

    /// The transformation used by the property, if any.
    pub fn transform(&self) -> Option<TransformFn> {
        self.derived_vars.first().map(|d| d.call.func)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DiagnosticKind {
    Syntax,
    UnknownFunction,
    UndeclaredIdentifier,
    DuplicateDeclaration,
    Type,
    Structure,
}

/// A positioned problem found while parsing or checking a property.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostic {
    pub kind: DiagnosticKind,
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {:?}: {}", self.line, self.col, self.kind, self.message)
    }
}

/// All diagnostics for one property file.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{}", .0.iter().map(|d| d.to_string()).collect::<Vec<_>>().join("\n"))]
pub struct Diagnostics(pub Vec<Diagnostic>);
