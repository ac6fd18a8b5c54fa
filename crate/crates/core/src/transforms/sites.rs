//! Scope-aware enumeration of rewrite locations.
//!
//! A location is a path of `(statement index, child block index)` steps from
//! the function body down to a statement list, plus a position in that list.

use crate::code::{Expr, FunctionAst, Stmt, TypeTag};

pub(super) type Path = Vec<(usize, usize)>;
pub(super) type Scope = Vec<(String, TypeTag)>;

/// A gap between statements where new code may go.
#[derive(Debug, Clone)]
pub(super) struct InsertSite {
    pub path: Path,
    pub pos: usize,
    pub scope: Scope,
}

/// An existing statement.
#[derive(Debug, Clone)]
pub(super) struct StmtSite {
    pub path: Path,
    pub index: usize,
    pub scope: Scope,
}

impl StmtSite {
    pub fn describe(&self) -> String {
        describe(&self.path, self.index)
    }
}

impl InsertSite {
    pub fn describe(&self) -> String {
        describe(&self.path, self.pos)
    }
}

fn describe(path: &Path, at: usize) -> String {
    let mut s = String::from("body");
    for (i, b) in path {
        s.push_str(&format!("[{i}].{b}"));
    }
    format!("{s}[{at}]")
}

/// Whether control never falls through past `stmt`. Code placed right after
/// such a statement would be unreachable, which Java rejects.
pub(super) fn exits(stmt: &Stmt) -> bool {
    fn block_exits(b: &[Stmt]) -> bool {
        b.last().is_some_and(exits)
    }
    match stmt {
        Stmt::Return(_) | Stmt::Break | Stmt::Continue => true,
        Stmt::If {
            then_body,
            else_body: Some(e),
            ..
        } => block_exits(then_body) && block_exits(e),
        Stmt::Block(b) => block_exits(b),
        Stmt::Switch {
            cases,
            default: Some(d),
            ..
        } => cases.iter().all(|c| block_exits(&c.body)) && block_exits(d),
        Stmt::While { cond, body } => *cond == Expr::Bool(true) && !has_break(body),
        Stmt::For { cond: None, body, .. } => !has_break(body),
        _ => false,
    }
}

fn has_break(body: &[Stmt]) -> bool {
    let mut found = false;
    crate::code::walk_stmts(body, &mut |s| found |= matches!(s, Stmt::Break));
    found
}

struct Collector<'p> {
    want_insert: bool,
    top_level_only: bool,
    stmt_pred: Option<&'p dyn Fn(&Stmt) -> bool>,
    inserts: Vec<InsertSite>,
    stmts: Vec<StmtSite>,
}

impl Collector<'_> {
    fn block(&mut self, block: &[Stmt], path: &mut Path, scope: &mut Scope) {
        let mark = scope.len();
        for (i, stmt) in block.iter().enumerate() {
            if self.want_insert && (i == 0 || !exits(&block[i - 1])) {
                self.inserts.push(InsertSite {
                    path: path.clone(),
                    pos: i,
                    scope: scope.clone(),
                });
            }
            if let Some(pred) = self.stmt_pred {
                if pred(stmt) {
                    self.stmts.push(StmtSite {
                        path: path.clone(),
                        index: i,
                        scope: scope.clone(),
                    });
                }
            }
            if !self.top_level_only {
                let inner_mark = scope.len();
                match stmt {
                    Stmt::For { init: Some(init), .. } => {
                        if let Stmt::Decl { ty, name, .. } = init.as_ref() {
                            scope.push((name.clone(), ty.clone()));
                        }
                    }
                    Stmt::ForEach { ty, var, .. } => scope.push((var.clone(), ty.clone())),
                    _ => {}
                }
                for (j, child) in stmt.child_blocks().into_iter().enumerate() {
                    path.push((i, j));
                    self.block(child, path, scope);
                    path.pop();
                }
                scope.truncate(inner_mark);
            }
            if let Stmt::Decl {
                ty,
                name,
                init: Some(_),
            } = stmt
            {
                scope.push((name.clone(), ty.clone()));
            }
        }
        if self.want_insert && block.last().is_none_or(|s| !exits(s)) {
            self.inserts.push(InsertSite {
                path: path.clone(),
                pos: block.len(),
                scope: scope.clone(),
            });
        }
        scope.truncate(mark);
    }
}

fn params_scope(f: &FunctionAst) -> Scope {
    f.params.iter().map(|p| (p.name.clone(), p.ty.clone())).collect()
}

/// Every reachable gap, in pre-order. With `top_level_only` only gaps of the
/// function body itself are listed.
pub(super) fn insert_sites(f: &FunctionAst, top_level_only: bool) -> Vec<InsertSite> {
    let mut c = Collector {
        want_insert: true,
        top_level_only,
        stmt_pred: None,
        inserts: Vec::new(),
        stmts: Vec::new(),
    };
    c.block(&f.body, &mut Vec::new(), &mut params_scope(f));
    c.inserts
}

/// Every statement satisfying `pred`, in pre-order.
pub(super) fn stmt_sites(f: &FunctionAst, pred: &dyn Fn(&Stmt) -> bool) -> Vec<StmtSite> {
    let mut c = Collector {
        want_insert: false,
        top_level_only: false,
        stmt_pred: Some(pred),
        inserts: Vec::new(),
        stmts: Vec::new(),
    };
    c.block(&f.body, &mut Vec::new(), &mut params_scope(f));
    c.stmts
}

/// The statement list a path points at.
pub(super) fn block_mut<'a>(body: &'a mut Vec<Stmt>, path: &[(usize, usize)]) -> &'a mut Vec<Stmt> {
    let mut cur = body;
    for &(i, j) in path {
        cur = cur[i]
            .child_blocks_mut()
            .into_iter()
            .nth(j)
            .expect("site paths are taken from the same tree");
    }
    cur
}
