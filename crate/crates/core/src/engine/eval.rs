//! Condition evaluation against bound programs.

use std::collections::HashMap;
use std::sync::Arc;

use crate::code::interp::ExecOutcome;
use crate::code::{FunctionAst, TestCase};
use crate::dsl::{BinOp, Expr, InspectFn, UnOp};
use crate::inspect::{ret_values_equal, InspectError, Inspector};
use crate::lang::Lang;

/// A program bound to an identifier.
#[derive(Debug, Clone)]
pub struct BoundProgram {
    pub id: String,
    pub text: Arc<str>,
    pub lang: Lang,
    pub ast: Option<Arc<FunctionAst>>,
    /// Inputs for `retValues`.
    pub tests: Arc<Vec<TestCase>>,
}

#[derive(Debug, Clone)]
pub enum Binding {
    Program(BoundProgram),
    Null,
}

pub type Env = HashMap<String, Binding>;

#[derive(Debug, Clone)]
pub enum Val {
    Int(i64),
    Bool(bool),
    Null,
    Program,
    ValueSet(Arc<Vec<ExecOutcome>>),
}

impl Val {
    fn int(&self) -> i64 {
        match self {
            Val::Int(i) => *i,
            other => unreachable!("type checker admitted {other:?} as an integer"),
        }
    }

    fn bool(&self) -> bool {
        match self {
            Val::Bool(b) => *b,
            other => unreachable!("type checker admitted {other:?} as a boolean"),
        }
    }

    pub fn render(&self) -> String {
        match self {
            Val::Int(i) => i.to_string(),
            Val::Bool(b) => b.to_string(),
            Val::Null => "null".into(),
            Val::Program => "<program>".into(),
            Val::ValueSet(v) => {
                let items: Vec<String> = v
                    .iter()
                    .map(|o| match o {
                        ExecOutcome::Ok(v) => v.to_string(),
                        ExecOutcome::Crash(_) => "crash".into(),
                        ExecOutcome::Timeout => "timeout".into(),
                        ExecOutcome::CompileFail => "compile-fail".into(),
                    })
                    .collect();
                format!("[{}]", items.join(", "))
            }
        }
    }
}

/// Truth value plus whether it was decided by a false antecedent.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Verdict {
    pub holds: bool,
    pub vacuous: bool,
}

pub struct Evaluator<'a> {
    pub env: &'a Env,
    pub inspector: &'a Inspector,
}

fn program<'e>(env: &'e Env, name: &str) -> Result<&'e BoundProgram, InspectError> {
    match env.get(name) {
        Some(Binding::Program(p)) => Ok(p),
        Some(Binding::Null) => Err(InspectError::Unavailable(format!("`{name}` is null"))),
        None => unreachable!("type checker admitted unbound `{name}`"),
    }
}

impl Evaluator<'_> {
    pub fn inspect(&self, func: InspectFn, name: &str, lang: Lang) -> Result<Val, InspectError> {
        let p = program(self.env, name)?;
        Ok(match func {
            InspectFn::Compiles => Val::Bool(self.inspector.compiles(&p.text, lang)?),
            InspectFn::RetValues => Val::ValueSet(self.inspector.ret_values(&p.text, lang, &p.tests)?),
            count => Val::Int(self.inspector.count(count, &p.text, lang)? as i64),
        })
    }

    /// Short-circuit evaluation; `A ==> B` is `!A || B`.
    pub fn value(&self, e: &Expr) -> Result<Val, InspectError> {
        Ok(match e {
            Expr::Int(i) => Val::Int(*i),
            Expr::Bool(b) => Val::Bool(*b),
            Expr::Null => Val::Null,
            Expr::Ident(n) => match self.env.get(n) {
                Some(Binding::Program(_)) => Val::Program,
                _ => Val::Null,
            },
            Expr::Inspect { func, program, lang } => self.inspect(*func, program, *lang)?,
            Expr::Unary { op: UnOp::Not, expr } => Val::Bool(!self.value(expr)?.bool()),
            Expr::Unary { op: UnOp::Neg, expr } => Val::Int(-self.value(expr)?.int()),
            Expr::Binary { op, lhs, rhs } => match op {
                BinOp::Implies | BinOp::Or | BinOp::And => Val::Bool(self.verdict(e)?.holds),
                BinOp::Add => Val::Int(self.value(lhs)?.int() + self.value(rhs)?.int()),
                BinOp::Sub => Val::Int(self.value(lhs)?.int() - self.value(rhs)?.int()),
                cmp => Val::Bool(compare(*cmp, &self.value(lhs)?, &self.value(rhs)?)),
            },
        })
    }

    /// Boolean evaluation tracking vacuity: an implication with a false
    /// antecedent is vacuous, a conjunction is vacuous when all its parts
    /// are, a disjunction when every true part is.
    pub fn verdict(&self, e: &Expr) -> Result<Verdict, InspectError> {
        let plain = |holds| Verdict { holds, vacuous: false };
        match e {
            Expr::Binary {
                op: BinOp::Implies,
                lhs,
                rhs,
            } => {
                if !self.verdict(lhs)?.holds {
                    return Ok(Verdict {
                        holds: true,
                        vacuous: true,
                    });
                }
                self.verdict(rhs)
            }
            Expr::Binary {
                op: BinOp::And,
                lhs,
                rhs,
            } => {
                let l = self.verdict(lhs)?;
                if !l.holds {
                    return Ok(plain(false));
                }
                let r = self.verdict(rhs)?;
                Ok(Verdict {
                    holds: r.holds,
                    vacuous: r.holds && l.vacuous && r.vacuous,
                })
            }
            Expr::Binary {
                op: BinOp::Or,
                lhs,
                rhs,
            } => {
                let l = self.verdict(lhs)?;
                if l.holds {
                    // The right side is not evaluated, so only the left counts.
                    return Ok(l);
                }
                self.verdict(rhs)
            }
            _ => Ok(plain(self.value(e)?.bool())),
        }
    }
}

fn compare(op: BinOp, l: &Val, r: &Val) -> bool {
    let eq = match (l, r) {
        (Val::Int(a), Val::Int(b)) => {
            return match op {
                BinOp::Eq => a == b,
                BinOp::Ne => a != b,
                BinOp::Lt => a < b,
                BinOp::Le => a <= b,
                BinOp::Gt => a > b,
                BinOp::Ge => a >= b,
                _ => unreachable!("not a comparison"),
            }
        }
        (Val::Bool(a), Val::Bool(b)) => a == b,
        (Val::ValueSet(a), Val::ValueSet(b)) => ret_values_equal(a, b),
        (Val::Null, Val::Null) | (Val::Program, Val::Program) => true,
        _ => false,
    };
    match op {
        BinOp::Eq => eq,
        BinOp::Ne => !eq,
        _ => unreachable!("ordering on non-integers"),
    }
}

/// Every inspection call in `e` with its value, for violation messages.
pub fn inspection_values(ev: &Evaluator<'_>, e: &Expr) -> Vec<(String, String)> {
    let mut out = Vec::new();
    collect(ev, e, &mut out);
    out.dedup();
    out
}

fn collect(ev: &Evaluator<'_>, e: &Expr, out: &mut Vec<(String, String)>) {
    match e {
        Expr::Inspect { func, program, lang } => {
            let shown = match ev.inspect(*func, program, *lang) {
                Ok(v) => v.render(),
                Err(err) => format!("<{err}>"),
            };
            out.push((crate::dsl::render_expr(e), shown));
        }
        Expr::Unary { expr, .. } => collect(ev, expr, out),
        Expr::Binary { lhs, rhs, .. } => {
            collect(ev, lhs, out);
            collect(ev, rhs, out);
        }
        _ => {}
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse_spec;

    fn env_with(text: &str) -> Env {
        let p = BoundProgram {
            id: "p".into(),
            text: Arc::from(text),
            lang: Lang::Py,
            ast: None,
            tests: Arc::new(Vec::new()),
        };
        Env::from([
            ("pp".to_string(), Binding::Program(p)),
            ("pj".to_string(), Binding::Null),
        ])
    }

    fn post(src: &str) -> Expr {
        let text = format!("input pj;\noutput pp;\n{{ pp = transpile(pj, \"java\", \"py\") }}\nensures {src};");
        parse_spec("t", &text).unwrap().postcondition
    }

    #[test]
    fn false_antecedent_is_vacuous_and_skips_the_consequent() {
        let env = env_with("def f(:\n");
        let i = Inspector::default();
        let ev = Evaluator {
            env: &env,
            inspector: &i,
        };
        // The consequent would be unavailable on unparsable text.
        let v = ev
            .verdict(&post("compiles(pp, \"py\") ==> arity(pp, \"py\") == 1"))
            .unwrap();
        assert_eq!(
            v,
            Verdict {
                holds: true,
                vacuous: true
            }
        );
        assert!(ev.verdict(&post("arity(pp, \"py\") == 1")).is_err());
    }

    #[test]
    fn arithmetic_and_comparison() {
        let env = env_with("def f(a, b):\n    return a\n");
        let i = Inspector::default();
        let ev = Evaluator {
            env: &env,
            inspector: &i,
        };
        assert!(ev.verdict(&post("arity(pp, \"py\") == 1 + 1 && 3 == 3")).unwrap().holds);
        assert!(!ev.verdict(&post("arity(pp, \"py\") - 2 > 0")).unwrap().holds);
        assert!(ev.verdict(&post("pp != null && pj == null")).unwrap().holds);
    }
}
