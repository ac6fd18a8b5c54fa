//! Parser and checker for property files. Syntax errors stop at the first
//! one; declaration and type errors are collected and reported together.

use std::collections::HashMap;

use super::lexer::{tokenize, Tok, Token};
use super::search::validate_search_spec;
use super::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum SymKind {
    Input,
    Derived,
    Output,
}

#[derive(Debug, Clone)]
struct Sym {
    kind: SymKind,
    lang: Option<Lang>,
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    diags: Vec<Diagnostic>,
    syms: HashMap<String, Sym>,
}

type PResult<T> = Result<T, Diagnostic>;
type Typed = (Expr, Option<Type>);

/// Parses and checks one property. `name` is the property name, by
/// convention the file stem.
pub fn parse_spec(name: &str, text: &str) -> Result<PropertySpec, Diagnostics> {
    let toks = tokenize(text).map_err(|d| Diagnostics(vec![d]))?;
    let mut p = Parser {
        toks,
        pos: 0,
        diags: Vec::new(),
        syms: HashMap::new(),
    };
    match p.spec(name) {
        Ok(spec) if p.diags.is_empty() => Ok(spec),
        Ok(_) => Err(Diagnostics(p.diags)),
        Err(d) => {
            p.diags.push(d);
            p.diags.sort_by_key(|d| (d.line, d.col));
            Err(Diagnostics(p.diags))
        }
    }
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn here(&self) -> (usize, usize) {
        let t = &self.toks[self.pos];
        (t.line, t.col)
    }

    fn advance(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn is_punct(&self, p: &str) -> bool {
        matches!(self.peek(), Tok::Punct(q) if *q == p)
    }

    fn is_word(&self, w: &str) -> bool {
        matches!(self.peek(), Tok::Ident(x) if x == w)
    }

    fn eat_punct(&mut self, p: &str) -> bool {
        if self.is_punct(p) {
            self.advance();
            true
        } else {
            false
        }
    }

    fn syntax(&self, expected: &str) -> Diagnostic {
        let (line, col) = self.here();
        let found = match self.peek() {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Int(v) => format!("`{v}`"),
            Tok::Str(s) => format!("\"{s}\""),
            Tok::Punct(p) => format!("`{p}`"),
            Tok::Eof => "end of input".into(),
        };
        Diagnostic {
            kind: DiagnosticKind::Syntax,
            line,
            col,
            message: format!("expected {expected}, found {found}"),
        }
    }

    fn report(&mut self, kind: DiagnosticKind, (line, col): (usize, usize), message: impl Into<String>) {
        self.diags.push(Diagnostic {
            kind,
            line,
            col,
            message: message.into(),
        });
    }

    fn expect_punct(&mut self, p: &str) -> PResult<()> {
        if self.eat_punct(p) {
            Ok(())
        } else {
            Err(self.syntax(&format!("`{p}`")))
        }
    }

    fn ident(&mut self) -> PResult<(String, (usize, usize))> {
        let at = self.here();
        match self.peek().clone() {
            Tok::Ident(s) if !is_keyword(&s) => {
                self.advance();
                Ok((s, at))
            }
            _ => Err(self.syntax("identifier")),
        }
    }

    fn lang_str(&mut self) -> PResult<Option<Lang>> {
        let at = self.here();
        match self.peek().clone() {
            Tok::Str(s) => {
                self.advance();
                match s.parse::<Lang>() {
                    Ok(l) => Ok(Some(l)),
                    Err(e) => {
                        self.report(DiagnosticKind::Type, at, e.to_string());
                        Ok(None)
                    }
                }
            }
            _ => Err(self.syntax("language string")),
        }
    }

    fn declare(&mut self, name: &str, at: (usize, usize), kind: SymKind) {
        if self.syms.contains_key(name) {
            self.report(
                DiagnosticKind::DuplicateDeclaration,
                at,
                format!("`{name}` is already declared"),
            );
            return;
        }
        self.syms.insert(name.to_string(), Sym { kind, lang: None });
    }

    /// Records the language a program is used at; a program has exactly one.
    fn use_lang(&mut self, name: &str, lang: Option<Lang>, at: (usize, usize)) {
        let Some(lang) = lang else { return };
        let Some(sym) = self.syms.get_mut(name) else { return };
        match sym.lang {
            None => sym.lang = Some(lang),
            Some(l) if l == lang => {}
            Some(l) => {
                let msg = format!("`{name}` is a {l} program but is used as {lang}");
                self.report(DiagnosticKind::Type, at, msg);
            }
        }
    }

    fn lookup(&mut self, name: &str, at: (usize, usize)) -> Option<SymKind> {
        match self.syms.get(name) {
            Some(s) => Some(s.kind),
            None => {
                self.report(
                    DiagnosticKind::UndeclaredIdentifier,
                    at,
                    format!("`{name}` is not declared"),
                );
                None
            }
        }
    }

    fn spec(&mut self, name: &str) -> PResult<PropertySpec> {
        let mut inputs = Vec::new();
        let mut derived_vars = Vec::new();
        let mut preconditions = Vec::new();
        let mut outputs = Vec::new();
        let mut query_block: Option<Vec<QueryStmt>> = None;
        let mut postcondition: Option<Expr> = None;
        loop {
            let at = self.here();
            if matches!(self.peek(), Tok::Eof) {
                break;
            }
            if postcondition.is_some() {
                return Err(self.syntax("end of input after `ensures`"));
            }
            if self.is_word("input") || self.is_word("output") {
                let is_input = self.is_word("input");
                self.advance();
                let (id, id_at) = self.ident()?;
                self.expect_punct(";")?;
                if is_input {
                    if query_block.is_some() {
                        self.report(
                            DiagnosticKind::Structure,
                            at,
                            "inputs must be declared before the query block",
                        );
                    }
                    self.declare(&id, id_at, SymKind::Input);
                    inputs.push(id);
                } else {
                    if query_block.is_some() {
                        self.report(
                            DiagnosticKind::Structure,
                            at,
                            "outputs must be declared before the query block",
                        );
                    }
                    self.declare(&id, id_at, SymKind::Output);
                    outputs.push(id);
                }
            } else if self.is_word("var") {
                self.advance();
                if let Some(dv) = self.derived_var()? {
                    derived_vars.push(dv);
                }
            } else if self.is_word("requires") {
                self.advance();
                let (e, ty) = self.expr()?;
                self.expect_punct(";")?;
                self.want_bool(ty, at, "precondition");
                if e.idents()
                    .iter()
                    .any(|i| self.syms.get(*i).is_some_and(|s| s.kind == SymKind::Output))
                {
                    self.report(DiagnosticKind::Structure, at, "preconditions may not refer to outputs");
                }
                preconditions.push(e);
            } else if self.is_punct("{") {
                if query_block.is_some() {
                    self.report(DiagnosticKind::Structure, at, "only one query block is allowed");
                }
                let block = self.query_block()?;
                query_block = Some(block);
            } else if self.is_word("ensures") {
                self.advance();
                if query_block.is_none() {
                    self.report(DiagnosticKind::Structure, at, "`ensures` must follow the query block");
                }
                let (e, ty) = self.expr()?;
                self.expect_punct(";")?;
                self.want_bool(ty, at, "postcondition");
                postcondition = Some(e);
            } else {
                return Err(self.syntax("`input`, `output`, `var`, `requires`, `{` or `ensures`"));
            }
        }
        let end = self.here();
        if inputs.is_empty() {
            self.report(DiagnosticKind::Structure, end, "a property needs at least one input");
        }
        let query_block = match query_block {
            Some(b) => b,
            None => {
                self.report(DiagnosticKind::Structure, end, "missing query block");
                Vec::new()
            }
        };
        for o in &outputs {
            let n = query_block.iter().filter(|q| &q.target == o).count();
            if n == 0 {
                self.report(
                    DiagnosticKind::Structure,
                    end,
                    format!("output `{o}` is never assigned"),
                );
            }
        }
        let postcondition = match postcondition {
            Some(p) => p,
            None => {
                self.report(DiagnosticKind::Structure, end, "missing `ensures` clause");
                Expr::Bool(true)
            }
        };
        let mut spec = PropertySpec {
            name: name.to_string(),
            inputs,
            derived_vars,
            preconditions,
            outputs,
            k: query_block.len(),
            query_block,
            postcondition,
            search_compatible: false,
        };
        spec.search_compatible = validate_search_spec(&spec).ok;
        Ok(spec)
    }

    fn want_bool(&mut self, ty: Option<Type>, at: (usize, usize), what: &str) {
        if let Some(t) = ty {
            if t != Type::Bool {
                self.report(DiagnosticKind::Type, at, format!("{what} must be boolean, found {t}"));
            }
        }
    }

    fn derived_var(&mut self) -> PResult<Option<DerivedVar>> {
        let (name, name_at) = self.ident()?;
        self.expect_punct(":=")?;
        let fn_at = self.here();
        let (fname, _) = self.ident()?;
        self.expect_punct("(")?;
        let mut args = Vec::new();
        while matches!(self.peek(), Tok::Ident(_)) {
            args.push(self.ident()?);
            self.expect_punct(",")?;
        }
        let lang = self.lang_str()?;
        self.expect_punct(")")?;
        self.expect_punct(";")?;
        let func = match TransformFn::from_name(&fname) {
            Some(f) => Some(f),
            None => {
                let msg = if InspectFn::from_name(&fname).is_some() {
                    format!("`{fname}` is an inspection, not a transformation")
                } else {
                    format!("unknown transformation `{fname}`")
                };
                self.report(DiagnosticKind::UnknownFunction, fn_at, msg);
                None
            }
        };
        for (arg, at) in &args {
            match self.lookup(arg, *at) {
                Some(SymKind::Output) => {
                    self.report(
                        DiagnosticKind::Structure,
                        *at,
                        format!("`{arg}` is an output and cannot be transformed"),
                    );
                }
                Some(_) => self.use_lang(arg, lang, *at),
                None => {}
            }
        }
        if let Some(f) = func {
            if args.len() != f.arity() {
                self.report(
                    DiagnosticKind::Type,
                    fn_at,
                    format!("`{}` takes {} program argument(s), found {}", f, f.arity(), args.len()),
                );
            }
        }
        self.declare(&name, name_at, SymKind::Derived);
        self.use_lang(&name, lang, name_at);
        Ok(match (func, lang) {
            (Some(func), Some(lang)) => Some(DerivedVar {
                name,
                call: TransformCall {
                    func,
                    args: args.into_iter().map(|(a, _)| a).collect(),
                    lang,
                },
            }),
            _ => None,
        })
    }

    fn query_block(&mut self) -> PResult<Vec<QueryStmt>> {
        self.expect_punct("{")?;
        let mut out: Vec<QueryStmt> = Vec::new();
        while !self.is_punct("}") {
            let (target, t_at) = self.ident()?;
            self.expect_punct("=")?;
            let f_at = self.here();
            let (f, _) = self.ident()?;
            if f != "transpile" {
                self.report(
                    DiagnosticKind::UnknownFunction,
                    f_at,
                    format!("queries must call `transpile`, found `{f}`"),
                );
            }
            self.expect_punct("(")?;
            let (source, s_at) = self.ident()?;
            self.expect_punct(",")?;
            let src = self.lang_str()?;
            self.expect_punct(",")?;
            let dst = self.lang_str()?;
            self.expect_punct(")")?;
            self.eat_punct(";");
            match self.lookup(&target, t_at) {
                Some(SymKind::Output) => {
                    if out.iter().any(|q| q.target == target) {
                        self.report(
                            DiagnosticKind::Structure,
                            t_at,
                            format!("output `{target}` is assigned twice"),
                        );
                    }
                    self.use_lang(&target, dst, t_at);
                }
                Some(_) => self.report(DiagnosticKind::Structure, t_at, format!("`{target}` is not an output")),
                None => {}
            }
            match self.lookup(&source, s_at) {
                Some(SymKind::Output) => self.report(
                    DiagnosticKind::Structure,
                    s_at,
                    format!("output `{source}` cannot be translated"),
                ),
                Some(_) => self.use_lang(&source, src, s_at),
                None => {}
            }
            if let (Some(s), Some(d)) = (src, dst) {
                if s == d {
                    self.report(DiagnosticKind::Type, f_at, "source and target languages must differ");
                }
                out.push(QueryStmt {
                    target,
                    source,
                    src_lang: s,
                    dst_lang: d,
                });
            }
        }
        self.advance();
        Ok(out)
    }

    // ---- expressions ---------------------------------------------------

    fn expr(&mut self) -> PResult<(Expr, Option<Type>)> {
        let at = self.here();
        let (lhs, lt) = self.or()?;
        if self.eat_punct("==>") {
            let r_at = self.here();
            let (rhs, rt) = self.expr()?;
            self.want_bool(lt, at, "left side of `==>`");
            self.want_bool(rt, r_at, "right side of `==>`");
            return Ok((bin(BinOp::Implies, lhs, rhs), Some(Type::Bool)));
        }
        Ok((lhs, lt))
    }

    fn logical(&mut self, op: BinOp, next: fn(&mut Self) -> PResult<Typed>) -> PResult<Typed> {
        let at = self.here();
        let (mut lhs, mut lt) = next(self)?;
        while self.eat_punct(op.symbol()) {
            let r_at = self.here();
            let (rhs, rt) = next(self)?;
            self.want_bool(lt, at, &format!("left side of `{}`", op.symbol()));
            self.want_bool(rt, r_at, &format!("right side of `{}`", op.symbol()));
            lhs = bin(op, lhs, rhs);
            lt = Some(Type::Bool);
        }
        Ok((lhs, lt))
    }

    fn or(&mut self) -> PResult<(Expr, Option<Type>)> {
        self.logical(BinOp::Or, Self::and)
    }

    fn and(&mut self) -> PResult<(Expr, Option<Type>)> {
        self.logical(BinOp::And, Self::comparison)
    }

    fn cmp_op(&self) -> Option<BinOp> {
        let Tok::Punct(p) = self.peek() else { return None };
        Some(match *p {
            "==" => BinOp::Eq,
            "!=" => BinOp::Ne,
            "<" => BinOp::Lt,
            "<=" => BinOp::Le,
            ">" => BinOp::Gt,
            ">=" => BinOp::Ge,
            _ => return None,
        })
    }

    fn comparison(&mut self) -> PResult<(Expr, Option<Type>)> {
        let (lhs, lt) = self.additive()?;
        let Some(op) = self.cmp_op() else {
            return Ok((lhs, lt));
        };
        let op_at = self.here();
        self.advance();
        let (rhs, rt) = self.additive()?;
        if self.cmp_op().is_some() {
            let mut d = self.syntax("end of comparison");
            d.message = "comparison operators do not chain; add parentheses".into();
            return Err(d);
        }
        if let (Some(l), Some(r)) = (lt, rt) {
            let eq = matches!(op, BinOp::Eq | BinOp::Ne);
            let ok = match (l, r) {
                (Type::Int, Type::Int) => true,
                (Type::ValueSet, Type::ValueSet) => eq,
                (Type::Program, Type::Null) | (Type::Null, Type::Program) => eq,
                _ => false,
            };
            if !ok {
                self.report(
                    DiagnosticKind::Type,
                    op_at,
                    format!("cannot compare {l} with {r} using `{}`", op.symbol()),
                );
            }
        }
        Ok((bin(op, lhs, rhs), Some(Type::Bool)))
    }

    fn additive(&mut self) -> PResult<(Expr, Option<Type>)> {
        let (mut lhs, mut lt) = self.unary()?;
        loop {
            let op = if self.is_punct("+") {
                BinOp::Add
            } else if self.is_punct("-") {
                BinOp::Sub
            } else {
                break;
            };
            let op_at = self.here();
            self.advance();
            let (rhs, rt) = self.unary()?;
            for t in [lt, rt].into_iter().flatten() {
                if t != Type::Int {
                    self.report(
                        DiagnosticKind::Type,
                        op_at,
                        format!("`{}` needs integers, found {t}", op.symbol()),
                    );
                    break;
                }
            }
            lhs = bin(op, lhs, rhs);
            lt = Some(Type::Int);
        }
        Ok((lhs, lt))
    }

    fn unary(&mut self) -> PResult<(Expr, Option<Type>)> {
        let at = self.here();
        if self.eat_punct("!") {
            let (e, t) = self.unary()?;
            self.want_bool(t, at, "operand of `!`");
            return Ok((
                Expr::Unary {
                    op: UnOp::Not,
                    expr: Box::new(e),
                },
                Some(Type::Bool),
            ));
        }
        if self.eat_punct("-") {
            let (e, t) = self.unary()?;
            if let Some(t) = t {
                if t != Type::Int {
                    self.report(DiagnosticKind::Type, at, format!("`-` needs an integer, found {t}"));
                }
            }
            return Ok((
                Expr::Unary {
                    op: UnOp::Neg,
                    expr: Box::new(e),
                },
                Some(Type::Int),
            ));
        }
        self.primary()
    }

    fn primary(&mut self) -> PResult<(Expr, Option<Type>)> {
        let at = self.here();
        match self.peek().clone() {
            Tok::Int(v) => {
                self.advance();
                Ok((Expr::Int(v), Some(Type::Int)))
            }
            Tok::Punct("(") => {
                self.advance();
                let r = self.expr()?;
                self.expect_punct(")")?;
                Ok(r)
            }
            Tok::Ident(w) if w == "null" => {
                self.advance();
                Ok((Expr::Null, Some(Type::Null)))
            }
            Tok::Ident(w) if w == "true" || w == "false" => {
                self.advance();
                Ok((Expr::Bool(w == "true"), Some(Type::Bool)))
            }
            Tok::Ident(w) if !is_keyword(&w) => {
                self.advance();
                if self.eat_punct("(") {
                    return self.inspect_call(w, at);
                }
                let ty = self.lookup(&w, at).map(|_| Type::Program);
                Ok((Expr::Ident(w), ty))
            }
            _ => Err(self.syntax("expression")),
        }
    }

    fn inspect_call(&mut self, fname: String, at: (usize, usize)) -> PResult<(Expr, Option<Type>)> {
        let (program, p_at) = self.ident()?;
        self.expect_punct(",")?;
        let lang = self.lang_str()?;
        self.expect_punct(")")?;
        let func = InspectFn::from_name(&fname);
        if func.is_none() {
            let msg = if TransformFn::from_name(&fname).is_some() {
                format!("`{fname}` is a transformation; bind it with `var`")
            } else {
                format!("unknown inspection `{fname}`")
            };
            self.report(DiagnosticKind::UnknownFunction, at, msg);
        }
        if self.lookup(&program, p_at).is_some() {
            self.use_lang(&program, lang, p_at);
        }
        match (func, lang) {
            (Some(func), Some(lang)) => Ok((Expr::Inspect { func, program, lang }, Some(func.result_type()))),
            (Some(func), None) => Ok((Expr::Bool(false), Some(func.result_type()))),
            _ => Ok((Expr::Bool(false), None)),
        }
    }
}

fn bin(op: BinOp, lhs: Expr, rhs: Expr) -> Expr {
    Expr::Binary {
        op,
        lhs: Box::new(lhs),
        rhs: Box::new(rhs),
    }
}

fn is_keyword(w: &str) -> bool {
    matches!(
        w,
        "input" | "output" | "var" | "requires" | "ensures" | "null" | "true" | "false"
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    const FIG_1A: &str = r#"
        input pj;
        output pc;
        {
          pc = transpile(pj, "java", "cpp")
        }
        ensures numConditionals(pj, "java")
          == numConditionals(pc, "cpp");
    "#;

    const FIG_1D: &str = r#"
        input pj1;
        var pj2 := renameParam(pj1, "java");
        requires pj2 != null;
        output pp1;
        output pp2;
        {
          pp1 = transpile(pj1, "java", "py")
          pp2 = transpile(pj2, "java", "py")
        }
        ensures compiles(pp1, "py") && compiles(pp2, "py")
          ==> retValues(pp1, "py") == retValues(pp2, "py");
    "#;

    #[test]
    fn one_safety_without_requires() {
        let s = parse_spec("fig1a", FIG_1A).unwrap();
        assert_eq!(s.k, 1);
        assert_eq!(s.inputs, vec!["pj"]);
        assert_eq!(s.outputs, vec!["pc"]);
        assert!(s.preconditions.is_empty());
        assert_eq!(s.inspections(), vec![InspectFn::NumConditionals]);
    }

    #[test]
    fn two_safety_with_derived_var() {
        let s = parse_spec("fig1d", FIG_1D).unwrap();
        assert_eq!(s.k, 2);
        assert_eq!(s.derived_vars[0].call.func, TransformFn::RenameParam);
        assert_eq!(s.preconditions.len(), 1);
        // `&&` binds tighter than `==>`.
        assert!(matches!(&s.postcondition, Expr::Binary { op: BinOp::Implies, lhs, .. }
            if matches!(lhs.as_ref(), Expr::Binary { op: BinOp::And, .. })));
    }

    #[test]
    fn implication_is_right_associative() {
        let src = r#"input a; output b; { b = transpile(a, "java", "py") }
            ensures compiles(a, "java") ==> compiles(b, "py") ==> arity(b, "py") == 1;"#;
        let s = parse_spec("x", src).unwrap();
        let Expr::Binary {
            op: BinOp::Implies,
            rhs,
            ..
        } = &s.postcondition
        else {
            panic!()
        };
        assert!(matches!(rhs.as_ref(), Expr::Binary { op: BinOp::Implies, .. }));
    }

    #[test]
    fn diagnostics_carry_positions() {
        let src =
            "input pj;\noutput pc;\n{ pc = transpile(pj, \"java\", \"py\") }\nensures numThings(pc, \"py\") == zz;\n";
        let err = parse_spec("x", src).unwrap_err();
        let kinds: Vec<_> = err.0.iter().map(|d| (d.kind, d.line, d.col)).collect();
        assert!(kinds.contains(&(DiagnosticKind::UnknownFunction, 4, 9)), "{kinds:?}");
        assert!(
            kinds.contains(&(DiagnosticKind::UndeclaredIdentifier, 4, 32)),
            "{kinds:?}"
        );
    }

    #[test]
    fn syntax_error_names_expectation() {
        let err = parse_spec("x", "input pj\noutput pc;").unwrap_err();
        assert_eq!(err.0[0].kind, DiagnosticKind::Syntax);
        assert_eq!((err.0[0].line, err.0[0].col), (2, 1));
        assert!(err.0[0].message.contains("`;`"));
    }

    #[test]
    fn type_errors() {
        let bad = [
            r#"input a; output b; { b = transpile(a, "java", "py") } ensures compiles(b, "py") == compiles(a, "java");"#,
            r#"input a; output b; { b = transpile(a, "java", "py") } ensures arity(b, "py");"#,
            r#"input a; output b; { b = transpile(a, "java", "py") } ensures arity(b, "java") == 1;"#,
            r#"input a; output b; { b = transpile(a, "java", "java") } ensures arity(b, "java") == 1;"#,
            r#"input a; output b; { b = transpile(a, "java", "py") } ensures retValues(b, "py") < retValues(a, "java");"#,
        ];
        for src in bad {
            let err = parse_spec("x", src).unwrap_err();
            assert!(err.0.iter().any(|d| d.kind == DiagnosticKind::Type), "{src}: {err}");
        }
    }

    #[test]
    fn structural_errors() {
        let bad = [
            r#"input a; output b; ensures true;"#,
            r#"input a; output b; requires arity(b, "py") == 1; { b = transpile(a, "java", "py") } ensures true;"#,
            r#"input a; output b; output c; { b = transpile(a, "java", "py") } ensures true;"#,
            r#"input a; output b; { b = transpile(a, "java", "py") b = transpile(a, "java", "py") } ensures true;"#,
        ];
        for src in bad {
            let err = parse_spec("x", src).unwrap_err();
            assert!(
                err.0.iter().any(|d| d.kind == DiagnosticKind::Structure),
                "{src}: {err}"
            );
        }
    }

    #[test]
    fn duplicate_declaration() {
        let err = parse_spec(
            "x",
            r#"input a; input a; output b; { b = transpile(a, "java", "py") } ensures true;"#,
        )
        .unwrap_err();
        assert_eq!(err.0[0].kind, DiagnosticKind::DuplicateDeclaration);
    }

    #[test]
    fn merge_takes_two_programs() {
        let err = parse_spec(
            "x",
            r#"input a; var c := merge(a, "java"); output b; { b = transpile(c, "java", "py") } ensures true;"#,
        )
        .unwrap_err();
        assert_eq!(err.0[0].kind, DiagnosticKind::Type);
    }
}
