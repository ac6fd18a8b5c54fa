//! Recursive-descent parser for the Java subset: a single (optionally
//! modified) method with primitive, `String` and array types.

use super::ast::*;
use super::error::ParseError;
use super::java_lexer::{tokenize, Tok, Token};

const MODIFIERS: &[&str] = &["public", "private", "protected", "static", "final", "synchronized"];

const UNSUPPORTED_KEYWORDS: &[&str] = &[
    "class",
    "interface",
    "enum",
    "try",
    "catch",
    "finally",
    "throw",
    "throws",
    "import",
    "package",
    "this",
    "super",
    "instanceof",
    "assert",
    "var",
];

pub fn parse_java(src: &str) -> Result<FunctionAst, ParseError> {
    let tokens = tokenize(src)?;
    let mut p = Parser {
        toks: tokens,
        pos: 0,
        loop_depth: 0,
        switch_depth: 0,
    };
    let f = p.function()?;
    if !matches!(p.peek(), Tok::Eof) {
        return Err(p.unexpected("end of input after the function"));
    }
    Ok(f)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    loop_depth: usize,
    /// Switch nesting relative to the innermost loop.
    switch_depth: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, n: usize) -> &Tok {
        let idx = (self.pos + n).min(self.toks.len() - 1);
        &self.toks[idx].tok
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
        matches!(self.peek(), Tok::Ident(q) if q == w)
    }

    fn eat_punct(&mut self, p: &str) -> bool {
        if self.is_punct(p) {
            self.advance();
            true
        } else {
            false
        }
    }

    fn expect_punct(&mut self, p: &str) -> Result<(), ParseError> {
        if self.eat_punct(p) {
            Ok(())
        } else {
            Err(self.unexpected(&format!("`{p}`")))
        }
    }

    fn expect_word(&mut self, w: &str) -> Result<(), ParseError> {
        if self.is_word(w) {
            self.advance();
            Ok(())
        } else {
            Err(self.unexpected(&format!("`{w}`")))
        }
    }

    fn unexpected(&self, expected: &str) -> ParseError {
        let (line, col) = self.here();
        let found = match self.peek() {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Int(v) => format!("`{v}`"),
            Tok::Float(v) => format!("`{v}`"),
            Tok::Str(_) => "string literal".to_string(),
            Tok::Char => "char literal".to_string(),
            Tok::Punct(p) => format!("`{p}`"),
            Tok::Eof => "end of input".to_string(),
        };
        ParseError::malformed(format!("expected {expected}, found {found}"), line, col)
    }

    fn unsupported(&self, what: &str) -> ParseError {
        let (line, col) = self.here();
        ParseError::unsupported(what, line, col)
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        match self.peek().clone() {
            Tok::Ident(name) => {
                if UNSUPPORTED_KEYWORDS.contains(&name.as_str()) {
                    return Err(self.unsupported(&name));
                }
                if is_reserved(&name) {
                    return Err(self.unexpected("identifier"));
                }
                self.advance();
                Ok(name)
            }
            _ => Err(self.unexpected("identifier")),
        }
    }

    fn check_unsupported_word(&self) -> Result<(), ParseError> {
        if let Tok::Ident(w) = self.peek() {
            if UNSUPPORTED_KEYWORDS.contains(&w.as_str()) {
                return Err(self.unsupported(w));
            }
        }
        if matches!(self.peek(), Tok::Char) {
            return Err(self.unsupported("char literal"));
        }
        if self.is_punct("->") {
            return Err(self.unsupported("lambda"));
        }
        if self.is_punct("::") {
            return Err(self.unsupported("method reference"));
        }
        if self.is_punct("@") {
            return Err(self.unsupported("annotation"));
        }
        Ok(())
    }

    // ---- types -------------------------------------------------------

    /// A type followed by a declarator name.
    fn starts_decl(&self) -> bool {
        if !self.starts_type() {
            return false;
        }
        let mut n = 1;
        while matches!(self.peek_at(n), Tok::Punct("[")) && matches!(self.peek_at(n + 1), Tok::Punct("]")) {
            n += 2;
        }
        matches!(self.peek_at(n), Tok::Ident(_))
    }

    fn starts_type(&self) -> bool {
        match self.peek() {
            Tok::Ident(w) => {
                matches!(w.as_str(), "int" | "long" | "double" | "boolean" | "String" | "void")
                    || matches!(w.as_str(), "char" | "float" | "byte" | "short")
            }
            _ => false,
        }
    }

    fn ty(&mut self) -> Result<TypeTag, ParseError> {
        let base = match self.peek().clone() {
            Tok::Ident(w) => match w.as_str() {
                "int" => TypeTag::Int,
                "long" => TypeTag::Long,
                "double" => TypeTag::Double,
                "boolean" => TypeTag::Boolean,
                "String" => TypeTag::Str,
                "void" => TypeTag::Void,
                "char" | "float" | "byte" | "short" => return Err(self.unsupported(&format!("type {w}"))),
                "Integer" | "List" | "ArrayList" | "Map" | "HashMap" | "Set" | "HashSet" => {
                    return Err(self.unsupported(&format!("type {w}")))
                }
                _ => return Err(self.unexpected("type")),
            },
            _ => return Err(self.unexpected("type")),
        };
        self.advance();
        if self.is_punct("<") {
            return Err(self.unsupported("generics"));
        }
        let mut ty = base;
        while self.is_punct("[") && matches!(self.peek_at(1), Tok::Punct("]")) {
            self.advance();
            self.advance();
            ty = TypeTag::array_of(ty);
        }
        Ok(ty)
    }

    // ---- function ----------------------------------------------------

    fn function(&mut self) -> Result<FunctionAst, ParseError> {
        while let Tok::Ident(w) = self.peek() {
            if MODIFIERS.contains(&w.as_str()) {
                self.advance();
            } else {
                break;
            }
        }
        self.check_unsupported_word()?;
        if self.is_punct("<") {
            return Err(self.unsupported("generics"));
        }
        let ret = self.ty()?;
        let name = self.ident()?;
        self.expect_punct("(")?;
        let mut params: Vec<Param> = Vec::new();
        if !self.is_punct(")") {
            loop {
                while self.is_word("final") {
                    self.advance();
                }
                let (line, col) = self.here();
                let ty = self.ty()?;
                if self.is_punct("...") || self.is_punct(".") {
                    return Err(self.unsupported("varargs"));
                }
                let pname = self.ident()?;
                if params.iter().any(|p| p.name == pname) {
                    return Err(ParseError::malformed(
                        format!("duplicate parameter `{pname}`"),
                        line,
                        col,
                    ));
                }
                params.push(Param::new(pname, ty));
                if !self.eat_punct(",") {
                    break;
                }
            }
        }
        self.expect_punct(")")?;
        if self.is_word("throws") {
            return Err(self.unsupported("throws"));
        }
        let body = self.block()?;
        Ok(FunctionAst {
            name,
            ret,
            params,
            body,
        })
    }

    fn block(&mut self) -> Result<Vec<Stmt>, ParseError> {
        self.expect_punct("{")?;
        let mut out = Vec::new();
        while !self.is_punct("}") {
            if matches!(self.peek(), Tok::Eof) {
                return Err(self.unexpected("`}`"));
            }
            out.extend(self.statement()?);
        }
        self.advance();
        Ok(out)
    }

    /// A statement used as a branch or loop body: braces are optional and
    /// the result is always a statement list.
    fn body(&mut self) -> Result<Vec<Stmt>, ParseError> {
        if self.is_punct("{") {
            self.block()
        } else {
            let stmts = self.statement()?;
            if stmts.len() != 1 || matches!(stmts[0], Stmt::Decl { .. }) {
                return Err(self.unexpected("statement (declarations need braces)"));
            }
            Ok(stmts)
        }
    }

    fn in_loop<T>(&mut self, f: impl FnOnce(&mut Self) -> Result<T, ParseError>) -> Result<T, ParseError> {
        self.loop_depth += 1;
        let saved = std::mem::replace(&mut self.switch_depth, 0);
        let r = f(self);
        self.switch_depth = saved;
        self.loop_depth -= 1;
        r
    }

    fn statement(&mut self) -> Result<Vec<Stmt>, ParseError> {
        self.check_unsupported_word()?;
        if self.is_punct("{") {
            return Ok(vec![Stmt::Block(self.block()?)]);
        }
        if self.eat_punct(";") {
            return Ok(Vec::new());
        }
        let word = match self.peek() {
            Tok::Ident(w) => w.clone(),
            _ => String::new(),
        };
        match word.as_str() {
            "if" => {
                self.advance();
                self.expect_punct("(")?;
                let cond = self.expr()?;
                self.expect_punct(")")?;
                let then_body = self.body()?;
                let else_body = if self.is_word("else") {
                    self.advance();
                    Some(self.body()?)
                } else {
                    None
                };
                Ok(vec![Stmt::If {
                    cond,
                    then_body,
                    else_body,
                }])
            }
            "while" => {
                self.advance();
                self.expect_punct("(")?;
                let cond = self.expr()?;
                self.expect_punct(")")?;
                let body = self.in_loop(|p| p.body())?;
                Ok(vec![Stmt::While { cond, body }])
            }
            "do" => {
                self.advance();
                let body = self.in_loop(|p| p.body())?;
                self.expect_word("while")?;
                self.expect_punct("(")?;
                let cond = self.expr()?;
                self.expect_punct(")")?;
                self.expect_punct(";")?;
                Ok(vec![Stmt::DoWhile { body, cond }])
            }
            "for" => self.for_stmt().map(|s| vec![s]),
            "switch" => self.switch_stmt().map(|s| vec![s]),
            "return" => {
                self.advance();
                let value = if self.is_punct(";") { None } else { Some(self.expr()?) };
                self.expect_punct(";")?;
                Ok(vec![Stmt::Return(value)])
            }
            "break" => {
                if self.loop_depth == 0 || self.switch_depth > 0 {
                    return Err(self.unsupported("break outside loop"));
                }
                self.advance();
                if matches!(self.peek(), Tok::Ident(_)) {
                    return Err(self.unsupported("labeled break"));
                }
                self.expect_punct(";")?;
                Ok(vec![Stmt::Break])
            }
            "continue" => {
                if self.loop_depth == 0 {
                    return Err(self.unsupported("continue outside loop"));
                }
                self.advance();
                if matches!(self.peek(), Tok::Ident(_)) {
                    return Err(self.unsupported("labeled continue"));
                }
                self.expect_punct(";")?;
                Ok(vec![Stmt::Continue])
            }
            "else" => Err(self.unexpected("statement")),
            "System" => self.print_stmt().map(|s| vec![s]),
            _ => {
                if self.is_word("final") {
                    self.advance();
                }
                if self.starts_decl() {
                    let decls = self.declaration()?;
                    self.expect_punct(";")?;
                    Ok(decls)
                } else {
                    let s = self.simple_stmt()?;
                    self.expect_punct(";")?;
                    Ok(vec![s])
                }
            }
        }
    }

    fn print_stmt(&mut self) -> Result<Stmt, ParseError> {
        // System.out.println(expr?);
        self.advance();
        self.expect_punct(".")?;
        self.expect_word("out")?;
        self.expect_punct(".")?;
        if self.is_word("print") || self.is_word("printf") {
            return Err(self.unsupported("System.out.print without newline"));
        }
        self.expect_word("println")?;
        self.expect_punct("(")?;
        let mut args = Vec::new();
        if !self.is_punct(")") {
            args.push(self.expr()?);
        }
        self.expect_punct(")")?;
        self.expect_punct(";")?;
        Ok(Stmt::Print(args))
    }

    fn declaration(&mut self) -> Result<Vec<Stmt>, ParseError> {
        let ty = self.ty()?;
        if ty == TypeTag::Void {
            return Err(self.unexpected("non-void variable type"));
        }
        let mut out = Vec::new();
        loop {
            let name = self.ident()?;
            if self.is_punct("[") {
                return Err(self.unsupported("C-style array declarator"));
            }
            let init = if self.eat_punct("=") {
                if self.is_punct("{") {
                    Some(self.array_initializer()?)
                } else {
                    Some(self.expr()?)
                }
            } else {
                None
            };
            out.push(Stmt::Decl {
                ty: ty.clone(),
                name,
                init,
            });
            if !self.eat_punct(",") {
                break;
            }
        }
        Ok(out)
    }

    fn array_initializer(&mut self) -> Result<Expr, ParseError> {
        self.expect_punct("{")?;
        let mut items = Vec::new();
        while !self.is_punct("}") {
            if self.is_punct("{") {
                items.push(self.array_initializer()?);
            } else {
                items.push(self.expr()?);
            }
            if !self.eat_punct(",") {
                break;
            }
        }
        self.expect_punct("}")?;
        Ok(Expr::ArrayLit { elem: None, items })
    }

    /// Assignment, increment or call in statement position.
    fn simple_stmt(&mut self) -> Result<Stmt, ParseError> {
        if self.is_punct("++") || self.is_punct("--") {
            let increment = matches!(self.advance(), Tok::Punct("++"));
            let target = self.postfix()?;
            check_lvalue(&target, self)?;
            return Ok(Stmt::IncDec { target, increment });
        }
        let lhs = self.expr()?;
        let op = match self.peek() {
            Tok::Punct("=") => Some(AssignOp::Set),
            Tok::Punct("+=") => Some(AssignOp::Add),
            Tok::Punct("-=") => Some(AssignOp::Sub),
            Tok::Punct("*=") => Some(AssignOp::Mul),
            Tok::Punct("/=") => Some(AssignOp::Div),
            Tok::Punct("%=") => Some(AssignOp::Mod),
            Tok::Punct("&=")
            | Tok::Punct("|=")
            | Tok::Punct("^=")
            | Tok::Punct("<<=")
            | Tok::Punct(">>=")
            | Tok::Punct(">>>=") => return Err(self.unsupported("bitwise compound assignment")),
            _ => None,
        };
        if let Some(op) = op {
            check_lvalue(&lhs, self)?;
            self.advance();
            let value = self.expr()?;
            if self.is_punct("=") {
                return Err(self.unsupported("chained assignment"));
            }
            return Ok(Stmt::Assign { target: lhs, op, value });
        }
        if self.is_punct("++") || self.is_punct("--") {
            check_lvalue(&lhs, self)?;
            let increment = matches!(self.advance(), Tok::Punct("++"));
            return Ok(Stmt::IncDec { target: lhs, increment });
        }
        match lhs {
            Expr::Call { .. } | Expr::Method { .. } => Ok(Stmt::Expr(lhs)),
            _ => Err(self.unexpected("assignment, increment or call")),
        }
    }

    fn for_stmt(&mut self) -> Result<Stmt, ParseError> {
        self.advance();
        self.expect_punct("(")?;
        // Enhanced for: `for (T x : e)`.
        let save = self.pos;
        if self.is_word("final") {
            self.advance();
        }
        if self.starts_decl() {
            let ty = self.ty()?;
            let var = self.ident()?;
            if self.eat_punct(":") {
                let iter = self.expr()?;
                self.expect_punct(")")?;
                let body = self.in_loop(|p| p.body())?;
                return Ok(Stmt::ForEach { ty, var, iter, body });
            }
        }
        self.pos = save;
        let init = if self.is_punct(";") {
            None
        } else if self.starts_decl() || self.is_word("final") {
            if self.is_word("final") {
                self.advance();
            }
            let mut decls = self.declaration()?;
            if decls.len() != 1 {
                return Err(self.unsupported("multiple for-loop declarators"));
            }
            Some(Box::new(decls.remove(0)))
        } else {
            Some(Box::new(self.simple_stmt()?))
        };
        if self.is_punct(",") {
            return Err(self.unsupported("comma in for-loop header"));
        }
        self.expect_punct(";")?;
        let cond = if self.is_punct(";") { None } else { Some(self.expr()?) };
        self.expect_punct(";")?;
        let update = if self.is_punct(")") {
            None
        } else {
            Some(Box::new(self.simple_stmt()?))
        };
        if self.is_punct(",") {
            return Err(self.unsupported("comma in for-loop header"));
        }
        self.expect_punct(")")?;
        let body = self.in_loop(|p| p.body())?;
        Ok(Stmt::For {
            init,
            cond,
            update,
            body,
        })
    }

    fn switch_stmt(&mut self) -> Result<Stmt, ParseError> {
        self.advance();
        self.expect_punct("(")?;
        let scrutinee = self.expr()?;
        self.expect_punct(")")?;
        self.expect_punct("{")?;
        let mut cases: Vec<SwitchCase> = Vec::new();
        let mut default: Option<Vec<Stmt>> = None;
        let mut pending_labels: Vec<Expr> = Vec::new();
        let mut pending_default = false;
        loop {
            if self.is_punct("}") {
                self.advance();
                break;
            }
            if self.is_word("case") {
                self.advance();
                let label = self.expr()?;
                if self.is_punct("->") {
                    return Err(self.unsupported("arrow switch"));
                }
                self.expect_punct(":")?;
                pending_labels.push(label);
            } else if self.is_word("default") {
                self.advance();
                self.expect_punct(":")?;
                pending_default = true;
            } else {
                return Err(self.unexpected("`case`, `default` or `}`"));
            }
            if self.is_word("case") || self.is_word("default") {
                // Grouped labels share the next body.
                continue;
            }
            let (line, col) = self.here();
            let mut body = Vec::new();
            self.switch_depth += 1;
            let mut ended = false;
            while !(self.is_word("case") || self.is_word("default") || self.is_punct("}")) {
                if matches!(self.peek(), Tok::Eof) {
                    self.switch_depth -= 1;
                    return Err(self.unexpected("`}`"));
                }
                if self.is_word("break") && matches!(self.peek_at(1), Tok::Punct(";")) {
                    self.advance();
                    self.advance();
                    ended = true;
                    if !(self.is_word("case") || self.is_word("default") || self.is_punct("}")) {
                        self.switch_depth -= 1;
                        return Err(self.unsupported("statement after break in switch case"));
                    }
                    break;
                }
                body.extend(self.statement()?);
            }
            self.switch_depth -= 1;
            let last_arm = self.is_punct("}");
            let terminates = ended
                || body
                    .last()
                    .is_some_and(|s| matches!(s, Stmt::Return(_) | Stmt::Continue));
            if !terminates && !last_arm {
                return Err(ParseError::unsupported("switch fallthrough", line, col));
            }
            if pending_default {
                if !pending_labels.is_empty() {
                    return Err(ParseError::unsupported("default grouped with case labels", line, col));
                }
                if default.is_some() {
                    return Err(ParseError::malformed("duplicate default", line, col));
                }
                default = Some(body);
                pending_default = false;
            } else {
                cases.push(SwitchCase {
                    labels: std::mem::take(&mut pending_labels),
                    body,
                });
            }
        }
        if !pending_labels.is_empty() || pending_default {
            // Trailing labels with an empty body.
            if pending_default {
                default = Some(Vec::new());
            }
            if !pending_labels.is_empty() {
                cases.push(SwitchCase {
                    labels: pending_labels,
                    body: Vec::new(),
                });
            }
        }
        Ok(Stmt::Switch {
            scrutinee,
            cases,
            default,
        })
    }

    // ---- expressions -------------------------------------------------

    pub(crate) fn expr(&mut self) -> Result<Expr, ParseError> {
        self.check_unsupported_word()?;
        let cond = self.binary(0)?;
        if self.eat_punct("?") {
            let then = self.expr()?;
            self.expect_punct(":")?;
            let otherwise = self.expr()?;
            return Ok(Expr::Ternary {
                cond: Box::new(cond),
                then: Box::new(then),
                otherwise: Box::new(otherwise),
            });
        }
        if self.is_punct("->") {
            return Err(self.unsupported("lambda"));
        }
        Ok(cond)
    }

    fn binary_op(&self) -> Option<(BinOp, u8)> {
        let p = match self.peek() {
            Tok::Punct(p) => *p,
            _ => return None,
        };
        Some(match p {
            "||" => (BinOp::Or, 0),
            "&&" => (BinOp::And, 1),
            "|" => (BinOp::BitOr, 2),
            "^" => (BinOp::BitXor, 3),
            "&" => (BinOp::BitAnd, 4),
            "==" => (BinOp::Eq, 5),
            "!=" => (BinOp::Ne, 5),
            "<" => (BinOp::Lt, 6),
            ">" => (BinOp::Gt, 6),
            "<=" => (BinOp::Le, 6),
            ">=" => (BinOp::Ge, 6),
            "<<" => (BinOp::Shl, 7),
            ">>" => (BinOp::Shr, 7),
            "+" => (BinOp::Add, 8),
            "-" => (BinOp::Sub, 8),
            "*" => (BinOp::Mul, 9),
            "/" => (BinOp::Div, 9),
            "%" => (BinOp::Mod, 9),
            _ => return None,
        })
    }

    fn binary(&mut self, min_level: u8) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            if self.is_punct(">>>") {
                return Err(self.unsupported("unsigned shift"));
            }
            let Some((op, level)) = self.binary_op() else {
                break;
            };
            if level < min_level {
                break;
            }
            self.advance();
            let rhs = self.binary(level + 1)?;
            lhs = Expr::binary(op, lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        self.check_unsupported_word()?;
        if self.eat_punct("-") {
            let operand = self.unary()?;
            return Ok(match operand {
                Expr::Int(v) => Expr::Int(-v),
                Expr::Float(v) => Expr::Float(-v),
                other => Expr::Unary {
                    op: UnaryOp::Neg,
                    expr: Box::new(other),
                },
            });
        }
        if self.eat_punct("+") {
            return self.unary();
        }
        if self.eat_punct("!") {
            let operand = self.unary()?;
            return Ok(Expr::logical_not(operand));
        }
        if self.is_punct("~") {
            return Err(self.unsupported("bitwise complement"));
        }
        if self.is_punct("++") || self.is_punct("--") {
            return Err(self.unsupported("increment inside expression"));
        }
        // Cast: `(type) unary`
        if self.is_punct("(") {
            if let Tok::Ident(w) = self.peek_at(1) {
                if matches!(
                    w.as_str(),
                    "int" | "long" | "double" | "boolean" | "String" | "char" | "float"
                ) {
                    let save = self.pos;
                    self.advance();
                    let ty = self.ty()?;
                    if self.eat_punct(")") {
                        let operand = self.unary()?;
                        return Ok(Expr::Cast {
                            ty,
                            expr: Box::new(operand),
                        });
                    }
                    self.pos = save;
                }
            }
        }
        let e = self.postfix()?;
        if self.is_punct("++") || self.is_punct("--") {
            // Only legal as a whole statement; the caller handles that case.
            if !matches!(self.peek_at(1), Tok::Punct(";") | Tok::Punct(")")) {
                return Err(self.unsupported("increment inside expression"));
            }
        }
        Ok(e)
    }

    fn postfix(&mut self) -> Result<Expr, ParseError> {
        let mut e = self.primary()?;
        loop {
            if self.eat_punct(".") {
                let name = self.ident()?;
                if self.is_punct("(") {
                    let args = self.args()?;
                    e = match e {
                        Expr::Var(ref base) if is_static_class(base) => Expr::Call {
                            func: format!("{base}.{name}"),
                            args,
                        },
                        _ => Expr::Method {
                            recv: Box::new(e),
                            name,
                            args,
                        },
                    };
                } else {
                    e = Expr::Field {
                        recv: Box::new(e),
                        name,
                    };
                }
            } else if self.is_punct("[") {
                self.advance();
                let index = self.expr()?;
                self.expect_punct("]")?;
                e = Expr::Index {
                    base: Box::new(e),
                    index: Box::new(index),
                };
            } else {
                break;
            }
        }
        Ok(e)
    }

    fn args(&mut self) -> Result<Vec<Expr>, ParseError> {
        self.expect_punct("(")?;
        let mut out = Vec::new();
        if !self.is_punct(")") {
            loop {
                out.push(self.expr()?);
                if !self.eat_punct(",") {
                    break;
                }
            }
        }
        self.expect_punct(")")?;
        if self.is_punct("->") {
            return Err(self.unsupported("lambda"));
        }
        Ok(out)
    }

    fn primary(&mut self) -> Result<Expr, ParseError> {
        self.check_unsupported_word()?;
        match self.peek().clone() {
            Tok::Int(v) => {
                self.advance();
                Ok(Expr::Int(v))
            }
            Tok::Float(v) => {
                self.advance();
                Ok(Expr::Float(v))
            }
            Tok::Str(s) => {
                self.advance();
                Ok(Expr::Str(s))
            }
            Tok::Punct("(") => {
                self.advance();
                if self.is_punct(")") {
                    return Err(self.unsupported("lambda"));
                }
                let e = self.expr()?;
                if self.is_punct(",") {
                    return Err(self.unsupported("lambda"));
                }
                self.expect_punct(")")?;
                if self.is_punct("->") {
                    return Err(self.unsupported("lambda"));
                }
                Ok(e)
            }
            Tok::Ident(w) => match w.as_str() {
                "true" => {
                    self.advance();
                    Ok(Expr::Bool(true))
                }
                "false" => {
                    self.advance();
                    Ok(Expr::Bool(false))
                }
                "null" => {
                    self.advance();
                    Ok(Expr::Null)
                }
                "new" => self.new_expr(),
                _ => {
                    let name = self.ident()?;
                    if self.is_punct("->") {
                        return Err(self.unsupported("lambda"));
                    }
                    if self.is_punct("(") {
                        let args = self.args()?;
                        return Ok(Expr::Call { func: name, args });
                    }
                    Ok(Expr::Var(name))
                }
            },
            _ => Err(self.unexpected("expression")),
        }
    }

    fn new_expr(&mut self) -> Result<Expr, ParseError> {
        self.advance();
        let elem = match self.peek().clone() {
            Tok::Ident(w) => match w.as_str() {
                "int" => TypeTag::Int,
                "long" => TypeTag::Long,
                "double" => TypeTag::Double,
                "boolean" => TypeTag::Boolean,
                "String" => TypeTag::Str,
                other => return Err(self.unsupported(&format!("new {other}"))),
            },
            _ => return Err(self.unexpected("type after `new`")),
        };
        self.advance();
        if !self.is_punct("[") {
            return Err(self.unsupported("object construction"));
        }
        if matches!(self.peek_at(1), Tok::Punct("]")) {
            // new T[]...{...}
            let mut ty = elem;
            let mut depth = 0;
            while self.is_punct("[") && matches!(self.peek_at(1), Tok::Punct("]")) {
                self.advance();
                self.advance();
                depth += 1;
            }
            for _ in 1..depth {
                ty = TypeTag::array_of(ty);
            }
            let lit = self.array_initializer()?;
            return Ok(match lit {
                Expr::ArrayLit { items, .. } => Expr::ArrayLit { elem: Some(ty), items },
                other => other,
            });
        }
        let mut dims = Vec::new();
        while self.eat_punct("[") {
            if self.is_punct("]") {
                return Err(self.unsupported("partially sized array"));
            }
            dims.push(self.expr()?);
            self.expect_punct("]")?;
        }
        Ok(Expr::NewArray { elem, dims })
    }
}

fn check_lvalue(e: &Expr, p: &Parser) -> Result<(), ParseError> {
    match e {
        Expr::Var(_) => Ok(()),
        Expr::Index { base, .. } => check_lvalue(base, p).or(Ok(())),
        _ => Err(p.unexpected("assignable expression")),
    }
}

fn is_static_class(name: &str) -> bool {
    matches!(
        name,
        "Math" | "Integer" | "Long" | "Double" | "String" | "Arrays" | "Boolean"
    )
}

fn is_reserved(word: &str) -> bool {
    matches!(
        word,
        "if" | "else"
            | "for"
            | "while"
            | "do"
            | "switch"
            | "case"
            | "default"
            | "return"
            | "break"
            | "continue"
            | "new"
            | "true"
            | "false"
            | "null"
            | "int"
            | "long"
            | "double"
            | "boolean"
            | "void"
            | "char"
            | "float"
            | "byte"
            | "short"
    ) || MODIFIERS.contains(&word)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simple_function() {
        let f = parse_java("int f(int a){ if(a>0) return 1; return 0; }").unwrap();
        assert_eq!(f.name, "f");
        assert_eq!(f.arity(), 1);
        assert_eq!(f.body.len(), 2);
        assert!(matches!(f.body[0], Stmt::If { .. }));
    }

    #[test]
    fn lambda_is_unsupported() {
        let err = parse_java("int f(int a){ Runnable r = () -> {}; return a; }").unwrap_err();
        // `Runnable` is not a subset type, so the statement parses as an
        // expression until the lambda arrow.
        assert!(matches!(
            err,
            ParseError::UnsupportedConstruct { .. } | ParseError::MalformedSource { .. }
        ));
        let err = parse_java("int f(int a){ int b = foo(x -> x); return a; }").unwrap_err();
        assert!(
            matches!(&err, ParseError::UnsupportedConstruct { construct, .. } if construct == "lambda"),
            "{err:?}"
        );
    }

    #[test]
    fn switch_cases_group_and_strip_break() {
        let f = parse_java(
            "int f(int x){ switch(x){ case 1: case 2: return 5; case 3: x = 4; break; default: x = 0; } return x; }",
        )
        .unwrap();
        match &f.body[0] {
            Stmt::Switch { cases, default, .. } => {
                assert_eq!(cases.len(), 2);
                assert_eq!(cases[0].labels.len(), 2);
                assert_eq!(cases[1].body.len(), 1);
                assert_eq!(default.as_ref().unwrap().len(), 1);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn switch_fallthrough_rejected() {
        let err =
            parse_java("int f(int x){ switch(x){ case 1: x = 2; case 2: x = 3; break; } return x; }").unwrap_err();
        assert!(matches!(err, ParseError::UnsupportedConstruct { .. }));
    }

    #[test]
    fn malformed_reports_position() {
        let err = parse_java("int f(int a) { return a + ; }").unwrap_err();
        match err {
            ParseError::MalformedSource { line, col, .. } => {
                assert_eq!((line, col), (1, 27));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn negative_literals_fold() {
        let f = parse_java("int f() { return -3 - -x; }").unwrap();
        assert_eq!(
            f.body[0],
            Stmt::Return(Some(Expr::binary(
                BinOp::Sub,
                Expr::Int(-3),
                Expr::Unary {
                    op: UnaryOp::Neg,
                    expr: Box::new(Expr::var("x"))
                }
            )))
        );
    }
}
