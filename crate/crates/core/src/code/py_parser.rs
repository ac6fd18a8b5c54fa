//! Recursive-descent parser for the Python subset: one `def` with optional
//! annotations, structured control flow, `match` over literal patterns and
//! list comprehensions.

use super::ast::*;
use super::error::ParseError;
use super::py_lexer::{tokenize, PyTok, PyToken};

const UNSUPPORTED_NAMES: &[&str] = &[
    "lambda", "class", "import", "from", "try", "except", "finally", "with", "yield", "global", "nonlocal", "async",
    "await", "raise", "del", "assert",
];

pub fn parse_python(src: &str) -> Result<FunctionAst, ParseError> {
    let toks = tokenize(src)?;
    let mut p = Parser {
        toks,
        pos: 0,
        loop_depth: 0,
    };
    p.skip_newlines();
    if p.is_op("@") {
        return Err(p.unsupported("decorator"));
    }
    let f = p.funcdef()?;
    p.skip_newlines();
    if !matches!(p.peek(), PyTok::Eof) {
        return Err(p.unexpected("end of input after the function"));
    }
    Ok(f)
}

struct Parser {
    toks: Vec<PyToken>,
    pos: usize,
    loop_depth: usize,
}

impl Parser {
    fn peek(&self) -> &PyTok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, n: usize) -> &PyTok {
        let idx = (self.pos + n).min(self.toks.len() - 1);
        &self.toks[idx].tok
    }

    fn here(&self) -> (usize, usize) {
        let t = &self.toks[self.pos];
        (t.line, t.col)
    }

    fn advance(&mut self) -> PyTok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn is_op(&self, op: &str) -> bool {
        matches!(self.peek(), PyTok::Op(o) if *o == op)
    }

    fn is_name(&self, n: &str) -> bool {
        matches!(self.peek(), PyTok::Name(m) if m == n)
    }

    fn eat_op(&mut self, op: &str) -> bool {
        if self.is_op(op) {
            self.advance();
            true
        } else {
            false
        }
    }

    fn expect_op(&mut self, op: &str) -> Result<(), ParseError> {
        if self.eat_op(op) {
            Ok(())
        } else {
            Err(self.unexpected(&format!("`{op}`")))
        }
    }

    fn expect_name(&mut self, n: &str) -> Result<(), ParseError> {
        if self.is_name(n) {
            self.advance();
            Ok(())
        } else {
            Err(self.unexpected(&format!("`{n}`")))
        }
    }

    fn skip_newlines(&mut self) {
        while matches!(self.peek(), PyTok::Newline) {
            self.advance();
        }
    }

    fn unexpected(&self, expected: &str) -> ParseError {
        let (line, col) = self.here();
        let found = match self.peek() {
            PyTok::Name(s) => format!("`{s}`"),
            PyTok::Int(v) => format!("`{v}`"),
            PyTok::Float(v) => format!("`{v}`"),
            PyTok::Str(_) => "string literal".into(),
            PyTok::Op(o) => format!("`{o}`"),
            PyTok::Newline => "end of line".into(),
            PyTok::Indent => "indent".into(),
            PyTok::Dedent => "dedent".into(),
            PyTok::Eof => "end of input".into(),
        };
        ParseError::malformed(format!("expected {expected}, found {found}"), line, col)
    }

    fn unsupported(&self, what: &str) -> ParseError {
        let (line, col) = self.here();
        ParseError::unsupported(what, line, col)
    }

    fn check_unsupported(&self) -> Result<(), ParseError> {
        if let PyTok::Name(n) = self.peek() {
            if UNSUPPORTED_NAMES.contains(&n.as_str()) {
                return Err(self.unsupported(n));
            }
        }
        if self.is_op(":=") {
            return Err(self.unsupported("assignment expression"));
        }
        if self.is_op("**") || self.is_op("**=") {
            return Err(self.unsupported("power operator"));
        }
        Ok(())
    }

    fn name(&mut self) -> Result<String, ParseError> {
        self.check_unsupported()?;
        match self.peek().clone() {
            PyTok::Name(n) if !is_keyword(&n) => {
                self.advance();
                Ok(n)
            }
            _ => Err(self.unexpected("name")),
        }
    }

    fn annotation(&mut self) -> Result<TypeTag, ParseError> {
        let n = match self.peek().clone() {
            PyTok::Name(n) => n,
            _ => return Err(self.unexpected("type annotation")),
        };
        self.advance();
        let ty = match n.as_str() {
            "int" => TypeTag::Int,
            "float" => TypeTag::Double,
            "bool" => TypeTag::Boolean,
            "str" => TypeTag::Str,
            "None" => TypeTag::Void,
            "object" => TypeTag::Object,
            "list" | "List" => {
                if self.eat_op("[") {
                    let inner = self.annotation()?;
                    self.expect_op("]")?;
                    TypeTag::array_of(inner)
                } else {
                    TypeTag::array_of(TypeTag::Any)
                }
            }
            other => return Err(self.unsupported(&format!("annotation {other}"))),
        };
        Ok(ty)
    }

    fn funcdef(&mut self) -> Result<FunctionAst, ParseError> {
        self.check_unsupported()?;
        self.expect_name("def")?;
        let name = self.name()?;
        self.expect_op("(")?;
        let mut params: Vec<Param> = Vec::new();
        while !self.is_op(")") {
            if self.is_op("*") || self.is_op("/") {
                return Err(self.unsupported("star parameters"));
            }
            let (line, col) = self.here();
            let pname = self.name()?;
            let ty = if self.eat_op(":") {
                self.annotation()?
            } else {
                TypeTag::Any
            };
            if self.is_op("=") {
                return Err(self.unsupported("default argument"));
            }
            if params.iter().any(|p| p.name == pname) {
                return Err(ParseError::malformed(
                    format!("duplicate parameter `{pname}`"),
                    line,
                    col,
                ));
            }
            params.push(Param::new(pname, ty));
            if !self.eat_op(",") {
                break;
            }
        }
        self.expect_op(")")?;
        let ret = if self.eat_op("->") {
            self.annotation()?
        } else {
            TypeTag::Any
        };
        self.expect_op(":")?;
        let body = self.suite()?;
        Ok(FunctionAst {
            name,
            ret,
            params,
            body,
        })
    }

    fn suite(&mut self) -> Result<Vec<Stmt>, ParseError> {
        if !matches!(self.peek(), PyTok::Newline) {
            // `if x: return 1` on one line
            let stmts = self.simple_line()?;
            return Ok(stmts);
        }
        self.advance();
        if !matches!(self.peek(), PyTok::Indent) {
            return Err(self.unexpected("indented block"));
        }
        self.advance();
        let mut out = Vec::new();
        while !matches!(self.peek(), PyTok::Dedent | PyTok::Eof) {
            out.extend(self.statement()?);
        }
        if matches!(self.peek(), PyTok::Dedent) {
            self.advance();
        }
        Ok(out)
    }

    fn in_loop<T>(&mut self, f: impl FnOnce(&mut Self) -> Result<T, ParseError>) -> Result<T, ParseError> {
        self.loop_depth += 1;
        let r = f(self);
        self.loop_depth -= 1;
        r
    }

    fn statement(&mut self) -> Result<Vec<Stmt>, ParseError> {
        self.check_unsupported()?;
        if self.is_op("@") {
            return Err(self.unsupported("decorator"));
        }
        let word = match self.peek() {
            PyTok::Name(n) => n.clone(),
            _ => String::new(),
        };
        match word.as_str() {
            "if" => {
                self.advance();
                self.if_rest().map(|s| vec![s])
            }
            "while" => {
                self.advance();
                let cond = self.expr()?;
                self.expect_op(":")?;
                let body = self.in_loop(|p| p.suite())?;
                if self.is_name("else") {
                    return Err(self.unsupported("while-else"));
                }
                Ok(vec![Stmt::While { cond, body }])
            }
            "for" => {
                self.advance();
                let var = self.name()?;
                if self.is_op(",") {
                    return Err(self.unsupported("tuple unpacking"));
                }
                self.expect_name("in")?;
                let iter = self.expr()?;
                self.expect_op(":")?;
                let body = self.in_loop(|p| p.suite())?;
                if self.is_name("else") {
                    return Err(self.unsupported("for-else"));
                }
                Ok(vec![Stmt::ForEach {
                    ty: TypeTag::Any,
                    var,
                    iter,
                    body,
                }])
            }
            "def" => Err(self.unsupported("nested function")),
            "match" if self.is_match_stmt() => self.match_stmt().map(|s| vec![s]),
            "elif" | "else" => Err(self.unexpected("statement")),
            _ => self.simple_line(),
        }
    }

    fn is_match_stmt(&self) -> bool {
        !matches!(
            self.peek_at(1),
            PyTok::Op("=") | PyTok::Op(".") | PyTok::Op("(") | PyTok::Op("[") | PyTok::Newline
        ) && !matches!(self.peek_at(1), PyTok::Op(o) if o.ends_with('='))
    }

    fn if_rest(&mut self) -> Result<Stmt, ParseError> {
        let cond = self.expr()?;
        self.expect_op(":")?;
        let then_body = self.suite()?;
        let else_body = if self.is_name("elif") {
            self.advance();
            Some(vec![self.if_rest()?])
        } else if self.is_name("else") {
            self.advance();
            self.expect_op(":")?;
            Some(self.suite()?)
        } else {
            None
        };
        Ok(Stmt::If {
            cond,
            then_body,
            else_body,
        })
    }

    fn match_stmt(&mut self) -> Result<Stmt, ParseError> {
        self.advance();
        let scrutinee = self.expr()?;
        self.expect_op(":")?;
        if !matches!(self.peek(), PyTok::Newline) {
            return Err(self.unexpected("end of line"));
        }
        self.advance();
        if !matches!(self.peek(), PyTok::Indent) {
            return Err(self.unexpected("indented case block"));
        }
        self.advance();
        let mut cases = Vec::new();
        let mut default = None;
        while !matches!(self.peek(), PyTok::Dedent | PyTok::Eof) {
            self.expect_name("case")?;
            if default.is_some() {
                return Err(self.unexpected("no case after the wildcard case"));
            }
            if self.is_name("_") {
                self.advance();
                self.expect_op(":")?;
                default = Some(self.suite()?);
                continue;
            }
            let mut labels = vec![self.pattern()?];
            while self.eat_op("|") {
                labels.push(self.pattern()?);
            }
            if self.is_name("if") {
                return Err(self.unsupported("case guard"));
            }
            self.expect_op(":")?;
            let body = self.suite()?;
            cases.push(SwitchCase { labels, body });
        }
        if matches!(self.peek(), PyTok::Dedent) {
            self.advance();
        }
        Ok(Stmt::Switch {
            scrutinee,
            cases,
            default,
        })
    }

    fn pattern(&mut self) -> Result<Expr, ParseError> {
        let neg = self.eat_op("-");
        match self.peek().clone() {
            PyTok::Int(v) => {
                self.advance();
                Ok(Expr::Int(if neg { -v } else { v }))
            }
            PyTok::Float(v) => {
                self.advance();
                Ok(Expr::Float(if neg { -v } else { v }))
            }
            PyTok::Str(s) if !neg => {
                self.advance();
                Ok(Expr::Str(s))
            }
            PyTok::Name(n) if !neg && (n == "True" || n == "False") => {
                self.advance();
                Ok(Expr::Bool(n == "True"))
            }
            _ => Err(self.unsupported("non-literal match pattern")),
        }
    }

    /// One or more `;`-separated simple statements terminated by a newline.
    fn simple_line(&mut self) -> Result<Vec<Stmt>, ParseError> {
        let mut out = Vec::new();
        loop {
            if let Some(s) = self.simple_stmt()? {
                out.push(s);
            }
            if !self.eat_op(";") {
                break;
            }
            if matches!(self.peek(), PyTok::Newline) {
                break;
            }
        }
        match self.peek() {
            PyTok::Newline => {
                self.advance();
            }
            PyTok::Eof | PyTok::Dedent => {}
            _ => return Err(self.unexpected("end of line")),
        }
        Ok(out)
    }

    fn simple_stmt(&mut self) -> Result<Option<Stmt>, ParseError> {
        self.check_unsupported()?;
        let word = match self.peek() {
            PyTok::Name(n) => n.clone(),
            _ => String::new(),
        };
        match word.as_str() {
            "pass" => {
                self.advance();
                return Ok(None);
            }
            "return" => {
                self.advance();
                if matches!(self.peek(), PyTok::Newline | PyTok::Eof | PyTok::Dedent) || self.is_op(";") {
                    return Ok(Some(Stmt::Return(None)));
                }
                let e = self.expr()?;
                if self.is_op(",") {
                    return Err(self.unsupported("tuple"));
                }
                return Ok(Some(Stmt::Return(Some(e))));
            }
            "break" | "continue" => {
                if self.loop_depth == 0 {
                    return Err(self.unsupported(&format!("{word} outside loop")));
                }
                self.advance();
                return Ok(Some(if word == "break" { Stmt::Break } else { Stmt::Continue }));
            }
            _ => {}
        }
        let lhs = self.expr()?;
        if self.is_op(",") {
            return Err(self.unsupported("tuple assignment"));
        }
        if self.is_op(":") {
            return Err(self.unsupported("annotated assignment"));
        }
        let op = match self.peek() {
            PyTok::Op("=") => Some(AssignOp::Set),
            PyTok::Op("+=") => Some(AssignOp::Add),
            PyTok::Op("-=") => Some(AssignOp::Sub),
            PyTok::Op("*=") => Some(AssignOp::Mul),
            PyTok::Op("/=") => Some(AssignOp::Div),
            PyTok::Op("%=") => Some(AssignOp::Mod),
            PyTok::Op(o) if o.ends_with('=') && *o != "==" && *o != "!=" && *o != "<=" && *o != ">=" => {
                return Err(self.unsupported(&format!("augmented assignment {o}")))
            }
            _ => None,
        };
        if let Some(op) = op {
            if !matches!(lhs, Expr::Var(_) | Expr::Index { .. }) {
                return Err(self.unexpected("assignable target"));
            }
            self.advance();
            let value = self.expr()?;
            if self.is_op(",") {
                return Err(self.unsupported("tuple"));
            }
            if self.is_op("=") {
                return Err(self.unsupported("chained assignment"));
            }
            return Ok(Some(Stmt::Assign { target: lhs, op, value }));
        }
        match lhs {
            Expr::Call { func, args } if func == "print" => Ok(Some(Stmt::Print(args))),
            Expr::Call { .. } | Expr::Method { .. } => Ok(Some(Stmt::Expr(lhs))),
            _ => Err(self.unexpected("assignment or call")),
        }
    }

    // ---- expressions -------------------------------------------------

    fn expr(&mut self) -> Result<Expr, ParseError> {
        self.check_unsupported()?;
        let e = self.or_expr()?;
        if self.is_name("if") {
            self.advance();
            let cond = self.or_expr()?;
            self.expect_name("else")?;
            let otherwise = self.expr()?;
            return Ok(Expr::Ternary {
                cond: Box::new(cond),
                then: Box::new(e),
                otherwise: Box::new(otherwise),
            });
        }
        Ok(e)
    }

    fn or_expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.and_expr()?;
        while self.is_name("or") {
            self.advance();
            let rhs = self.and_expr()?;
            lhs = Expr::binary(BinOp::Or, lhs, rhs);
        }
        Ok(lhs)
    }

    fn and_expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.not_expr()?;
        while self.is_name("and") {
            self.advance();
            let rhs = self.not_expr()?;
            lhs = Expr::binary(BinOp::And, lhs, rhs);
        }
        Ok(lhs)
    }

    fn not_expr(&mut self) -> Result<Expr, ParseError> {
        if self.is_name("not") {
            self.advance();
            let inner = self.not_expr()?;
            return Ok(Expr::logical_not(inner));
        }
        self.comparison()
    }

    fn comparison(&mut self) -> Result<Expr, ParseError> {
        let lhs = self.bin_level(0)?;
        let op = match self.peek() {
            PyTok::Op("<") => BinOp::Lt,
            PyTok::Op("<=") => BinOp::Le,
            PyTok::Op(">") => BinOp::Gt,
            PyTok::Op(">=") => BinOp::Ge,
            PyTok::Op("==") => BinOp::Eq,
            PyTok::Op("!=") => BinOp::Ne,
            PyTok::Name(n) if n == "in" || n == "is" => return Err(self.unsupported(&format!("`{n}` operator"))),
            PyTok::Name(n) if n == "not" => return Err(self.unsupported("`not in` operator")),
            _ => return Ok(lhs),
        };
        self.advance();
        let rhs = self.bin_level(0)?;
        if matches!(self.peek(), PyTok::Op("<" | "<=" | ">" | ">=" | "==" | "!=")) {
            return Err(self.unsupported("chained comparison"));
        }
        Ok(Expr::binary(op, lhs, rhs))
    }

    fn bin_op(&self) -> Option<(BinOp, u8)> {
        let PyTok::Op(o) = self.peek() else {
            return None;
        };
        Some(match *o {
            "|" => (BinOp::BitOr, 0),
            "^" => (BinOp::BitXor, 1),
            "&" => (BinOp::BitAnd, 2),
            "<<" => (BinOp::Shl, 3),
            ">>" => (BinOp::Shr, 3),
            "+" => (BinOp::Add, 4),
            "-" => (BinOp::Sub, 4),
            "*" => (BinOp::Mul, 5),
            "/" => (BinOp::Div, 5),
            "//" => (BinOp::FloorDiv, 5),
            "%" => (BinOp::Mod, 5),
            _ => return None,
        })
    }

    fn bin_level(&mut self, min: u8) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        while let Some((op, level)) = self.bin_op() {
            if level < min {
                break;
            }
            self.advance();
            let rhs = self.bin_level(level + 1)?;
            lhs = Expr::binary(op, lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        self.check_unsupported()?;
        if self.eat_op("-") {
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
        if self.eat_op("+") {
            return self.unary();
        }
        if self.is_op("~") {
            return Err(self.unsupported("bitwise complement"));
        }
        let e = self.postfix()?;
        self.check_unsupported()?;
        Ok(e)
    }

    fn postfix(&mut self) -> Result<Expr, ParseError> {
        let mut e = self.atom()?;
        loop {
            if self.eat_op(".") {
                let name = self.name()?;
                if self.is_op("(") {
                    let args = self.call_args()?;
                    e = Expr::Method {
                        recv: Box::new(e),
                        name,
                        args,
                    };
                } else {
                    e = Expr::Field {
                        recv: Box::new(e),
                        name,
                    };
                }
            } else if self.is_op("[") {
                self.advance();
                if self.is_op(":") {
                    return Err(self.unsupported("slice"));
                }
                let index = self.expr()?;
                if self.is_op(":") {
                    return Err(self.unsupported("slice"));
                }
                if self.is_op(",") {
                    return Err(self.unsupported("tuple index"));
                }
                self.expect_op("]")?;
                e = Expr::Index {
                    base: Box::new(e),
                    index: Box::new(index),
                };
            } else if self.is_op("(") {
                return Err(self.unsupported("call of computed callee"));
            } else {
                break;
            }
        }
        Ok(e)
    }

    fn call_args(&mut self) -> Result<Vec<Expr>, ParseError> {
        self.expect_op("(")?;
        let mut args = Vec::new();
        while !self.is_op(")") {
            if self.is_op("*") {
                return Err(self.unsupported("argument unpacking"));
            }
            if matches!(self.peek(), PyTok::Name(_)) && matches!(self.peek_at(1), PyTok::Op("=")) {
                return Err(self.unsupported("keyword argument"));
            }
            let a = self.expr()?;
            if self.is_name("for") {
                return Err(self.unsupported("generator expression"));
            }
            args.push(a);
            if !self.eat_op(",") {
                break;
            }
        }
        self.expect_op(")")?;
        Ok(args)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        self.check_unsupported()?;
        match self.peek().clone() {
            PyTok::Int(v) => {
                self.advance();
                Ok(Expr::Int(v))
            }
            PyTok::Float(v) => {
                self.advance();
                Ok(Expr::Float(v))
            }
            PyTok::Str(s) => {
                self.advance();
                if matches!(self.peek(), PyTok::Str(_)) {
                    return Err(self.unsupported("implicit string concatenation"));
                }
                Ok(Expr::Str(s))
            }
            PyTok::Op("(") => {
                self.advance();
                if self.is_op(")") {
                    return Err(self.unsupported("tuple"));
                }
                let e = self.expr()?;
                if self.is_op(",") {
                    return Err(self.unsupported("tuple"));
                }
                if self.is_name("for") {
                    return Err(self.unsupported("generator expression"));
                }
                self.expect_op(")")?;
                Ok(e)
            }
            PyTok::Op("[") => {
                self.advance();
                if self.eat_op("]") {
                    return Ok(Expr::ArrayLit {
                        elem: None,
                        items: Vec::new(),
                    });
                }
                let first = self.expr()?;
                if self.is_name("for") {
                    self.advance();
                    let var = self.name()?;
                    if self.is_op(",") {
                        return Err(self.unsupported("tuple unpacking"));
                    }
                    self.expect_name("in")?;
                    let iter = self.or_expr()?;
                    let cond = if self.is_name("if") {
                        self.advance();
                        Some(Box::new(self.or_expr()?))
                    } else {
                        None
                    };
                    if self.is_name("for") {
                        return Err(self.unsupported("nested comprehension"));
                    }
                    self.expect_op("]")?;
                    return Ok(Expr::Comprehension {
                        elem: Box::new(first),
                        var,
                        iter: Box::new(iter),
                        cond,
                    });
                }
                let mut items = vec![first];
                while self.eat_op(",") {
                    if self.is_op("]") {
                        break;
                    }
                    items.push(self.expr()?);
                }
                self.expect_op("]")?;
                Ok(Expr::ArrayLit { elem: None, items })
            }
            PyTok::Op("{") => Err(self.unsupported("dict or set literal")),
            PyTok::Name(n) => match n.as_str() {
                "True" => {
                    self.advance();
                    Ok(Expr::Bool(true))
                }
                "False" => {
                    self.advance();
                    Ok(Expr::Bool(false))
                }
                "None" => {
                    self.advance();
                    Ok(Expr::Null)
                }
                _ => {
                    let name = self.name()?;
                    if self.is_op("(") {
                        let args = self.call_args()?;
                        return Ok(Expr::Call { func: name, args });
                    }
                    Ok(Expr::Var(name))
                }
            },
            _ => Err(self.unexpected("expression")),
        }
    }
}

fn is_keyword(n: &str) -> bool {
    matches!(
        n,
        "def"
            | "return"
            | "if"
            | "elif"
            | "else"
            | "for"
            | "in"
            | "while"
            | "break"
            | "continue"
            | "pass"
            | "and"
            | "or"
            | "not"
            | "True"
            | "False"
            | "None"
            | "is"
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_for_loop() {
        let f = parse_python("def f(n):\n    s = 0\n    for i in range(n):\n        s += i\n    return s\n").unwrap();
        assert_eq!(f.arity(), 1);
        assert!(matches!(f.body[1], Stmt::ForEach { .. }));
    }

    #[test]
    fn lambda_unsupported() {
        let err = parse_python("def f(x):\n    g = lambda y: y\n    return g(x)\n").unwrap_err();
        assert!(matches!(&err, ParseError::UnsupportedConstruct { construct, .. } if construct == "lambda"));
    }

    #[test]
    fn elif_chain_nests() {
        let f = parse_python("def f(x):\n    if x > 0:\n        return 1\n    elif x < 0:\n        return -1\n    else:\n        return 0\n").unwrap();
        match &f.body[0] {
            Stmt::If { else_body: Some(e), .. } => assert!(matches!(e[0], Stmt::If { .. })),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn missing_colon_is_malformed() {
        let err = parse_python("def f(x)\n    return x\n").unwrap_err();
        assert!(matches!(err, ParseError::MalformedSource { line: 1, .. }));
    }

    #[test]
    fn match_statement() {
        let f = parse_python(
            "def f(x: int) -> int:\n    match x:\n        case 1 | 2:\n            return 10\n        case _:\n            return 0\n",
        )
        .unwrap();
        assert_eq!(f.params[0].ty, TypeTag::Int);
        assert!(matches!(&f.body[0], Stmt::Switch { cases, default: Some(_), .. } if cases[0].labels.len() == 2));
    }

    #[test]
    fn comprehension_and_one_line_suite() {
        let f =
            parse_python("def f(n):\n    if n < 0: return []\n    return [i * i for i in range(n) if i % 2 == 0]\n")
                .unwrap();
        assert!(matches!(&f.body[1], Stmt::Return(Some(Expr::Comprehension { .. }))));
    }
}
