//! Indentation-aware tokenizer for the Python subset.

use super::error::ParseError;

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum PyTok {
    Name(String),
    Int(i64),
    Float(f64),
    Str(String),
    Op(&'static str),
    Newline,
    Indent,
    Dedent,
    Eof,
}

#[derive(Debug, Clone)]
pub(crate) struct PyToken {
    pub tok: PyTok,
    pub line: usize,
    pub col: usize,
}

const OPS: &[&str] = &[
    "**=", "//=", ">>=", "<<=", "->", "==", "!=", "<=", ">=", "//", "**", "+=", "-=", "*=", "/=", "%=", "&=", "|=",
    "^=", "<<", ">>", ":=", "+", "-", "*", "/", "%", "<", ">", "=", "(", ")", "[", "]", "{", "}", ",", ":", ".", ";",
    "&", "|", "^", "~", "@",
];

pub(crate) fn tokenize(src: &str) -> Result<Vec<PyToken>, ParseError> {
    let mut out = Vec::new();
    let mut indents: Vec<usize> = vec![0];
    let mut depth = 0usize; // bracket nesting: newlines inside are ignored
    let lines: Vec<&str> = src.split('\n').collect();
    let mut line_no = 0usize;

    while line_no < lines.len() {
        let raw = lines[line_no].trim_end_matches('\r');
        line_no += 1;
        let chars: Vec<char> = raw.chars().collect();
        let mut i = 0usize;

        if depth == 0 {
            let mut width = 0usize;
            while i < chars.len() && (chars[i] == ' ' || chars[i] == '\t') {
                width += if chars[i] == '\t' { 8 - width % 8 } else { 1 };
                i += 1;
            }
            if i >= chars.len() || chars[i] == '#' {
                continue;
            }
            let current = *indents.last().unwrap_or(&0);
            if width > current {
                indents.push(width);
                out.push(PyToken {
                    tok: PyTok::Indent,
                    line: line_no,
                    col: 1,
                });
            } else {
                while width < *indents.last().unwrap_or(&0) {
                    indents.pop();
                    out.push(PyToken {
                        tok: PyTok::Dedent,
                        line: line_no,
                        col: 1,
                    });
                }
                if width != *indents.last().unwrap_or(&0) {
                    return Err(ParseError::malformed("inconsistent dedent", line_no, i + 1));
                }
            }
        }

        while i < chars.len() {
            let c = chars[i];
            let col = i + 1;
            if c == ' ' || c == '\t' {
                i += 1;
                continue;
            }
            if c == '#' {
                break;
            }
            if c == '\\' {
                return Err(ParseError::unsupported("explicit line continuation", line_no, col));
            }
            if c.is_alphabetic() || c == '_' {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                let word: String = chars[start..i].iter().collect();
                if i < chars.len() && (chars[i] == '"' || chars[i] == '\'') {
                    return Err(ParseError::unsupported("prefixed string literal", line_no, col));
                }
                out.push(PyToken {
                    tok: PyTok::Name(word),
                    line: line_no,
                    col,
                });
                continue;
            }
            if c.is_ascii_digit() || (c == '.' && chars.get(i + 1).is_some_and(|d| d.is_ascii_digit())) {
                let start = i;
                let mut is_float = false;
                while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '_') {
                    i += 1;
                }
                if i < chars.len() && chars[i] == '.' {
                    is_float = true;
                    i += 1;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                if i < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
                    is_float = true;
                    i += 1;
                    if i < chars.len() && (chars[i] == '+' || chars[i] == '-') {
                        i += 1;
                    }
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                if i < chars.len() && (chars[i] == 'j' || chars[i] == 'x' || chars[i] == 'o' || chars[i] == 'b') {
                    return Err(ParseError::unsupported("non-decimal or complex literal", line_no, col));
                }
                let text: String = chars[start..i].iter().filter(|c| **c != '_').collect();
                let tok = if is_float {
                    PyTok::Float(
                        text.parse()
                            .map_err(|_| ParseError::malformed("bad float literal", line_no, col))?,
                    )
                } else {
                    PyTok::Int(
                        text.parse()
                            .map_err(|_| ParseError::malformed("integer literal out of range", line_no, col))?,
                    )
                };
                out.push(PyToken {
                    tok,
                    line: line_no,
                    col,
                });
                continue;
            }
            if c == '"' || c == '\'' {
                if chars.get(i + 1) == Some(&c) && chars.get(i + 2) == Some(&c) {
                    return Err(ParseError::unsupported("triple-quoted string", line_no, col));
                }
                i += 1;
                let mut s = String::new();
                loop {
                    if i >= chars.len() {
                        return Err(ParseError::malformed("unterminated string literal", line_no, col));
                    }
                    let ch = chars[i];
                    if ch == c {
                        i += 1;
                        break;
                    }
                    if ch == '\\' {
                        let esc = chars
                            .get(i + 1)
                            .copied()
                            .ok_or_else(|| ParseError::malformed("unterminated escape", line_no, i + 1))?;
                        s.push(match esc {
                            'n' => '\n',
                            't' => '\t',
                            'r' => '\r',
                            '0' => '\0',
                            '\\' => '\\',
                            '\'' => '\'',
                            '"' => '"',
                            other => {
                                return Err(ParseError::malformed(
                                    format!("unknown escape `\\{other}`"),
                                    line_no,
                                    i + 1,
                                ))
                            }
                        });
                        i += 2;
                        continue;
                    }
                    s.push(ch);
                    i += 1;
                }
                out.push(PyToken {
                    tok: PyTok::Str(s),
                    line: line_no,
                    col,
                });
                continue;
            }
            let rest: String = chars[i..chars.len().min(i + 3)].iter().collect();
            match OPS.iter().find(|op| rest.starts_with(**op)) {
                Some(op) => {
                    match *op {
                        "(" | "[" | "{" => depth += 1,
                        ")" | "]" | "}" => depth = depth.saturating_sub(1),
                        _ => {}
                    }
                    i += op.len();
                    out.push(PyToken {
                        tok: PyTok::Op(op),
                        line: line_no,
                        col,
                    });
                }
                None => {
                    return Err(ParseError::malformed(
                        format!("unexpected character `{c}`"),
                        line_no,
                        col,
                    ));
                }
            }
        }

        if depth == 0
            && out
                .last()
                .is_some_and(|t| !matches!(t.tok, PyTok::Newline | PyTok::Indent | PyTok::Dedent))
        {
            out.push(PyToken {
                tok: PyTok::Newline,
                line: line_no,
                col: chars.len() + 1,
            });
        }
    }
    if depth != 0 {
        return Err(ParseError::malformed("unbalanced brackets", line_no, 1));
    }
    while indents.len() > 1 {
        indents.pop();
        out.push(PyToken {
            tok: PyTok::Dedent,
            line: line_no + 1,
            col: 1,
        });
    }
    out.push(PyToken {
        tok: PyTok::Eof,
        line: line_no + 1,
        col: 1,
    });
    Ok(out)
}
