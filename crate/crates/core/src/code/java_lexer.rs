use super::error::ParseError;

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum Tok {
    Ident(String),
    Int(i64),
    Float(f64),
    Str(String),
    Char,
    Punct(&'static str),
    Eof,
}

#[derive(Debug, Clone)]
pub(crate) struct Token {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
}

const PUNCTS: &[&str] = &[
    ">>>=", "<<=", ">>=", ">>>", "==", "!=", "<=", ">=", "&&", "||", "++", "--", "+=", "-=", "*=", "/=", "%=", "&=",
    "|=", "^=", "<<", ">>", "->", "::", "+", "-", "*", "/", "%", "<", ">", "=", "!", "&", "|", "^", "~", "?", ":", ";",
    ",", ".", "(", ")", "{", "}", "[", "]", "@",
];

pub(crate) fn tokenize(src: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);

    macro_rules! bump {
        () => {{
            if chars[i] == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            i += 1;
        }};
    }

    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            bump!();
            continue;
        }
        if c == '/' && chars.get(i + 1) == Some(&'/') {
            while i < chars.len() && chars[i] != '\n' {
                bump!();
            }
            continue;
        }
        if c == '/' && chars.get(i + 1) == Some(&'*') {
            let (l0, c0) = (line, col);
            bump!();
            bump!();
            loop {
                if i >= chars.len() {
                    return Err(ParseError::malformed("unterminated block comment", l0, c0));
                }
                if chars[i] == '*' && chars.get(i + 1) == Some(&'/') {
                    bump!();
                    bump!();
                    break;
                }
                bump!();
            }
            continue;
        }
        let (tl, tc) = (line, col);
        if c.is_ascii_alphabetic() || c == '_' || c == '$' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_' || chars[i] == '$') {
                bump!();
            }
            let word: String = chars[start..i].iter().collect();
            out.push(Token {
                tok: Tok::Ident(word),
                line: tl,
                col: tc,
            });
            continue;
        }
        if c.is_ascii_digit() || (c == '.' && chars.get(i + 1).is_some_and(|d| d.is_ascii_digit())) {
            let tok = lex_number(&chars, &mut i, &mut col, tl, tc)?;
            out.push(Token { tok, line: tl, col: tc });
            continue;
        }
        if c == '"' {
            bump!();
            let mut s = String::new();
            loop {
                if i >= chars.len() || chars[i] == '\n' {
                    return Err(ParseError::malformed("unterminated string literal", tl, tc));
                }
                match chars[i] {
                    '"' => {
                        bump!();
                        break;
                    }
                    '\\' => {
                        bump!();
                        let esc = chars
                            .get(i)
                            .copied()
                            .ok_or_else(|| ParseError::malformed("unterminated escape", line, col))?;
                        s.push(match esc {
                            'n' => '\n',
                            't' => '\t',
                            'r' => '\r',
                            '0' => '\0',
                            '\\' => '\\',
                            '"' => '"',
                            '\'' => '\'',
                            other => {
                                return Err(ParseError::malformed(format!("unknown escape `\\{other}`"), line, col))
                            }
                        });
                        bump!();
                    }
                    ch => {
                        s.push(ch);
                        bump!();
                    }
                }
            }
            out.push(Token {
                tok: Tok::Str(s),
                line: tl,
                col: tc,
            });
            continue;
        }
        if c == '\'' {
            bump!();
            while i < chars.len() && chars[i] != '\'' && chars[i] != '\n' {
                if chars[i] == '\\' {
                    bump!();
                }
                if i < chars.len() {
                    bump!();
                }
            }
            if i >= chars.len() || chars[i] != '\'' {
                return Err(ParseError::malformed("unterminated char literal", tl, tc));
            }
            bump!();
            out.push(Token {
                tok: Tok::Char,
                line: tl,
                col: tc,
            });
            continue;
        }
        let rest: String = chars[i..chars.len().min(i + 4)].iter().collect();
        match PUNCTS.iter().find(|p| rest.starts_with(**p)) {
            Some(p) => {
                for _ in 0..p.len() {
                    bump!();
                }
                out.push(Token {
                    tok: Tok::Punct(p),
                    line: tl,
                    col: tc,
                });
            }
            None => {
                return Err(ParseError::malformed(format!("unexpected character `{c}`"), tl, tc));
            }
        }
    }
    out.push(Token {
        tok: Tok::Eof,
        line,
        col,
    });
    Ok(out)
}

fn lex_number(
    chars: &[char],
    i: &mut usize,
    col: &mut usize,
    line: usize,
    start_col: usize,
) -> Result<Tok, ParseError> {
    let start = *i;
    let advance = |i: &mut usize, col: &mut usize| {
        *i += 1;
        *col += 1;
    };
    if chars[*i] == '0' && matches!(chars.get(*i + 1), Some('x') | Some('X')) {
        advance(i, col);
        advance(i, col);
        let digits_start = *i;
        while *i < chars.len() && (chars[*i].is_ascii_hexdigit() || chars[*i] == '_') {
            advance(i, col);
        }
        let digits: String = chars[digits_start..*i].iter().filter(|c| **c != '_').collect();
        if matches!(chars.get(*i), Some('L') | Some('l')) {
            advance(i, col);
        }
        return i64::from_str_radix(&digits, 16)
            .map(Tok::Int)
            .map_err(|_| ParseError::malformed("bad hex literal", line, start_col));
    }
    let mut is_float = false;
    while *i < chars.len() && (chars[*i].is_ascii_digit() || chars[*i] == '_') {
        advance(i, col);
    }
    if chars.get(*i) == Some(&'.') && chars.get(*i + 1).is_some_and(|d| d.is_ascii_digit()) {
        is_float = true;
        advance(i, col);
        while *i < chars.len() && chars[*i].is_ascii_digit() {
            advance(i, col);
        }
    } else if chars.get(*i) == Some(&'.') && !chars.get(*i + 1).is_some_and(|d| d.is_ascii_alphabetic()) {
        is_float = true;
        advance(i, col);
    }
    if matches!(chars.get(*i), Some('e') | Some('E')) {
        is_float = true;
        advance(i, col);
        if matches!(chars.get(*i), Some('+') | Some('-')) {
            advance(i, col);
        }
        while *i < chars.len() && chars[*i].is_ascii_digit() {
            advance(i, col);
        }
    }
    let text: String = chars[start..*i].iter().filter(|c| **c != '_').collect();
    match chars.get(*i) {
        Some('L') | Some('l') if !is_float => {
            advance(i, col);
        }
        Some('d') | Some('D') | Some('f') | Some('F') => {
            advance(i, col);
            is_float = true;
        }
        _ => {}
    }
    if is_float {
        text.parse::<f64>()
            .map(Tok::Float)
            .map_err(|_| ParseError::malformed("bad float literal", line, start_col))
    } else {
        text.parse::<i64>()
            .map(Tok::Int)
            .map_err(|_| ParseError::malformed("integer literal out of range", line, start_col))
    }
}
