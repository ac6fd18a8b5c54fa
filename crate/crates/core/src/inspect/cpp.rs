//! Token-level inspection for C++, which has no subset parser.

use crate::code::corpus::Counts;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Word(String),
    Punct(char),
}

/// Identifiers and punctuation, with comments, string and character
/// literals, and preprocessor lines removed.
fn tokens(src: &str) -> Vec<Tok> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let mut line_start = true;
    while i < chars.len() {
        let c = chars[i];
        if c == '\n' {
            line_start = true;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if line_start && c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        line_start = false;
        if c == '/' && chars.get(i + 1) == Some(&'/') {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        if c == '/' && chars.get(i + 1) == Some(&'*') {
            i += 2;
            while i < chars.len() && !(chars[i] == '*' && chars.get(i + 1) == Some(&'/')) {
                i += 1;
            }
            i += 2;
            continue;
        }
        if c == '"' || c == '\'' {
            i += 1;
            while i < chars.len() && chars[i] != c && chars[i] != '\n' {
                if chars[i] == '\\' {
                    i += 1;
                }
                i += 1;
            }
            i += 1;
            out.push(Tok::Word(String::new()));
            continue;
        }
        if c.is_alphanumeric() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Tok::Word(chars[start..i].iter().collect()));
            continue;
        }
        out.push(Tok::Punct(c));
        i += 1;
    }
    out
}

/// `None` when no parameter list can be found.
fn arity(toks: &[Tok]) -> Option<usize> {
    let open = toks.iter().position(|t| *t == Tok::Punct('('))?;
    let (mut paren, mut angle, mut commas) = (0i32, 0i32, 0usize);
    let mut empty = true;
    let mut only_void = true;
    for t in &toks[open + 1..] {
        match t {
            Tok::Punct('(') => paren += 1,
            Tok::Punct(')') if paren == 0 => {
                return Some(if empty || only_void { 0 } else { commas + 1 });
            }
            Tok::Punct(')') => paren -= 1,
            Tok::Punct('<') => angle += 1,
            Tok::Punct('>') => angle -= 1,
            Tok::Punct(',') if paren == 0 && angle <= 0 => commas += 1,
            _ => {}
        }
        empty = false;
        if *t != Tok::Word("void".into()) {
            only_void = false;
        }
    }
    None
}

pub(super) fn counts(src: &str) -> Option<Counts> {
    let toks = tokens(src);
    let count = |kw: &[&str]| {
        toks.iter()
            .filter(|t| matches!(t, Tok::Word(w) if kw.contains(&w.as_str())))
            .count()
    };
    Some(Counts {
        arity: arity(&toks)?,
        num_conditionals: count(&["if", "switch"]),
        num_loops: count(&["for", "while"]),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_ignore_comments_and_strings() {
        let src = r#"#include <vector>
int f(std::vector<int> xs, int n) {
    // if for while
    int s = 0; /* switch */
    for (int i = 0; i < n; i++) { if (xs[i] > 0) s += 1; }
    do { s--; } while (s > 10);
    std::string t = "if (x) while";
    return s;
}"#;
        let c = counts(src).unwrap();
        assert_eq!((c.arity, c.num_conditionals, c.num_loops), (2, 1, 2));
    }

    #[test]
    fn empty_and_void_lists_have_no_parameters() {
        assert_eq!(counts("int f() { return 0; }").unwrap().arity, 0);
        assert_eq!(counts("int f(void) { return 0; }").unwrap().arity, 0);
    }
}
