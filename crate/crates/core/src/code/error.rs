use crate::lang::Lang;

/// Why a source text could not be turned into a [`FunctionAst`](super::FunctionAst).
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("unsupported construct `{construct}` at {line}:{col}")]
    UnsupportedConstruct { construct: String, line: usize, col: usize },
    #[error("malformed source at {line}:{col}: {message}")]
    MalformedSource { message: String, line: usize, col: usize },
    #[error("no subset parser for {0}")]
    NoParser(Lang),
}

impl ParseError {
    pub fn unsupported(construct: impl Into<String>, line: usize, col: usize) -> Self {
        ParseError::UnsupportedConstruct {
            construct: construct.into(),
            line,
            col,
        }
    }

    pub fn malformed(message: impl Into<String>, line: usize, col: usize) -> Self {
        ParseError::MalformedSource {
            message: message.into(),
            line,
            col,
        }
    }
}
