//! Program representation: subset parsers and renderers for the object
//! languages, the builtin interpreter, and the fixture corpus loader.

pub mod ast;
pub mod corpus;
mod error;
pub mod interp;
mod java_lexer;
mod java_parser;
mod py_lexer;
mod py_parser;
mod render_cpp;
mod render_java;
mod render_py;
mod value;

pub use ast::*;
pub use corpus::{Corpus, CorpusError, ProgramUnit};
pub use error::ParseError;
pub use java_parser::parse_java;
pub use py_parser::parse_python;
pub use render_cpp::render_cpp;
pub use render_java::render_java;
pub use render_py::render_py;
pub use value::{TestCase, Value, FLOAT_TOLERANCE};

use crate::lang::Lang;

/// Parses the single top-level function of `source`. C++ has no subset
/// parser: it is only inspected at the token level.
pub fn parse_program(source: &str, lang: Lang) -> Result<FunctionAst, ParseError> {
    match lang {
        Lang::Java => parse_java(source),
        Lang::Py => parse_python(source),
        Lang::Cpp => Err(ParseError::NoParser(Lang::Cpp)),
    }
}

/// Deterministic pretty-printing; `parse_program(render(a, l), l) == a` for
/// every tree produced by the `l` parser.
pub fn render(ast: &FunctionAst, lang: Lang) -> String {
    match lang {
        Lang::Java => render_java(ast),
        Lang::Py => render_py(ast),
        Lang::Cpp => render_cpp(ast),
    }
}
