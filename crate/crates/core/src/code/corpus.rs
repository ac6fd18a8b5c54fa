//! On-disk program corpus: one directory per program holding `func.<ext>`
//! per language, `tests.json`, and optional `meta.json`.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::ast::FunctionAst;
use super::error::ParseError;
use super::value::TestCase;
use crate::lang::Lang;

/// Structural counts recorded by hand for one language version.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub arity: usize,
    pub num_conditionals: usize,
    pub num_loops: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ProgramMeta {
    #[serde(default)]
    pub counts: BTreeMap<Lang, Counts>,
    #[serde(default)]
    pub tags: Vec<String>,
}

/// One source function in one language. `ast` is absent when the source
/// falls outside the subset; such units only serve untransformed inputs.
#[derive(Debug, Clone)]
pub struct ProgramUnit {
    pub id: String,
    pub lang: Lang,
    pub source: String,
    pub ast: Option<Arc<FunctionAst>>,
    pub parse_error: Option<ParseError>,
    pub tests: Arc<Vec<TestCase>>,
    pub meta: Arc<ProgramMeta>,
}

impl ProgramUnit {
    pub fn new(id: impl Into<String>, lang: Lang, source: impl Into<String>, tests: Vec<TestCase>) -> Self {
        let source = source.into();
        let (ast, parse_error) = match super::parse_program(&source, lang) {
            Ok(a) => (Some(Arc::new(a)), None),
            Err(e) => (None, Some(e)),
        };
        ProgramUnit {
            id: id.into(),
            lang,
            source,
            ast,
            parse_error,
            tests: Arc::new(tests),
            meta: Arc::new(ProgramMeta::default()),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CorpusError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: invalid JSON: {source}")]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
    #[error("program `{id}`: test {index} has {found} inputs but the {lang} function takes {expected}")]
    ArityMismatch {
        id: String,
        lang: Lang,
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("program `{id}`: no func.java, func.py or func.cpp")]
    NoSource { id: String },
    #[error("corpus at {0} contains no programs")]
    Empty(PathBuf),
}

/// Load status of one program directory.
#[derive(Debug, Clone, PartialEq)]
pub struct ProgramStatus {
    pub id: String,
    pub languages: Vec<Lang>,
    pub tests: usize,
    pub warnings: Vec<String>,
    pub errors: Vec<String>,
}

#[derive(Debug, Clone, Default)]
pub struct Corpus {
    units: Vec<ProgramUnit>,
}

impl Corpus {
    pub fn from_units(mut units: Vec<ProgramUnit>) -> Self {
        units.sort_by(|a, b| (&a.id, a.lang).cmp(&(&b.id, b.lang)));
        Corpus { units }
    }

    /// Strict load: any arity mismatch or unreadable file is an error.
    pub fn load(dir: &Path) -> Result<Corpus, CorpusError> {
        let mut units = Vec::new();
        for entry in program_dirs(dir)? {
            units.extend(load_program(&entry)?);
        }
        if units.is_empty() {
            return Err(CorpusError::Empty(dir.to_path_buf()));
        }
        Ok(Corpus::from_units(units))
    }

    /// Lenient scan used by `corpus-check`: reports every problem instead
    /// of stopping at the first.
    pub fn check(dir: &Path) -> Result<Vec<ProgramStatus>, CorpusError> {
        let mut out = Vec::new();
        for entry in program_dirs(dir)? {
            let id = dir_id(&entry);
            let mut status = ProgramStatus {
                id: id.clone(),
                languages: Vec::new(),
                tests: 0,
                warnings: Vec::new(),
                errors: Vec::new(),
            };
            match load_program(&entry) {
                Ok(units) => {
                    for u in &units {
                        status.languages.push(u.lang);
                        status.tests = u.tests.len();
                        if let Some(e) = &u.parse_error {
                            status.warnings.push(format!("{}: 1-safety-only ({e})", u.lang));
                        }
                    }
                }
                Err(e) => status.errors.push(e.to_string()),
            }
            out.push(status);
        }
        Ok(out)
    }

    pub fn units(&self) -> &[ProgramUnit] {
        &self.units
    }

    /// Units of one language, ordered by id.
    pub fn in_lang(&self, lang: Lang) -> Vec<&ProgramUnit> {
        self.units.iter().filter(|u| u.lang == lang).collect()
    }

    pub fn get(&self, id: &str, lang: Lang) -> Option<&ProgramUnit> {
        self.units.iter().find(|u| u.id == id && u.lang == lang)
    }

    pub fn is_empty(&self) -> bool {
        self.units.is_empty()
    }

    pub fn len(&self) -> usize {
        self.units.len()
    }
}

fn program_dirs(dir: &Path) -> Result<Vec<PathBuf>, CorpusError> {
    let io = |source| CorpusError::Io {
        path: dir.to_path_buf(),
        source,
    };
    let mut dirs = Vec::new();
    for entry in fs::read_dir(dir).map_err(io)? {
        let path = entry.map_err(io)?.path();
        if path.is_dir() {
            dirs.push(path);
        }
    }
    dirs.sort();
    Ok(dirs)
}

fn dir_id(dir: &Path) -> String {
    dir.file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_default()
}

fn read(path: &Path) -> Result<String, CorpusError> {
    fs::read_to_string(path).map_err(|source| CorpusError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn load_program(dir: &Path) -> Result<Vec<ProgramUnit>, CorpusError> {
    let id = dir_id(dir);
    let tests_path = dir.join("tests.json");
    let tests: Vec<TestCase> = if tests_path.exists() {
        serde_json::from_str(&read(&tests_path)?).map_err(|source| CorpusError::Json {
            path: tests_path.clone(),
            source,
        })?
    } else {
        Vec::new()
    };
    let meta_path = dir.join("meta.json");
    let meta: ProgramMeta = if meta_path.exists() {
        serde_json::from_str(&read(&meta_path)?).map_err(|source| CorpusError::Json {
            path: meta_path.clone(),
            source,
        })?
    } else {
        ProgramMeta::default()
    };
    let tests = Arc::new(tests);
    let meta = Arc::new(meta);
    let mut units = Vec::new();
    for lang in Lang::ALL {
        let path = dir.join(format!("func.{}", lang.extension()));
        if !path.exists() {
            continue;
        }
        let mut unit = ProgramUnit::new(id.clone(), lang, read(&path)?, Vec::new());
        unit.tests = Arc::clone(&tests);
        unit.meta = Arc::clone(&meta);
        if let Some(ast) = &unit.ast {
            for (index, case) in tests.iter().enumerate() {
                if case.inputs.len() != ast.arity() {
                    return Err(CorpusError::ArityMismatch {
                        id,
                        lang,
                        index,
                        expected: ast.arity(),
                        found: case.inputs.len(),
                    });
                }
            }
        }
        units.push(unit);
    }
    if units.is_empty() {
        return Err(CorpusError::NoSource { id });
    }
    Ok(units)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arity_mismatch_names_the_program() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("bad_one");
        fs::create_dir(&p).unwrap();
        fs::write(p.join("func.java"), "int f(int a) { return a; }").unwrap();
        fs::write(p.join("tests.json"), r#"[{"inputs":[1,2],"expected":1}]"#).unwrap();
        let err = Corpus::load(dir.path()).unwrap_err();
        assert!(err.to_string().contains("bad_one"), "{err}");
        let status = Corpus::check(dir.path()).unwrap();
        assert_eq!(status[0].errors.len(), 1);
    }

    #[test]
    fn unparsable_program_is_one_safety_only() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("lam");
        fs::create_dir(&p).unwrap();
        fs::write(p.join("func.java"), "int f(int a) { Runnable r = () -> {}; return a; }").unwrap();
        fs::write(p.join("tests.json"), r#"[{"inputs":[1],"expected":1}]"#).unwrap();
        let corpus = Corpus::load(dir.path()).unwrap();
        assert!(corpus.units()[0].ast.is_none());
        let status = Corpus::check(dir.path()).unwrap();
        assert!(status[0].errors.is_empty());
        assert!(status[0].warnings[0].contains("1-safety-only"));
    }
}
