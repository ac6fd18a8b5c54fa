//! Deterministic rule-based translator with temperature-dependent faults.
//!
//! Each candidate is faulty with probability `q = min(1, |t - t*| * gain)`.
//! A faulty candidate gets exactly one fault, drawn uniformly from those
//! that apply to the program, so every fault changes the output.

use serde::{Deserialize, Serialize};

use super::lower::java_to_python;
use super::{Backend, TranslateError, TranslationRequest};
use crate::code::{parse_java, render_cpp, render_py, walk_stmts, FunctionAst, Param, Stmt, TypeTag};
use crate::digest::{digest_fields, seed_of};
use crate::lang::Lang;
use crate::transforms::SeededRng;

/// Fixed fault assignment, overriding the temperature rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Rig {
    #[default]
    Off,
    /// Candidate 0 is faithful, every other candidate is faulty.
    OneFaithful,
    AllFaulty,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MockConfig {
    /// Temperature at which the mock never errs.
    pub t_star: f64,
    pub gain: f64,
    pub seed: u64,
    pub rig: Rig,
}

impl Default for MockConfig {
    fn default() -> Self {
        MockConfig {
            t_star: 0.35,
            gain: 1.0,
            seed: 0,
            rig: Rig::Off,
        }
    }
}

impl MockConfig {
    pub fn fault_probability(&self, temperature: f64) -> f64 {
        ((temperature - self.t_star).abs() * self.gain).min(1.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Fault {
    DropLoop,
    DropConditional,
    RenameFunction,
    AddExtraParam,
    BreakSyntax,
}

/// One generated candidate with the fault it carries, if any.
#[derive(Debug, Clone, PartialEq)]
pub struct MockCandidate {
    pub text: String,
    pub fault: Option<Fault>,
}

#[derive(Debug, Clone, Default)]
pub struct MockBackend {
    config: MockConfig,
}

/// Removes the `n`-th statement (pre-order) satisfying `pred`.
fn remove_nth(body: &mut Vec<Stmt>, pred: &dyn Fn(&Stmt) -> bool, n: &mut usize) -> bool {
    let mut i = 0;
    while i < body.len() {
        if pred(&body[i]) {
            if *n == 0 {
                body.remove(i);
                return true;
            }
            *n -= 1;
        }
        for block in body[i].child_blocks_mut() {
            if remove_nth(block, pred, n) {
                return true;
            }
        }
        i += 1;
    }
    false
}

fn count(f: &FunctionAst, pred: &dyn Fn(&Stmt) -> bool) -> usize {
    let mut n = 0;
    walk_stmts(&f.body, &mut |s| n += pred(s) as usize);
    n
}

impl MockBackend {
    pub fn new(config: MockConfig) -> Self {
        MockBackend { config }
    }

    pub fn config(&self) -> &MockConfig {
        &self.config
    }

    fn render(ast: &FunctionAst, dst: Lang) -> String {
        match dst {
            Lang::Py => render_py(ast),
            _ => render_cpp(ast),
        }
    }

    /// The faithful translation, or `None` when the source is outside the
    /// subset.
    fn faithful(source: &str, dst: Lang) -> Option<FunctionAst> {
        let java = parse_java(source).ok()?;
        match dst {
            Lang::Py => java_to_python(&java).ok(),
            _ => Some(java),
        }
    }

    fn is_faulty(&self, rng: &mut SeededRng, temperature: f64, index: usize) -> bool {
        let u = rng.unit();
        match self.config.rig {
            Rig::Off => u < self.config.fault_probability(temperature),
            Rig::OneFaithful => index > 0,
            Rig::AllFaulty => true,
        }
    }

    /// Candidate `index` for `req`; a pure function of the request, the
    /// mock configuration and the index.
    pub fn candidate(&self, req: &TranslationRequest, index: usize) -> Result<MockCandidate, TranslateError> {
        if req.src_lang != Lang::Java || req.dst_lang == Lang::Java {
            return Err(TranslateError::BackendUnavailable(format!(
                "mock translates java to py or cpp, not {} to {}",
                req.src_lang, req.dst_lang
            )));
        }
        let digest = digest_fields([
            req.source.as_bytes(),
            req.src_lang.tag().as_bytes(),
            req.dst_lang.tag().as_bytes(),
            &(req.beam as u64).to_le_bytes(),
            format!("{:.4}", req.temperature).as_bytes(),
            serde_json::to_string(&req.extra).expect("map serializes").as_bytes(),
            &self.config.seed.to_le_bytes(),
            &(index as u64).to_le_bytes(),
        ]);
        let mut rng = SeededRng::new(seed_of(&digest));
        let Some(mut ast) = Self::faithful(&req.source, req.dst_lang) else {
            // Garbage in, garbage out: an unparsable candidate.
            return Ok(MockCandidate {
                text: format!("untranslatable {{\n{}\n", req.source),
                fault: None,
            });
        };
        if !self.is_faulty(&mut rng, req.temperature, index) {
            return Ok(MockCandidate {
                text: Self::render(&ast, req.dst_lang),
                fault: None,
            });
        }
        let loops = count(&ast, &Stmt::is_loop);
        let conds = count(&ast, &Stmt::is_conditional);
        let mut menu = Vec::new();
        if loops > 0 {
            menu.push(Fault::DropLoop);
        }
        if conds > 0 {
            menu.push(Fault::DropConditional);
        }
        menu.extend([Fault::RenameFunction, Fault::AddExtraParam, Fault::BreakSyntax]);
        let fault = *rng.pick(&menu);
        let text = match fault {
            Fault::DropLoop => {
                remove_nth(&mut ast.body, &Stmt::is_loop, &mut rng.below(loops));
                Self::render(&ast, req.dst_lang)
            }
            Fault::DropConditional => {
                remove_nth(&mut ast.body, &Stmt::is_conditional, &mut rng.below(conds));
                Self::render(&ast, req.dst_lang)
            }
            Fault::RenameFunction => {
                ast.name = format!("{}_translated", ast.name);
                Self::render(&ast, req.dst_lang)
            }
            Fault::AddExtraParam => {
                let ty = if req.dst_lang == Lang::Py {
                    TypeTag::Any
                } else {
                    TypeTag::Int
                };
                let names = crate::code::identifiers(&ast);
                let name = (0..)
                    .map(|i| format!("extra{i}"))
                    .find(|n| !names.contains(n))
                    .expect("unbounded");
                ast.params.push(Param::new(name, ty));
                Self::render(&ast, req.dst_lang)
            }
            Fault::BreakSyntax => {
                let text = Self::render(&ast, req.dst_lang);
                let cut = if req.dst_lang == Lang::Py { ":\n" } else { "{" };
                text.replacen(cut, if cut == ":\n" { "\n" } else { "" }, 1)
            }
        };
        Ok(MockCandidate {
            text,
            fault: Some(fault),
        })
    }
}

impl Backend for MockBackend {
    fn id(&self) -> String {
        let c = &self.config;
        let rig = match c.rig {
            Rig::Off => "",
            Rig::OneFaithful => ":one-faithful",
            Rig::AllFaulty => ":all-faulty",
        };
        format!("mock:t{:.4}:g{:.4}:s{}{rig}", c.t_star, c.gain, c.seed)
    }

    fn translate(&self, req: &TranslationRequest) -> Result<Vec<String>, TranslateError> {
        (0..req.beam).map(|i| self.candidate(req, i).map(|c| c.text)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::parse_python;

    const SRC: &str = "int f(int n) { int s = 0; for (int i = 0; i < n; i++) { if (i > 2) { s += i; } } return s; }";

    fn req(t: f64, beam: usize) -> TranslationRequest {
        TranslationRequest::new(SRC, Lang::Java, Lang::Py, beam, t)
    }

    #[test]
    fn optimum_temperature_is_faithful() {
        let m = MockBackend::default();
        for i in 0..20 {
            let c = m.candidate(&req(0.35, 20), i).unwrap();
            assert_eq!(c.fault, None);
            assert!(parse_python(&c.text).is_ok());
        }
    }

    #[test]
    fn candidates_are_reproducible() {
        let m = MockBackend::default();
        assert_eq!(m.translate(&req(0.9, 3)).unwrap(), m.translate(&req(0.9, 3)).unwrap());
    }

    #[test]
    fn broken_syntax_does_not_parse() {
        let m = MockBackend::default();
        let mut seen = false;
        for beam in 1..200 {
            let c = m.candidate(&req(2.0, beam), 0).unwrap();
            if c.fault == Some(Fault::BreakSyntax) {
                assert!(parse_python(&c.text).is_err(), "{}", c.text);
                seen = true;
            }
        }
        assert!(seen);
    }

    #[test]
    fn rig_one_faithful_keeps_the_first_candidate_clean() {
        let m = MockBackend::new(MockConfig {
            rig: Rig::OneFaithful,
            ..MockConfig::default()
        });
        let r = req(0.35, 2);
        assert_eq!(m.candidate(&r, 0).unwrap().fault, None);
        assert!(m.candidate(&r, 1).unwrap().fault.is_some());
    }
}
