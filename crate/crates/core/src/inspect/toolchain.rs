//! External compilers and interpreters. Each invocation runs in its own
//! temporary directory and is killed at the configured wall-clock bound.

use std::io::Write;
use std::path::Path;
use std::process::{Command, Stdio};
use std::time::Duration;

use serde::{Deserialize, Serialize};
use wait_timeout::ChildExt;

use super::InspectError;
use crate::code::interp::{ExecOutcome, DEFAULT_STEP_LIMIT};
use crate::code::{TestCase, Value};
use crate::lang::Lang;

pub const DEFAULT_TIMEOUT_MS: u64 = 5000;

/// Command templates are split on whitespace; `{src}` expands to the source
/// file and `{dir}` to its directory. A missing template selects the
/// builtin subset parser or interpreter where one exists.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ToolchainConfig {
    pub java_compile: Option<String>,
    pub py_check: Option<String>,
    pub py_run: Option<String>,
    pub cpp_compile: Option<String>,
    pub timeout_ms: u64,
    pub step_limit: u64,
}

impl Default for ToolchainConfig {
    fn default() -> Self {
        ToolchainConfig {
            java_compile: None,
            py_check: None,
            py_run: None,
            cpp_compile: None,
            timeout_ms: DEFAULT_TIMEOUT_MS,
            step_limit: DEFAULT_STEP_LIMIT,
        }
    }
}

impl ToolchainConfig {
    pub fn validate(&self) -> Result<(), String> {
        if self.timeout_ms == 0 {
            return Err("toolchain timeout must be positive".into());
        }
        for (name, t) in [
            ("java_compile", &self.java_compile),
            ("py_check", &self.py_check),
            ("py_run", &self.py_run),
            ("cpp_compile", &self.cpp_compile),
        ] {
            if let Some(t) = t {
                if !t.contains("{src}") {
                    return Err(format!("toolchain template `{name}` lacks {{src}}"));
                }
            }
        }
        Ok(())
    }

    pub fn compile_template(&self, lang: Lang) -> Option<&str> {
        match lang {
            Lang::Java => self.java_compile.as_deref(),
            Lang::Py => self.py_check.as_deref(),
            Lang::Cpp => self.cpp_compile.as_deref(),
        }
    }

    fn timeout(&self) -> Duration {
        Duration::from_millis(self.timeout_ms)
    }
}

enum Finished {
    Exited {
        success: bool,
        stdout: String,
        stderr: String,
    },
    TimedOut,
}

fn run(template: &str, src: &Path, stdin: &str, timeout: Duration) -> Result<Finished, InspectError> {
    let dir = src.parent().expect("sources live in a work directory");
    let expand = |w: &str| {
        w.replace("{src}", &src.to_string_lossy())
            .replace("{dir}", &dir.to_string_lossy())
    };
    let mut words = template.split_whitespace().map(expand);
    let prog = words
        .next()
        .ok_or_else(|| InspectError::SandboxFailure("empty command template".into()))?;
    let mut child = Command::new(&prog)
        .args(words)
        .current_dir(dir)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .map_err(|e| InspectError::ToolchainMissing(format!("{prog}: {e}")))?;
    if let Some(mut input) = child.stdin.take() {
        // A child that exits without reading its input is not an error here.
        let _ = input.write_all(stdin.as_bytes());
    }
    let status = child
        .wait_timeout(timeout)
        .map_err(|e| InspectError::SandboxFailure(e.to_string()))?;
    let Some(status) = status else {
        let _ = child.kill();
        let _ = child.wait();
        return Ok(Finished::TimedOut);
    };
    let out = child
        .wait_with_output()
        .map_err(|e| InspectError::SandboxFailure(e.to_string()))?;
    Ok(Finished::Exited {
        success: status.success(),
        stdout: String::from_utf8_lossy(&out.stdout).into_owned(),
        stderr: String::from_utf8_lossy(&out.stderr).into_owned(),
    })
}

fn workdir() -> Result<tempfile::TempDir, InspectError> {
    tempfile::tempdir().map_err(|e| InspectError::SandboxFailure(e.to_string()))
}

fn write(path: &Path, text: &str) -> Result<(), InspectError> {
    std::fs::write(path, text).map_err(|e| InspectError::SandboxFailure(e.to_string()))
}

/// Wraps a lone function so the language's compiler accepts the file.
fn compilation_unit(text: &str, lang: Lang) -> (String, String) {
    match lang {
        Lang::Java => ("Main.java".into(), format!("public class Main {{\n{text}\n}}\n")),
        Lang::Py => ("func.py".into(), text.to_string()),
        Lang::Cpp => (
            "func.cpp".into(),
            format!(
                "#include <algorithm>\n#include <climits>\n#include <iostream>\n\
                 #include <string>\n#include <vector>\n\n{text}\n"
            ),
        ),
    }
}

/// Exit status of the configured compile command.
pub(super) fn compile(template: &str, text: &str, lang: Lang, cfg: &ToolchainConfig) -> Result<bool, InspectError> {
    let dir = workdir()?;
    let (name, unit) = compilation_unit(text, lang);
    let src = dir.path().join(name);
    write(&src, &unit)?;
    match run(template, &src, "", cfg.timeout())? {
        Finished::Exited { success, .. } => Ok(success),
        Finished::TimedOut => Ok(false),
    }
}

const PY_DRIVER: &str = r#"
import json as __json, sys as __sys
__args = __json.loads(__sys.stdin.read())
try:
    __r = __FUNC__(*__args)
    print(__json.dumps({"ok": __r}))
except BaseException as __e:
    print(__json.dumps({"crash": type(__e).__name__ + ": " + str(__e)}))
"#;

#[derive(Deserialize)]
struct DriverReply {
    ok: Option<Value>,
    crash: Option<String>,
}

fn py_function_name(text: &str) -> Option<String> {
    let rest = text.lines().find_map(|l| l.strip_prefix("def "))?;
    let name: String = rest
        .trim_start()
        .chars()
        .take_while(|c| c.is_alphanumeric() || *c == '_')
        .collect();
    (!name.is_empty()).then_some(name)
}

/// Runs a Python function under the configured interpreter, one process
/// and one fresh directory per test case.
pub(super) fn run_python(
    template: &str,
    text: &str,
    tests: &[TestCase],
    cfg: &ToolchainConfig,
) -> Result<Vec<ExecOutcome>, InspectError> {
    let Some(name) = py_function_name(text) else {
        return Ok(vec![ExecOutcome::CompileFail; tests.len()]);
    };
    let program = format!("{text}\n{}", PY_DRIVER.replace("__FUNC__", &name));
    let mut out = Vec::with_capacity(tests.len());
    for case in tests {
        let dir = workdir()?;
        let src = dir.path().join("driver.py");
        write(&src, &program)?;
        let input = serde_json::to_string(&case.inputs).expect("values serialize");
        let outcome = match run(template, &src, &input, cfg.timeout())? {
            Finished::TimedOut => ExecOutcome::Timeout,
            Finished::Exited {
                stdout,
                stderr,
                success,
            } => {
                match stdout
                    .lines()
                    .last()
                    .and_then(|l| serde_json::from_str::<DriverReply>(l).ok())
                {
                    Some(DriverReply { crash: Some(c), .. }) => ExecOutcome::Crash(c),
                    Some(DriverReply { ok, .. }) => ExecOutcome::Ok(ok.unwrap_or(Value::Null)),
                    None if !success && stderr.contains("SyntaxError") => ExecOutcome::CompileFail,
                    None => ExecOutcome::Crash(stderr.lines().last().unwrap_or("no output").to_string()),
                }
            }
        };
        out.push(outcome);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn python_available() -> bool {
        Command::new("python3").arg("--version").output().is_ok()
    }

    #[test]
    fn python_driver_reports_values_crashes_and_timeouts() {
        if !python_available() {
            return;
        }
        let cfg = ToolchainConfig {
            timeout_ms: 1000,
            ..ToolchainConfig::default()
        };
        let text = "def f(a: int) -> int:\n    while a < 0:\n        pass\n    return 10 // a\n";
        let tests: Vec<TestCase> = [2, 0, -1]
            .into_iter()
            .map(|a| TestCase {
                inputs: vec![Value::Int(a)],
                expected: Value::Null,
            })
            .collect();
        let out = run_python("python3 {src}", text, &tests, &cfg).unwrap();
        assert_eq!(out[0], ExecOutcome::Ok(Value::Int(5)));
        assert!(matches!(&out[1], ExecOutcome::Crash(c) if c.contains("ZeroDivision")));
        assert_eq!(out[2], ExecOutcome::Timeout);
    }

    #[test]
    fn missing_tool_is_not_a_compile_failure() {
        let err = compile(
            "no-such-compiler-xyz {src}",
            "int f() { return 1; }",
            Lang::Java,
            &ToolchainConfig::default(),
        );
        assert!(matches!(err, Err(InspectError::ToolchainMissing(_))));
    }

    #[test]
    fn templates_need_a_source_placeholder() {
        let cfg = ToolchainConfig {
            py_check: Some("python3 -m py_compile".into()),
            ..ToolchainConfig::default()
        };
        assert!(cfg.validate().is_err());
    }
}
