//! Run configuration: a TOML file overlaid by command-line flags.

use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Duration;

use serde::{Deserialize, Serialize};
use transprop::dsl::{parse_spec, PropertySpec};
use transprop::inspect::ToolchainConfig;
use transprop::translator::{Backend, CommandBackend, HttpBackend, MockBackend, MockConfig};

/// Overrides `cache_dir` from the config file; a `--cache-dir` flag wins.
pub const CACHE_DIR_ENV: &str = "TRANSPROP_CACHE_DIR";
pub const DEFAULT_SEED: u64 = 20220527;
/// Used for testing runs and as the search's starting point.
pub const DEFAULT_TEMPERATURE: f64 = 0.1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub corpus: Option<PathBuf>,
    /// Glob patterns of `.ksp` files; empty selects the bundled specs.
    pub specs: Vec<String>,
    /// `mock`, `http://host:port[/prefix]` or `cmd:<command line>`.
    pub backend: String,
    pub backend_timeout_ms: u64,
    pub beam: usize,
    pub temperature: f64,
    pub budget_one_safety: usize,
    pub budget_k_safety: usize,
    pub budget: Option<usize>,
    pub search_budget: usize,
    pub test_budget: usize,
    pub seed: u64,
    pub jobs: usize,
    pub cache_dir: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub toolchain: ToolchainConfig,
    pub mock: MockConfig,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            corpus: None,
            specs: Vec::new(),
            backend: "mock".into(),
            backend_timeout_ms: 60_000,
            beam: 1,
            temperature: DEFAULT_TEMPERATURE,
            budget_one_safety: transprop::engine::DEFAULT_BUDGET_ONE_SAFETY,
            budget_k_safety: transprop::engine::DEFAULT_BUDGET_K_SAFETY,
            budget: None,
            search_budget: transprop::search::DEFAULT_SEARCH_BUDGET,
            test_budget: transprop::search::DEFAULT_TEST_BUDGET,
            seed: DEFAULT_SEED,
            jobs: 0,
            cache_dir: None,
            out: None,
            toolchain: ToolchainConfig::default(),
            mock: MockConfig::default(),
        }
    }
}

impl RunConfig {
    /// Relative paths in the file resolve against the file's directory.
    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        let mut cfg: RunConfig = toml::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
        let base = path.parent().unwrap_or(Path::new("."));
        let resolve = |p: &mut Option<PathBuf>| {
            if let Some(q) = p.as_mut() {
                if q.is_relative() {
                    *q = base.join(&*q);
                }
            }
        };
        resolve(&mut cfg.corpus);
        resolve(&mut cfg.cache_dir);
        resolve(&mut cfg.out);
        for s in &mut cfg.specs {
            if Path::new(s).is_relative() {
                *s = base.join(&*s).to_string_lossy().into_owned();
            }
        }
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.beam == 0 {
            return Err("beam size must be at least 1".into());
        }
        if !(self.temperature > 0.0 && self.temperature <= 2.0) {
            return Err(format!("temperature {} outside (0, 2]", self.temperature));
        }
        if self.search_budget == 0 || self.test_budget == 0 {
            return Err("search and test budgets must be at least 1".into());
        }
        if self.budget == Some(0) || self.budget_one_safety == 0 || self.budget_k_safety == 0 {
            return Err("testing budgets must be at least 1".into());
        }
        if let Some(c) = &self.corpus {
            if !c.is_dir() {
                return Err(format!("corpus directory {} does not exist", c.display()));
            }
        }
        self.toolchain.validate()
    }

    pub fn backend(&self) -> Result<Arc<dyn Backend>, String> {
        let timeout = Duration::from_millis(self.backend_timeout_ms);
        let b = &self.backend;
        if b == "mock" {
            Ok(Arc::new(MockBackend::new(self.mock.clone())))
        } else if b.starts_with("http://") {
            Ok(Arc::new(HttpBackend::new(b, timeout).map_err(|e| e.to_string())?))
        } else if let Some(cmd) = b.strip_prefix("cmd:") {
            Ok(Arc::new(CommandBackend::new(cmd, timeout)))
        } else {
            Err(format!("unknown backend `{b}` (expected mock, http://... or cmd:...)"))
        }
    }

    /// Specs matched by the configured globs, sorted by path, or `bundled`
    /// when no glob is configured.
    pub fn load_specs(
        &self,
        bundled: fn() -> Result<Vec<PropertySpec>, (String, transprop::dsl::Diagnostics)>,
    ) -> Result<Vec<PropertySpec>, String> {
        if self.specs.is_empty() {
            return bundled().map_err(|(name, d)| format!("bundled spec {name}: {d}"));
        }
        let mut paths = Vec::new();
        for pattern in &self.specs {
            let matched: Vec<PathBuf> = glob::glob(pattern)
                .map_err(|e| format!("bad spec pattern `{pattern}`: {e}"))?
                .collect::<Result<_, _>>()
                .map_err(|e| e.to_string())?;
            if matched.is_empty() {
                return Err(format!("spec pattern `{pattern}` matches no file"));
            }
            paths.extend(matched);
        }
        paths.sort();
        paths.dedup();
        paths
            .iter()
            .map(|p| {
                let text = std::fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display()))?;
                let name = p
                    .file_stem()
                    .map(|s| s.to_string_lossy().into_owned())
                    .unwrap_or_default();
                parse_spec(&name, &text).map_err(|d| format!("{}:\n{d}", p.display()))
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_match_the_published_settings() {
        let c = RunConfig::default();
        assert_eq!((c.budget_one_safety, c.budget_k_safety), (500, 2500));
        assert_eq!((c.search_budget, c.test_budget), (20, 50));
        assert_eq!((c.beam, c.temperature), (1, 0.1));
    }

    #[test]
    fn unknown_keys_are_rejected() {
        assert!(toml::from_str::<RunConfig>("beams = 3").is_err());
        let c: RunConfig = toml::from_str("beam = 3\n[mock]\nt_star = 0.5\n").unwrap();
        assert_eq!((c.beam, c.mock.t_star), (3, 0.5));
    }

    #[test]
    fn backends_are_recognized() {
        let mut c = RunConfig::default();
        assert!(c.backend().unwrap().id().starts_with("mock:"));
        c.backend = "ftp://x".into();
        assert!(c.backend().is_err());
        c.backend = "cmd:python3 server.py".into();
        assert_eq!(c.backend().unwrap().id(), "command:python3 server.py");
    }
}
