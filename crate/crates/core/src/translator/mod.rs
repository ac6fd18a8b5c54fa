//! Translation backends behind a content-addressed query cache.
//!
//! Identical queries return identical candidates for the lifetime of the
//! cache, so a stochastic model is observed consistently within a run and a
//! warm cache replays a run without contacting the backend.

mod cache;
mod command;
mod http;
pub mod lower;
mod mock;

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Condvar, Mutex};
use std::time::Instant;

use dashmap::DashMap;
use serde::{Deserialize, Serialize};

use crate::lang::Lang;

pub use cache::{cache_key, QueryCache};
pub use command::CommandBackend;
pub use http::HttpBackend;
pub use mock::{Fault, MockBackend, MockCandidate, MockConfig, Rig};

pub const MIN_TEMPERATURE: f64 = 0.0001;
pub const MAX_TEMPERATURE: f64 = 2.0;

/// Decoding parameters sent with every query.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TranslatorParams {
    pub beam: usize,
    pub temperature: f64,
    pub backend_id: String,
    #[serde(default)]
    pub extra: BTreeMap<String, String>,
}

impl TranslatorParams {
    pub fn new(beam: usize, temperature: f64) -> Self {
        TranslatorParams {
            beam,
            temperature,
            backend_id: String::new(),
            extra: BTreeMap::new(),
        }
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.beam == 0 {
            return Err("beam size must be at least 1".into());
        }
        if !(self.temperature > 0.0 && self.temperature <= MAX_TEMPERATURE) {
            return Err(format!("temperature {} outside (0, 2]", self.temperature));
        }
        Ok(())
    }

    pub fn clamp_temperature(t: f64) -> f64 {
        t.clamp(MIN_TEMPERATURE, MAX_TEMPERATURE)
    }
}

/// Wire document of one query.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TranslationRequest {
    pub source: String,
    pub src_lang: Lang,
    pub dst_lang: Lang,
    pub beam: usize,
    pub temperature: f64,
    #[serde(default)]
    pub extra: BTreeMap<String, String>,
}

impl TranslationRequest {
    pub fn new(source: &str, src_lang: Lang, dst_lang: Lang, beam: usize, temperature: f64) -> Self {
        TranslationRequest {
            source: source.to_string(),
            src_lang,
            dst_lang,
            beam,
            temperature,
            extra: BTreeMap::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TranslationReply {
    pub candidates: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TranslationResult {
    /// Best first; exactly `beam` entries.
    pub candidates: Arc<Vec<String>>,
    pub from_cache: bool,
    pub backend_latency_ms: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TranslateError {
    #[error("backend unavailable: {0}")]
    BackendUnavailable(String),
    #[error("malformed backend reply: {0}")]
    BackendMalformedReply(String),
    #[error("query cache: {0}")]
    Cache(String),
}

pub trait Backend: Send + Sync {
    /// Stable identity, part of every cache key.
    fn id(&self) -> String;
    fn translate(&self, req: &TranslationRequest) -> Result<Vec<String>, TranslateError>;
}

/// Counting semaphore bounding in-flight backend requests.
#[derive(Debug)]
struct Semaphore {
    free: Mutex<usize>,
    cv: Condvar,
}

impl Semaphore {
    fn new(n: usize) -> Self {
        Semaphore {
            free: Mutex::new(n.max(1)),
            cv: Condvar::new(),
        }
    }

    fn run<T>(&self, f: impl FnOnce() -> T) -> T {
        {
            let mut free = self.free.lock().expect("semaphore lock");
            while *free == 0 {
                free = self.cv.wait(free).expect("semaphore lock");
            }
            *free -= 1;
        }
        let out = f();
        *self.free.lock().expect("semaphore lock") += 1;
        self.cv.notify_one();
        out
    }
}

/// A backend plus its cache. Safe to share between threads; concurrent
/// misses on one key reach the backend once.
pub struct Translator {
    backend: Arc<dyn Backend>,
    disk: Option<QueryCache>,
    memory: DashMap<String, Arc<Vec<String>>>,
    locks: DashMap<String, Arc<Mutex<()>>>,
    in_flight: Semaphore,
    calls: AtomicU64,
}

impl Translator {
    pub fn new(backend: Arc<dyn Backend>, disk: Option<QueryCache>) -> Self {
        Translator {
            backend,
            disk,
            memory: DashMap::new(),
            locks: DashMap::new(),
            in_flight: Semaphore::new(8),
            calls: AtomicU64::new(0),
        }
    }

    pub fn with_max_in_flight(mut self, n: usize) -> Self {
        self.in_flight = Semaphore::new(n);
        self
    }

    pub fn backend_id(&self) -> String {
        self.backend.id()
    }

    /// Number of requests that reached the backend.
    pub fn backend_calls(&self) -> u64 {
        self.calls.load(Ordering::SeqCst)
    }

    /// `params` with this translator's backend identity filled in.
    pub fn params(&self, beam: usize, temperature: f64) -> TranslatorParams {
        TranslatorParams {
            backend_id: self.backend.id(),
            ..TranslatorParams::new(beam, temperature)
        }
    }

    pub fn translate(
        &self,
        source: &str,
        src_lang: Lang,
        dst_lang: Lang,
        params: &TranslatorParams,
    ) -> Result<TranslationResult, TranslateError> {
        let backend_id = self.backend.id();
        let key = cache_key(source, src_lang, dst_lang, params, &backend_id);
        let hit = |c: Arc<Vec<String>>| TranslationResult {
            candidates: c,
            from_cache: true,
            backend_latency_ms: 0,
        };
        if let Some(c) = self.memory.get(&key) {
            return Ok(hit(Arc::clone(&c)));
        }
        let lock = Arc::clone(&self.locks.entry(key.clone()).or_default());
        let _guard = lock.lock().expect("key lock");
        if let Some(c) = self.memory.get(&key) {
            return Ok(hit(Arc::clone(&c)));
        }
        if let Some(disk) = &self.disk {
            if let Some(c) = disk.get(&key)? {
                if c.len() == params.beam {
                    let c = Arc::new(c);
                    self.memory.insert(key, Arc::clone(&c));
                    return Ok(hit(c));
                }
            }
        }
        let req = TranslationRequest {
            source: source.to_string(),
            src_lang,
            dst_lang,
            beam: params.beam,
            temperature: params.temperature,
            extra: params.extra.clone(),
        };
        let started = Instant::now();
        let candidates = self.in_flight.run(|| {
            self.calls.fetch_add(1, Ordering::SeqCst);
            self.backend.translate(&req)
        })?;
        let latency = started.elapsed().as_millis() as u64;
        if candidates.len() != params.beam {
            return Err(TranslateError::BackendMalformedReply(format!(
                "expected {} candidates, got {}",
                params.beam,
                candidates.len()
            )));
        }
        if let Some(disk) = &self.disk {
            disk.put(&key, &req, &backend_id, &candidates)?;
        }
        let candidates = Arc::new(candidates);
        self.memory.insert(key, Arc::clone(&candidates));
        Ok(TranslationResult {
            candidates,
            from_cache: false,
            backend_latency_ms: latency,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SRC: &str = "int f(int a) { return a + 1; }";

    #[test]
    fn second_call_is_served_from_cache() {
        let t = Translator::new(Arc::new(MockBackend::default()), None);
        let p = t.params(3, 0.1);
        let a = t.translate(SRC, Lang::Java, Lang::Py, &p).unwrap();
        let b = t.translate(SRC, Lang::Java, Lang::Py, &p).unwrap();
        assert!(!a.from_cache && b.from_cache);
        assert_eq!(a.candidates.len(), 3);
        assert_eq!(a.candidates, b.candidates);
        assert_eq!(t.backend_calls(), 1);
        t.translate(SRC, Lang::Java, Lang::Py, &t.params(3, 0.2)).unwrap();
        assert_eq!(t.backend_calls(), 2);
    }

    struct Short;
    impl Backend for Short {
        fn id(&self) -> String {
            "short".into()
        }
        fn translate(&self, _: &TranslationRequest) -> Result<Vec<String>, TranslateError> {
            Ok(vec!["x".into()])
        }
    }

    #[test]
    fn wrong_candidate_count_is_malformed() {
        let t = Translator::new(Arc::new(Short), None);
        let err = t.translate(SRC, Lang::Java, Lang::Py, &t.params(2, 0.5)).unwrap_err();
        assert!(matches!(err, TranslateError::BackendMalformedReply(_)));
    }

    #[test]
    fn concurrent_misses_reach_the_backend_once() {
        let t = Arc::new(Translator::new(Arc::new(MockBackend::default()), None));
        std::thread::scope(|s| {
            for _ in 0..8 {
                let t = Arc::clone(&t);
                s.spawn(move || t.translate(SRC, Lang::Java, Lang::Py, &t.params(1, 0.7)).unwrap());
            }
        });
        assert_eq!(t.backend_calls(), 1);
    }
}
