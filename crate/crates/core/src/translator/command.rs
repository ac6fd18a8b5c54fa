//! A long-running child process that answers one JSON request line with one
//! JSON reply line.

use std::io::{BufRead, BufReader, Write};
use std::process::{Child, ChildStdin, Command, Stdio};
use std::sync::mpsc::{self, Receiver, RecvTimeoutError};
use std::sync::Mutex;
use std::time::Duration;

use super::{Backend, TranslateError, TranslationReply, TranslationRequest};

struct Session {
    child: Child,
    stdin: ChildStdin,
    lines: Receiver<String>,
}

pub struct CommandBackend {
    command: String,
    timeout: Duration,
    session: Mutex<Option<Session>>,
}

impl CommandBackend {
    /// `command` is split on whitespace; the process starts on first use.
    pub fn new(command: &str, timeout: Duration) -> Self {
        CommandBackend {
            command: command.to_string(),
            timeout,
            session: Mutex::new(None),
        }
    }

    fn start(&self) -> Result<Session, TranslateError> {
        let mut words = self.command.split_whitespace();
        let prog = words
            .next()
            .ok_or_else(|| TranslateError::BackendUnavailable("empty backend command".into()))?;
        let mut child = Command::new(prog)
            .args(words)
            .stdin(Stdio::piped())
            .stdout(Stdio::piped())
            .stderr(Stdio::inherit())
            .spawn()
            .map_err(|e| TranslateError::BackendUnavailable(format!("{prog}: {e}")))?;
        let stdin = child.stdin.take().expect("stdin is piped");
        let stdout = child.stdout.take().expect("stdout is piped");
        let (tx, lines) = mpsc::channel();
        std::thread::spawn(move || {
            for line in BufReader::new(stdout).lines() {
                let Ok(line) = line else { break };
                if tx.send(line).is_err() {
                    break;
                }
            }
        });
        Ok(Session { child, stdin, lines })
    }
}

impl Drop for CommandBackend {
    fn drop(&mut self) {
        if let Ok(mut guard) = self.session.lock() {
            if let Some(mut s) = guard.take() {
                let _ = s.child.kill();
                let _ = s.child.wait();
            }
        }
    }
}

impl Backend for CommandBackend {
    fn id(&self) -> String {
        format!("command:{}", self.command)
    }

    fn translate(&self, req: &TranslationRequest) -> Result<Vec<String>, TranslateError> {
        let mut guard = self.session.lock().expect("session lock");
        if guard.is_none() {
            *guard = Some(self.start()?);
        }
        let session = guard.as_mut().expect("just started");
        let mut line = serde_json::to_string(req).expect("requests serialize");
        line.push('\n');
        let sent = session
            .stdin
            .write_all(line.as_bytes())
            .and_then(|_| session.stdin.flush());
        let failure = match sent {
            Err(e) => format!("backend process: {e}"),
            Ok(()) => match session.lines.recv_timeout(self.timeout) {
                Ok(reply) => {
                    let reply: TranslationReply = serde_json::from_str(&reply)
                        .map_err(|e| TranslateError::BackendMalformedReply(format!("{e}: {reply}")))?;
                    return Ok(reply.candidates);
                }
                Err(RecvTimeoutError::Timeout) => "backend process timed out".into(),
                Err(RecvTimeoutError::Disconnected) => "backend process exited".into(),
            },
        };
        // A late reply must not answer the next request: start over.
        if let Some(mut s) = guard.take() {
            let _ = s.child.kill();
            let _ = s.child.wait();
        }
        Err(TranslateError::BackendUnavailable(failure))
    }
}
