//! `POST /translate` over plain HTTP/1.1, one connection per request.

use std::io::{Read, Write};
use std::net::{TcpStream, ToSocketAddrs};
use std::time::Duration;

use super::{Backend, TranslateError, TranslationReply, TranslationRequest};

#[derive(Debug, Clone)]
pub struct HttpBackend {
    host: String,
    port: u16,
    path: String,
    timeout: Duration,
}

impl HttpBackend {
    /// `url` is `http://host[:port][/prefix]`; requests go to
    /// `<prefix>/translate`.
    pub fn new(url: &str, timeout: Duration) -> Result<Self, TranslateError> {
        let bad = || TranslateError::BackendUnavailable(format!("unsupported backend url `{url}`"));
        let rest = url.strip_prefix("http://").ok_or_else(bad)?;
        let (authority, prefix) = match rest.find('/') {
            Some(i) => (&rest[..i], rest[i..].trim_end_matches('/')),
            None => (rest, ""),
        };
        let (host, port) = match authority.rsplit_once(':') {
            Some((h, p)) => (h, p.parse::<u16>().map_err(|_| bad())?),
            None => (authority, 80),
        };
        if host.is_empty() {
            return Err(bad());
        }
        Ok(HttpBackend {
            host: host.to_string(),
            port,
            path: format!("{prefix}/translate"),
            timeout,
        })
    }

    fn exchange(&self, body: &[u8]) -> Result<(u16, Vec<u8>), TranslateError> {
        let down = |e: std::io::Error| TranslateError::BackendUnavailable(format!("{}:{}: {e}", self.host, self.port));
        let addr = (self.host.as_str(), self.port)
            .to_socket_addrs()
            .map_err(down)?
            .next()
            .ok_or_else(|| TranslateError::BackendUnavailable(format!("cannot resolve {}", self.host)))?;
        let mut stream = TcpStream::connect_timeout(&addr, self.timeout).map_err(down)?;
        stream.set_read_timeout(Some(self.timeout)).map_err(down)?;
        stream.set_write_timeout(Some(self.timeout)).map_err(down)?;
        let head = format!(
            "POST {} HTTP/1.1\r\nHost: {}:{}\r\nContent-Type: application/json\r\n\
             Content-Length: {}\r\nConnection: close\r\n\r\n",
            self.path,
            self.host,
            self.port,
            body.len()
        );
        stream.write_all(head.as_bytes()).map_err(down)?;
        stream.write_all(body).map_err(down)?;
        let mut raw = Vec::new();
        stream.read_to_end(&mut raw).map_err(down)?;
        parse_response(&raw)
    }
}

fn malformed(msg: impl Into<String>) -> TranslateError {
    TranslateError::BackendMalformedReply(msg.into())
}

fn parse_response(raw: &[u8]) -> Result<(u16, Vec<u8>), TranslateError> {
    let split = raw
        .windows(4)
        .position(|w| w == b"\r\n\r\n")
        .ok_or_else(|| malformed("response without header terminator"))?;
    let head = String::from_utf8_lossy(&raw[..split]);
    let body = &raw[split + 4..];
    let mut lines = head.lines();
    let status = lines
        .next()
        .and_then(|l| l.split_whitespace().nth(1))
        .and_then(|s| s.parse::<u16>().ok())
        .ok_or_else(|| malformed("bad status line"))?;
    let mut chunked = false;
    let mut length = None;
    for l in lines {
        if let Some((k, v)) = l.split_once(':') {
            let (k, v) = (k.trim().to_ascii_lowercase(), v.trim());
            if k == "transfer-encoding" && v.eq_ignore_ascii_case("chunked") {
                chunked = true;
            } else if k == "content-length" {
                length = v.parse::<usize>().ok();
            }
        }
    }
    let body = if chunked {
        dechunk(body)?
    } else {
        match length {
            Some(n) if n <= body.len() => body[..n].to_vec(),
            Some(_) => return Err(malformed("truncated body")),
            None => body.to_vec(),
        }
    };
    Ok((status, body))
}

fn dechunk(mut data: &[u8]) -> Result<Vec<u8>, TranslateError> {
    let mut out = Vec::new();
    loop {
        let eol = data
            .windows(2)
            .position(|w| w == b"\r\n")
            .ok_or_else(|| malformed("bad chunk header"))?;
        let size_text = String::from_utf8_lossy(&data[..eol]);
        let size = usize::from_str_radix(size_text.split(';').next().unwrap_or("").trim(), 16)
            .map_err(|_| malformed("bad chunk size"))?;
        data = &data[eol + 2..];
        if size == 0 {
            return Ok(out);
        }
        if data.len() < size + 2 {
            return Err(malformed("truncated chunk"));
        }
        out.extend_from_slice(&data[..size]);
        data = &data[size + 2..];
    }
}

impl Backend for HttpBackend {
    fn id(&self) -> String {
        format!("http://{}:{}{}", self.host, self.port, self.path)
    }

    fn translate(&self, req: &TranslationRequest) -> Result<Vec<String>, TranslateError> {
        let body = serde_json::to_vec(req).expect("requests serialize");
        let (status, reply) = self.exchange(&body)?;
        if status != 200 {
            return Err(TranslateError::BackendUnavailable(format!("HTTP status {status}")));
        }
        let reply: TranslationReply =
            serde_json::from_slice(&reply).map_err(|e| malformed(format!("reply is not a candidate list: {e}")))?;
        Ok(reply.candidates)
    }
}

#[cfg(test)]
mod tests {
    use std::io::{BufRead, BufReader};
    use std::net::TcpListener;

    use super::*;
    use crate::lang::Lang;

    /// Answers every request with `beam` copies of its source, using a
    /// chunked body to exercise both framings.
    fn echo_server(requests: usize) -> u16 {
        let listener = TcpListener::bind("127.0.0.1:0").unwrap();
        let port = listener.local_addr().unwrap().port();
        std::thread::spawn(move || {
            for stream in listener.incoming().take(requests) {
                let mut stream = stream.unwrap();
                let mut reader = BufReader::new(stream.try_clone().unwrap());
                let mut len = 0;
                loop {
                    let mut line = String::new();
                    reader.read_line(&mut line).unwrap();
                    if line == "\r\n" {
                        break;
                    }
                    if let Some(v) = line.to_ascii_lowercase().strip_prefix("content-length:") {
                        len = v.trim().parse().unwrap();
                    }
                }
                let mut body = vec![0; len];
                reader.read_exact(&mut body).unwrap();
                let req: TranslationRequest = serde_json::from_slice(&body).unwrap();
                let reply = serde_json::to_string(&TranslationReply {
                    candidates: vec![req.source; req.beam],
                })
                .unwrap();
                let resp = format!(
                    "HTTP/1.1 200 OK\r\nTransfer-Encoding: chunked\r\n\r\n{:x}\r\n{reply}\r\n0\r\n\r\n",
                    reply.len()
                );
                stream.write_all(resp.as_bytes()).unwrap();
            }
        });
        port
    }

    #[test]
    fn echo_server_round_trip() {
        let port = echo_server(1);
        let b = HttpBackend::new(&format!("http://127.0.0.1:{port}"), Duration::from_secs(5)).unwrap();
        let req = TranslationRequest::new("int f() { return 1; }", Lang::Java, Lang::Py, 2, 0.5);
        assert_eq!(b.translate(&req).unwrap(), vec![req.source.clone(), req.source.clone()]);
    }

    #[test]
    fn closed_port_is_unavailable() {
        let port = TcpListener::bind("127.0.0.1:0").unwrap().local_addr().unwrap().port();
        let b = HttpBackend::new(&format!("http://127.0.0.1:{port}"), Duration::from_secs(1)).unwrap();
        let req = TranslationRequest::new("x", Lang::Java, Lang::Py, 1, 0.5);
        assert!(matches!(b.translate(&req), Err(TranslateError::BackendUnavailable(_))));
    }

    #[test]
    fn urls_are_validated() {
        assert!(HttpBackend::new("https://x", Duration::from_secs(1)).is_err());
        let b = HttpBackend::new("http://h:81/api/", Duration::from_secs(1)).unwrap();
        assert_eq!(b.id(), "http://h:81/api/translate");
    }
}
