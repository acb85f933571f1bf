//! Machine-readable certificates.
//!
//! A certificate is the versioned header line `torwidth certificate v1`
//! followed by ordered `key: value` lines. The emitter controls the order,
//! so emitting, parsing, and emitting again is byte-identity; regression
//! fixtures diff certificates directly. Every certificate names the engine
//! version and the SHA-256 of the canonical job text it answers, so a
//! changed relator letter changes the hash and the stale certificate is
//! caught.

use std::fmt::Display;

use sha2::{Digest, Sha256};

use crate::job::JobError;

pub const CERTIFICATE_HEADER: &str = "torwidth certificate v1";

pub fn engine_version() -> String {
    format!("torwidth {}", env!("CARGO_PKG_VERSION"))
}

/// Hex SHA-256 of the canonical job text.
pub fn input_hash(canonical_job: &str) -> String {
    let mut h = Sha256::new();
    h.update(canonical_job.as_bytes());
    let digest = h.finalize();
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

/// An ordered list of `key: value` lines under the versioned header.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Certificate {
    lines: Vec<(String, String)>,
}

impl Certificate {
    /// Starts a certificate with the standard head: engine version, kind,
    /// input hash.
    pub fn head(kind: &str, canonical_job: &str) -> Certificate {
        let mut c = Certificate::default();
        c.push("engine", engine_version());
        c.push("kind", kind);
        c.push("input-sha256", input_hash(canonical_job));
        c
    }

    pub fn push(&mut self, key: &str, value: impl Display) {
        debug_assert!(
            !key.is_empty()
                && key.chars().all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '-'),
            "certificate keys are lowercase words: {key:?}"
        );
        let rendered = value.to_string();
        debug_assert!(!rendered.contains('\n'), "certificate values are single lines");
        self.lines.push((key.to_string(), rendered));
    }

    /// First value under the key, if any.
    pub fn get(&self, key: &str) -> Option<&str> {
        self.lines.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn get_all(&self, key: &str) -> Vec<&str> {
        self.lines.iter().filter(|(k, _)| k == key).map(|(_, v)| v.as_str()).collect()
    }

    pub fn lines(&self) -> &[(String, String)] {
        &self.lines
    }

    pub fn emit(&self) -> String {
        let mut out = String::from(CERTIFICATE_HEADER);
        out.push('\n');
        for (k, v) in &self.lines {
            out.push_str(k);
            out.push(':');
            if !v.is_empty() {
                out.push(' ');
                out.push_str(v);
            }
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<Certificate, JobError> {
        let mut lines = text.lines().enumerate();
        match lines.next() {
            Some((_, l)) if l == CERTIFICATE_HEADER => {}
            Some((i, l)) => {
                return Err(JobError {
                    line: i + 1,
                    message: format!("expected header {CERTIFICATE_HEADER:?}, found {l:?}"),
                })
            }
            None => return Err(JobError { line: 1, message: "empty certificate".into() }),
        }
        let mut out = Certificate::default();
        for (i, l) in lines {
            if l.is_empty() {
                continue;
            }
            let (key, value) = l.split_once(':').ok_or_else(|| JobError {
                line: i + 1,
                message: format!("missing ':' after key in {l:?}"),
            })?;
            out.lines.push((key.to_string(), value.strip_prefix(' ').unwrap_or(value).to_string()));
        }
        Ok(out)
    }
}
