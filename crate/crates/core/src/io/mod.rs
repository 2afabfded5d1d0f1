//! Plain-text and image formats for measures, signals and grids.
//!
//! Every text format accepts `#` comment lines, which writers use to echo
//! the configuration that produced a file.

mod csv;
mod measure_text;
mod pgm;
mod raw;

use std::collections::BTreeMap;

use thiserror::Error;

pub use self::csv::{parse_grid_csv, parse_lattice_csv, write_grid_csv, write_lattice_csv};
pub use measure_text::{parse_measure, write_measure};
pub use pgm::{lattice_image, parse_pgm, quantize, write_pgm, PgmImage};
pub use raw::{read_raw, write_raw};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum IoError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("{0}")]
    Format(String),
}

impl IoError {
    pub(crate) fn at(line: usize, message: impl Into<String>) -> Self {
        IoError::Parse { line, message: message.into() }
    }
}

/// Ordered `key = value` pairs, written as `# key = value` header lines or
/// as a sidecar file.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Header {
    entries: BTreeMap<String, String>,
}

impl Header {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, key: impl Into<String>, value: impl ToString) -> &mut Self {
        self.entries.insert(key.into(), value.to_string());
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(String::as_str)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&str, &str)> {
        self.entries.iter().map(|(k, v)| (k.as_str(), v.as_str()))
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `# key = value` lines.
    pub fn as_comments(&self) -> String {
        self.entries.iter().map(|(k, v)| format!("# {k} = {v}\n")).collect()
    }

    /// `key = value` lines.
    pub fn as_sidecar(&self) -> String {
        self.entries.iter().map(|(k, v)| format!("{k} = {v}\n")).collect()
    }

    pub fn parse_sidecar(text: &str) -> Result<Header, IoError> {
        let mut header = Header::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| IoError::at(n + 1, format!("expected `key = value`, got {line:?}")))?;
            header.set(k.trim(), v.trim());
        }
        Ok(header)
    }

    /// Whitespace-separated floats stored under `key`.
    pub fn floats(&self, key: &str) -> Result<Vec<f64>, IoError> {
        let raw = self.get(key).ok_or_else(|| IoError::Format(format!("missing `{key}`")))?;
        raw.split_whitespace()
            .map(|t| t.parse::<f64>().map_err(|_| IoError::Format(format!("`{key}`: bad number {t:?}"))))
            .collect()
    }

    pub fn integers(&self, key: &str) -> Result<Vec<i64>, IoError> {
        let raw = self.get(key).ok_or_else(|| IoError::Format(format!("missing `{key}`")))?;
        raw.split_whitespace()
            .map(|t| t.parse::<i64>().map_err(|_| IoError::Format(format!("`{key}`: bad integer {t:?}"))))
            .collect()
    }
}

/// Content lines with their 1-based line numbers, skipping blanks and `#`
/// comments.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().map(|(n, l)| (n + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_round_trip() {
        let mut h = Header::new();
        h.set("spacing", "0.5 0.25").set("mode", "exact");
        let back = Header::parse_sidecar(&h.as_sidecar()).unwrap();
        assert_eq!(back, h);
        assert_eq!(back.floats("spacing").unwrap(), vec![0.5, 0.25]);
        assert_eq!(h.as_comments(), "# mode = exact\n# spacing = 0.5 0.25\n");
        assert!(Header::parse_sidecar("novalue").is_err());
    }
}
