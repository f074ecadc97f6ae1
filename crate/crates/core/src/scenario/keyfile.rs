//! Flat `key = value` configuration text.

use crate::error::{Error, Result};

/// One parsed entry, remembering where it came from for diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct Entry {
    pub key: String,
    pub value: String,
    /// 1-based source line, 0 for entries injected by overrides.
    pub line: usize,
}

/// Ordered key/value entries with unique keys.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct KeyFile {
    entries: Vec<Entry>,
}

impl KeyFile {
    /// Parses UTF-8 text. `#` starts a comment that runs to end of line.
    pub fn parse(text: &str) -> Result<Self> {
        let mut kf = KeyFile::default();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = match raw.find('#') {
                Some(pos) => &raw[..pos],
                None => raw,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("expected 'key = value', found '{line}'"),
                });
            };
            let key = key.trim();
            let value = value.trim();
            if key.is_empty() {
                return Err(Error::Parse {
                    line: line_no,
                    message: "empty key".into(),
                });
            }
            if let Some(prev) = kf.get(key) {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("duplicate key '{key}' (first set on line {})", prev.line),
                });
            }
            kf.entries.push(Entry {
                key: key.to_string(),
                value: value.to_string(),
                line: line_no,
            });
        }
        Ok(kf)
    }

    pub fn get(&self, key: &str) -> Option<&Entry> {
        self.entries.iter().find(|e| e.key == key)
    }

    pub fn value(&self, key: &str) -> Option<&str> {
        self.get(key).map(|e| e.value.as_str())
    }

    /// Sets or replaces a value; replacing keeps the original position.
    pub fn set(&mut self, key: &str, value: &str) {
        match self.entries.iter_mut().find(|e| e.key == key) {
            Some(e) => e.value = value.to_string(),
            None => self.entries.push(Entry {
                key: key.to_string(),
                value: value.to_string(),
                line: 0,
            }),
        }
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }
}

/// Splits a `key=value` override as given on a command line.
pub fn parse_override(s: &str) -> Result<(String, String)> {
    match s.split_once('=') {
        Some((k, v)) if !k.trim().is_empty() => Ok((k.trim().to_string(), v.trim().to_string())),
        _ => Err(Error::Parse {
            line: 0,
            message: format!("override '{s}' is not of the form key=value"),
        }),
    }
}
