//! Flat `key = value` configuration files.
//!
//! ```text
//! # comments start with '#' or ';'
//! seed = 42
//! dims = 2, 4, 8, 16
//! pair_kinds = DisjointSupport, Arbitrary
//! ```
//!
//! Keys are case-insensitive; `-` and `_` are interchangeable. A key may
//! appear only once. Each command declares the keys it accepts and rejects
//! the rest, naming the offending key and line.

use std::path::Path;
use std::str::FromStr;

use crate::error::{CliError, Result};

#[derive(Debug, Clone)]
struct Entry {
    key: String,
    value: String,
    line: usize,
}

#[derive(Debug, Clone, Default)]
pub struct ConfigFile {
    path: String,
    entries: Vec<Entry>,
}

fn canonical_key(key: &str) -> String {
    key.trim().to_ascii_lowercase().replace('-', "_")
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            context: format!("cannot read config {}", path.display()),
            source,
        })?;
        Self::parse(&path.display().to_string(), &text)
    }

    pub fn parse(path: &str, text: &str) -> Result<Self> {
        let mut entries: Vec<Entry> = Vec::new();
        for (index, raw) in text.lines().enumerate() {
            let line = index + 1;
            let content = raw.trim();
            if content.is_empty() || content.starts_with('#') || content.starts_with(';') {
                continue;
            }
            let err = |message: String| CliError::Config { path: path.to_string(), line, message };
            let (key, value) = content
                .split_once('=')
                .ok_or_else(|| err(format!("expected `key = value`, got `{content}`")))?;
            let key = canonical_key(key);
            if key.is_empty() || !key.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                return Err(err(format!("bad key `{}`", key)));
            }
            if let Some(prev) = entries.iter().find(|e| e.key == key) {
                return Err(err(format!("duplicate key `{key}` (first set on line {})", prev.line)));
            }
            entries.push(Entry { key, value: value.trim().to_string(), line });
        }
        Ok(Self { path: path.to_string(), entries })
    }

    /// Fails on the first key not in `allowed`.
    pub fn check_keys(&self, allowed: &[&str]) -> Result<()> {
        match self.entries.iter().find(|e| !allowed.contains(&e.key.as_str())) {
            Some(e) => Err(CliError::Config {
                path: self.path.clone(),
                line: e.line,
                message: format!("unknown key `{}` (expected one of: {})", e.key, allowed.join(", ")),
            }),
            None => Ok(()),
        }
    }

    fn entry(&self, key: &str) -> Option<&Entry> {
        self.entries.iter().find(|e| e.key == key)
    }

    fn bad_value(&self, e: &Entry, detail: impl std::fmt::Display) -> CliError {
        CliError::Config {
            path: self.path.clone(),
            line: e.line,
            message: format!("invalid value `{}` for key `{}`: {detail}", e.value, e.key),
        }
    }

    pub fn raw(&self, key: &str) -> Option<&str> {
        self.entry(key).map(|e| e.value.as_str())
    }

    /// Parses `key` with `FromStr`.
    pub fn get<T>(&self, key: &str) -> Result<Option<T>>
    where
        T: FromStr,
        T::Err: std::fmt::Display,
    {
        match self.entry(key) {
            Some(e) => e.value.parse::<T>().map(Some).map_err(|err| self.bad_value(e, err)),
            None => Ok(None),
        }
    }

    /// Parses a comma-separated list.
    pub fn get_list<T>(&self, key: &str) -> Result<Option<Vec<T>>>
    where
        T: FromStr,
        T::Err: std::fmt::Display,
    {
        match self.entry(key) {
            Some(e) => parse_list(&e.value).map(Some).map_err(|err| self.bad_value(e, err)),
            None => Ok(None),
        }
    }

    /// Like [`Self::get`] with a custom parser.
    pub fn get_with<T>(&self, key: &str, parse: impl Fn(&str) -> std::result::Result<T, String>) -> Result<Option<T>> {
        match self.entry(key) {
            Some(e) => parse(&e.value).map(Some).map_err(|err| self.bad_value(e, err)),
            None => Ok(None),
        }
    }
}

pub fn parse_list<T>(text: &str) -> std::result::Result<Vec<T>, String>
where
    T: FromStr,
    T::Err: std::fmt::Display,
{
    let items: Vec<&str> = text.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    if items.is_empty() {
        return Err("empty list".into());
    }
    items
        .into_iter()
        .map(|item| item.parse::<T>().map_err(|e| format!("`{item}`: {e}")))
        .collect()
}

/// `random` or `d1,d2`.
pub fn parse_split(text: &str) -> std::result::Result<Option<(usize, usize)>, String> {
    let text = text.trim();
    if text.eq_ignore_ascii_case("random") {
        return Ok(None);
    }
    match parse_list::<usize>(text)?.as_slice() {
        [left, right] => Ok(Some((*left, *right))),
        _ => Err("expected `random` or two sizes `d1,d2`".into()),
    }
}

pub fn parse_bool(text: &str) -> std::result::Result<bool, String> {
    match text.trim().to_ascii_lowercase().as_str() {
        "true" | "yes" | "on" | "1" => Ok(true),
        "false" | "no" | "off" | "0" => Ok(false),
        other => Err(format!("`{other}` is not a boolean")),
    }
}
