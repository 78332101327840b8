//! Flat `key = value` configuration files with `#` comments.

use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

use bifurcate_core::{parse_rational, Rational};

use crate::CliError;

/// Parsed key/value pairs; every key must be consumed by exactly one
/// getter, and [`RawConfig::finish`] rejects whatever is left over.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RawConfig {
    entries: BTreeMap<String, (usize, String)>,
    echo: BTreeMap<String, String>,
}

impl RawConfig {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut entries = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(CliError::Config(format!(
                    "line {line_no}: expected key = value, got {line:?}"
                )));
            };
            let (key, value) = (key.trim(), value.trim());
            if key.is_empty() || !key.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                return Err(CliError::Config(format!(
                    "line {line_no}: malformed key {key:?}"
                )));
            }
            if value.is_empty() {
                return Err(CliError::Config(format!(
                    "line {line_no}: empty value for {key}"
                )));
            }
            if entries
                .insert(key.to_string(), (line_no, value.to_string()))
                .is_some()
            {
                return Err(CliError::Config(format!(
                    "line {line_no}: duplicate key {key}"
                )));
            }
        }
        Ok(RawConfig {
            entries,
            echo: BTreeMap::new(),
        })
    }

    pub fn load(path: Option<&Path>) -> Result<Self, CliError> {
        match path {
            None => Ok(RawConfig::default()),
            Some(p) => {
                let text = std::fs::read_to_string(p).map_err(|e| CliError::io(p, e))?;
                Self::parse(&text)
            }
        }
    }

    fn take(&mut self, key: &str) -> Option<(usize, String)> {
        self.entries.remove(key)
    }

    /// Parses `key` with `FromStr`, falling back to `default`.
    pub fn get<T>(&mut self, key: &str, default: T) -> Result<T, CliError>
    where
        T: FromStr + ToString,
        T::Err: std::fmt::Display,
    {
        let value = match self.take(key) {
            None => default,
            Some((line, v)) => v
                .parse()
                .map_err(|e| CliError::Config(format!("line {line}: {key} = {v:?}: {e}")))?,
        };
        self.echo.insert(key.to_string(), value.to_string());
        Ok(value)
    }

    pub fn get_string(&mut self, key: &str) -> Result<Option<String>, CliError> {
        let v = self.take(key).map(|(_, v)| v);
        if let Some(v) = &v {
            self.echo.insert(key.to_string(), v.clone());
        }
        Ok(v)
    }

    /// Exact rational, written as an integer, a fraction or a decimal.
    pub fn get_rational(&mut self, key: &str, default: &str) -> Result<Rational, CliError> {
        let (line, text) = self.take(key).unwrap_or((0, default.to_string()));
        let q = parse_rational(&text)
            .map_err(|e| CliError::Config(format!("line {line}: {key} = {text:?}: {e}")))?;
        self.echo.insert(key.to_string(), text);
        Ok(q)
    }

    /// Comma-separated, finite, strictly increasing list.
    pub fn get_grid(&mut self, key: &str, default: &[f64]) -> Result<Vec<f64>, CliError> {
        let grid = match self.take(key) {
            None => default.to_vec(),
            Some((line, text)) => text
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse::<f64>()
                        .map_err(|e| CliError::Config(format!("line {line}: {key}: {t:?}: {e}")))
                })
                .collect::<Result<Vec<_>, _>>()?,
        };
        if grid.is_empty() {
            return Err(CliError::Config(format!("{key}: empty list")));
        }
        if grid.iter().any(|x| !x.is_finite()) {
            return Err(CliError::Config(format!("{key}: values must be finite")));
        }
        if grid.windows(2).any(|w| w[0] >= w[1]) {
            return Err(CliError::Config(format!(
                "{key}: values must be strictly increasing"
            )));
        }
        self.echo.insert(
            key.to_string(),
            grid.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(","),
        );
        Ok(grid)
    }

    /// Errors on any key no getter asked for.
    pub fn finish(self) -> Result<BTreeMap<String, String>, CliError> {
        if let Some((key, (line, _))) = self.entries.iter().next() {
            let more = self.entries.len() - 1;
            let suffix = if more > 0 {
                format!(" and {more} more")
            } else {
                String::new()
            };
            return Err(CliError::Config(format!(
                "line {line}: unknown key `{key}`{suffix}"
            )));
        }
        Ok(self.echo)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_comments_and_defaults() {
        let mut c = RawConfig::parse("# header\nlambda = 9.3   # trailing\n\ndt=0.01\n").unwrap();
        assert_eq!(
            c.get_rational("lambda", "9").unwrap(),
            parse_rational("93/10").unwrap()
        );
        assert_eq!(c.get("dt", 1e-3).unwrap(), 0.01);
        assert_eq!(c.get("t_end", 200.0).unwrap(), 200.0);
        let echo = c.finish().unwrap();
        assert_eq!(echo["lambda"], "9.3");
        assert_eq!(echo["t_end"], "200");
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(RawConfig::parse("lambda 9").is_err());
        assert!(RawConfig::parse("lam bda = 9").is_err());
        assert!(RawConfig::parse("lambda =").is_err());
        assert!(RawConfig::parse("a = 1\na = 2").is_err());
        let mut c = RawConfig::parse("dt = fast").unwrap();
        assert!(c.get("dt", 1.0).is_err());
    }

    #[test]
    fn unknown_keys_are_reported() {
        let mut c = RawConfig::parse("lambda = 9\nlamda = 9.2").unwrap();
        c.get_rational("lambda", "9").unwrap();
        let err = c.finish().unwrap_err().to_string();
        assert!(err.contains("lamda"), "{err}");
    }

    #[test]
    fn grids_must_be_sorted_and_finite() {
        let grid = |s: &str| {
            RawConfig::parse(&format!("lambdas = {s}"))
                .unwrap()
                .get_grid("lambdas", &[])
        };
        assert_eq!(grid("8.5, 9, 9.2").unwrap(), vec![8.5, 9.0, 9.2]);
        assert!(grid("9.2, 9").is_err());
        assert!(grid("9, 9").is_err());
        assert!(grid("9, inf").is_err());
        assert!(grid("9, x").is_err());
    }
}
