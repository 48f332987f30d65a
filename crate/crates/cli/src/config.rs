//! Flat `key = value` config files. Every key mirrors a command-line flag;
//! flags given on the command line win.

use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

use crate::error::{CliError, CliResult};

pub const SEED_ENV: &str = "GEODISCORD_SEED";

const KNOWN_KEYS: &[&str] = &[
    "family", "param", "file", "files", "dims", "dim", "engine", "variant", "restarts", "seed", "grid",
    "quantities", "output", "format", "samples", "allow_o4_violation",
];

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Config {
    values: BTreeMap<String, String>,
}

impl Config {
    pub fn parse(text: &str) -> CliResult<Self> {
        let mut values = BTreeMap::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| CliError::usage(format!("config line {}: expected key = value", n + 1)))?;
            let key = k.trim().replace('-', "_");
            if !KNOWN_KEYS.contains(&key.as_str()) {
                return Err(CliError::usage(format!("config line {}: unknown key '{key}'", n + 1)));
            }
            let v = v.trim().to_string();
            // repeated keys accumulate, like repeated flags
            values
                .entry(key)
                .and_modify(|old: &mut String| {
                    old.push(',');
                    old.push_str(&v);
                })
                .or_insert(v);
        }
        Ok(Self { values })
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::parse(&text)
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    /// Comma- or whitespace-separated list.
    pub fn list(&self, key: &str) -> Vec<String> {
        self.get(key).map(split_list).unwrap_or_default()
    }

    /// `flag` if given, else the file value parsed as `T`.
    pub fn pick<T: FromStr>(&self, flag: Option<T>, key: &str) -> CliResult<Option<T>> {
        if flag.is_some() {
            return Ok(flag);
        }
        self.get(key)
            .map(|s| s.parse::<T>().map_err(|_| CliError::usage(format!("config: bad value for {key}: '{s}'"))))
            .transpose()
    }

    /// A list flag, falling back to the file when the flag was not given.
    pub fn pick_list(&self, flag: &[String], key: &str) -> Vec<String> {
        if flag.is_empty() {
            self.list(key)
        } else {
            flag.to_vec()
        }
    }
}

pub fn split_list(s: &str) -> Vec<String> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|p| !p.is_empty())
        .map(str::to_string)
        .collect()
}

/// Seed precedence: flag, config file, environment, 0.
pub fn resolve_seed(flag: Option<u64>, cfg: &Config) -> CliResult<u64> {
    if let Some(s) = cfg.pick(flag, "seed")? {
        return Ok(s);
    }
    match std::env::var(SEED_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::usage(format!("{SEED_ENV}: not an unsigned integer: '{v}'"))),
        Err(_) => Ok(0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_merges() {
        let cfg = Config::parse("family = isotropic  # a comment\nparam = beta=0.3\n\nrestarts=5\nparam = x=1").unwrap();
        assert_eq!(cfg.get("family"), Some("isotropic"));
        assert_eq!(cfg.list("param"), vec!["beta=0.3", "x=1"]);
        assert_eq!(cfg.pick::<usize>(None, "restarts").unwrap(), Some(5));
        assert_eq!(cfg.pick(Some(9usize), "restarts").unwrap(), Some(9));
        assert_eq!(cfg.pick_list(&["beta=0.1".into()], "param"), vec!["beta=0.1"]);
    }

    #[test]
    fn rejects_garbage() {
        assert!(Config::parse("nonsense").is_err());
        assert!(Config::parse("colour = red").is_err());
        let cfg = Config::parse("restarts = many").unwrap();
        assert!(cfg.pick::<usize>(None, "restarts").is_err());
    }

    #[test]
    fn dashes_normalise() {
        let cfg = Config::parse("allow-o4-violation = true").unwrap();
        assert_eq!(cfg.pick::<bool>(None, "allow_o4_violation").unwrap(), Some(true));
    }
}
