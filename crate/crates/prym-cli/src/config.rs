//! Flat key=value config files. Keys are the long flag names; flags given on
//! the command line override file values.

use std::collections::HashMap;
use std::fmt::Display;
use std::path::Path;
use std::str::FromStr;

const KNOWN_KEYS: &[&str] = &[
    "p",
    "f1",
    "f2",
    "deg1",
    "deg2",
    "max-covers",
    "seed",
    "verify-depth",
    "budget",
    "extension",
    "out",
    "format",
    "jobs",
    "count",
    "resolution",
];

/// Parsed config file contents.
#[derive(Debug, Clone, Default)]
pub struct FileConfig {
    values: HashMap<String, String>,
}

impl FileConfig {
    /// Parse `key=value` lines; blank lines and `#` comments are skipped,
    /// unknown keys are rejected.
    pub fn parse(text: &str) -> Result<FileConfig, String> {
        let mut values = HashMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| format!("config line {}: expected key=value, got {raw:?}", lineno + 1))?;
            let key = key.trim();
            if !KNOWN_KEYS.contains(&key) {
                return Err(format!("config line {}: unknown key {key:?}", lineno + 1));
            }
            values.insert(key.to_string(), value.trim().to_string());
        }
        Ok(FileConfig { values })
    }

    pub fn load(path: &Path) -> Result<FileConfig, String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
        FileConfig::parse(&text)
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    /// Layered lookup: flag wins over file value wins over default.
    pub fn pick<T>(&self, flag: Option<T>, key: &str, default: T) -> Result<T, String>
    where
        T: FromStr,
        T::Err: Display,
    {
        if let Some(v) = flag {
            return Ok(v);
        }
        match self.get(key) {
            Some(s) => s
                .parse()
                .map_err(|e| format!("config key {key}={s:?}: {e}")),
            None => Ok(default),
        }
    }

    /// Same layering for values that stay optional when absent everywhere.
    pub fn pick_opt<T>(&self, flag: Option<T>, key: &str) -> Result<Option<T>, String>
    where
        T: FromStr,
        T::Err: Display,
    {
        if flag.is_some() {
            return Ok(flag);
        }
        match self.get(key) {
            Some(s) => s
                .parse()
                .map(Some)
                .map_err(|e| format!("config key {key}={s:?}: {e}")),
            None => Ok(None),
        }
    }
}

/// Resolution strings accept both `1/64` and `0.015625`.
pub fn parse_resolution(s: &str) -> Result<f64, String> {
    let v = match s.split_once('/') {
        Some((num, den)) => {
            let num: f64 = num.trim().parse().map_err(|_| format!("bad resolution {s:?}"))?;
            let den: f64 = den.trim().parse().map_err(|_| format!("bad resolution {s:?}"))?;
            num / den
        }
        None => s.trim().parse().map_err(|_| format!("bad resolution {s:?}"))?,
    };
    if !(v.is_finite() && v > 0.0) {
        return Err(format!("resolution must be a positive real, got {s:?}"));
    }
    Ok(v)
}

/// Comma-separated prime list for `--p` in sweep mode.
pub fn parse_primes(s: &str) -> Result<Vec<u64>, String> {
    let primes: Result<Vec<u64>, _> = s.split(',').map(|t| t.trim().parse::<u64>()).collect();
    let primes = primes.map_err(|_| format!("bad prime list {s:?} (expected e.g. 3,5)"))?;
    if primes.is_empty() {
        return Err("prime list is empty".into());
    }
    Ok(primes)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_layers() {
        let cfg = FileConfig::parse("# demo\nseed = 9\nmax-covers=25\n\nformat=json\n").unwrap();
        assert_eq!(cfg.get("seed"), Some("9"));
        assert_eq!(cfg.pick(None::<u64>, "seed", 0).unwrap(), 9);
        assert_eq!(cfg.pick(Some(4u64), "seed", 0).unwrap(), 4);
        assert_eq!(cfg.pick(None::<u64>, "budget", 77).unwrap(), 77);
        assert_eq!(cfg.pick_opt(None::<usize>, "max-covers").unwrap(), Some(25));
    }

    #[test]
    fn rejects_unknown_and_malformed() {
        assert!(FileConfig::parse("sneed=3").unwrap_err().contains("unknown key"));
        assert!(FileConfig::parse("just a line").unwrap_err().contains("key=value"));
    }

    #[test]
    fn resolution_forms() {
        assert_eq!(parse_resolution("1/64").unwrap(), 1.0 / 64.0);
        assert_eq!(parse_resolution("0.25").unwrap(), 0.25);
        assert!(parse_resolution("0").is_err());
        assert!(parse_resolution("x/y").is_err());
    }

    #[test]
    fn prime_lists() {
        assert_eq!(parse_primes("3,5").unwrap(), vec![3, 5]);
        assert_eq!(parse_primes(" 7 ").unwrap(), vec![7]);
        assert!(parse_primes("3;5").is_err());
        assert!(parse_primes("").is_err());
    }
}
