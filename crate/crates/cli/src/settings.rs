//! Parameter lookup with precedence: command-line flag, then config file,
//! then the built-in default.
//!
//! The config file is flat `key = value` text. Keys are long flag names
//! (`critical-current` and `critical_current` are the same key), `#` starts
//! a comment, blank lines are ignored.

use std::collections::BTreeMap;
use std::path::Path;

use crate::error::CliError;
use crate::units::{parse_quantity, Unit};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Source {
    Config,
    Flag,
}

#[derive(Debug, Default, Clone)]
pub struct Settings {
    flags: BTreeMap<String, String>,
    config: BTreeMap<String, String>,
}

pub fn normalize_key(key: &str) -> String {
    key.trim().trim_start_matches("--").replace('-', "_")
}

pub fn parse_config(text: &str, known: &[String]) -> Result<BTreeMap<String, String>, CliError> {
    let mut out = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = match line.find('#') {
            Some(pos) => &line[..pos],
            None => line,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("config line {}: expected `key = value`", i + 1)))?;
        let key = normalize_key(k);
        if !known.contains(&key) {
            return Err(CliError::Usage(format!("config line {}: unknown key `{}`", i + 1, k.trim())));
        }
        if key == "config" {
            return Err(CliError::Usage(format!("config line {}: config files do not nest", i + 1)));
        }
        out.insert(key, v.trim().to_string());
    }
    Ok(out)
}

impl Settings {
    pub fn new(flags: BTreeMap<String, String>, config: BTreeMap<String, String>) -> Self {
        Settings { flags, config }
    }

    pub fn load_config(path: &Path, known: &[String]) -> Result<BTreeMap<String, String>, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        parse_config(&text, known)
    }

    fn lookup(&self, key: &str) -> Option<(&str, Source)> {
        if let Some(v) = self.flags.get(key) {
            return Some((v, Source::Flag));
        }
        self.config.get(key).map(|v| (v.as_str(), Source::Config))
    }

    pub fn raw(&self, key: &str) -> Option<&str> {
        self.lookup(key).map(|(v, _)| v)
    }

    /// Copy with `key` set as if given on the command line; members of its
    /// group in `clear` are dropped at every level.
    pub fn with_value(&self, key: &str, value: &str, clear: &[&str]) -> Settings {
        let mut out = self.clone();
        for k in clear {
            out.flags.remove(*k);
            out.config.remove(*k);
        }
        out.flags.insert(key.to_string(), value.to_string());
        out
    }

    pub fn quantity(&self, key: &str, unit: Unit) -> Result<Option<f64>, CliError> {
        self.raw(key)
            .map(|v| parse_quantity(v, unit).map_err(|e| CliError::Usage(format!("--{}: {e}", key.replace('_', "-")))))
            .transpose()
    }

    pub fn quantity_or(&self, key: &str, unit: Unit, default: f64) -> Result<f64, CliError> {
        Ok(self.quantity(key, unit)?.unwrap_or(default))
    }

    pub fn count(&self, key: &str) -> Result<Option<u64>, CliError> {
        let Some(v) = self.raw(key) else {
            return Ok(None);
        };
        let bad = || CliError::Usage(format!("--{}: `{v}` is not a non-negative integer", key.replace('_', "-")));
        if let Ok(n) = v.replace('_', "").parse::<u64>() {
            return Ok(Some(n));
        }
        // allow 1e6 and friends when the value is integral
        let x: f64 = v.parse().map_err(|_| bad())?;
        if x >= 0.0 && x.fract() == 0.0 && x < 2f64.powi(63) {
            Ok(Some(x as u64))
        } else {
            Err(bad())
        }
    }

    pub fn count_or(&self, key: &str, default: u64) -> Result<u64, CliError> {
        Ok(self.count(key)?.unwrap_or(default))
    }

    pub fn flag(&self, key: &str) -> Result<bool, CliError> {
        match self.raw(key) {
            None => Ok(false),
            Some(v) => match v.to_ascii_lowercase().as_str() {
                "true" | "yes" | "1" | "on" => Ok(true),
                "false" | "no" | "0" | "off" => Ok(false),
                _ => Err(CliError::Usage(format!("--{}: `{v}` is not a boolean", key.replace('_', "-")))),
            },
        }
    }

    /// The member of a group of alternative keys that takes effect: any
    /// given on the command line wins over the config file; two given at the
    /// same level is an error.
    pub fn pick<'a>(&self, group: &[&'a str]) -> Result<Option<&'a str>, CliError> {
        for level in [Source::Flag, Source::Config] {
            let hits: Vec<&str> = group
                .iter()
                .copied()
                .filter(|k| self.lookup(k).is_some_and(|(_, s)| s == level))
                .collect();
            match hits.len() {
                0 => continue,
                1 => return Ok(Some(hits[0])),
                _ => {
                    let names: Vec<String> = hits.iter().map(|k| format!("--{}", k.replace('_', "-"))).collect();
                    let at = if level == Source::Flag { "command line" } else { "config file" };
                    return Err(CliError::Usage(format!("{} are alternatives; give one ({at})", names.join(", "))));
                }
            }
        }
        Ok(None)
    }

    pub fn seed(&self) -> Result<u64, CliError> {
        self.count("seed")?
            .ok_or_else(|| CliError::Usage("this command is randomized and needs --seed <u64>".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn known() -> Vec<String> {
        ["inductance", "li0", "beta", "seed", "exhaustive", "config"]
            .iter()
            .map(|s| s.to_string())
            .collect()
    }

    fn map(pairs: &[(&str, &str)]) -> BTreeMap<String, String> {
        pairs.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect()
    }

    #[test]
    fn config_format() {
        let cfg = parse_config("# device\ninductance = 1nH  # loop\n\nli0=2.4\n", &known()).unwrap();
        assert_eq!(cfg["inductance"], "1nH");
        assert_eq!(cfg["li0"], "2.4");
        assert!(parse_config("bogus = 1", &known()).is_err());
        assert!(parse_config("inductance 1", &known()).is_err());
        assert!(parse_config("config = x", &known()).is_err());
    }

    #[test]
    fn precedence() {
        let s = Settings::new(map(&[("li0", "3")]), map(&[("li0", "2"), ("inductance", "2nH")]));
        assert_eq!(s.quantity("li0", Unit::Dimensionless).unwrap(), Some(3.0));
        assert_eq!(s.quantity_or("inductance", Unit::Henry, 1e-9).unwrap(), 2e-9);
        assert_eq!(s.quantity_or("beta", Unit::Dimensionless, 7.0).unwrap(), 7.0);
    }

    #[test]
    fn groups() {
        let s = Settings::new(map(&[("beta", "10")]), map(&[("li0", "2")]));
        assert_eq!(s.pick(&["beta", "li0"]).unwrap(), Some("beta"));
        let s = Settings::new(map(&[]), map(&[("li0", "2")]));
        assert_eq!(s.pick(&["beta", "li0"]).unwrap(), Some("li0"));
        let s = Settings::new(map(&[("beta", "1"), ("li0", "2")]), map(&[]));
        assert!(s.pick(&["beta", "li0"]).is_err());
        assert_eq!(Settings::default().pick(&["beta"]).unwrap(), None);
    }

    #[test]
    fn counts_and_flags() {
        let s = Settings::new(map(&[("seed", "1e6"), ("exhaustive", "true")]), map(&[]));
        assert_eq!(s.count("seed").unwrap(), Some(1_000_000));
        assert!(s.flag("exhaustive").unwrap());
        assert!(Settings::default().seed().is_err());
        let s = Settings::new(map(&[("seed", "-1")]), map(&[]));
        assert!(s.count("seed").is_err());
    }
}
