//! Flat `key = value` configuration with per-command sections and flag
//! overrides.
//!
//! ```text
//! # comment
//! percentile = 95        # applies to every command
//! [fem-gorge]
//! m = 1.8, 2.4, 2.8      # applies to fem-gorge only
//! ```
//!
//! A `[run]` section (as written in manifests) is ignored, so a manifest can
//! be passed back as a config to replay a run.

use std::cell::RefCell;
use std::collections::BTreeMap;
use std::str::FromStr;

#[derive(Debug, Clone, PartialEq)]
pub struct ConfigFile {
    global: BTreeMap<String, String>,
    sections: BTreeMap<String, BTreeMap<String, String>>,
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self, String> {
        let mut cfg = ConfigFile {
            global: BTreeMap::new(),
            sections: BTreeMap::new(),
        };
        let mut section: Option<String> = None;
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(name) = line.strip_prefix('[') {
                let name = name
                    .strip_suffix(']')
                    .ok_or(format!("line {}: unterminated section", i + 1))?
                    .trim();
                if name.is_empty() {
                    return Err(format!("line {}: empty section name", i + 1));
                }
                section = Some(name.to_owned());
                cfg.sections.entry(name.to_owned()).or_default();
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or(format!("line {}: expected `key = value`", i + 1))?;
            let (k, v) = (k.trim(), v.trim());
            if k.is_empty() {
                return Err(format!("line {}: empty key", i + 1));
            }
            let map = match &section {
                Some(s) => cfg.sections.get_mut(s).expect("section created"),
                None => &mut cfg.global,
            };
            if map.insert(k.to_owned(), v.to_owned()).is_some() {
                return Err(format!("line {}: duplicate key `{k}`", i + 1));
            }
        }
        Ok(cfg)
    }
}

/// Resolved parameters of one command: flag, then command section, then
/// global key, then the built-in default. Every lookup is recorded.
#[derive(Debug, Default)]
pub struct Params {
    global: BTreeMap<String, String>,
    section: BTreeMap<String, String>,
    flags: BTreeMap<String, String>,
    resolved: RefCell<BTreeMap<String, String>>,
}

impl Params {
    pub fn new(
        config: Option<&ConfigFile>,
        command: &str,
        flags: Vec<(&str, Option<String>)>,
    ) -> Self {
        let (global, section) = match config {
            Some(c) => (
                c.global.clone(),
                c.sections.get(command).cloned().unwrap_or_default(),
            ),
            None => Default::default(),
        };
        let flags = flags
            .into_iter()
            .filter_map(|(k, v)| v.map(|v| (k.to_owned(), v)))
            .collect();
        Params {
            global,
            section,
            flags,
            resolved: RefCell::default(),
        }
    }

    fn raw(&self, key: &str) -> Option<&String> {
        self.flags
            .get(key)
            .or_else(|| self.section.get(key))
            .or_else(|| self.global.get(key))
    }

    fn record(&self, key: &str, value: String) {
        self.resolved.borrow_mut().insert(key.to_owned(), value);
    }

    pub fn get<T: FromStr + ToString>(&self, key: &str, default: T) -> Result<T, String> {
        let v = match self.raw(key) {
            Some(s) => s
                .parse()
                .map_err(|_| format!("`{key}`: cannot parse `{s}`"))?,
            None => default,
        };
        self.record(key, v.to_string());
        Ok(v)
    }

    pub fn get_list(&self, key: &str, default: &[f64]) -> Result<Vec<f64>, String> {
        let v = match self.raw(key) {
            Some(s) => parse_list(s).map_err(|e| format!("`{key}`: {e}"))?,
            None => default.to_vec(),
        };
        self.record(key, join(&v));
        Ok(v)
    }

    pub fn get_opt(&self, key: &str) -> Result<Option<f64>, String> {
        match self.raw(key) {
            Some(s) => {
                let v: f64 = s
                    .parse()
                    .map_err(|_| format!("`{key}`: cannot parse `{s}`"))?;
                self.record(key, v.to_string());
                Ok(Some(v))
            }
            None => Ok(None),
        }
    }

    /// Keys of the command section that no lookup consumed.
    pub fn unused_section_keys(&self) -> Vec<String> {
        let used = self.resolved.borrow();
        self.section
            .keys()
            .filter(|k| !used.contains_key(*k))
            .cloned()
            .collect()
    }

    pub fn resolved(&self) -> BTreeMap<String, String> {
        self.resolved.borrow().clone()
    }
}

pub fn parse_list(s: &str) -> Result<Vec<f64>, String> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<f64>()
                .map_err(|_| format!("bad number `{}`", x.trim()))
        })
        .collect()
}

pub fn join(v: &[f64]) -> String {
    v.iter().map(f64::to_string).collect::<Vec<_>>().join(",")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence_and_recording() {
        let c = ConfigFile::parse(
            "m = 2.0\nrho = 0.1 # tail\n[fem-gorge]\nm = 2.8\n[run]\ncommand = x\n",
        )
        .unwrap();
        let p = Params::new(
            Some(&c),
            "fem-gorge",
            vec![("rings", Some("9".into())), ("depth", None)],
        );
        assert_eq!(p.get("m", 1.5).unwrap(), 2.8);
        assert_eq!(p.get("rings", 8usize).unwrap(), 9);
        assert_eq!(p.get("depth", 0.5).unwrap(), 0.5);
        assert_eq!(p.get_list("rho", &[1.0]).unwrap(), vec![0.1]);
        assert_eq!(p.resolved()["rho"], "0.1");
        assert!(p.unused_section_keys().is_empty());
        let q = Params::new(Some(&c), "horn", vec![]);
        assert_eq!(q.get("m", 1.5).unwrap(), 2.0);
    }

    #[test]
    fn malformed_text() {
        assert!(ConfigFile::parse("just words").is_err());
        assert!(ConfigFile::parse("[open\n").is_err());
        assert!(ConfigFile::parse("a = 1\na = 2").is_err());
        assert!(ConfigFile::parse("= 1").is_err());
        let p = Params::new(None, "x", vec![("m", Some("two".into()))]);
        assert!(p.get("m", 1.0).is_err());
        assert!(parse_list("1, 2,x").is_err());
    }
}
