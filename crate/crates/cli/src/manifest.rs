//! Record of one run: command, resolved parameters, input hash, outputs and
//! wall time. The text is also a valid config, so `--config <manifest>`
//! replays the run.

use std::collections::BTreeMap;
use std::time::Duration;

use sha2::{Digest, Sha256};

#[derive(Debug, Clone, PartialEq)]
pub struct RunManifest {
    pub command: String,
    pub config: BTreeMap<String, String>,
    pub input_hash: String,
    pub outputs: Vec<String>,
    pub wall_time: Duration,
}

/// SHA-256 of the command name and its resolved parameters.
pub fn input_hash(command: &str, config: &BTreeMap<String, String>) -> String {
    let mut h = Sha256::new();
    h.update(command.as_bytes());
    for (k, v) in config {
        h.update(format!("\n{k}={v}").as_bytes());
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

impl RunManifest {
    pub fn new(
        command: &str,
        config: BTreeMap<String, String>,
        outputs: Vec<String>,
        wall_time: Duration,
    ) -> Self {
        let input_hash = input_hash(command, &config);
        RunManifest {
            command: command.to_owned(),
            config,
            input_hash,
            outputs,
            wall_time,
        }
    }

    pub fn file_name(&self) -> String {
        format!("{}.manifest", self.command)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::from("[run]\n");
        s += &format!("command = {}\n", self.command);
        s += &format!("input_hash = {}\n", self.input_hash);
        s += &format!("outputs = {}\n", self.outputs.join(" "));
        s += &format!("wall_time_s = {:.3}\n\n", self.wall_time.as_secs_f64());
        s += &format!("[{}]\n", self.command);
        for (k, v) in &self.config {
            s += &format!("{k} = {v}\n");
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::{ConfigFile, Params};

    #[test]
    fn manifest_replays_as_config() {
        let cfg = BTreeMap::from([
            ("m".to_owned(), "2.8".to_owned()),
            ("rings".to_owned(), "8".to_owned()),
        ]);
        let m = RunManifest::new(
            "fem-gorge",
            cfg.clone(),
            vec!["gorge_m2.8.csv".into()],
            Duration::from_millis(5),
        );
        let parsed = ConfigFile::parse(&m.to_text()).unwrap();
        let p = Params::new(Some(&parsed), "fem-gorge", vec![]);
        assert_eq!(p.get("m", 0.0).unwrap(), 2.8);
        assert_eq!(p.get("rings", 0usize).unwrap(), 8);
        assert_eq!(m.input_hash.len(), 64);
        assert_eq!(m.input_hash, input_hash("fem-gorge", &cfg));
        assert_ne!(m.input_hash, input_hash("fem-ridge-free", &cfg));
    }
}
