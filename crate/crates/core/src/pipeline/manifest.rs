use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// What a stage read, under which parameters, and what it wrote. Holds no
/// timestamps or absolute paths so reruns compare byte for byte.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub stage: String,
    pub tool_version: String,
    /// Input name to SHA-256 of its contents.
    pub inputs: BTreeMap<String, String>,
    pub config_digest: String,
    pub counts: BTreeMap<String, u64>,
    /// Output file name to SHA-256 of its contents.
    pub outputs: BTreeMap<String, String>,
}

impl Manifest {
    pub fn new(stage: &str, parameters: &serde_json::Value) -> Manifest {
        Manifest {
            stage: stage.to_string(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            inputs: BTreeMap::new(),
            config_digest: sha256_hex(parameters.to_string().as_bytes()),
            counts: BTreeMap::new(),
            outputs: BTreeMap::new(),
        }
    }

    pub fn input(&mut self, name: &str, contents: &[u8]) {
        self.inputs.insert(name.to_string(), sha256_hex(contents));
    }

    pub fn count(&mut self, name: &str, value: usize) {
        self.counts.insert(name.to_string(), value as u64);
    }

    pub fn output(&mut self, name: &str, contents: &[u8]) {
        self.outputs.insert(name.to_string(), sha256_hex(contents));
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("manifest serializes");
        text.push('\n');
        text
    }

    pub fn read(path: &Path) -> std::io::Result<Manifest> {
        let text = std::fs::read_to_string(path)?;
        serde_json::from_str(&text).map_err(std::io::Error::other)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digest_is_sha256() {
        assert_eq!(sha256_hex(b"abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    }

    #[test]
    fn json_round_trip() {
        let mut m = Manifest::new("lexicon", &serde_json::json!({"alpha": 0.5}));
        m.input("dump_ja", b"x");
        m.count("entries", 3);
        let back: Manifest = serde_json::from_str(&m.to_json()).unwrap();
        assert_eq!(back, m);
    }
}
