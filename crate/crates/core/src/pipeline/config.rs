use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use serde::Serialize;
use toml::{Table, Value};

use crate::aligner::AlignConfig;
use crate::eval::Strategy;
use crate::rules::{RuleConfig, RuleId};

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("config is not valid TOML: {0}")]
    Parse(String),
    #[error("missing config key `{0}`")]
    Missing(String),
    #[error("unknown config key `{0}`")]
    Unknown(String),
    #[error("config key `{key}`: {message}")]
    Invalid { key: String, message: String },
    #[error("config key `{key}` names a file that does not exist: {path}")]
    NoSuchFile { key: String, path: PathBuf },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputPaths {
    pub dump_ja: PathBuf,
    pub dump_es: PathBuf,
    pub dictionary: PathBuf,
    pub stopwords_ja: Option<PathBuf>,
    pub stopwords_es: Option<PathBuf>,
    pub seed_ja: Option<PathBuf>,
    pub seed_es: Option<PathBuf>,
    /// Pre-tagged sentences that replace the built-in taggers.
    pub tagged_ja: Option<PathBuf>,
    pub tagged_es: Option<PathBuf>,
    pub gold: Option<PathBuf>,
    pub judgments_rule_based: Option<PathBuf>,
    pub judgments_baseline: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvalConfig {
    pub sample_size: usize,
    pub seed: u64,
    pub strategy: Strategy,
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig { sample_size: 100, seed: 42, strategy: Strategy::Uniform }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PipelineConfig {
    pub input: InputPaths,
    pub output_dir: PathBuf,
    pub align: AlignConfig,
    pub rules: RuleConfig,
    pub eval: EvalConfig,
}

/// Reads typed values out of a TOML table, tracking the dotted key path for
/// error messages.
struct Section<'a> {
    name: &'a str,
    table: Option<&'a Table>,
}

impl<'a> Section<'a> {
    fn new(root: &'a Table, name: &'a str) -> Result<Section<'a>, ConfigError> {
        let table = match root.get(name) {
            None => None,
            Some(Value::Table(t)) => Some(t),
            Some(_) => return Err(invalid(name, "must be a table")),
        };
        Ok(Section { name, table })
    }

    fn key(&self, k: &str) -> String {
        format!("{}.{k}", self.name)
    }

    fn check_keys(&self, allowed: &[&str]) -> Result<(), ConfigError> {
        for k in self.table.into_iter().flat_map(|t| t.keys()) {
            if !allowed.contains(&k.as_str()) {
                return Err(ConfigError::Unknown(self.key(k)));
            }
        }
        Ok(())
    }

    fn value(&self, k: &str) -> Option<&'a Value> {
        self.table.and_then(|t| t.get(k))
    }

    fn str(&self, k: &str) -> Result<Option<&'a str>, ConfigError> {
        match self.value(k) {
            None => Ok(None),
            Some(Value::String(s)) => Ok(Some(s)),
            Some(_) => Err(invalid(&self.key(k), "must be a string")),
        }
    }

    fn float(&self, k: &str, default: f64) -> Result<f64, ConfigError> {
        match self.value(k) {
            None => Ok(default),
            Some(Value::Float(f)) => Ok(*f),
            Some(Value::Integer(i)) => Ok(*i as f64),
            Some(_) => Err(invalid(&self.key(k), "must be a number")),
        }
    }

    fn uint(&self, k: &str) -> Result<Option<u64>, ConfigError> {
        match self.value(k) {
            None => Ok(None),
            Some(Value::Integer(i)) if *i >= 0 => Ok(Some(*i as u64)),
            Some(_) => Err(invalid(&self.key(k), "must be a non-negative integer")),
        }
    }

    fn bool(&self, k: &str, default: bool) -> Result<bool, ConfigError> {
        match self.value(k) {
            None => Ok(default),
            Some(Value::Boolean(b)) => Ok(*b),
            Some(_) => Err(invalid(&self.key(k), "must be true or false")),
        }
    }
}

fn invalid(key: &str, message: impl Into<String>) -> ConfigError {
    ConfigError::Invalid { key: key.to_string(), message: message.into() }
}

const INPUT_KEYS: [&str; 12] = [
    "dump_ja",
    "dump_es",
    "dictionary",
    "stopwords_ja",
    "stopwords_es",
    "seed_ja",
    "seed_es",
    "tagged_ja",
    "tagged_es",
    "gold",
    "judgments_rule_based",
    "judgments_baseline",
];

impl PipelineConfig {
    pub fn load(path: &Path) -> Result<PipelineConfig, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io { path: path.to_path_buf(), source })?;
        let base = path.parent().unwrap_or(Path::new("."));
        Self::parse(&text, base)
    }

    /// Parses config text; relative paths are taken against `base`.
    pub fn parse(text: &str, base: &Path) -> Result<PipelineConfig, ConfigError> {
        let root: Table = text.parse().map_err(|e: toml::de::Error| ConfigError::Parse(e.message().to_string()))?;
        for k in root.keys() {
            if !["input", "output", "align", "rules", "eval"].contains(&k.as_str()) {
                return Err(ConfigError::Unknown(k.clone()));
            }
        }

        let input = Section::new(&root, "input")?;
        input.check_keys(&INPUT_KEYS)?;
        let path = |k: &str| -> Result<Option<PathBuf>, ConfigError> {
            let Some(s) = input.str(k)? else { return Ok(None) };
            let p = base.join(s);
            if !p.is_file() {
                return Err(ConfigError::NoSuchFile { key: input.key(k), path: p });
            }
            Ok(Some(p))
        };
        let required = |k: &str| path(k)?.ok_or_else(|| ConfigError::Missing(input.key(k)));
        let input_paths = InputPaths {
            dump_ja: required("dump_ja")?,
            dump_es: required("dump_es")?,
            dictionary: required("dictionary")?,
            stopwords_ja: path("stopwords_ja")?,
            stopwords_es: path("stopwords_es")?,
            seed_ja: path("seed_ja")?,
            seed_es: path("seed_es")?,
            tagged_ja: path("tagged_ja")?,
            tagged_es: path("tagged_es")?,
            gold: path("gold")?,
            judgments_rule_based: path("judgments_rule_based")?,
            judgments_baseline: path("judgments_baseline")?,
        };

        let output = Section::new(&root, "output")?;
        output.check_keys(&["dir"])?;
        let output_dir = base.join(output.str("dir")?.ok_or_else(|| ConfigError::Missing("output.dir".into()))?);

        let a = Section::new(&root, "align")?;
        a.check_keys(&["alpha", "tau_accept", "tau_partial_noun", "first_sentence_bonus", "max_candidates_per_sentence"])?;
        let defaults = AlignConfig::default();
        let align = AlignConfig {
            alpha: a.float("alpha", defaults.alpha)?,
            tau_accept: a.float("tau_accept", defaults.tau_accept)?,
            tau_partial_noun: a.bool("tau_partial_noun", defaults.tau_partial_noun)?,
            first_sentence_bonus: a.float("first_sentence_bonus", defaults.first_sentence_bonus)?,
            max_candidates_per_sentence: a.uint("max_candidates_per_sentence")?.map(|n| n as usize),
        };
        align.validate().map_err(|m| invalid("align", m))?;

        let r = Section::new(&root, "rules")?;
        let mut rule_keys: Vec<&str> = vec!["cop_window", "ne_ngram_max"];
        rule_keys.extend(RuleId::ALL.iter().map(|id| id.as_str()));
        r.check_keys(&rule_keys)?;
        let mut disabled = BTreeSet::new();
        for id in RuleId::ALL {
            let name = r.key(id.as_str());
            let table = match r.value(id.as_str()) {
                None => None,
                Some(Value::Table(t)) => Some(t),
                Some(_) => return Err(invalid(&name, "must be a table")),
            };
            let toggle = Section { name: &name, table };
            toggle.check_keys(&["enabled"])?;
            if !toggle.bool("enabled", true)? {
                disabled.insert(id);
            }
        }
        let rule_defaults = RuleConfig::default();
        let rules = RuleConfig {
            disabled,
            cop_window: r.uint("cop_window")?.map_or(rule_defaults.cop_window, |n| n as usize),
            ne_ngram_max: r.uint("ne_ngram_max")?.map_or(rule_defaults.ne_ngram_max, |n| n as usize),
        };
        if rules.ne_ngram_max == 0 {
            return Err(invalid("rules.ne_ngram_max", "must be at least 1"));
        }

        let e = Section::new(&root, "eval")?;
        e.check_keys(&["sample_size", "seed", "strategy"])?;
        let eval_defaults = EvalConfig::default();
        let strategy = match e.str("strategy")? {
            None => eval_defaults.strategy,
            Some(s) => s.parse().map_err(|m: String| invalid("eval.strategy", m))?,
        };
        let eval = EvalConfig {
            sample_size: e.uint("sample_size")?.map_or(eval_defaults.sample_size, |n| n as usize),
            seed: e.uint("seed")?.unwrap_or(eval_defaults.seed),
            strategy,
        };

        Ok(PipelineConfig { input: input_paths, output_dir, align, rules, eval })
    }

    /// The parameters that shape outputs, excluding file locations (whose
    /// contents are digested separately) and the worker count.
    pub fn parameters_json(&self) -> serde_json::Value {
        serde_json::json!({
            "align": self.align,
            "rules": self.rules,
            "eval": self.eval,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fixture_dir() -> tempfile::TempDir {
        let dir = tempfile::tempdir().unwrap();
        for f in ["ja.xml", "es.xml", "dict.tsv"] {
            std::fs::write(dir.path().join(f), "").unwrap();
        }
        dir
    }

    const MINIMAL: &str = "[input]\ndump_ja = \"ja.xml\"\ndump_es = \"es.xml\"\ndictionary = \"dict.tsv\"\n[output]\ndir = \"out\"\n";

    #[test]
    fn minimal_config_gets_defaults() {
        let dir = fixture_dir();
        let cfg = PipelineConfig::parse(MINIMAL, dir.path()).unwrap();
        assert_eq!(cfg.align, AlignConfig::default());
        assert_eq!(cfg.rules, RuleConfig::default());
        assert_eq!(cfg.output_dir, dir.path().join("out"));
    }

    #[test]
    fn missing_key_is_named() {
        let dir = fixture_dir();
        let err = PipelineConfig::parse(&MINIMAL.replace("dump_ja = \"ja.xml\"\n", ""), dir.path()).unwrap_err();
        assert_eq!(err.to_string(), "missing config key `input.dump_ja`");
        let err = PipelineConfig::parse(&MINIMAL.replace("dir = \"out\"\n", ""), dir.path()).unwrap_err();
        assert_eq!(err.to_string(), "missing config key `output.dir`");
    }

    #[test]
    fn rejects_bad_values() {
        let dir = fixture_dir();
        let bad = |extra: &str| PipelineConfig::parse(&format!("{MINIMAL}{extra}"), dir.path()).unwrap_err().to_string();
        assert!(bad("[align]\nalpha = 2.0\n").contains("alpha"));
        assert!(bad("[align]\nalpah = 0.5\n").contains("align.alpah"));
        assert!(bad("[rules.R_Q]\nenabled = \"no\"\n").contains("rules.R_Q.enabled"));
        assert!(bad("[eval]\nstrategy = \"best\"\n").contains("eval.strategy"));
        let missing = PipelineConfig::parse(&MINIMAL.replace("dict.tsv", "nope.tsv"), dir.path()).unwrap_err();
        assert!(matches!(missing, ConfigError::NoSuchFile { .. }));
    }

    #[test]
    fn rule_toggles() {
        let dir = fixture_dir();
        let cfg = PipelineConfig::parse(&format!("{MINIMAL}[rules]\ncop_window = 2\n[rules.R_NE]\nenabled = false\n"), dir.path()).unwrap();
        assert_eq!(cfg.rules.cop_window, 2);
        assert!(!cfg.rules.is_enabled(RuleId::Ne));
        assert!(cfg.rules.is_enabled(RuleId::Q));
    }
}
