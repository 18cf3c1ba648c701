use std::collections::HashMap;
use std::path::Path;

use super::{Feats, Tag};
use crate::lang::{nfc, Lang};

#[derive(Debug, thiserror::Error)]
pub enum SeedError {
    #[error("cannot read seed lexicon: {0}")]
    Io(#[from] std::io::Error),
    #[error("seed lexicon line {line}: {message}")]
    Format { line: usize, message: String },
}

/// Surface forms with the tag and features the built-in tagger assigns them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeedLexicon {
    pub lang: Lang,
    entries: HashMap<String, (Tag, Feats)>,
    max_chars: usize,
}

impl SeedLexicon {
    /// `surface<TAB>tag<TAB>feats` per line, `#` comments. Spanish surfaces
    /// are stored lowercased. A repeated surface keeps its first entry.
    pub fn parse(lang: Lang, text: &str) -> Result<SeedLexicon, SeedError> {
        let mut entries = HashMap::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.strip_suffix('\r').unwrap_or(line);
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |message: String| SeedError::Format { line: n + 1, message };
            let mut fields = line.split('\t');
            let surface = fields.next().unwrap_or_default().trim();
            let tag: Tag = fields.next().unwrap_or_default().trim().parse().map_err(err)?;
            let (feats, _) = Feats::parse(fields.next().unwrap_or_default()).map_err(err)?;
            if surface.is_empty() {
                return Err(err("empty surface".into()));
            }
            let key = match lang {
                Lang::Ja => nfc(surface),
                Lang::Es => nfc(&surface.to_lowercase()),
            };
            entries.entry(key).or_insert((tag, feats));
        }
        let max_chars = entries.keys().map(|k| k.chars().count()).max().unwrap_or(0);
        Ok(SeedLexicon { lang, entries, max_chars })
    }

    pub fn load(lang: Lang, path: &Path) -> Result<SeedLexicon, SeedError> {
        Self::parse(lang, &std::fs::read_to_string(path)?)
    }

    pub fn builtin(lang: Lang) -> SeedLexicon {
        let text = match lang {
            Lang::Ja => include_str!("../../data/seed.ja.tsv"),
            Lang::Es => include_str!("../../data/seed.es.tsv"),
        };
        Self::parse(lang, text).expect("bundled seed lexicon is well-formed")
    }

    pub fn get(&self, surface: &str) -> Option<(Tag, Feats)> {
        self.entries.get(surface).copied()
    }

    pub fn contains(&self, surface: &str) -> bool {
        self.entries.contains_key(surface)
    }

    pub fn max_chars(&self) -> usize {
        self.max_chars
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_lines() {
        let seed = SeedLexicon::parse(Lang::Es, "# c\nPerro\tNOUN\tgender=m\nbebe\tVERB\n").unwrap();
        assert_eq!(seed.get("perro").unwrap().0, Tag::Noun);
        assert_eq!(seed.get("bebe"), Some((Tag::Verb, Feats::default())));
        assert!(SeedLexicon::parse(Lang::Es, "x\tNOMBRE\t\n").is_err());
    }

    #[test]
    fn bundled_seeds_load() {
        assert!(!SeedLexicon::builtin(Lang::Ja).is_empty());
        assert!(!SeedLexicon::builtin(Lang::Es).is_empty());
    }
}
