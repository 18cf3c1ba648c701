//! Coarse part-of-speech tagging for both languages.
//!
//! Two providers sit behind [`Tagger`]: the deterministic built-in taggers
//! ([`JaTagger`], [`EsTagger`]) and pre-tagged text read by
//! [`parse_tagged`] / [`import_tagged`].

mod es;
mod import;
mod ja;
mod seed;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::lang::Lang;
use crate::textprep::SentenceRecord;

pub use es::{tokenize_es, EsTagger};
pub use import::{import_tagged, parse_tagged, TagImportError, TaggedImport};
pub use ja::JaTagger;
pub use seed::{SeedError, SeedLexicon};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Tag {
    Noun,
    Propn,
    Verb,
    Adj,
    Pron,
    Part,
    Aux,
    Adv,
    Det,
    Num,
    Punct,
    Other,
}

impl Tag {
    pub const ALL: [Tag; 12] = [
        Tag::Noun,
        Tag::Propn,
        Tag::Verb,
        Tag::Adj,
        Tag::Pron,
        Tag::Part,
        Tag::Aux,
        Tag::Adv,
        Tag::Det,
        Tag::Num,
        Tag::Punct,
        Tag::Other,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Tag::Noun => "NOUN",
            Tag::Propn => "PROPN",
            Tag::Verb => "VERB",
            Tag::Adj => "ADJ",
            Tag::Pron => "PRON",
            Tag::Part => "PART",
            Tag::Aux => "AUX",
            Tag::Adv => "ADV",
            Tag::Det => "DET",
            Tag::Num => "NUM",
            Tag::Punct => "PUNCT",
            Tag::Other => "OTHER",
        }
    }

    /// Tags whose tokens take part in lexical overlap.
    pub fn is_content(self) -> bool {
        matches!(self, Tag::Noun | Tag::Propn | Tag::Verb | Tag::Adj | Tag::Adv | Tag::Num)
    }

    pub fn is_nominal(self) -> bool {
        matches!(self, Tag::Noun | Tag::Propn)
    }
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Tag {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Tag::ALL.into_iter().find(|t| t.as_str() == s).ok_or_else(|| format!("unknown tag `{s}`"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Gender {
    M,
    F,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Number {
    Sg,
    Pl,
}

/// Japanese adjective class: `na` (静か) or `i` (大きい).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AdjClass {
    Na,
    I,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Feats {
    pub gender: Option<Gender>,
    pub number: Option<Number>,
    pub adjclass: Option<AdjClass>,
    pub copula: bool,
}

impl Feats {
    pub const EMPTY: Feats = Feats { gender: None, number: None, adjclass: None, copula: false };
    pub const COPULA: Feats = Feats { gender: None, number: None, adjclass: None, copula: true };

    pub fn is_empty(&self) -> bool {
        *self == Feats::default()
    }

    /// Parses `k=v;k=v`. Unknown keys are returned rather than rejected;
    /// a known key with a bad value is an error.
    pub fn parse(s: &str) -> Result<(Feats, Vec<String>), String> {
        let mut feats = Feats::default();
        let mut unknown = Vec::new();
        for item in s.split(';').map(str::trim).filter(|i| !i.is_empty()) {
            let (key, value) = item.split_once('=').ok_or_else(|| format!("feature `{item}` is not key=value"))?;
            match (key.trim(), value.trim()) {
                ("gender", "m") => feats.gender = Some(Gender::M),
                ("gender", "f") => feats.gender = Some(Gender::F),
                ("number", "sg") => feats.number = Some(Number::Sg),
                ("number", "pl") => feats.number = Some(Number::Pl),
                ("adjclass", "na") => feats.adjclass = Some(AdjClass::Na),
                ("adjclass", "i") => feats.adjclass = Some(AdjClass::I),
                ("copula", "yes") => feats.copula = true,
                (k @ ("gender" | "number" | "adjclass" | "copula"), v) => {
                    return Err(format!("invalid value `{v}` for feature `{k}`"));
                }
                (k, _) => unknown.push(k.to_string()),
            }
        }
        Ok((feats, unknown))
    }
}

impl fmt::Display for Feats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if let Some(g) = self.gender {
            parts.push(if g == Gender::M { "gender=m" } else { "gender=f" });
        }
        if let Some(n) = self.number {
            parts.push(if n == Number::Sg { "number=sg" } else { "number=pl" });
        }
        if let Some(a) = self.adjclass {
            parts.push(if a == AdjClass::Na { "adjclass=na" } else { "adjclass=i" });
        }
        if self.copula {
            parts.push("copula=yes");
        }
        f.write_str(&parts.join(";"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Token {
    pub surface: String,
    pub tag: Tag,
    pub feats: Feats,
}

impl Token {
    pub fn new(surface: impl Into<String>, tag: Tag) -> Token {
        Token { surface: surface.into(), tag, feats: Feats::default() }
    }

    pub fn with_feats(surface: impl Into<String>, tag: Tag, feats: Feats) -> Token {
        Token { surface: surface.into(), tag, feats }
    }

    pub fn is_copula(&self) -> bool {
        self.tag == Tag::Aux && self.feats.copula
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TaggedSentence {
    pub record: SentenceRecord,
    pub tokens: Vec<Token>,
}

impl TaggedSentence {
    pub fn lang(&self) -> Lang {
        self.record.lang
    }

    /// One line per token, `surface<TAB>tag<TAB>feats`, as read by
    /// [`parse_tagged`].
    pub fn to_tsv_block(&self) -> String {
        self.tokens.iter().map(|t| format!("{}\t{}\t{}\n", t.surface, t.tag, t.feats)).collect()
    }
}

pub trait Tagger: Send + Sync {
    fn tokens(&self, record: &SentenceRecord) -> Vec<Token>;

    fn tag(&self, record: SentenceRecord) -> TaggedSentence {
        let tokens = self.tokens(&record);
        TaggedSentence { record, tokens }
    }
}

/// The built-in taggers for both languages.
#[derive(Debug, Clone)]
pub struct BuiltinTagger {
    pub ja: JaTagger,
    pub es: EsTagger,
}

impl Tagger for BuiltinTagger {
    fn tokens(&self, record: &SentenceRecord) -> Vec<Token> {
        match record.lang {
            Lang::Ja => self.ja.tag_text(&record.text),
            Lang::Es => self.es.tag_text(&record.text),
        }
    }
}

/// Externally tagged sentences keyed by (language, article, index), with the
/// built-in taggers covering anything the import does not.
pub struct ImportedTagger {
    sentences: HashMap<(Lang, String, usize), Vec<Token>>,
    fallback: BuiltinTagger,
}

impl ImportedTagger {
    pub fn new(imported: impl IntoIterator<Item = TaggedSentence>, fallback: BuiltinTagger) -> ImportedTagger {
        let sentences = imported
            .into_iter()
            .map(|s| ((s.record.lang, s.record.article_title, s.record.index), s.tokens))
            .collect();
        ImportedTagger { sentences, fallback }
    }
}

impl Tagger for ImportedTagger {
    fn tokens(&self, record: &SentenceRecord) -> Vec<Token> {
        let key = (record.lang, record.article_title.clone(), record.index);
        match self.sentences.get(&key) {
            Some(tokens) => tokens.clone(),
            None => self.fallback.tokens(record),
        }
    }
}

/// Character offsets of each token once whitespace is removed.
fn token_spans(tokens: &[Token]) -> Vec<(usize, usize)> {
    let mut at = 0;
    tokens
        .iter()
        .map(|t| {
            let len = t.surface.chars().filter(|c| !c.is_whitespace()).count();
            let span = (at, at + len);
            at += len;
            span
        })
        .collect()
}

/// Gold tokens whose exact span and tag the prediction reproduces, and the
/// number of gold tokens.
pub fn token_accuracy(gold: &[Token], predicted: &[Token]) -> (usize, usize) {
    let predicted: HashMap<(usize, usize), Tag> =
        token_spans(predicted).into_iter().zip(predicted.iter().map(|t| t.tag)).collect();
    let correct = token_spans(gold)
        .into_iter()
        .zip(gold)
        .filter(|(span, t)| predicted.get(span) == Some(&t.tag))
        .count();
    (correct, gold.len())
}
