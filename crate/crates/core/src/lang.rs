//! Language codes and the string normalization shared by every stage.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use unicode_normalization::UnicodeNormalization;

/// One of the two languages of the corpus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Lang {
    Ja,
    Es,
}

impl Lang {
    pub fn code(self) -> &'static str {
        match self {
            Lang::Ja => "ja",
            Lang::Es => "es",
        }
    }

    pub fn other(self) -> Lang {
        match self {
            Lang::Ja => Lang::Es,
            Lang::Es => Lang::Ja,
        }
    }
}

impl fmt::Display for Lang {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unsupported language code `{0}` (expected ja or es)")]
pub struct UnknownLang(pub String);

impl FromStr for Lang {
    type Err = UnknownLang;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "ja" => Ok(Lang::Ja),
            "es" => Ok(Lang::Es),
            other => Err(UnknownLang(other.to_string())),
        }
    }
}

pub fn nfc(s: &str) -> String {
    s.nfc().collect()
}

/// Canonical page-title form: NFC, underscores as spaces, inner whitespace
/// collapsed, no `#fragment`. Case is left untouched.
pub fn normalize_title(raw: &str) -> String {
    let raw = raw.split('#').next().unwrap_or("");
    let spaced: String = raw.nfc().map(|c| if c == '_' { ' ' } else { c }).collect();
    collapse_whitespace(&spaced)
}

/// Replaces every whitespace run with a single ASCII space and trims.
pub fn collapse_whitespace(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for word in s.split_whitespace() {
        if !out.is_empty() {
            out.push(' ');
        }
        out.push_str(word);
    }
    out
}

/// Upper-cases the first character, the way MediaWiki canonicalizes titles.
pub fn upper_first(s: &str) -> String {
    let mut chars = s.chars();
    match chars.next() {
        Some(first) => first.to_uppercase().chain(chars).collect(),
        None => String::new(),
    }
}

pub fn starts_uppercase(s: &str) -> bool {
    s.chars().next().is_some_and(char::is_uppercase)
}

/// Drops a trailing parenthetical disambiguator: `"Queen (banda)"` -> `"Queen"`.
/// Handles both ASCII and fullwidth parentheses.
pub fn strip_disambiguator(title: &str) -> &str {
    let trimmed = title.trim_end();
    for (open, close) in [('(', ')'), ('（', '）')] {
        if trimmed.ends_with(close) {
            if let Some(pos) = trimmed.rfind(open) {
                let head = trimmed[..pos].trim_end();
                if !head.is_empty() {
                    return head;
                }
            }
        }
    }
    trimmed
}
