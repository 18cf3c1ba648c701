use std::collections::HashMap;

use super::{Feats, SeedLexicon, Tag, Token};
use crate::lang::starts_uppercase;
use crate::lexicon::BilingualLexicon;

/// Closed-class words, matched before the seed lexicon.
const CLOSED: [(&str, Tag, Feats); 22] = [
    ("は", Tag::Part, Feats::EMPTY),
    ("が", Tag::Part, Feats::EMPTY),
    ("を", Tag::Part, Feats::EMPTY),
    ("に", Tag::Part, Feats::EMPTY),
    ("の", Tag::Part, Feats::EMPTY),
    ("と", Tag::Part, Feats::EMPTY),
    ("も", Tag::Part, Feats::EMPTY),
    ("か", Tag::Part, Feats::EMPTY),
    ("で", Tag::Part, Feats::EMPTY),
    ("へ", Tag::Part, Feats::EMPTY),
    ("や", Tag::Part, Feats::EMPTY),
    ("な", Tag::Part, Feats::EMPTY),
    ("から", Tag::Part, Feats::EMPTY),
    ("まで", Tag::Part, Feats::EMPTY),
    ("より", Tag::Part, Feats::EMPTY),
    ("です", Tag::Aux, Feats::COPULA),
    ("でした", Tag::Aux, Feats::COPULA),
    ("である", Tag::Aux, Feats::COPULA),
    ("であった", Tag::Aux, Feats::COPULA),
    ("だ", Tag::Aux, Feats::EMPTY),
    ("だった", Tag::Aux, Feats::EMPTY),
    ("ではない", Tag::Aux, Feats::EMPTY),
];

/// Endings that turn a seed verb stem into a full verb token, longest first.
const VERB_ENDINGS: [&str; 6] = ["ませんでした", "ました", "ません", "ます", "る", "た"];

// Longest lexicon term considered during segmentation.
const MAX_LEXICON_CHARS: usize = 16;

fn is_kanji(c: char) -> bool {
    matches!(c, '\u{4E00}'..='\u{9FFF}' | '\u{3400}'..='\u{4DBF}' | '\u{F900}'..='\u{FAFF}' | '々' | '〆')
}

fn is_hiragana(c: char) -> bool {
    matches!(c, '\u{3041}'..='\u{309F}')
}

fn is_katakana(c: char) -> bool {
    matches!(c, '\u{30A1}'..='\u{30FA}' | '\u{30FC}'..='\u{30FF}' | '\u{31F0}'..='\u{31FF}')
}

fn is_digit(c: char) -> bool {
    c.is_ascii_digit() || matches!(c, '０'..='９')
}

fn is_punct(c: char) -> bool {
    c.is_ascii_punctuation()
        || matches!(c, '\u{3000}'..='\u{303F}' | '\u{FF01}'..='\u{FF0F}' | '\u{FF1A}'..='\u{FF20}' | '\u{FF3B}'..='\u{FF40}' | '\u{FF5B}'..='\u{FF65}')
        || matches!(c, '・' | '…' | '‥' | '—' | '―' | '¿' | '¡')
}

fn is_katakana_word(s: &str) -> bool {
    s.chars().all(|c| is_katakana(c) || c == '・') && s.chars().any(is_katakana)
}

/// Greedy longest-match segmenter over a closed particle list, the seed
/// lexicon, and the Japanese terms of the translation lexicon.
#[derive(Debug, Clone)]
pub struct JaTagger {
    seed: SeedLexicon,
    /// Lexicon term -> whether one of its translations is capitalized.
    lexicon_terms: HashMap<String, bool>,
    max_chars: usize,
}

impl JaTagger {
    pub fn new(seed: SeedLexicon, lexicon: &BilingualLexicon) -> JaTagger {
        let lexicon_terms: HashMap<String, bool> = lexicon
            .ja_terms()
            .filter(|t| !t.contains(char::is_whitespace) && t.chars().count() <= MAX_LEXICON_CHARS)
            .map(|t| (t.to_string(), lexicon.translate_ja(t).iter().any(|es| starts_uppercase(es))))
            .collect();
        let longest_term = lexicon_terms.keys().map(|k| k.chars().count()).max().unwrap_or(0);
        let max_chars = seed.max_chars().max(longest_term).max(4);
        JaTagger { seed, lexicon_terms, max_chars }
    }

    fn closed(word: &str) -> Option<(Tag, Feats)> {
        CLOSED.iter().find(|(s, _, _)| *s == word).map(|&(_, t, f)| (t, f))
    }

    fn lexicon_entry(&self, word: &str) -> Option<(Tag, Feats)> {
        let capitalized = *self.lexicon_terms.get(word)?;
        let tag = if is_katakana_word(word) && capitalized { Tag::Propn } else { Tag::Noun };
        Some((tag, Feats::EMPTY))
    }

    /// Best dictionary match at `i`: (length in chars, tag, feats).
    fn best_match(&self, chars: &[char], i: usize) -> Option<(usize, Tag, Feats)> {
        let mut best: Option<(usize, u8, Tag, Feats)> = None;
        let limit = self.max_chars.min(chars.len() - i);
        let mut word = String::new();
        for len in 1..=limit {
            word.push(chars[i + len - 1]);
            let found = [(0u8, Self::closed(&word)), (1, self.seed.get(&word)), (2, self.lexicon_entry(&word))];
            for (priority, hit) in found {
                let Some((tag, feats)) = hit else { continue };
                let mut span = len;
                if tag == Tag::Verb {
                    span += verb_ending(&chars[i + len..]);
                }
                let better = match best {
                    None => true,
                    Some((l, p, _, _)) => span > l || (span == l && priority < p),
                };
                if better {
                    best = Some((span, priority, tag, feats));
                }
            }
        }
        best.map(|(len, _, tag, feats)| (len, tag, feats))
    }

    fn starts_word(&self, chars: &[char], i: usize) -> bool {
        self.best_match(chars, i).is_some()
    }

    pub fn tag_text(&self, text: &str) -> Vec<Token> {
        let chars: Vec<char> = text.chars().collect();
        let mut tokens = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            if c.is_whitespace() {
                i += 1;
                continue;
            }
            if let Some((len, tag, feats)) = self.best_match(&chars, i) {
                let surface: String = chars[i..i + len].iter().collect();
                tokens.push(Token::with_feats(surface, tag, feats));
                i += len;
                continue;
            }
            if is_punct(c) {
                tokens.push(Token::new(c.to_string(), Tag::Punct));
                i += 1;
                continue;
            }
            let (end, tag) = if is_kanji(c) {
                (self.run(&chars, i, is_kanji, true), Tag::Noun)
            } else if is_katakana(c) {
                let end = self.run(&chars, i, |c| is_katakana(c) || c == '・', false);
                // a trailing middle dot belongs to the punctuation
                let end = if chars[end - 1] == '・' { end - 1 } else { end };
                (end, Tag::Propn)
            } else if is_hiragana(c) {
                (self.run(&chars, i, is_hiragana, true), Tag::Other)
            } else if is_digit(c) {
                (self.run(&chars, i, |c| is_digit(c) || c == '.' || c == ',', false), Tag::Num)
            } else if c.is_alphanumeric() && !is_kanji(c) {
                (self.run(&chars, i, |c| c.is_ascii_alphanumeric() || matches!(c, 'À'..='ÿ'), false), Tag::Propn)
            } else {
                (i + 1, Tag::Other)
            };
            let end = end.max(i + 1);
            tokens.push(Token::new(chars[i..end].iter().collect::<String>(), tag));
            i = end;
        }
        tokens
    }

    /// End of the run of chars matching `class` starting at `i`. With
    /// `stop_at_words`, the run also ends where a dictionary word begins.
    fn run(&self, chars: &[char], i: usize, class: impl Fn(char) -> bool, stop_at_words: bool) -> usize {
        let mut j = i + 1;
        while j < chars.len() && class(chars[j]) && !(stop_at_words && self.starts_word(chars, j)) {
            j += 1;
        }
        j
    }
}

fn verb_ending(rest: &[char]) -> usize {
    for ending in VERB_ENDINGS {
        let len = ending.chars().count();
        if rest.len() >= len && rest[..len].iter().copied().eq(ending.chars()) {
            return len;
        }
    }
    0
}
