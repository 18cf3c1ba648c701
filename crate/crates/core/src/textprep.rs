//! Sentence splitting and stopword handling.

use std::collections::BTreeSet;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::dump::Hyperlink;
use crate::lang::{nfc, Lang};
use crate::tagging::Token;

/// One sentence of an article.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SentenceRecord {
    pub article_title: String,
    pub lang: Lang,
    pub index: usize,
    pub text: String,
    /// Targets of the links whose anchor starts inside this sentence.
    pub link_targets: BTreeSet<String>,
}

/// Spanish abbreviations that end in a period but never end a sentence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Abbreviations(BTreeSet<String>);

impl Abbreviations {
    /// One abbreviation per line, period included; `#` starts a comment.
    pub fn parse(text: &str) -> Abbreviations {
        Abbreviations(word_lines(text).collect())
    }

    pub fn contains(&self, word: &str) -> bool {
        self.0.contains(&word.to_lowercase())
    }
}

impl Default for Abbreviations {
    fn default() -> Self {
        Abbreviations::parse(include_str!("../data/abbreviations.es.txt"))
    }
}

fn word_lines(text: &str) -> impl Iterator<Item = String> + '_ {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| nfc(&l.to_lowercase()))
}

fn is_es_terminator(c: char) -> bool {
    matches!(c, '.' | '!' | '?' | '…')
}

fn is_ja_terminator(c: char) -> bool {
    matches!(c, '。' | '！' | '？')
}

/// Byte spans of Spanish sentences.
fn es_spans(text: &str, abbreviations: &Abbreviations) -> Vec<(usize, usize)> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut spans = Vec::new();
    let mut start = 0;
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if !matches!(c, '.' | '!' | '?') {
            i += 1;
            continue;
        }
        let mut j = i;
        while j + 1 < chars.len() && is_es_terminator(chars[j + 1].1) {
            j += 1;
        }
        let end = chars[j].0 + chars[j].1.len_utf8();
        let boundary = if j + 1 == chars.len() {
            true
        } else if chars[j + 1].1.is_whitespace() {
            let next = chars[j + 1..].iter().map(|&(_, c)| c).find(|c| !c.is_whitespace());
            next.is_some_and(|n| n.is_uppercase() || n == '¿' || n == '¡')
        } else {
            false
        };
        let abbreviated = c == '.' && i == j && {
            let word_start = text[..pos].rfind(char::is_whitespace).map_or(0, |w| w + 1);
            abbreviations.contains(&text[word_start..end])
        };
        if boundary && !abbreviated {
            push_span(text, &mut spans, start, end);
            start = end;
        }
        i = j + 1;
    }
    push_span(text, &mut spans, start, text.len());
    spans
}

/// Byte spans of Japanese sentences.
fn ja_spans(text: &str) -> Vec<(usize, usize)> {
    let mut spans = Vec::new();
    let mut start = 0;
    let mut iter = text.char_indices().peekable();
    while let Some((pos, c)) = iter.next() {
        let ends = if is_ja_terminator(c) {
            while let Some(&(_, next)) = iter.peek() {
                if is_ja_terminator(next) {
                    iter.next();
                } else {
                    break;
                }
            }
            true
        } else {
            c == '.' && iter.peek().is_some_and(|&(_, n)| n.is_whitespace())
        };
        if ends {
            let end = iter.peek().map_or(text.len(), |&(p, _)| p);
            debug_assert!(end > pos);
            push_span(text, &mut spans, start, end);
            start = end;
        }
    }
    push_span(text, &mut spans, start, text.len());
    spans
}

/// Records the trimmed span if anything is left of it.
fn push_span(text: &str, spans: &mut Vec<(usize, usize)>, start: usize, end: usize) {
    let piece = &text[start..end];
    let lead = piece.len() - piece.trim_start().len();
    let trail = piece.len() - piece.trim_end().len();
    if lead + trail < piece.len() {
        spans.push((start + lead, end - trail));
    }
}

fn build_records(title: &str, lang: Lang, text: &str, links: &[Hyperlink], spans: Vec<(usize, usize)>) -> Vec<SentenceRecord> {
    let mut records: Vec<SentenceRecord> = spans
        .iter()
        .enumerate()
        .map(|(index, &(s, e))| SentenceRecord {
            article_title: title.to_string(),
            lang,
            index,
            text: text[s..e].to_string(),
            link_targets: BTreeSet::new(),
        })
        .collect();

    // anchors appear in the text in link order
    let mut cursor = 0;
    for link in links {
        let Some(found) = text[cursor..].find(&link.anchor) else {
            continue;
        };
        let at = cursor + found;
        cursor = at + link.anchor.len();
        if let Some(k) = spans.iter().position(|&(s, e)| at >= s && at < e) {
            records[k].link_targets.insert(link.target.clone());
        }
    }
    records
}

pub fn split_sentences_es(title: &str, text: &str, links: &[Hyperlink], abbreviations: &Abbreviations) -> Vec<SentenceRecord> {
    build_records(title, Lang::Es, text, links, es_spans(text, abbreviations))
}

pub fn split_sentences_ja(title: &str, text: &str, links: &[Hyperlink]) -> Vec<SentenceRecord> {
    build_records(title, Lang::Ja, text, links, ja_spans(text))
}

pub fn split_sentences(lang: Lang, title: &str, text: &str, links: &[Hyperlink], abbreviations: &Abbreviations) -> Vec<SentenceRecord> {
    match lang {
        Lang::Ja => split_sentences_ja(title, text, links),
        Lang::Es => split_sentences_es(title, text, links, abbreviations),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StopwordList {
    pub lang: Lang,
    words: BTreeSet<String>,
}

impl StopwordList {
    /// One word per line, `#` comments. Entries are lowercased and NFC'd.
    pub fn parse(lang: Lang, text: &str) -> StopwordList {
        StopwordList { lang, words: word_lines(text).collect() }
    }

    pub fn from_words<'a>(lang: Lang, words: impl IntoIterator<Item = &'a str>) -> StopwordList {
        StopwordList { lang, words: words.into_iter().map(|w| nfc(&w.to_lowercase())).collect() }
    }

    pub fn load(lang: Lang, path: &Path) -> std::io::Result<StopwordList> {
        Ok(Self::parse(lang, &std::fs::read_to_string(path)?))
    }

    pub fn builtin(lang: Lang) -> StopwordList {
        let text = match lang {
            Lang::Ja => include_str!("../data/stopwords.ja.txt"),
            Lang::Es => include_str!("../data/stopwords.es.txt"),
        };
        Self::parse(lang, text)
    }

    pub fn contains(&self, surface: &str) -> bool {
        self.words.contains(&nfc(&surface.to_lowercase()))
    }

    pub fn words(&self) -> impl Iterator<Item = &str> {
        self.words.iter().map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

/// The overlap view of a sentence: every token whose lowercased surface is
/// not a stopword. Rule matching always works on the unfiltered tokens.
pub fn remove_stopwords(tokens: &[Token], stoplist: &StopwordList) -> Vec<Token> {
    tokens.iter().filter(|t| !stoplist.contains(&t.surface)).cloned().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tagging::Tag;

    fn texts(records: &[SentenceRecord]) -> Vec<&str> {
        records.iter().map(|r| r.text.as_str()).collect()
    }

    fn es(text: &str) -> Vec<SentenceRecord> {
        split_sentences_es("T", text, &[], &Abbreviations::default())
    }

    #[test]
    fn spanish_boundaries() {
        assert_eq!(texts(&es("El perro bebe agua. ¿Es esto un libro?")), ["El perro bebe agua.", "¿Es esto un libro?"]);
        assert_eq!(texts(&es("¡Hola! Adiós.")), ["¡Hola!", "Adiós."]);
        assert_eq!(texts(&es("Mide 1.5 metros. Vive en Lima")), ["Mide 1.5 metros.", "Vive en Lima"]);
    }

    #[test]
    fn spanish_lowercase_continuation_is_not_a_boundary() {
        assert_eq!(texts(&es("Era grande. y luego no.")), ["Era grande. y luego no."]);
    }

    #[test]
    fn spanish_abbreviation() {
        assert_eq!(texts(&es("El Dr. Juan vino.")), ["El Dr. Juan vino."]);
        assert_eq!(texts(&es("Vive en la calle núm. 5. Sra. Ruiz llegó.")), ["Vive en la calle núm. 5.", "Sra. Ruiz llegó."]);
    }

    #[test]
    fn inverted_marks_do_not_end_sentences() {
        assert_eq!(texts(&es("¿Qué es? ¡Nada!")), ["¿Qué es?", "¡Nada!"]);
    }

    #[test]
    fn empty_text() {
        assert!(es("").is_empty());
        assert!(split_sentences_ja("T", "", &[]).is_empty());
    }

    #[test]
    fn japanese_boundaries() {
        let r = split_sentences_ja("T", "犬は水をのみます。これは本ですか。", &[]);
        assert_eq!(texts(&r), ["犬は水をのみます。", "これは本ですか。"]);
        assert_eq!(r[1].index, 1);
        let r = split_sentences_ja("T", "犬は水をのみます", &[]);
        assert_eq!(texts(&r), ["犬は水をのみます"]);
        let r = split_sentences_ja("T", "本当！？ はい。 Ver. 2 です", &[]);
        assert_eq!(texts(&r), ["本当！？", "はい。", "Ver.", "2 です"]);
    }

    #[test]
    fn links_follow_their_anchor() {
        let links = [
            Hyperlink { target: "Perro".into(), anchor: "perro".into() },
            Hyperlink { target: "Libro".into(), anchor: "libro".into() },
        ];
        let r = split_sentences_es("T", "El perro bebe agua. ¿Es esto un libro?", &links, &Abbreviations::default());
        assert_eq!(r[0].link_targets.iter().collect::<Vec<_>>(), ["Perro"]);
        assert_eq!(r[1].link_targets.iter().collect::<Vec<_>>(), ["Libro"]);
    }

    fn token(s: &str, tag: Tag) -> Token {
        Token::new(s, tag)
    }

    #[test]
    fn stopword_removal() {
        let stop = StopwordList::from_words(Lang::Es, ["el", "de", "la"]);
        let tokens = ["El", "perro", "bebe", "agua"].map(|s| token(s, Tag::Noun));
        let kept: Vec<_> = remove_stopwords(&tokens, &stop).into_iter().map(|t| t.surface).collect();
        assert_eq!(kept, ["perro", "bebe", "agua"]);

        let ja = StopwordList::from_words(Lang::Ja, ["は", "を", "が", "の"]);
        let tokens = [token("犬", Tag::Noun), token("は", Tag::Part)];
        assert_eq!(remove_stopwords(&tokens, &ja), vec![token("犬", Tag::Noun)]);

        let empty = StopwordList::from_words(Lang::Es, []);
        assert_eq!(remove_stopwords(&tokens, &empty), tokens.to_vec());
    }

    #[test]
    fn builtin_lists_are_lowercase() {
        for lang in [Lang::Ja, Lang::Es] {
            let list = StopwordList::builtin(lang);
            assert!(!list.is_empty());
            assert!(list.words().all(|w| w.to_lowercase() == w));
        }
        assert!(StopwordList::builtin(Lang::Es).contains("El"));
    }
}
