//! Sentence alignment within an article pair: scoring, one-to-one
//! selection and labeling, for both the rule-based system and the
//! hyperlink baseline.

mod output;
mod select;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::lang::{nfc, upper_first};
use crate::lexicon::BilingualLexicon;
use crate::rules::{check_rules, rule_score, RuleConfig, RuleScore};
use crate::tagging::{Tag, TaggedSentence, Token};
use crate::textprep::{remove_stopwords, SentenceRecord, StopwordList};

pub use output::{read_alignments_tsv, tmx_string, tsv_string, write_alignments, AlignmentRow, OutputFormat, ReadError, TSV_HEADER};
pub use select::select_assignment;

/// Longest run of Japanese content tokens looked up as one lexicon term.
pub const MAX_TERM_NGRAM: usize = 4;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlignConfig {
    pub alpha: f64,
    pub tau_accept: f64,
    /// Require a shared noun translation for the partial label.
    pub tau_partial_noun: bool,
    pub first_sentence_bonus: f64,
    pub max_candidates_per_sentence: Option<usize>,
}

impl Default for AlignConfig {
    fn default() -> Self {
        AlignConfig {
            alpha: 0.5,
            tau_accept: 0.6,
            tau_partial_noun: true,
            first_sentence_bonus: 0.1,
            max_candidates_per_sentence: None,
        }
    }
}

impl AlignConfig {
    pub fn validate(&self) -> Result<(), String> {
        let unit = |name: &str, v: f64, max: f64| {
            if (0.0..=max).contains(&v) {
                Ok(())
            } else {
                Err(format!("{name} must be within [0, {max}], got {v}"))
            }
        };
        unit("alpha", self.alpha, 1.0)?;
        unit("tau_accept", self.tau_accept, 1.0)?;
        unit("first_sentence_bonus", self.first_sentence_bonus, 0.2)?;
        if self.max_candidates_per_sentence == Some(0) {
            return Err("max_candidates_per_sentence must be at least 1".into());
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Label {
    Aligned,
    Partial,
    Rejected,
}

impl Label {
    pub fn as_str(self) -> &'static str {
        match self {
            Label::Aligned => "aligned",
            Label::Partial => "partial",
            Label::Rejected => "rejected",
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Label {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "aligned" => Ok(Label::Aligned),
            "partial" => Ok(Label::Partial),
            "rejected" => Ok(Label::Rejected),
            other => Err(format!("unknown label `{other}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SentenceRef {
    pub article: String,
    pub index: usize,
}

impl SentenceRef {
    pub fn of(record: &SentenceRecord) -> SentenceRef {
        SentenceRef { article: record.article_title.clone(), index: record.index }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlignmentCandidate {
    pub ja_ref: SentenceRef,
    pub es_ref: SentenceRef,
    /// Absent for the baseline, which uses no rules.
    pub rule: Option<RuleScore>,
    pub overlap: f64,
    pub matched_nouns: usize,
    pub total: f64,
    pub label: Label,
    pub ja_text: String,
    pub es_text: String,
}

impl AlignmentCandidate {
    pub fn hard_reject(&self) -> bool {
        self.rule.is_some_and(|r| r.hard_reject)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Overlap {
    pub overlap: f64,
    pub matched_nouns: usize,
}

/// Numbers carry over between the languages unchanged.
fn numeral(token: &Token) -> Option<String> {
    let digits: String = token
        .surface
        .chars()
        .map(|c| match c {
            '０'..='９' => char::from_u32(c as u32 - '０' as u32 + '0' as u32).expect("ascii digit"),
            c => c,
        })
        .collect();
    (token.tag == Tag::Num && digits.chars().all(|c| c.is_ascii_digit())).then_some(digits)
}

/// The lowercased Spanish translations of the Japanese content tokens, each
/// flagged with whether a noun contributed it.
pub fn translation_set(ja: &[Token], lexicon: &BilingualLexicon) -> BTreeMap<String, bool> {
    let content: Vec<&Token> = ja.iter().filter(|t| t.tag.is_content()).collect();
    let mut set: BTreeMap<String, bool> = BTreeMap::new();
    let mut add = |term: String, nominal: bool| {
        let slot = set.entry(term).or_insert(false);
        *slot |= nominal;
    };
    for n in 1..=MAX_TERM_NGRAM.min(content.len()) {
        for window in content.windows(n) {
            let nominal = window.iter().any(|t| t.tag.is_nominal());
            if n == 1 {
                if let Some(number) = numeral(window[0]) {
                    add(number, false);
                }
            }
            let term: String = window.iter().map(|t| t.surface.as_str()).collect();
            for es in lexicon.translate_ja(&term) {
                add(nfc(&es.to_lowercase()), nominal);
            }
        }
    }
    set
}

/// Lowercased surfaces of the Spanish content tokens.
pub fn surface_set(es: &[Token]) -> BTreeSet<String> {
    es.iter().filter(|t| t.tag.is_content()).map(|t| nfc(&t.surface.to_lowercase())).collect()
}

/// Jaccard similarity, 0 when both sets are empty.
pub fn jaccard<T: Ord>(a: &BTreeSet<T>, b: &BTreeSet<T>) -> f64 {
    let shared = a.intersection(b).count();
    let union = a.len() + b.len() - shared;
    if union == 0 {
        0.0
    } else {
        shared as f64 / union as f64
    }
}

/// Jaccard overlap between the translated Japanese content words and the
/// Spanish content words. Both token slices should already have stopwords
/// removed.
pub fn lexical_overlap(ja: &[Token], es: &[Token], lexicon: &BilingualLexicon) -> Overlap {
    let translations = translation_set(ja, lexicon);
    let surfaces = surface_set(es);
    let keys: BTreeSet<String> = translations.keys().cloned().collect();
    let matched_nouns = keys.intersection(&surfaces).filter(|k| translations[*k]).count();
    Overlap { overlap: jaccard(&keys, &surfaces), matched_nouns }
}

/// Everything the rule-based scorer needs besides the sentences.
#[derive(Debug, Clone, Copy)]
pub struct Scorer<'a> {
    pub lexicon: &'a BilingualLexicon,
    pub stop_ja: &'a StopwordList,
    pub stop_es: &'a StopwordList,
    pub rules: &'a RuleConfig,
    pub cfg: &'a AlignConfig,
}

impl Scorer<'_> {
    /// Scores one pair. The label is provisional: aligned when the total
    /// clears `tau_accept`, rejected otherwise. Selection revises it.
    pub fn score_pair(&self, ja: &TaggedSentence, es: &TaggedSentence) -> AlignmentCandidate {
        let rule = rule_score(&check_rules(ja, es, self.lexicon, self.rules));
        let ov = lexical_overlap(
            &remove_stopwords(&ja.tokens, self.stop_ja),
            &remove_stopwords(&es.tokens, self.stop_es),
            self.lexicon,
        );
        let bonus = if ja.record.index == 0 && es.record.index == 0 { self.cfg.first_sentence_bonus } else { 0.0 };
        let total = if rule.hard_reject {
            0.0
        } else {
            (self.cfg.alpha * rule.score + (1.0 - self.cfg.alpha) * ov.overlap + bonus).clamp(0.0, 1.0)
        };
        let label = if !rule.hard_reject && total >= self.cfg.tau_accept { Label::Aligned } else { Label::Rejected };
        AlignmentCandidate {
            ja_ref: SentenceRef::of(&ja.record),
            es_ref: SentenceRef::of(&es.record),
            rule: Some(rule),
            overlap: ov.overlap,
            matched_nouns: ov.matched_nouns,
            total,
            label,
            ja_text: ja.record.text.clone(),
            es_text: es.record.text.clone(),
        }
    }

    pub fn align(&self, ja: &[TaggedSentence], es: &[TaggedSentence]) -> Vec<AlignmentCandidate> {
        let grid = ja.iter().map(|j| es.iter().map(|e| self.score_pair(j, e)).collect()).collect();
        finish(grid, self.cfg)
    }
}

/// Rule-based alignment of one article pair.
pub fn align_rule_based(ja: &[TaggedSentence], es: &[TaggedSentence], scorer: &Scorer<'_>) -> Vec<AlignmentCandidate> {
    scorer.align(ja, es)
}

/// Link targets of a sentence, plus the article title when the sentence
/// mentions it, first letters uppercased.
fn baseline_links(record: &SentenceRecord) -> BTreeSet<String> {
    let mut links: BTreeSet<String> = record.link_targets.iter().map(|t| upper_first(t)).collect();
    if !record.article_title.is_empty() && record.text.contains(record.article_title.as_str()) {
        links.insert(upper_first(&record.article_title));
    }
    links
}

/// Hyperlink baseline: Jaccard similarity between the translated Japanese
/// link targets and the Spanish ones. Links without a translation drop out.
pub fn baseline_score(ja: &SentenceRecord, es: &SentenceRecord, links: &BilingualLexicon) -> (f64, usize) {
    let translated: BTreeSet<String> = baseline_links(ja)
        .iter()
        .flat_map(|target| links.translate_ja(target))
        .map(|t| upper_first(t))
        .collect();
    let es_links = baseline_links(es);
    (jaccard(&translated, &es_links), translated.intersection(&es_links).count())
}

pub fn align_baseline(ja: &[SentenceRecord], es: &[SentenceRecord], links: &BilingualLexicon, cfg: &AlignConfig) -> Vec<AlignmentCandidate> {
    let grid = ja
        .iter()
        .map(|j| {
            es.iter()
                .map(|e| {
                    let (score, shared) = baseline_score(j, e, links);
                    AlignmentCandidate {
                        ja_ref: SentenceRef::of(j),
                        es_ref: SentenceRef::of(e),
                        rule: None,
                        overlap: score,
                        matched_nouns: shared,
                        total: score,
                        label: if score >= cfg.tau_accept { Label::Aligned } else { Label::Rejected },
                        ja_text: j.text.clone(),
                        es_text: e.text.clone(),
                    }
                })
                .collect()
        })
        .collect();
    finish(grid, cfg)
}

/// Orders a row's candidates best first: total descending, es index ascending.
fn by_rank(a: &AlignmentCandidate, b: &AlignmentCandidate) -> std::cmp::Ordering {
    b.total.total_cmp(&a.total).then(a.es_ref.index.cmp(&b.es_ref.index))
}

/// Applies the per-sentence cap, selects the one-to-one alignment and
/// assigns final labels. Output is sorted by (ja index, es index).
fn finish(mut grid: Vec<Vec<AlignmentCandidate>>, cfg: &AlignConfig) -> Vec<AlignmentCandidate> {
    if let Some(cap) = cfg.max_candidates_per_sentence {
        for row in &mut grid {
            row.sort_by(by_rank);
            row.truncate(cap);
        }
    }
    let n_es = grid.iter().flatten().map(|c| c.es_ref.index + 1).max().unwrap_or(0);
    let scores: Vec<Vec<Option<f64>>> = grid
        .iter()
        .map(|row| {
            let mut cells = vec![None; n_es];
            for c in row.iter().filter(|c| !c.hard_reject() && c.total >= cfg.tau_accept) {
                cells[c.es_ref.index] = Some(c.total);
            }
            cells
        })
        .collect();
    let selected: BTreeSet<(usize, usize)> = select_assignment(&scores).into_iter().collect();

    let mut out = Vec::new();
    for (i, mut row) in grid.into_iter().enumerate() {
        let best = row.iter().filter(|c| !c.hard_reject()).min_by(|a, b| by_rank(a, b)).map(|c| c.es_ref.index);
        for c in &mut row {
            let j = c.es_ref.index;
            c.label = if selected.contains(&(i, j)) {
                Label::Aligned
            } else if !c.hard_reject() && best == Some(j) && (!cfg.tau_partial_noun || c.matched_nouns >= 1) {
                Label::Partial
            } else {
                Label::Rejected
            };
        }
        row.sort_by_key(|c| c.es_ref.index);
        out.extend(row);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lang::Lang;
    use crate::lexicon::Source;

    fn tok(s: &str, tag: Tag) -> Token {
        Token::new(s, tag)
    }

    fn record(lang: Lang, title: &str, index: usize, text: &str, links: &[&str]) -> SentenceRecord {
        SentenceRecord {
            article_title: title.into(),
            lang,
            index,
            text: text.into(),
            link_targets: links.iter().map(|s| s.to_string()).collect(),
        }
    }

    #[test]
    fn overlap_example() {
        let mut lex = BilingualLexicon::new();
        lex.insert("犬", "perro", Source::Dict);
        lex.insert("水", "agua", Source::Dict);
        lex.insert("飲む", "beber", Source::Dict);
        let ja = [tok("犬", Tag::Noun), tok("水", Tag::Noun), tok("飲む", Tag::Verb)];
        let es = [tok("perro", Tag::Noun), tok("bebe", Tag::Verb), tok("agua", Tag::Noun)];
        let ov = lexical_overlap(&ja, &es, &lex);
        assert_eq!(ov.overlap, 0.5);
        assert_eq!(ov.matched_nouns, 2);
        assert_eq!(lexical_overlap(&[], &[], &lex).overlap, 0.0);
    }

    #[test]
    fn multiword_terms_and_numbers() {
        let mut lex = BilingualLexicon::new();
        lex.insert("経済学者", "economista", Source::Dict);
        let ja = [tok("経済", Tag::Noun), tok("学者", Tag::Noun), tok("１９０５", Tag::Num), tok("は", Tag::Part)];
        let es = [tok("economista", Tag::Noun), tok("1905", Tag::Num)];
        let set = translation_set(&ja, &lex);
        assert_eq!(set.keys().collect::<Vec<_>>(), ["1905", "economista"]);
        assert_eq!(lexical_overlap(&ja, &es, &lex).overlap, 1.0);
    }

    #[test]
    fn config_ranges() {
        assert!(AlignConfig::default().validate().is_ok());
        assert!(AlignConfig { alpha: 1.5, ..Default::default() }.validate().is_err());
        assert!(AlignConfig { first_sentence_bonus: 0.3, ..Default::default() }.validate().is_err());
    }

    #[test]
    fn baseline_link_example() {
        let mut links = BilingualLexicon::new();
        links.insert("経済学", "Economía", Source::Link);
        let ja = record(Lang::Ja, "市場", 1, "経済学の一分野。", &["経済学"]);
        let es = record(Lang::Es, "Mercado", 1, "Una rama de la economía.", &["economía"]);
        assert_eq!(baseline_score(&ja, &es, &links), (1.0, 1));
        let bare = record(Lang::Es, "Mercado", 2, "Nada.", &[]);
        let bare_ja = record(Lang::Ja, "市場", 2, "何も。", &[]);
        assert_eq!(baseline_score(&bare_ja, &bare, &links).0, 0.0);
    }

    #[test]
    fn baseline_rewards_title_mentions() {
        let mut links = BilingualLexicon::new();
        links.insert("東京", "Tokio", Source::Link);
        let ja = record(Lang::Ja, "東京", 3, "東京は大きい。", &[]);
        let title_only = record(Lang::Es, "Tokio", 5, "Tokio, Tokio.", &[]);
        let unrelated = record(Lang::Es, "Tokio", 6, "Nada más.", &[]);
        assert_eq!(baseline_score(&ja, &title_only, &links).0, 1.0);
        assert_eq!(baseline_score(&ja, &unrelated, &links).0, 0.0);
    }

    fn candidate(i: usize, j: usize, total: f64, nouns: usize) -> AlignmentCandidate {
        AlignmentCandidate {
            ja_ref: SentenceRef { article: "a".into(), index: i },
            es_ref: SentenceRef { article: "b".into(), index: j },
            rule: Some(RuleScore { score: 0.5, hard_reject: false }),
            overlap: 0.0,
            matched_nouns: nouns,
            total,
            label: Label::Rejected,
            ja_text: String::new(),
            es_text: String::new(),
        }
    }

    #[test]
    fn labels_after_selection() {
        let grid = vec![
            vec![candidate(0, 0, 0.9, 2), candidate(0, 1, 0.3, 1)],
            vec![candidate(1, 0, 0.8, 1), candidate(1, 1, 0.2, 0)],
            vec![candidate(2, 0, 0.1, 0), candidate(2, 1, 0.4, 1)],
        ];
        let labels: Vec<_> = finish(grid, &AlignConfig::default()).into_iter().map(|c| c.label).collect();
        use Label::*;
        assert_eq!(labels, [Aligned, Rejected, Partial, Rejected, Rejected, Partial]);
    }
}
