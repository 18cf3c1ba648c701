//! Structural agreement rules between a Japanese sentence and a Spanish
//! candidate translation.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::lexicon::BilingualLexicon;
use crate::tagging::{Tag, TaggedSentence, Token};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RuleId {
    #[serde(rename = "R_COP")]
    Cop,
    #[serde(rename = "R_NE")]
    Ne,
    #[serde(rename = "R_ADJ")]
    Adj,
    #[serde(rename = "R_Q")]
    Q,
    #[serde(rename = "R_PRON")]
    Pron,
}

impl RuleId {
    pub const ALL: [RuleId; 5] = [RuleId::Cop, RuleId::Ne, RuleId::Adj, RuleId::Q, RuleId::Pron];

    pub fn as_str(self) -> &'static str {
        match self {
            RuleId::Cop => "R_COP",
            RuleId::Ne => "R_NE",
            RuleId::Adj => "R_ADJ",
            RuleId::Q => "R_Q",
            RuleId::Pron => "R_PRON",
        }
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RuleId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        RuleId::ALL.into_iter().find(|r| r.as_str() == s).ok_or_else(|| format!("unknown rule `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleOutcome {
    pub rule: RuleId,
    pub applicable: bool,
    pub satisfied: bool,
    pub detail: String,
}

impl RuleOutcome {
    fn inapplicable(rule: RuleId, detail: &str) -> RuleOutcome {
        RuleOutcome { rule, applicable: false, satisfied: false, detail: detail.to_string() }
    }

    fn checked(rule: RuleId, satisfied: bool, detail: impl Into<String>) -> RuleOutcome {
        RuleOutcome { rule, applicable: true, satisfied, detail: detail.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleConfig {
    pub disabled: BTreeSet<RuleId>,
    /// How many tokens after a Spanish copula may hold its noun.
    pub cop_window: usize,
    /// Longest Spanish token sequence a named-entity translation may span.
    pub ne_ngram_max: usize,
}

impl Default for RuleConfig {
    fn default() -> Self {
        RuleConfig { disabled: BTreeSet::new(), cop_window: 3, ne_ngram_max: 4 }
    }
}

impl RuleConfig {
    pub fn is_enabled(&self, rule: RuleId) -> bool {
        !self.disabled.contains(&rule)
    }
}

/// Tokens with trailing punctuation removed.
fn without_final_punct(tokens: &[Token]) -> &[Token] {
    let end = tokens.iter().rposition(|t| t.tag != Tag::Punct).map_or(0, |p| p + 1);
    &tokens[..end]
}

fn is_ka(token: &Token) -> bool {
    token.surface == "か" && token.tag == Tag::Part
}

pub fn ja_is_question(ja: &[Token]) -> bool {
    without_final_punct(ja).last().is_some_and(is_ka)
}

pub fn es_is_question(es: &[Token]) -> bool {
    es.iter().any(|t| t.surface == "¿") && es.last().is_some_and(|t| t.surface == "?")
}

fn check_cop(ja: &[Token], es: &[Token], window: usize) -> RuleOutcome {
    let mut body = without_final_punct(ja);
    if body.last().is_some_and(is_ka) {
        body = without_final_punct(&body[..body.len() - 1]);
    }
    let frame = body.len() >= 2 && body[body.len() - 1].is_copula() && body[body.len() - 2].tag == Tag::Noun;
    if !frame {
        return RuleOutcome::inapplicable(RuleId::Cop, "no noun+copula ending");
    }
    let found = es
        .iter()
        .enumerate()
        .filter(|(_, t)| t.is_copula())
        .any(|(i, _)| es[i + 1..].iter().take(window).any(|t| t.tag == Tag::Noun));
    RuleOutcome::checked(RuleId::Cop, found, if found { "copula+noun found" } else { "no copula+noun" })
}

/// Whether `words` occurs as consecutive token surfaces, case-sensitively,
/// starting with a capitalized token.
fn contains_capitalized_sequence(es: &[Token], words: &[&str]) -> bool {
    if words.is_empty() || !words[0].starts_with(char::is_uppercase) {
        return false;
    }
    es.windows(words.len()).any(|w| w.iter().zip(words).all(|(t, word)| t.surface == *word))
}

fn check_ne(ja: &[Token], es: &[Token], lexicon: &BilingualLexicon, ngram_max: usize) -> RuleOutcome {
    let mut entities = 0;
    let mut missing = Vec::new();
    for token in ja.iter().filter(|t| t.tag == Tag::Propn) {
        let translations = lexicon.translate_ja(&token.surface);
        if translations.is_empty() {
            continue;
        }
        entities += 1;
        let found = translations.iter().any(|tr| {
            let words: Vec<&str> = tr.split_whitespace().collect();
            words.len() <= ngram_max && contains_capitalized_sequence(es, &words)
        });
        if !found {
            missing.push(token.surface.as_str());
        }
    }
    if entities == 0 {
        return RuleOutcome::inapplicable(RuleId::Ne, "no translatable proper noun");
    }
    if missing.is_empty() {
        RuleOutcome::checked(RuleId::Ne, true, format!("{entities} entities matched"))
    } else {
        RuleOutcome::checked(RuleId::Ne, false, format!("missing {}", missing.join(",")))
    }
}

fn check_adj(ja: &[Token], es: &[Token]) -> RuleOutcome {
    let ja_adj = ja.iter().filter(|t| t.tag == Tag::Adj).count();
    let es_adj = es.iter().filter(|t| t.tag == Tag::Adj).count();
    if ja_adj == 0 && es_adj == 0 {
        return RuleOutcome::inapplicable(RuleId::Adj, "no adjectives");
    }
    if ja_adj.abs_diff(es_adj) > 1 {
        return RuleOutcome::checked(RuleId::Adj, false, format!("adjective counts {ja_adj} vs {es_adj}"));
    }
    // An adjective is checked against the noun before it, or failing that
    // the noun after it.
    let gendered_noun = |t: &Token| t.tag == Tag::Noun && t.feats.gender.is_some();
    for (i, adj) in es.iter().enumerate().filter(|(_, t)| t.tag == Tag::Adj) {
        let Some(gender) = adj.feats.gender else { continue };
        let before = i.checked_sub(1).map(|p| &es[p]).filter(|t| gendered_noun(t));
        let Some(noun) = before.or_else(|| es.get(i + 1).filter(|t| gendered_noun(t))) else {
            continue;
        };
        if noun.feats.gender != Some(gender) {
            return RuleOutcome::checked(RuleId::Adj, false, format!("{} disagrees with {}", adj.surface, noun.surface));
        }
    }
    RuleOutcome::checked(RuleId::Adj, true, format!("adjective counts {ja_adj} vs {es_adj}"))
}

fn check_q(ja: &[Token], es: &[Token]) -> RuleOutcome {
    let (jq, eq) = (ja_is_question(ja), es_is_question(es));
    let detail = match (jq, eq) {
        (true, true) => "both questions",
        (false, false) => "neither is a question",
        (true, false) => "only ja is a question",
        (false, true) => "only es is a question",
    };
    RuleOutcome::checked(RuleId::Q, jq == eq, detail)
}

/// Evaluates all five rules, in [`RuleId::ALL`] order. Disabled rules come
/// back inapplicable.
pub fn check_rules(ja: &TaggedSentence, es: &TaggedSentence, lexicon: &BilingualLexicon, cfg: &RuleConfig) -> Vec<RuleOutcome> {
    RuleId::ALL
        .into_iter()
        .map(|rule| {
            if !cfg.is_enabled(rule) {
                return RuleOutcome::inapplicable(rule, "disabled");
            }
            match rule {
                RuleId::Cop => check_cop(&ja.tokens, &es.tokens, cfg.cop_window),
                RuleId::Ne => check_ne(&ja.tokens, &es.tokens, lexicon, cfg.ne_ngram_max),
                RuleId::Adj => check_adj(&ja.tokens, &es.tokens),
                RuleId::Q => check_q(&ja.tokens, &es.tokens),
                // pronouns drop freely in both languages, so a mismatch says nothing
                RuleId::Pron => RuleOutcome::inapplicable(rule, "pro-drop"),
            }
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RuleScore {
    pub score: f64,
    pub hard_reject: bool,
}

pub const NEUTRAL_SCORE: f64 = 0.5;

/// Share of applicable soft rules that are satisfied, or [`NEUTRAL_SCORE`]
/// when none applies. A violated `R_Q` rejects the pair outright.
pub fn rule_score(outcomes: &[RuleOutcome]) -> RuleScore {
    let hard_reject = outcomes.iter().any(|o| o.rule == RuleId::Q && o.applicable && !o.satisfied);
    let soft: Vec<&RuleOutcome> = outcomes.iter().filter(|o| o.rule != RuleId::Q && o.applicable).collect();
    let score = if soft.is_empty() {
        NEUTRAL_SCORE
    } else {
        soft.iter().filter(|o| o.satisfied).count() as f64 / soft.len() as f64
    };
    RuleScore { score, hard_reject }
}
