//! Japanese <-> Spanish term lexicon.
//!
//! Entries come from two places: interlanguage links between article titles
//! ([`build_link_lexicon`]) and a general-purpose two-column dictionary
//! ([`load_dictionary`]). Both end up in the same many-to-many structure.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::dump::{extract_langlinks, RawPage, RedirectMap, Resolution};
use crate::lang::{nfc, normalize_title, strip_disambiguator, Lang};

#[derive(Debug, thiserror::Error)]
pub enum LexiconError {
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("line {line}: {message}")]
    Format { line: usize, message: String },
}

/// Where an entry came from. `Link` sorts first and wins on merge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    Link,
    Dict,
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Source::Link => "link",
            Source::Dict => "dict",
        })
    }
}

impl FromStr for Source {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "link" => Ok(Source::Link),
            "dict" => Ok(Source::Dict),
            other => Err(format!("unknown source `{other}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LexEntry {
    pub ja_term: String,
    pub es_term: String,
    pub source: Source,
}

static NO_TERMS: BTreeSet<String> = BTreeSet::new();

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BilingualLexicon {
    entries: BTreeMap<(String, String), Source>,
    index_ja: BTreeMap<String, BTreeSet<String>>,
    index_es: BTreeMap<String, BTreeSet<String>>,
}

impl BilingualLexicon {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a pair after NFC-normalizing and trimming both terms. Returns
    /// false when either term is empty, or when the Japanese term starts with
    /// `#`, which would read back from TSV as a comment. A `Link` source
    /// replaces `Dict` for an existing pair, never the other way round.
    pub fn insert(&mut self, ja_term: &str, es_term: &str, source: Source) -> bool {
        let ja = nfc(ja_term.trim());
        let es = nfc(es_term.trim());
        if ja.is_empty() || es.is_empty() || ja.starts_with('#') {
            return false;
        }
        let slot = self.entries.entry((ja.clone(), es.clone())).or_insert(source);
        *slot = (*slot).min(source);
        self.index_ja.entry(ja.clone()).or_default().insert(es.clone());
        self.index_es.entry(es).or_default().insert(ja);
        true
    }

    /// Adds a pair of article titles. A parenthetical disambiguator is dropped
    /// from the term; the full titles are kept as a second entry.
    fn insert_titles(&mut self, ja_title: &str, es_title: &str) {
        let ja_short = strip_disambiguator(ja_title);
        let es_short = strip_disambiguator(es_title);
        self.insert(ja_short, es_short, Source::Link);
        if ja_short != ja_title || es_short != es_title {
            self.insert(ja_title, es_title, Source::Link);
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries sorted by Japanese term, then Spanish term.
    pub fn entries(&self) -> impl Iterator<Item = LexEntry> + '_ {
        self.entries.iter().map(|((ja, es), source)| LexEntry {
            ja_term: ja.clone(),
            es_term: es.clone(),
            source: *source,
        })
    }

    pub fn source_of(&self, ja_term: &str, es_term: &str) -> Option<Source> {
        self.entries.get(&(ja_term.to_string(), es_term.to_string())).copied()
    }

    pub fn translate_ja(&self, term: &str) -> &BTreeSet<String> {
        self.index_ja.get(&nfc(term)).unwrap_or(&NO_TERMS)
    }

    /// Exact match first, then the lowercased term.
    pub fn translate_es(&self, term: &str) -> &BTreeSet<String> {
        let term = nfc(term);
        match self.index_es.get(&term) {
            Some(found) => found,
            None => self.index_es.get(&term.to_lowercase()).unwrap_or(&NO_TERMS),
        }
    }

    pub fn translate(&self, lang: Lang, term: &str) -> &BTreeSet<String> {
        match lang {
            Lang::Ja => self.translate_ja(term),
            Lang::Es => self.translate_es(term),
        }
    }

    pub fn ja_terms(&self) -> impl Iterator<Item = &str> {
        self.index_ja.keys().map(String::as_str)
    }

    pub fn es_terms(&self) -> impl Iterator<Item = &str> {
        self.index_es.keys().map(String::as_str)
    }

    /// Union of both lexicons; a pair present in both keeps the link source.
    pub fn merge(&self, other: &BilingualLexicon) -> BilingualLexicon {
        let mut merged = self.clone();
        for ((ja, es), source) in &other.entries {
            merged.insert(ja, es, *source);
        }
        merged
    }

    /// `ja<TAB>es<TAB>source` lines sorted by ja then es.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for ((ja, es), source) in &self.entries {
            out.push_str(ja);
            out.push('\t');
            out.push_str(es);
            out.push('\t');
            out.push_str(&source.to_string());
            out.push('\n');
        }
        out
    }

    /// Reads the three-column format written by [`BilingualLexicon::to_tsv`].
    pub fn from_tsv(text: &str) -> Result<BilingualLexicon, LexiconError> {
        let mut lexicon = BilingualLexicon::new();
        for (n, line) in text.lines().enumerate() {
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split('\t').collect();
            let [ja, es, source] = fields[..] else {
                return Err(LexiconError::Format { line: n + 1, message: format!("expected 3 columns, found {}", fields.len()) });
            };
            let source = source.parse().map_err(|message| LexiconError::Format { line: n + 1, message })?;
            if !lexicon.insert(ja, es, source) {
                return Err(LexiconError::Format { line: n + 1, message: "empty term, or a term starting with `#`".into() });
            }
        }
        Ok(lexicon)
    }

    pub fn read_tsv(path: &Path) -> Result<BilingualLexicon, LexiconError> {
        let text = read_to_string(path)?;
        Self::from_tsv(&text)
    }
}

fn read_to_string(path: &Path) -> Result<String, LexiconError> {
    std::fs::read_to_string(path).map_err(|source| LexiconError::Io { path: path.to_path_buf(), source })
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct DictStats {
    pub entries: usize,
    pub skipped_lines: usize,
}

/// Parses a `ja<TAB>es` dictionary. Comment lines start with `#`; lines
/// without exactly one tab, or with an empty side, are skipped and counted.
pub fn parse_dictionary(text: &str) -> (BilingualLexicon, DictStats) {
    let mut lexicon = BilingualLexicon::new();
    let mut stats = DictStats::default();
    for line in text.lines() {
        let line = line.strip_suffix('\r').unwrap_or(line);
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        match line.split_once('\t') {
            Some((ja, es)) if !es.contains('\t') && lexicon.insert(ja, es, Source::Dict) => stats.entries += 1,
            _ => stats.skipped_lines += 1,
        }
    }
    (lexicon, stats)
}

pub fn load_dictionary(path: &Path) -> Result<(BilingualLexicon, DictStats), LexiconError> {
    Ok(parse_dictionary(&read_to_string(path)?))
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct LinkLexiconStats {
    pub langlinks: usize,
    /// Links whose target sits on (or leads into) a redirect cycle.
    pub skipped_cycles: usize,
}

/// Pairs article titles through their `[[xx:...]]` links, in both directions.
/// Both ends are resolved through the redirects of their language first.
pub fn build_link_lexicon(
    ja_pages: &[RawPage],
    es_pages: &[RawPage],
    redirects_ja: &RedirectMap,
    redirects_es: &RedirectMap,
) -> (BilingualLexicon, LinkLexiconStats) {
    let mut lexicon = BilingualLexicon::new();
    let mut stats = LinkLexiconStats::default();

    for (pages, own, foreign, dst) in [
        (ja_pages, redirects_ja, redirects_es, Lang::Es),
        (es_pages, redirects_es, redirects_ja, Lang::Ja),
    ] {
        for page in pages.iter().filter(|p| !p.is_redirect()) {
            let links = extract_langlinks(page);
            let mut links = links.iter().filter(|l| l.dst_lang == dst.code()).peekable();
            if links.peek().is_none() {
                continue;
            }
            let Some(src) = resolve_title(own, &page.title) else {
                stats.skipped_cycles += 1;
                continue;
            };
            for link in links {
                stats.langlinks += 1;
                let Some(target) = resolve_title(foreign, &link.dst_title) else {
                    stats.skipped_cycles += 1;
                    continue;
                };
                match dst {
                    Lang::Es => lexicon.insert_titles(&src, &target),
                    Lang::Ja => lexicon.insert_titles(&target, &src),
                }
            }
        }
    }
    (lexicon, stats)
}

/// `None` for cycles. Titles missing from the dump are taken as written.
fn resolve_title(redirects: &RedirectMap, title: &str) -> Option<String> {
    match redirects.resolve(title) {
        Resolution::Article(article) => Some(article.to_string()),
        Resolution::Cycle => None,
        Resolution::Unknown => Some(normalize_title(title)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dump::resolve_redirects;

    fn page(lang: Lang, title: &str, text: &str, redirect: Option<&str>) -> RawPage {
        RawPage { lang, title: title.into(), wikitext: text.into(), redirect_target: redirect.map(Into::into) }
    }

    fn build(ja: &[RawPage], es: &[RawPage]) -> (BilingualLexicon, LinkLexiconStats) {
        build_link_lexicon(ja, es, &resolve_redirects(ja), &resolve_redirects(es))
    }

    #[test]
    fn economics_from_langlink() {
        let ja = [page(Lang::Ja, "経済学", "経済学は… [[es:Economía]]", None)];
        let (lex, _) = build(&ja, &[]);
        assert_eq!(lex.entries().collect::<Vec<_>>(), vec![LexEntry {
            ja_term: "経済学".into(),
            es_term: "Economía".into(),
            source: Source::Link,
        }]);
    }

    #[test]
    fn both_directions_merge() {
        let ja = [page(Lang::Ja, "経済学", "[[es:Economía]]", None)];
        let es = [page(Lang::Es, "Economía", "[[ja:経済学]]", None)];
        assert_eq!(build(&ja, &es).0.len(), 1);
    }

    #[test]
    fn redirect_resolved_before_pairing() {
        let ja = [
            page(Lang::Ja, "アインシュタイン", "", Some("アルベルト・アインシュタイン")),
            page(Lang::Ja, "アルベルト・アインシュタイン", "物理学者。", None),
        ];
        let es = [page(Lang::Es, "Albert Einstein", "Físico. [[ja:アインシュタイン]]", None)];
        let (lex, _) = build(&ja, &es);
        assert_eq!(lex.translate_es("Albert Einstein").iter().collect::<Vec<_>>(), ["アルベルト・アインシュタイン"]);
        assert!(lex.translate_ja("アインシュタイン").is_empty());
    }

    #[test]
    fn cycle_target_skipped() {
        let ja = [page(Lang::Ja, "A", "", Some("B")), page(Lang::Ja, "B", "", Some("A"))];
        let es = [page(Lang::Es, "Bucle", "[[ja:A]]", None)];
        let (lex, stats) = build(&ja, &es);
        assert!(lex.is_empty());
        assert_eq!(stats.skipped_cycles, 1);
    }

    #[test]
    fn no_langlinks_empty_lexicon() {
        let ja = [page(Lang::Ja, "犬", "犬は動物。", None)];
        assert!(build(&ja, &[]).0.is_empty());
    }

    #[test]
    fn disambiguator_kept_as_alias() {
        let es = [page(Lang::Es, "Queen (banda)", "[[ja:クイーン (バンド)]]", None)];
        let (lex, _) = build(&[], &es);
        assert!(lex.translate_ja("クイーン").contains("Queen"));
        assert!(lex.translate_ja("クイーン (バンド)").contains("Queen (banda)"));
    }

    #[test]
    fn dictionary_lines() {
        let (lex, stats) = parse_dictionary("# Aulex sample\n犬\tperro\nのむ\tbeber\nのむ\ttomar\nmalformed\na\tb\tc\n");
        assert_eq!(stats, DictStats { entries: 3, skipped_lines: 2 });
        assert_eq!(lex.source_of("犬", "perro"), Some(Source::Dict));
        assert_eq!(lex.translate_ja("のむ").len(), 2);
        assert_eq!(lex.translate_ja("犬").iter().collect::<Vec<_>>(), ["perro"]);
    }

    #[test]
    fn empty_dictionary() {
        let (lex, stats) = parse_dictionary("");
        assert!(lex.is_empty());
        assert_eq!(stats, DictStats::default());
    }

    #[test]
    fn translation_lookups() {
        let (lex, _) = parse_dictionary("犬\tperro\n");
        assert!(lex.translate_ja("未知").is_empty());
        assert_eq!(lex.translate_es("Perro").iter().collect::<Vec<_>>(), ["犬"]);
    }

    #[test]
    fn merge_prefers_link() {
        let (dict, _) = parse_dictionary("経済学\tEconomía\n犬\tperro\n");
        let mut link = BilingualLexicon::new();
        link.insert("経済学", "Economía", Source::Link);
        let merged = dict.merge(&link);
        assert_eq!(merged.len(), 2);
        assert_eq!(merged.source_of("経済学", "Economía"), Some(Source::Link));
        assert_eq!(link.merge(&dict), merged);
        assert_eq!(dict.merge(&BilingualLexicon::new()), dict);
    }

    #[test]
    fn merge_disjoint_sizes_add() {
        let (a, _) = parse_dictionary("a\t1\nb\t2\nc\t3\n");
        let (b, _) = parse_dictionary("d\t4\ne\t5\nf\t6\ng\t7\n");
        assert_eq!(a.merge(&b).len(), 7);
    }

    #[test]
    fn tsv_round_trip() {
        let (mut lex, _) = parse_dictionary("犬\tperro\n水\tagua\n");
        lex.insert("経済学", "Economía", Source::Link);
        let tsv = lex.to_tsv();
        assert_eq!(tsv, "水\tagua\tdict\n犬\tperro\tdict\n経済学\tEconomía\tlink\n");
        assert_eq!(BilingualLexicon::from_tsv(&tsv).unwrap().to_tsv(), tsv);
    }

    #[test]
    fn hash_terms_are_refused() {
        let mut lex = BilingualLexicon::new();
        assert!(!lex.insert(" #1", "uno", Source::Dict));
        assert!(lex.insert("1#", "uno", Source::Dict));
        assert_eq!(BilingualLexicon::from_tsv(&lex.to_tsv()).unwrap(), lex);
        assert!(BilingualLexicon::from_tsv(" #\tx\tdict\n").is_err());
    }

    #[test]
    fn tsv_errors_name_the_line() {
        let err = BilingualLexicon::from_tsv("犬\tperro\tdict\n水\tagua\n").unwrap_err();
        assert!(matches!(err, LexiconError::Format { line: 2, .. }));
        let err = BilingualLexicon::from_tsv("犬\tperro\tmaybe\n").unwrap_err();
        assert!(matches!(err, LexiconError::Format { line: 1, .. }));
    }
}
