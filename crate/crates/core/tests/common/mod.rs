#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use corpusforge::aligner::{read_alignments_tsv, AlignmentRow};
use corpusforge::dump::{parse_dump, resolve_redirects, CleanArticle, ParsedDump, RedirectMap};
use corpusforge::eval::{parse_gold, GoldPair};
use corpusforge::lang::Lang;
use corpusforge::lexicon::{build_link_lexicon, parse_dictionary, BilingualLexicon};
use corpusforge::textprep::{split_sentences, Abbreviations, SentenceRecord};

pub const CORPUS_FILES: [&str; 5] = ["corpusforge.toml", "dump.ja.xml", "dump.es.xml", "dictionary.tsv", "gold.tsv"];

pub fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

pub fn read(path: &Path) -> String {
    std::fs::read_to_string(path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

/// A private copy of the fixture corpus, so runs never share an output dir.
pub fn corpus_copy() -> tempfile::TempDir {
    let dir = tempfile::tempdir().expect("temp dir");
    for name in CORPUS_FILES {
        std::fs::copy(fixtures().join("corpus").join(name), dir.path().join(name)).expect("copy fixture");
    }
    dir
}

pub fn gold(dir: &Path) -> BTreeSet<GoldPair> {
    parse_gold(&read(&dir.join("gold.tsv"))).expect("gold parses")
}

pub fn alignments(path: &Path) -> Vec<AlignmentRow> {
    read_alignments_tsv(&read(path)).expect("alignments parse")
}

pub struct Dumps {
    pub ja: ParsedDump,
    pub es: ParsedDump,
    pub redirects_ja: RedirectMap,
    pub redirects_es: RedirectMap,
}

impl Dumps {
    pub fn load(dir: &Path) -> Dumps {
        let ja = parse_dump(read(&dir.join("dump.ja.xml")).as_bytes(), Lang::Ja).expect("ja dump");
        let es = parse_dump(read(&dir.join("dump.es.xml")).as_bytes(), Lang::Es).expect("es dump");
        let (redirects_ja, redirects_es) = (resolve_redirects(&ja.pages), resolve_redirects(&es.pages));
        Dumps { ja, es, redirects_ja, redirects_es }
    }

    pub fn link_lexicon(&self) -> BilingualLexicon {
        build_link_lexicon(&self.ja.pages, &self.es.pages, &self.redirects_ja, &self.redirects_es).0
    }

    /// Sentences of one article, prepared the way the pipeline does it.
    pub fn sentences(&self, lang: Lang, title: &str) -> Vec<SentenceRecord> {
        let (dump, redirects) = match lang {
            Lang::Ja => (&self.ja, &self.redirects_ja),
            Lang::Es => (&self.es, &self.redirects_es),
        };
        let page = dump.pages.iter().find(|p| p.title == title).unwrap_or_else(|| panic!("no article {title}"));
        let mut article = CleanArticle::from_page(page);
        article.resolve_links(redirects);
        split_sentences(lang, &article.title, &article.text, &article.links, &Abbreviations::default())
    }
}

/// Link lexicon merged with the corpus dictionary.
pub fn full_lexicon(dumps: &Dumps) -> BilingualLexicon {
    let (dict, _) = parse_dictionary(&read(&fixtures().join("corpus/dictionary.tsv")));
    dumps.link_lexicon().merge(&dict)
}
