//! End-to-end stages over one configuration: lexicon, article pairs,
//! rule-based and baseline alignment, evaluation.

mod config;
mod manifest;

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rayon::prelude::*;

use crate::aligner::{
    align_baseline, align_rule_based, read_alignments_tsv, tmx_string, tsv_string, AlignmentCandidate, AlignmentRow, Label, OutputFormat, Scorer,
};
use crate::dump::{parse_dump, resolve_redirects, CleanArticle, ParsedDump, RawPage, RedirectMap};
use crate::eval::{export_for_annotation, import_judgments, parse_gold, reports_table, score_against_gold, tabulate, EvalReport};
use crate::lang::{strip_disambiguator, Lang};
use crate::lexicon::{build_link_lexicon, parse_dictionary, BilingualLexicon};
use crate::tagging::{parse_tagged, BuiltinTagger, EsTagger, ImportedTagger, JaTagger, SeedLexicon, Tagger};
use crate::textprep::{split_sentences, Abbreviations, SentenceRecord, StopwordList};

pub use config::{ConfigError, EvalConfig, InputPaths, PipelineConfig};
pub use manifest::{sha256_hex, Manifest};

pub const LEXICON_TSV: &str = "lexicon.tsv";
pub const LINK_LEXICON_TSV: &str = "lexicon.link.tsv";
pub const PAIRS_TSV: &str = "pairs.tsv";
pub const RULE_BASED_TSV: &str = "alignments.rule.tsv";
pub const RULE_BASED_TMX: &str = "alignments.rule.tmx";
pub const BASELINE_TSV: &str = "alignments.baseline.tsv";
pub const BASELINE_TMX: &str = "alignments.baseline.tmx";
pub const EVAL_JSON: &str = "eval.json";
pub const EVAL_TXT: &str = "eval.txt";

const PAIRS_HEADER: &str = "ja_title\tes_title";

#[derive(Debug, thiserror::Error)]
pub enum PipelineError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("`{stage}` needs {artifact}, which is missing; run `{producer}` first")]
    Order { stage: Stage, artifact: PathBuf, producer: Stage },
    #[error("{path}: {message}")]
    Data { path: PathBuf, message: String },
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("cannot start worker pool: {0}")]
    Pool(String),
}

impl PipelineError {
    /// 1 for problems with how the tool was invoked, 2 for problems with the data.
    pub fn exit_code(&self) -> i32 {
        match self {
            PipelineError::Config(_) | PipelineError::Order { .. } => 1,
            _ => 2,
        }
    }
}

fn data_error(path: &Path, message: impl fmt::Display) -> PipelineError {
    PipelineError::Data { path: path.to_path_buf(), message: message.to_string() }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    Lexicon,
    Pairs,
    Align,
    Baseline,
    Eval,
    All,
}

impl Stage {
    pub fn as_str(self) -> &'static str {
        match self {
            Stage::Lexicon => "lexicon",
            Stage::Pairs => "pairs",
            Stage::Align => "align",
            Stage::Baseline => "baseline",
            Stage::Eval => "eval",
            Stage::All => "all",
        }
    }
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Stage {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        [Stage::Lexicon, Stage::Pairs, Stage::Align, Stage::Baseline, Stage::Eval, Stage::All]
            .into_iter()
            .find(|st| st.as_str() == s)
            .ok_or_else(|| format!("unknown stage `{s}`"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunOptions {
    /// Worker threads for alignment. Never changes any output.
    pub jobs: usize,
    /// TMX is written next to the TSV files, which are always produced.
    pub format: OutputFormat,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { jobs: 1, format: OutputFormat::Tsv }
    }
}

/// Runs one stage, or every stage in order for [`Stage::All`], and returns
/// the manifests written.
pub fn run(stage: Stage, cfg: &PipelineConfig, opts: &RunOptions) -> Result<Vec<Manifest>, PipelineError> {
    std::fs::create_dir_all(&cfg.output_dir).map_err(|source| PipelineError::Io { path: cfg.output_dir.clone(), source })?;
    let ctx = Context { cfg, opts };
    let stages = match stage {
        Stage::All => vec![Stage::Lexicon, Stage::Pairs, Stage::Align, Stage::Baseline, Stage::Eval],
        one => vec![one],
    };
    let mut manifests = Vec::new();
    for st in stages {
        log::info!("running stage {st}");
        let manifest = match st {
            Stage::Lexicon => ctx.lexicon()?,
            Stage::Pairs => ctx.pairs()?,
            Stage::Align => ctx.align()?,
            Stage::Baseline => ctx.baseline()?,
            Stage::Eval => ctx.eval()?,
            Stage::All => unreachable!("expanded above"),
        };
        ctx.write(&format!("{st}.manifest.json"), manifest.to_json().as_bytes(), None)?;
        manifests.push(manifest);
    }
    Ok(manifests)
}

struct Corpus {
    ja: ParsedDump,
    es: ParsedDump,
    redirects_ja: RedirectMap,
    redirects_es: RedirectMap,
}

impl Corpus {
    fn pages(&self, lang: Lang) -> &[RawPage] {
        match lang {
            Lang::Ja => &self.ja.pages,
            Lang::Es => &self.es.pages,
        }
    }

    fn redirects(&self, lang: Lang) -> &RedirectMap {
        match lang {
            Lang::Ja => &self.redirects_ja,
            Lang::Es => &self.redirects_es,
        }
    }

    fn articles(&self, lang: Lang) -> HashMap<&str, &RawPage> {
        self.pages(lang).iter().filter(|p| !p.is_redirect()).map(|p| (p.title.as_str(), p)).collect()
    }
}

/// An article pair reduced to sentences.
struct PreparedPair {
    ja: Vec<SentenceRecord>,
    es: Vec<SentenceRecord>,
}

struct Context<'a> {
    cfg: &'a PipelineConfig,
    opts: &'a RunOptions,
}

impl Context<'_> {
    fn out(&self, name: &str) -> PathBuf {
        self.cfg.output_dir.join(name)
    }

    fn read(&self, path: &Path) -> Result<Vec<u8>, PipelineError> {
        std::fs::read(path).map_err(|source| PipelineError::Io { path: path.to_path_buf(), source })
    }

    fn read_text(&self, path: &Path) -> Result<String, PipelineError> {
        String::from_utf8(self.read(path)?).map_err(|_| data_error(path, "not valid UTF-8"))
    }

    /// Reads an upstream artifact, or reports which stage should have made it.
    fn upstream(&self, stage: Stage, name: &str, producer: Stage, manifest: &mut Manifest) -> Result<String, PipelineError> {
        let path = self.out(name);
        if !path.is_file() {
            return Err(PipelineError::Order { stage, artifact: path, producer });
        }
        let text = self.read_text(&path)?;
        manifest.input(name, text.as_bytes());
        Ok(text)
    }

    fn write(&self, name: &str, contents: &[u8], manifest: Option<&mut Manifest>) -> Result<(), PipelineError> {
        let path = self.out(name);
        std::fs::write(&path, contents).map_err(|source| PipelineError::Io { path, source })?;
        if let Some(m) = manifest {
            m.output(name, contents);
        }
        Ok(())
    }

    fn manifest(&self, stage: Stage) -> Manifest {
        let mut params = self.cfg.parameters_json();
        if matches!(stage, Stage::Align | Stage::Baseline) {
            params["format"] = serde_json::json!(format!("{:?}", self.opts.format).to_lowercase());
        }
        Manifest::new(stage.as_str(), &params)
    }

    fn corpus(&self, manifest: &mut Manifest) -> Result<Corpus, PipelineError> {
        let load = |path: &Path, lang: Lang, key: &str, manifest: &mut Manifest| -> Result<ParsedDump, PipelineError> {
            let bytes = self.read(path)?;
            manifest.input(key, &bytes);
            parse_dump(&bytes[..], lang).map_err(|e| data_error(path, e))
        };
        let ja = load(&self.cfg.input.dump_ja, Lang::Ja, "dump_ja", manifest)?;
        let es = load(&self.cfg.input.dump_es, Lang::Es, "dump_es", manifest)?;
        let redirects_ja = resolve_redirects(&ja.pages);
        let redirects_es = resolve_redirects(&es.pages);
        Ok(Corpus { ja, es, redirects_ja, redirects_es })
    }

    fn lexicon(&self) -> Result<Manifest, PipelineError> {
        let mut m = self.manifest(Stage::Lexicon);
        let corpus = self.corpus(&mut m)?;
        let (links, link_stats) = build_link_lexicon(&corpus.ja.pages, &corpus.es.pages, &corpus.redirects_ja, &corpus.redirects_es);
        let dict_path = &self.cfg.input.dictionary;
        let dict_text = self.read_text(dict_path)?;
        m.input("dictionary", dict_text.as_bytes());
        let (dict, dict_stats) = parse_dictionary(&dict_text);
        let merged = links.merge(&dict);

        for (lang, dump) in [(Lang::Ja, &corpus.ja), (Lang::Es, &corpus.es)] {
            let redirects = corpus.redirects(lang);
            m.count(&format!("pages_{lang}"), dump.pages.len());
            m.count(&format!("redirects_{lang}"), dump.pages.iter().filter(|p| p.is_redirect()).count());
            m.count(&format!("redirect_cycle_members_{lang}"), redirects.cycle_members().len());
            m.count(&format!("skipped_pages_{lang}"), dump.skipped.total());
        }
        m.count("langlinks", link_stats.langlinks);
        m.count("langlinks_skipped_cycles", link_stats.skipped_cycles);
        m.count("link_entries", links.len());
        m.count("dict_entries", dict_stats.entries);
        m.count("dict_skipped_lines", dict_stats.skipped_lines);
        m.count("merged_entries", merged.len());
        self.write(LINK_LEXICON_TSV, links.to_tsv().as_bytes(), Some(&mut m))?;
        self.write(LEXICON_TSV, merged.to_tsv().as_bytes(), Some(&mut m))?;
        Ok(m)
    }

    fn load_lexicon(&self, stage: Stage, name: &str, m: &mut Manifest) -> Result<BilingualLexicon, PipelineError> {
        let text = self.upstream(stage, name, Stage::Lexicon, m)?;
        BilingualLexicon::from_tsv(&text).map_err(|e| data_error(&self.out(name), e))
    }

    fn pairs(&self) -> Result<Manifest, PipelineError> {
        let mut m = self.manifest(Stage::Pairs);
        let links = self.load_lexicon(Stage::Pairs, LINK_LEXICON_TSV, &mut m)?;
        let corpus = self.corpus(&mut m)?;
        let pairs = select_article_pairs(&corpus, &links);
        let mut text = format!("{PAIRS_HEADER}\n");
        for (ja, es) in &pairs {
            text.push_str(&format!("{ja}\t{es}\n"));
        }
        m.count("articles_ja", corpus.articles(Lang::Ja).len());
        m.count("articles_es", corpus.articles(Lang::Es).len());
        m.count("article_pairs", pairs.len());
        self.write(PAIRS_TSV, text.as_bytes(), Some(&mut m))?;
        Ok(m)
    }

    fn load_pairs(&self, stage: Stage, m: &mut Manifest) -> Result<Vec<(String, String)>, PipelineError> {
        let text = self.upstream(stage, PAIRS_TSV, Stage::Pairs, m)?;
        let path = self.out(PAIRS_TSV);
        let mut lines = text.lines();
        if lines.next() != Some(PAIRS_HEADER) {
            return Err(data_error(&path, "missing header"));
        }
        lines
            .enumerate()
            .map(|(n, line)| {
                line.split_once('\t')
                    .map(|(ja, es)| (ja.to_string(), es.to_string()))
                    .ok_or_else(|| data_error(&path, format!("line {}: expected 2 columns", n + 2)))
            })
            .collect()
    }

    /// Sentences of every listed article pair, in pair order.
    fn prepare(&self, pairs: &[(String, String)], corpus: &Corpus) -> Result<Vec<PreparedPair>, PipelineError> {
        let abbreviations = Abbreviations::default();
        let (articles_ja, articles_es) = (corpus.articles(Lang::Ja), corpus.articles(Lang::Es));
        let sentences = |lang: Lang, title: &str, articles: &HashMap<&str, &RawPage>| {
            let page = articles.get(title).ok_or_else(|| {
                data_error(&self.out(PAIRS_TSV), format!("article `{title}` is not in the {lang} dump"))
            })?;
            let mut article = CleanArticle::from_page(page);
            article.resolve_links(corpus.redirects(lang));
            Ok::<_, PipelineError>(split_sentences(lang, &article.title, &article.text, &article.links, &abbreviations))
        };
        pairs
            .iter()
            .map(|(ja, es)| Ok(PreparedPair { ja: sentences(Lang::Ja, ja, &articles_ja)?, es: sentences(Lang::Es, es, &articles_es)? }))
            .collect()
    }

    fn pool(&self) -> Result<rayon::ThreadPool, PipelineError> {
        rayon::ThreadPoolBuilder::new()
            .num_threads(self.opts.jobs.max(1))
            .build()
            .map_err(|e| PipelineError::Pool(e.to_string()))
    }

    fn stopwords(&self, lang: Lang, path: Option<&PathBuf>, m: &mut Manifest) -> Result<StopwordList, PipelineError> {
        let list = match path {
            Some(p) => StopwordList::parse(lang, &self.read_text(p)?),
            None => StopwordList::builtin(lang),
        };
        let words: Vec<&str> = list.words().collect();
        m.input(&format!("stopwords_{lang}"), words.join("\n").as_bytes());
        Ok(list)
    }

    fn seed(&self, lang: Lang, path: Option<&PathBuf>, m: &mut Manifest) -> Result<SeedLexicon, PipelineError> {
        match path {
            Some(p) => {
                let text = self.read_text(p)?;
                m.input(&format!("seed_{lang}"), text.as_bytes());
                SeedLexicon::parse(lang, &text).map_err(|e| data_error(p, e))
            }
            None => Ok(SeedLexicon::builtin(lang)),
        }
    }

    fn tagger(&self, lexicon: &BilingualLexicon, m: &mut Manifest) -> Result<Box<dyn Tagger>, PipelineError> {
        let input = &self.cfg.input;
        let builtin = BuiltinTagger {
            ja: JaTagger::new(self.seed(Lang::Ja, input.seed_ja.as_ref(), m)?, lexicon),
            es: EsTagger::new(self.seed(Lang::Es, input.seed_es.as_ref(), m)?, lexicon, Abbreviations::default()),
        };
        let mut imported = Vec::new();
        for (lang, path) in [(Lang::Ja, &input.tagged_ja), (Lang::Es, &input.tagged_es)] {
            let Some(path) = path else { continue };
            let text = self.read_text(path)?;
            m.input(&format!("tagged_{lang}"), text.as_bytes());
            let import = parse_tagged(lang, &text).map_err(|e| data_error(path, e))?;
            imported.extend(import.sentences);
        }
        if imported.is_empty() {
            Ok(Box::new(builtin))
        } else {
            Ok(Box::new(ImportedTagger::new(imported, builtin)))
        }
    }

    fn write_alignments(
        &self,
        m: &mut Manifest,
        candidates: &[AlignmentCandidate],
        prefix: &str,
        tsv: &str,
        tmx: &str,
    ) -> Result<(), PipelineError> {
        let rows = AlignmentRow::number(candidates, prefix);
        m.count("candidates", candidates.len());
        for label in [Label::Aligned, Label::Partial, Label::Rejected] {
            m.count(label.as_str(), candidates.iter().filter(|c| c.label == label).count());
        }
        self.write(tsv, tsv_string(&rows).as_bytes(), Some(&mut *m))?;
        if self.opts.format == OutputFormat::Tmx {
            self.write(tmx, tmx_string(&rows).as_bytes(), Some(m))?;
        }
        Ok(())
    }

    fn count_sentences(m: &mut Manifest, prepared: &[PreparedPair]) {
        m.count("article_pairs", prepared.len());
        m.count("sentences_ja", prepared.iter().map(|p| p.ja.len()).sum());
        m.count("sentences_es", prepared.iter().map(|p| p.es.len()).sum());
    }

    fn align(&self) -> Result<Manifest, PipelineError> {
        let mut m = self.manifest(Stage::Align);
        let lexicon = self.load_lexicon(Stage::Align, LEXICON_TSV, &mut m)?;
        let pairs = self.load_pairs(Stage::Align, &mut m)?;
        let corpus = self.corpus(&mut m)?;
        let stop_ja = self.stopwords(Lang::Ja, self.cfg.input.stopwords_ja.as_ref(), &mut m)?;
        let stop_es = self.stopwords(Lang::Es, self.cfg.input.stopwords_es.as_ref(), &mut m)?;
        let tagger = self.tagger(&lexicon, &mut m)?;
        let prepared = self.prepare(&pairs, &corpus)?;
        let scorer = Scorer { lexicon: &lexicon, stop_ja: &stop_ja, stop_es: &stop_es, rules: &self.cfg.rules, cfg: &self.cfg.align };

        let per_pair: Vec<Vec<AlignmentCandidate>> = self.pool()?.install(|| {
            prepared
                .par_iter()
                .map(|pair| {
                    let ja: Vec<_> = pair.ja.iter().map(|r| tagger.tag(r.clone())).collect();
                    let es: Vec<_> = pair.es.iter().map(|r| tagger.tag(r.clone())).collect();
                    align_rule_based(&ja, &es, &scorer)
                })
                .collect()
        });
        Self::count_sentences(&mut m, &prepared);
        self.write_alignments(&mut m, &per_pair.concat(), "rb", RULE_BASED_TSV, RULE_BASED_TMX)?;
        Ok(m)
    }

    fn baseline(&self) -> Result<Manifest, PipelineError> {
        let mut m = self.manifest(Stage::Baseline);
        let links = self.load_lexicon(Stage::Baseline, LINK_LEXICON_TSV, &mut m)?;
        let pairs = self.load_pairs(Stage::Baseline, &mut m)?;
        let corpus = self.corpus(&mut m)?;
        let prepared = self.prepare(&pairs, &corpus)?;
        let per_pair: Vec<Vec<AlignmentCandidate>> = self
            .pool()?
            .install(|| prepared.par_iter().map(|pair| align_baseline(&pair.ja, &pair.es, &links, &self.cfg.align)).collect());
        Self::count_sentences(&mut m, &prepared);
        self.write_alignments(&mut m, &per_pair.concat(), "bl", BASELINE_TSV, BASELINE_TMX)?;
        Ok(m)
    }

    fn eval(&self) -> Result<Manifest, PipelineError> {
        let mut m = self.manifest(Stage::Eval);
        let rule_text = self.upstream(Stage::Eval, RULE_BASED_TSV, Stage::Align, &mut m)?;
        let mut systems = vec![("rule-based", RULE_BASED_TSV, rule_text, self.cfg.input.judgments_rule_based.as_ref())];
        if self.out(BASELINE_TSV).is_file() {
            let text = self.upstream(Stage::Eval, BASELINE_TSV, Stage::Baseline, &mut m)?;
            systems.push(("baseline", BASELINE_TSV, text, self.cfg.input.judgments_baseline.as_ref()));
        }
        let gold = match &self.cfg.input.gold {
            Some(path) => {
                let text = self.read_text(path)?;
                m.input("gold", text.as_bytes());
                Some(parse_gold(&text).map_err(|e| data_error(path, e))?)
            }
            None => None,
        };

        let mut reports: Vec<EvalReport> = Vec::new();
        for (system, file, text, judgments) in &systems {
            let rows = read_alignments_tsv(text).map_err(|e| data_error(&self.out(file), e))?;
            if let Some(gold) = &gold {
                reports.push(score_against_gold(system, &rows, gold));
            }
            if let Some(path) = judgments {
                let known: BTreeSet<String> = rows.iter().map(|r| r.pair_id.clone()).collect();
                let jtext = self.read_text(path)?;
                m.input(&format!("judgments_{system}"), jtext.as_bytes());
                let judged = import_judgments(&jtext, Some(&known)).map_err(|e| data_error(path, e))?;
                reports.push(tabulate(&format!("{system} (judged)"), &judged).map_err(|e| data_error(path, e))?);
            }
            let available = rows.iter().filter(|r| r.label != Label::Rejected).count();
            let n = self.cfg.eval.sample_size.min(available);
            if n < self.cfg.eval.sample_size {
                log::warn!("{system}: only {available} non-rejected pairs, sampling all of them");
            }
            let sheet = export_for_annotation(&rows, n, self.cfg.eval.seed, self.cfg.eval.strategy)
                .map_err(|e| data_error(&self.out(file), e))?;
            let name = format!("annotation.{}.tsv", file.trim_start_matches("alignments.").trim_end_matches(".tsv"));
            self.write(&name, sheet.as_bytes(), Some(&mut m))?;
            m.count(&format!("sampled_{system}"), n);
        }
        m.count("reports", reports.len());
        let mut json = serde_json::to_string_pretty(&reports).expect("reports serialize");
        json.push('\n');
        self.write(EVAL_JSON, json.as_bytes(), Some(&mut m))?;
        self.write(EVAL_TXT, reports_table(&reports).as_bytes(), Some(&mut m))?;
        Ok(m)
    }
}

/// Pairs each Japanese article with a Spanish article its title translates
/// to. Full disambiguated titles are tried before their short forms, and
/// each Spanish article is used at most once, in Japanese title order.
pub fn select_article_pairs_from(
    ja_titles: &BTreeSet<&str>,
    es_titles: &BTreeSet<&str>,
    links: &BilingualLexicon,
) -> Vec<(String, String)> {
    let mut used = BTreeSet::new();
    let mut pairs = Vec::new();
    for &ja in ja_titles {
        let mut candidates: Vec<&String> = links.translate_ja(ja).iter().filter(|es| es_titles.contains(es.as_str())).collect();
        candidates.sort_by_key(|es| (strip_disambiguator(es) == es.as_str(), es.as_str()));
        if let Some(es) = candidates.into_iter().find(|es| !used.contains(es.as_str())) {
            used.insert(es.as_str());
            pairs.push((ja.to_string(), es.clone()));
        }
    }
    pairs
}

fn select_article_pairs(corpus: &Corpus, links: &BilingualLexicon) -> Vec<(String, String)> {
    let ja: BTreeSet<&str> = corpus.articles(Lang::Ja).into_keys().collect();
    let es: BTreeSet<&str> = corpus.articles(Lang::Es).into_keys().collect();
    select_article_pairs_from(&ja, &es, links)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lexicon::Source;

    #[test]
    fn disambiguated_titles_win() {
        let mut links = BilingualLexicon::new();
        links.insert("水星", "Mercurio", Source::Link);
        links.insert("水星", "Mercurio (planeta)", Source::Link);
        links.insert("水銀", "Mercurio", Source::Link);
        let ja: BTreeSet<&str> = ["水星", "水銀", "金星"].into();
        let es: BTreeSet<&str> = ["Mercurio", "Mercurio (planeta)"].into();
        let pairs = select_article_pairs_from(&ja, &es, &links);
        assert_eq!(pairs, [("水星".to_string(), "Mercurio (planeta)".to_string()), ("水銀".into(), "Mercurio".into())]);
    }

    #[test]
    fn stage_names() {
        assert_eq!("baseline".parse::<Stage>().unwrap(), Stage::Baseline);
        assert!("merge".parse::<Stage>().is_err());
    }
}
