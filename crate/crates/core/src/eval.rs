//! Human-judgment export/import, per-100 tabulation, and scoring against
//! planted gold alignments.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write as _};
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::aligner::{AlignmentRow, Label};

#[derive(Debug, thiserror::Error)]
pub enum EvalError {
    #[error("cannot sample {requested} pairs: only {available} non-rejected candidates")]
    SampleTooLarge { requested: usize, available: usize },
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
    #[error("unjudged pairs: {}", .0.join(", "))]
    Unjudged(Vec<String>),
    #[error("no judgments to tabulate")]
    Empty,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Correct,
    Partial,
    Incorrect,
}

impl Verdict {
    pub const ALL: [Verdict; 3] = [Verdict::Correct, Verdict::Partial, Verdict::Incorrect];

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Correct => "correct",
            Verdict::Partial => "partial",
            Verdict::Incorrect => "incorrect",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Verdict {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Verdict::ALL.into_iter().find(|v| v.as_str() == s).ok_or_else(|| format!("invalid verdict `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Judgment {
    pub pair_id: String,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    /// Seeded uniform sample over all non-rejected rows.
    #[default]
    Uniform,
    /// Best rows of each article pair in turn, by total.
    TopK,
}

impl FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "uniform" => Ok(Strategy::Uniform),
            "topk" => Ok(Strategy::TopK),
            other => Err(format!("unknown strategy `{other}`")),
        }
    }
}

pub const ANNOTATION_HEADER: &str = "pair_id\tja_text\tes_text\tverdict";

/// Picks `n` of the non-rejected rows. The result keeps the input order.
pub fn sample_rows(rows: &[AlignmentRow], n: usize, seed: u64, strategy: Strategy) -> Result<Vec<AlignmentRow>, EvalError> {
    let pool: Vec<&AlignmentRow> = rows.iter().filter(|r| r.label != Label::Rejected).collect();
    if n > pool.len() {
        return Err(EvalError::SampleTooLarge { requested: n, available: pool.len() });
    }
    let mut picked: Vec<usize> = match strategy {
        Strategy::Uniform => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rand::seq::index::sample(&mut rng, pool.len(), n).into_vec()
        }
        Strategy::TopK => {
            let mut groups: BTreeMap<(&str, &str), Vec<usize>> = BTreeMap::new();
            for (k, r) in pool.iter().enumerate() {
                groups.entry((&r.ja_title, &r.es_title)).or_default().push(k);
            }
            for members in groups.values_mut() {
                members.sort_by(|&a, &b| pool[b].total.total_cmp(&pool[a].total).then(a.cmp(&b)));
            }
            let mut picked = Vec::with_capacity(n);
            let mut round = 0;
            while picked.len() < n {
                for members in groups.values() {
                    if let Some(&k) = members.get(round) {
                        if picked.len() < n {
                            picked.push(k);
                        }
                    }
                }
                round += 1;
            }
            picked
        }
    };
    picked.sort_unstable();
    Ok(picked.into_iter().map(|k| pool[k].clone()).collect())
}

/// Annotation sheet: the sampled rows with an empty verdict column.
pub fn export_for_annotation(rows: &[AlignmentRow], n: usize, seed: u64, strategy: Strategy) -> Result<String, EvalError> {
    let mut out = format!("{ANNOTATION_HEADER}\n");
    for r in sample_rows(rows, n, seed, strategy)? {
        let clean = |s: &str| s.replace(['\t', '\n', '\r'], " ");
        writeln!(out, "{}\t{}\t{}\t", r.pair_id, clean(&r.ja_text), clean(&r.es_text)).expect("writing to a String");
    }
    Ok(out)
}

/// Reads a filled-in annotation sheet. Rows have either the four annotation
/// columns or just `pair_id<TAB>verdict`; the verdict is always last. A
/// header row starting with `pair_id` and `#` comments are skipped. With
/// `known`, every pair id must be one of them.
pub fn import_judgments(text: &str, known: Option<&BTreeSet<String>>) -> Result<Vec<Judgment>, EvalError> {
    let mut judgments = Vec::new();
    let mut seen = BTreeSet::new();
    let mut unjudged = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.strip_suffix('\r').unwrap_or(line);
        if line.trim().is_empty() || line.starts_with('#') || (n == 0 && line.starts_with("pair_id")) {
            continue;
        }
        let err = |message: String| EvalError::Line { line: n + 1, message };
        let f: Vec<&str> = line.split('\t').collect();
        if f.len() != 2 && f.len() != 4 {
            return Err(err(format!("expected 2 or 4 columns, found {}", f.len())));
        }
        let pair_id = f[0].trim();
        if pair_id.is_empty() {
            return Err(err("empty pair_id".into()));
        }
        if known.is_some_and(|k| !k.contains(pair_id)) {
            return Err(err(format!("unknown pair_id `{pair_id}`")));
        }
        if !seen.insert(pair_id.to_string()) {
            return Err(err(format!("duplicate pair_id `{pair_id}`")));
        }
        let verdict = f[f.len() - 1].trim();
        if verdict.is_empty() {
            unjudged.push(pair_id.to_string());
            continue;
        }
        judgments.push(Judgment { pair_id: pair_id.to_string(), verdict: verdict.parse().map_err(err)? });
    }
    if !unjudged.is_empty() {
        return Err(EvalError::Unjudged(unjudged));
    }
    Ok(judgments)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct VerdictCounts {
    pub correct: usize,
    pub partial: usize,
    pub incorrect: usize,
}

impl VerdictCounts {
    pub fn get(&self, v: Verdict) -> usize {
        match v {
            Verdict::Correct => self.correct,
            Verdict::Partial => self.partial,
            Verdict::Incorrect => self.incorrect,
        }
    }

    fn bump(&mut self, v: Verdict) {
        match v {
            Verdict::Correct => self.correct += 1,
            Verdict::Partial => self.partial += 1,
            Verdict::Incorrect => self.incorrect += 1,
        }
    }

    pub fn total(&self) -> usize {
        self.correct + self.partial + self.incorrect
    }

    /// Each count scaled to a sample of 100, rounded half up.
    pub fn per_100(&self) -> VerdictCounts {
        let n = self.total();
        let scale = |c: usize| if n == 0 { 0 } else { (200 * c + n) / (2 * n) };
        VerdictCounts { correct: scale(self.correct), partial: scale(self.partial), incorrect: scale(self.incorrect) }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GoldScores {
    pub precision: f64,
    /// False when nothing was aligned; precision is then reported as 0.
    pub precision_defined: bool,
    pub recall: f64,
    pub f1: f64,
    pub aligned: usize,
    pub gold: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub system: String,
    pub sample_size: usize,
    pub counts: VerdictCounts,
    pub per_100: VerdictCounts,
    pub gold: Option<GoldScores>,
}

impl EvalReport {
    fn from_counts(system: &str, counts: VerdictCounts, gold: Option<GoldScores>) -> EvalReport {
        EvalReport { system: system.to_string(), sample_size: counts.total(), counts, per_100: counts.per_100(), gold }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Plain-text table with one column per report.
pub fn reports_table(reports: &[EvalReport]) -> String {
    let mut rows: Vec<(String, Vec<String>)> = vec![("".into(), reports.iter().map(|r| r.system.clone()).collect())];
    let mut push = |name: &str, f: &dyn Fn(&EvalReport) -> String| {
        rows.push((name.to_string(), reports.iter().map(f).collect()));
    };
    push("Correct Identification", &|r| r.per_100.correct.to_string());
    push("Partial Matching", &|r| r.per_100.partial.to_string());
    push("Incorrect Identification", &|r| r.per_100.incorrect.to_string());
    push("Sample size", &|r| r.sample_size.to_string());
    if reports.iter().any(|r| r.gold.is_some()) {
        let metric = |get: fn(&GoldScores) -> f64| move |r: &EvalReport| r.gold.as_ref().map_or("-".into(), |g| format!("{:.3}", get(g)));
        push("Precision", &metric(|g| g.precision));
        push("Recall", &metric(|g| g.recall));
        push("F1", &metric(|g| g.f1));
    }
    let label_width = rows.iter().map(|(l, _)| l.chars().count()).max().unwrap_or(0);
    let col_width = rows.iter().flat_map(|(_, c)| c.iter().map(|s| s.chars().count())).max().unwrap_or(0).max(6);
    let mut out = String::new();
    for (label, cells) in rows {
        let _ = write!(out, "{label:<label_width$}");
        for c in cells {
            let _ = write!(out, "  {c:>col_width$}");
        }
        out.push('\n');
    }
    out
}

pub fn tabulate(system: &str, judgments: &[Judgment]) -> Result<EvalReport, EvalError> {
    if judgments.is_empty() {
        return Err(EvalError::Empty);
    }
    let mut counts = VerdictCounts::default();
    for j in judgments {
        counts.bump(j.verdict);
    }
    Ok(EvalReport::from_counts(system, counts, None))
}

/// (ja_title, ja_idx, es_title, es_idx)
pub type GoldPair = (String, usize, String, usize);

/// Gold TSV: `ja_title<TAB>ja_idx<TAB>es_title<TAB>es_idx`, with optional
/// `#` comments and an optional `ja_title` header row.
pub fn parse_gold(text: &str) -> Result<BTreeSet<GoldPair>, EvalError> {
    let mut gold = BTreeSet::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.strip_suffix('\r').unwrap_or(line);
        if line.trim().is_empty() || line.starts_with('#') || (n == 0 && line.starts_with("ja_title\t")) {
            continue;
        }
        let err = |message: String| EvalError::Line { line: n + 1, message };
        let f: Vec<&str> = line.split('\t').collect();
        if f.len() != 4 {
            return Err(err(format!("expected 4 columns, found {}", f.len())));
        }
        let index = |s: &str| s.trim().parse::<usize>().map_err(|_| err(format!("bad sentence index `{s}`")));
        let (ja, es) = (crate::lang::normalize_title(f[0]), crate::lang::normalize_title(f[2]));
        if ja.is_empty() || es.is_empty() {
            return Err(err("empty title".into()));
        }
        gold.insert((ja, index(f[1])?, es, index(f[3])?));
    }
    Ok(gold)
}

/// Aligned rows that are in gold count as correct, other aligned rows as
/// incorrect, and partial rows as partial.
pub fn score_against_gold(system: &str, rows: &[AlignmentRow], gold: &BTreeSet<GoldPair>) -> EvalReport {
    let aligned: BTreeSet<GoldPair> = rows
        .iter()
        .filter(|r| r.label == Label::Aligned)
        .map(|r| (r.ja_title.clone(), r.ja_idx, r.es_title.clone(), r.es_idx))
        .collect();
    let hits = aligned.intersection(gold).count();
    let counts = VerdictCounts {
        correct: hits,
        partial: rows.iter().filter(|r| r.label == Label::Partial).count(),
        incorrect: aligned.len() - hits,
    };
    let ratio = |a: usize, b: usize| if b == 0 { 0.0 } else { a as f64 / b as f64 };
    let (precision, recall) = (ratio(hits, aligned.len()), ratio(hits, gold.len()));
    let f1 = if precision + recall == 0.0 { 0.0 } else { 2.0 * precision * recall / (precision + recall) };
    let scores = GoldScores {
        precision,
        precision_defined: !aligned.is_empty(),
        recall,
        f1,
        aligned: aligned.len(),
        gold: gold.len(),
    };
    EvalReport::from_counts(system, counts, Some(scores))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(k: usize, article: usize, label: Label, total: f64) -> AlignmentRow {
        AlignmentRow {
            pair_id: format!("rb-{k:06}"),
            ja_title: format!("ja{article}"),
            es_title: format!("es{article}"),
            ja_idx: k,
            es_idx: k,
            total,
            label,
            ja_text: format!("ja text {k}"),
            es_text: format!("es text {k}"),
        }
    }

    fn rows(n: usize) -> Vec<AlignmentRow> {
        (1..=n).map(|k| row(k, k % 3, if k % 2 == 0 { Label::Aligned } else { Label::Partial }, k as f64 / 1000.0)).collect()
    }

    #[test]
    fn sampling_is_seeded() {
        let all = rows(200);
        let a = export_for_annotation(&all, 100, 7, Strategy::Uniform).unwrap();
        assert_eq!(a, export_for_annotation(&all, 100, 7, Strategy::Uniform).unwrap());
        assert_eq!(a.lines().count(), 101);
        assert_ne!(a, export_for_annotation(&all, 100, 8, Strategy::Uniform).unwrap());
        assert_eq!(export_for_annotation(&all, 0, 7, Strategy::Uniform).unwrap(), format!("{ANNOTATION_HEADER}\n"));
    }

    #[test]
    fn sample_size_is_checked() {
        let mut all = rows(3);
        all.push(row(4, 0, Label::Rejected, 0.0));
        let err = sample_rows(&all, 4, 0, Strategy::Uniform).unwrap_err();
        assert!(err.to_string().contains("only 3"), "{err}");
    }

    #[test]
    fn topk_takes_the_best_of_each_article_first() {
        let all = rows(9);
        let picked = sample_rows(&all, 3, 0, Strategy::TopK).unwrap();
        let ids: Vec<usize> = picked.iter().map(|r| r.ja_idx).collect();
        assert_eq!(ids, [7, 8, 9]);
    }

    #[test]
    fn judgments_parse() {
        let text = "pair_id\tja_text\tes_text\tverdict\nrb-1\ta\tb\tcorrect\nrb-2\tpartial\nrb-3\ta\tb\tincorrect\n";
        let j = import_judgments(text, None).unwrap();
        assert_eq!(j.len(), 3);
        assert_eq!(j[1].verdict, Verdict::Partial);
    }

    #[test]
    fn judgment_errors() {
        assert!(matches!(import_judgments("rb-1\tok\n", None), Err(EvalError::Line { line: 1, .. })));
        let blank = import_judgments("rb-1\ta\tb\t\nrb-2\tcorrect\nrb-3\t\n", None).unwrap_err();
        assert_eq!(blank.to_string(), "unjudged pairs: rb-1, rb-3");
        let known: BTreeSet<String> = ["rb-1".to_string()].into();
        assert!(import_judgments("rb-9\tcorrect\n", Some(&known)).is_err());
        assert!(import_judgments("rb-1\tcorrect\nrb-1\tpartial\n", None).is_err());
    }

    fn judgments(c: usize, p: usize, i: usize) -> Vec<Judgment> {
        let mut out = Vec::new();
        for (n, v) in [(c, Verdict::Correct), (p, Verdict::Partial), (i, Verdict::Incorrect)] {
            out.extend((0..n).map(|k| Judgment { pair_id: format!("{v}-{k}"), verdict: v }));
        }
        out
    }

    #[test]
    fn tabulation() {
        let report = tabulate("all", &judgments(10, 0, 0)).unwrap();
        assert_eq!(report.per_100, VerdictCounts { correct: 100, partial: 0, incorrect: 0 });
        let thirds = tabulate("t", &judgments(1, 1, 1)).unwrap().per_100;
        assert_eq!((thirds.correct, thirds.partial, thirds.incorrect), (33, 33, 33));
        let odd = tabulate("o", &judgments(1, 2, 5)).unwrap().per_100;
        assert_eq!((odd.correct, odd.partial, odd.incorrect), (13, 25, 63));
        assert!(tabulate("none", &[]).is_err());
    }

    #[test]
    fn gold_scoring() {
        let gold = parse_gold("ja_title\tja_idx\tes_title\tes_idx\na\t0\tb\t0\na\t1\tb\t1\na\t2\tb\t2\na\t3\tb\t3\n").unwrap();
        let mk = |j: usize, e: usize, label| AlignmentRow {
            ja_title: "a".into(),
            es_title: "b".into(),
            ja_idx: j,
            es_idx: e,
            label,
            ..row(0, 0, label, 0.5)
        };
        let report = score_against_gold("rb", &[mk(0, 0, Label::Aligned), mk(1, 1, Label::Aligned), mk(2, 3, Label::Aligned), mk(3, 2, Label::Partial)], &gold);
        let g = report.gold.unwrap();
        assert!((g.precision - 2.0 / 3.0).abs() < 1e-12);
        assert_eq!(g.recall, 0.5);
        assert_eq!(report.counts, VerdictCounts { correct: 2, partial: 1, incorrect: 1 });

        let none = score_against_gold("rb", &[], &gold).gold.unwrap();
        assert!(!none.precision_defined);
        assert_eq!((none.precision, none.recall, none.f1), (0.0, 0.0, 0.0));
        assert!(parse_gold("a\tx\tb\t0\n").is_err());
    }

    #[test]
    fn table_text() {
        let text = reports_table(&[tabulate("baseline", &judgments(13, 51, 36)).unwrap()]);
        assert!(text.lines().any(|l| l.starts_with("Correct Identification") && l.ends_with("13")));
    }
}
