mod common;

use std::path::Path;
use std::process::{Command, Output};

use common::*;
use corpusforge::pipeline::{sha256_hex, Manifest};

fn corpusforge(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_corpusforge")).args(args).current_dir(dir).output().expect("binary runs")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn files(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut files: Vec<(String, Vec<u8>)> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .map(|p| (p.file_name().unwrap().to_string_lossy().into_owned(), std::fs::read(&p).unwrap()))
        .collect();
    files.sort();
    files
}

#[test]
fn all_pairs_twenty_articles() {
    let dir = corpus_copy();
    let out = corpusforge(&["all"], dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let manifest = Manifest::read(&dir.path().join("out/pairs.manifest.json")).unwrap();
    assert_eq!(manifest.counts["article_pairs"], 20);
}

#[test]
fn all_equals_the_stages_in_sequence() {
    let chained = corpus_copy();
    assert!(corpusforge(&["all"], chained.path()).status.success());
    let stepped = corpus_copy();
    for stage in ["lexicon", "pairs", "align", "baseline", "eval"] {
        let out = corpusforge(&[stage], stepped.path());
        assert!(out.status.success(), "{stage}: {}", stderr(&out));
    }
    assert_eq!(files(&chained.path().join("out")), files(&stepped.path().join("out")));
}

#[test]
fn manifests_hash_what_was_written() {
    let dir = corpus_copy();
    assert!(corpusforge(&["all", "--format", "tmx"], dir.path()).status.success());
    let out = dir.path().join("out");
    for stage in ["lexicon", "pairs", "align", "baseline", "eval"] {
        let manifest = Manifest::read(&out.join(format!("{stage}.manifest.json"))).unwrap();
        assert_eq!(manifest.stage, stage);
        assert!(!manifest.outputs.is_empty(), "{stage} lists no outputs");
        for (name, digest) in &manifest.outputs {
            assert_eq!(&sha256_hex(&std::fs::read(out.join(name)).unwrap()), digest, "{name}");
        }
    }
    let lexicon = Manifest::read(&out.join("lexicon.manifest.json")).unwrap();
    assert_eq!(lexicon.inputs["dictionary"], sha256_hex(&std::fs::read(dir.path().join("dictionary.tsv")).unwrap()));
}

#[test]
fn changed_input_changes_only_downstream_digests() {
    let dir = corpus_copy();
    assert!(corpusforge(&["lexicon"], dir.path()).status.success());
    let before = Manifest::read(&dir.path().join("out/lexicon.manifest.json")).unwrap();
    let mut dict = read(&dir.path().join("dictionary.tsv"));
    dict.push_str("虹\tarcoíris\n");
    std::fs::write(dir.path().join("dictionary.tsv"), dict).unwrap();
    assert!(corpusforge(&["lexicon"], dir.path()).status.success());
    let after = Manifest::read(&dir.path().join("out/lexicon.manifest.json")).unwrap();
    assert_ne!(before.inputs["dictionary"], after.inputs["dictionary"]);
    assert_eq!(before.inputs["dump_ja"], after.inputs["dump_ja"]);
    assert_eq!(before.outputs["lexicon.link.tsv"], after.outputs["lexicon.link.tsv"]);
    assert_ne!(before.outputs["lexicon.tsv"], after.outputs["lexicon.tsv"]);
}

#[test]
fn eval_before_align_is_an_ordering_error() {
    let dir = corpus_copy();
    let out = corpusforge(&["eval"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("alignments.rule.tsv"), "{}", stderr(&out));
}

#[test]
fn missing_config_key_is_named() {
    let dir = corpus_copy();
    let config = read(&dir.path().join("corpusforge.toml")).replace("dump_ja = \"dump.ja.xml\"\n", "");
    std::fs::write(dir.path().join("corpusforge.toml"), config).unwrap();
    let out = corpusforge(&["lexicon"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("input.dump_ja"), "{}", stderr(&out));
}

#[test]
fn out_of_range_parameter_is_a_usage_error() {
    let dir = corpus_copy();
    let config = read(&dir.path().join("corpusforge.toml")).replace("alpha = 0.5", "alpha = 1.5");
    std::fs::write(dir.path().join("corpusforge.toml"), config).unwrap();
    let out = corpusforge(&["align"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("alpha"), "{}", stderr(&out));
}

#[test]
fn malformed_dump_is_a_data_error() {
    let dir = corpus_copy();
    let dump = read(&dir.path().join("dump.es.xml"));
    std::fs::write(dir.path().join("dump.es.xml"), &dump[..dump.len() / 2]).unwrap();
    let out = corpusforge(&["lexicon"], dir.path());
    assert_eq!(out.status.code(), Some(2), "{}", stderr(&out));
}

#[test]
fn bad_flags_are_usage_errors() {
    let dir = corpus_copy();
    for args in [&["align", "--jobs", "0"][..], &["align", "--format", "xml"], &["frobnicate"], &["align", "--strategy", "best"]] {
        assert_eq!(corpusforge(args, dir.path()).status.code(), Some(1), "{args:?}");
    }
    let help = corpusforge(&["--help"], dir.path());
    assert_eq!(help.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&help.stdout).contains("inspect"));
}

#[test]
fn missing_config_file_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = corpusforge(&["all"], dir.path());
    assert_eq!(out.status.code(), Some(1), "{}", stderr(&out));
}

#[test]
fn inspect_prints_clean_articles() {
    let dump = fixtures().join("corpus/dump.ja.xml");
    let out = corpusforge(&["inspect", "--lang", "ja", dump.to_str().unwrap()], &fixtures());
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let stdout = String::from_utf8(out.stdout).unwrap();
    let articles: Vec<serde_json::Value> = stdout.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert!(articles.iter().any(|a| a["title"] == "経済学"));
    assert!(articles.iter().all(|a| !a["text"].as_str().unwrap().contains("[[")));
    assert!(!articles.iter().any(|a| a["title"] == "アインシュタイン"), "redirects are skipped");

    let missing = corpusforge(&["inspect", "--lang", "es", "no-such-dump.xml"], &fixtures());
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn stopword_override_is_recorded() {
    let dir = corpus_copy();
    std::fs::write(dir.path().join("stop.es.txt"), "# tiny list\nel\nla\n").unwrap();
    for stage in ["lexicon", "pairs"] {
        assert!(corpusforge(&[stage], dir.path()).status.success());
    }
    let out = corpusforge(&["align", "--stopwords-es", "stop.es.txt"], dir.path());
    assert!(out.status.success(), "{}", stderr(&out));
    let manifest = Manifest::read(&dir.path().join("out/align.manifest.json")).unwrap();
    // the digest covers the parsed word list, so comments do not count
    assert_eq!(manifest.inputs["stopwords_es"], sha256_hex(b"el\nla"));
}

#[test]
fn judged_annotation_sheet_is_tabulated() {
    let dir = corpus_copy();
    assert!(corpusforge(&["all"], dir.path()).status.success());
    let sheet = read(&dir.path().join("out/annotation.rule.tsv"));
    let mut judged = String::from("pair_id\tverdict\n");
    for line in sheet.lines().skip(1) {
        judged.push_str(line.split('\t').next().unwrap());
        judged.push_str("\tcorrect\n");
    }
    std::fs::write(dir.path().join("judged.tsv"), &judged).unwrap();
    let config = read(&dir.path().join("corpusforge.toml")).replace("# judgments_rule_based = \"judgments.rule.tsv\"", "judgments_rule_based = \"judged.tsv\"");
    std::fs::write(dir.path().join("corpusforge.toml"), config).unwrap();
    let out = corpusforge(&["eval"], dir.path());
    assert!(out.status.success(), "{}", stderr(&out));

    let reports: Vec<corpusforge::eval::EvalReport> = serde_json::from_str(&read(&dir.path().join("out/eval.json"))).unwrap();
    let judged_report = reports.iter().find(|r| r.gold.is_none()).expect("a judged report");
    assert_eq!(judged_report.sample_size, sheet.lines().count() - 1);
    assert_eq!(judged_report.per_100.correct, 100);

    std::fs::write(dir.path().join("judged.tsv"), "pair_id\tverdict\nrb-999999\tcorrect\n").unwrap();
    let out = corpusforge(&["eval"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("rb-999999"), "{}", stderr(&out));
}
