use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use quick_xml::escape::escape;
use serde::{Deserialize, Serialize};

use super::{AlignmentCandidate, Label};

pub const TSV_HEADER: &str = "pair_id\tja_title\tes_title\tja_idx\tes_idx\ttotal\tlabel\tja_text\tes_text";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Tsv,
    Tmx,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "tsv" => Ok(OutputFormat::Tsv),
            "tmx" => Ok(OutputFormat::Tmx),
            other => Err(format!("unknown format `{other}`")),
        }
    }
}

/// One written alignment: a non-rejected candidate with its pair id.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlignmentRow {
    pub pair_id: String,
    pub ja_title: String,
    pub es_title: String,
    pub ja_idx: usize,
    pub es_idx: usize,
    pub total: f64,
    pub label: Label,
    pub ja_text: String,
    pub es_text: String,
}

impl AlignmentRow {
    /// Numbers the non-rejected candidates `<prefix>-000001`, `<prefix>-000002`, ...
    /// in the order given.
    pub fn number<'a>(candidates: impl IntoIterator<Item = &'a AlignmentCandidate>, prefix: &str) -> Vec<AlignmentRow> {
        candidates
            .into_iter()
            .filter(|c| c.label != Label::Rejected)
            .enumerate()
            .map(|(k, c)| AlignmentRow {
                pair_id: format!("{prefix}-{:06}", k + 1),
                ja_title: c.ja_ref.article.clone(),
                es_title: c.es_ref.article.clone(),
                ja_idx: c.ja_ref.index,
                es_idx: c.es_ref.index,
                total: c.total,
                label: c.label,
                ja_text: c.ja_text.clone(),
                es_text: c.es_text.clone(),
            })
            .collect()
    }
}

/// Tabs and line breaks cannot appear inside a TSV cell.
fn cell(s: &str) -> String {
    s.replace(['\t', '\n', '\r'], " ")
}

pub fn tsv_string(rows: &[AlignmentRow]) -> String {
    let mut out = format!("{TSV_HEADER}\n");
    for r in rows {
        writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}\t{:.6}\t{}\t{}\t{}",
            cell(&r.pair_id),
            cell(&r.ja_title),
            cell(&r.es_title),
            r.ja_idx,
            r.es_idx,
            r.total,
            r.label,
            cell(&r.ja_text),
            cell(&r.es_text)
        )
        .expect("writing to a String");
    }
    out
}

/// TMX 1.4 with one translation unit per aligned row.
pub fn tmx_string(rows: &[AlignmentRow]) -> String {
    let mut out = String::from("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<tmx version=\"1.4\">\n");
    writeln!(
        out,
        "  <header creationtool=\"corpusforge\" creationtoolversion=\"{}\" datatype=\"plaintext\" segtype=\"sentence\" adminlang=\"en\" srclang=\"ja\" o-tmf=\"corpusforge\"/>",
        env!("CARGO_PKG_VERSION")
    )
    .expect("writing to a String");
    out.push_str("  <body>\n");
    for r in rows.iter().filter(|r| r.label == Label::Aligned) {
        let _ = write!(
            out,
            "    <tu tuid=\"{}\">\n      <prop type=\"x-score\">{:.6}</prop>\n      <prop type=\"x-source\">{}#{} | {}#{}</prop>\n",
            escape(r.pair_id.as_str()),
            r.total,
            escape(r.ja_title.as_str()),
            r.ja_idx,
            escape(r.es_title.as_str()),
            r.es_idx
        );
        let _ = write!(
            out,
            "      <tuv xml:lang=\"ja\"><seg>{}</seg></tuv>\n      <tuv xml:lang=\"es\"><seg>{}</seg></tuv>\n    </tu>\n",
            escape(r.ja_text.as_str()),
            escape(r.es_text.as_str())
        );
    }
    out.push_str("  </body>\n</tmx>\n");
    out
}

pub fn write_alignments(rows: &[AlignmentRow], path: &Path, format: OutputFormat) -> std::io::Result<()> {
    let text = match format {
        OutputFormat::Tsv => tsv_string(rows),
        OutputFormat::Tmx => tmx_string(rows),
    };
    std::fs::write(path, text)
}

#[derive(Debug, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct ReadError {
    pub line: usize,
    pub message: String,
}

/// Reads what [`write_alignments`] wrote in TSV form.
pub fn read_alignments_tsv(text: &str) -> Result<Vec<AlignmentRow>, ReadError> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, header)) if header.trim_end_matches('\r') == TSV_HEADER => {}
        _ => return Err(ReadError { line: 1, message: "missing alignment header".into() }),
    }
    let mut rows = Vec::new();
    for (n, line) in lines {
        let line = line.strip_suffix('\r').unwrap_or(line);
        if line.is_empty() {
            continue;
        }
        let err = |message: String| ReadError { line: n + 1, message };
        let f: Vec<&str> = line.split('\t').collect();
        if f.len() != 9 {
            return Err(err(format!("expected 9 columns, found {}", f.len())));
        }
        let index = |s: &str, name: &str| s.parse::<usize>().map_err(|_| err(format!("bad {name} `{s}`")));
        let total: f64 = f[5].parse().map_err(|_| err(format!("bad total `{}`", f[5])))?;
        if !(0.0..=1.0).contains(&total) {
            return Err(err(format!("total {total} outside [0, 1]")));
        }
        rows.push(AlignmentRow {
            pair_id: f[0].to_string(),
            ja_title: f[1].to_string(),
            es_title: f[2].to_string(),
            ja_idx: index(f[3], "ja_idx")?,
            es_idx: index(f[4], "es_idx")?,
            total,
            label: f[6].parse().map_err(err)?,
            ja_text: f[7].to_string(),
            es_text: f[8].to_string(),
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(label: Label) -> AlignmentRow {
        AlignmentRow {
            pair_id: "rb-000001".into(),
            ja_title: "犬".into(),
            es_title: "Perro".into(),
            ja_idx: 0,
            es_idx: 0,
            total: 0.75,
            label,
            ja_text: "犬は水をのみます。".into(),
            es_text: "El perro bebe \"agua\" & <más>.".into(),
        }
    }

    #[test]
    fn empty_output_is_header_only() {
        assert_eq!(tsv_string(&[]), format!("{TSV_HEADER}\n"));
        assert!(read_alignments_tsv(&tsv_string(&[])).unwrap().is_empty());
    }

    #[test]
    fn tsv_round_trip() {
        let rows = vec![row(Label::Aligned), AlignmentRow { pair_id: "rb-000002".into(), ..row(Label::Partial) }];
        let text = tsv_string(&rows);
        assert_eq!(text.lines().count(), 3);
        assert_eq!(read_alignments_tsv(&text).unwrap(), rows);
    }

    #[test]
    fn tsv_reader_rejects_bad_rows() {
        let bad = format!("{TSV_HEADER}\nx\ta\tb\t0\t0\t0.5\tmaybe\tt\tu\n");
        assert_eq!(read_alignments_tsv(&bad).unwrap_err().line, 2);
        assert!(read_alignments_tsv("no header\n").is_err());
        let range = format!("{TSV_HEADER}\nx\ta\tb\t0\t0\t1.5\taligned\tt\tu\n");
        assert!(read_alignments_tsv(&range).is_err());
    }

    #[test]
    fn tmx_holds_aligned_rows_only() {
        let tmx = tmx_string(&[row(Label::Aligned), row(Label::Partial)]);
        assert_eq!(tmx.matches("<tu ").count(), 1);
        assert!(tmx.contains("&quot;agua&quot; &amp; &lt;más&gt;"));
        let mut reader = quick_xml::Reader::from_str(&tmx);
        loop {
            match reader.read_event().expect("well-formed TMX") {
                quick_xml::events::Event::Eof => break,
                _ => continue,
            }
        }
    }
}
