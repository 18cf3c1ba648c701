use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use super::{Feats, Tag, TaggedSentence, Token};
use crate::lang::{nfc, Lang};
use crate::textprep::SentenceRecord;

#[derive(Debug, thiserror::Error)]
pub enum TagImportError {
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TaggedImport {
    pub sentences: Vec<TaggedSentence>,
    /// One message per ignored feature key, with its line number.
    pub warnings: Vec<String>,
}

const ARTICLE_DIRECTIVE: &str = "# article:";

/// Rebuilds readable text from token surfaces.
fn join_surfaces(lang: Lang, tokens: &[Token]) -> String {
    if lang == Lang::Ja {
        return tokens.iter().map(|t| t.surface.as_str()).collect();
    }
    let mut text = String::new();
    let mut glue = true;
    for token in tokens {
        let s = token.surface.as_str();
        let closing = s.chars().all(|c| matches!(c, '.' | ',' | ';' | ':' | '!' | '?' | ')' | ']' | '»' | '”' | '…'));
        if !glue && !closing {
            text.push(' ');
        }
        text.push_str(s);
        glue = s.chars().all(|c| matches!(c, '¿' | '¡' | '(' | '[' | '«' | '“'));
    }
    text
}

/// Parses blank-line-separated sentence blocks of `surface<TAB>tag<TAB>feats`
/// lines. The feats column may be empty or absent. Lines starting with `#`
/// are comments, except `# article: <title>`, which names the article of the
/// blocks that follow and restarts their sentence numbering.
pub fn parse_tagged(lang: Lang, text: &str) -> Result<TaggedImport, TagImportError> {
    let mut import = TaggedImport::default();
    let mut article = String::new();
    let mut index = 0;
    let mut block: Vec<Token> = Vec::new();

    let flush = |block: &mut Vec<Token>, article: &str, index: &mut usize, import: &mut TaggedImport| {
        if block.is_empty() {
            return;
        }
        let tokens = std::mem::take(block);
        let record = SentenceRecord {
            article_title: article.to_string(),
            lang,
            index: *index,
            text: join_surfaces(lang, &tokens),
            link_targets: BTreeSet::new(),
        };
        import.sentences.push(TaggedSentence { record, tokens });
        *index += 1;
    };

    for (n, raw) in text.lines().enumerate() {
        let line_no = n + 1;
        let line = raw.strip_suffix('\r').unwrap_or(raw);
        if line.trim().is_empty() {
            flush(&mut block, &article, &mut index, &mut import);
            continue;
        }
        if let Some(title) = line.strip_prefix(ARTICLE_DIRECTIVE) {
            flush(&mut block, &article, &mut index, &mut import);
            article = nfc(title.trim());
            index = 0;
            continue;
        }
        if line.starts_with('#') {
            continue;
        }
        let err = |message: String| TagImportError::Line { line: line_no, message };
        let fields: Vec<&str> = line.split('\t').collect();
        if !(2..=3).contains(&fields.len()) {
            return Err(err(format!("expected 2 or 3 tab-separated fields, found {}", fields.len())));
        }
        let surface = nfc(fields[0]);
        if surface.trim().is_empty() {
            return Err(err("empty surface".into()));
        }
        let tag: Tag = fields[1].trim().parse().map_err(err)?;
        let (feats, unknown) = Feats::parse(fields.get(2).copied().unwrap_or_default()).map_err(err)?;
        for key in unknown {
            let warning = format!("line {line_no}: ignoring unknown feature `{key}`");
            log::warn!("{warning}");
            import.warnings.push(warning);
        }
        block.push(Token::with_feats(surface, tag, feats));
    }
    flush(&mut block, &article, &mut index, &mut import);
    Ok(import)
}

pub fn import_tagged(path: &Path, lang: Lang) -> Result<TaggedImport, TagImportError> {
    let text = std::fs::read_to_string(path).map_err(|source| TagImportError::Io { path: path.to_path_buf(), source })?;
    parse_tagged(lang, &text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_token_block() {
        let import = parse_tagged(Lang::Ja, "犬\tNOUN\t\nは\tPART\t\n").unwrap();
        assert_eq!(import.sentences.len(), 1);
        let s = &import.sentences[0];
        assert_eq!(s.tokens, [Token::new("犬", Tag::Noun), Token::new("は", Tag::Part)]);
        assert_eq!(s.record.text, "犬は");
    }

    #[test]
    fn empty_input() {
        assert!(parse_tagged(Lang::Es, "").unwrap().sentences.is_empty());
        assert!(parse_tagged(Lang::Es, "\n\n# only a comment\n").unwrap().sentences.is_empty());
    }

    #[test]
    fn unknown_tag_names_the_line() {
        let err = parse_tagged(Lang::Es, "el\tDET\t\nperro\tSUSTANTIVO\t\n").unwrap_err();
        assert!(matches!(err, TagImportError::Line { line: 2, .. }), "{err}");
    }

    #[test]
    fn malformed_lines() {
        assert!(parse_tagged(Lang::Es, "perro\n").is_err());
        assert!(parse_tagged(Lang::Es, "perro\tNOUN\tgender=m\textra\n").is_err());
        assert!(parse_tagged(Lang::Es, "\tNOUN\t\n").is_err());
        assert!(parse_tagged(Lang::Es, "perro\tNOUN\tgender=n\n").is_err());
    }

    #[test]
    fn unknown_features_warn() {
        let import = parse_tagged(Lang::Es, "perro\tNOUN\tgender=m;lemma=perro\n").unwrap();
        assert_eq!(import.sentences[0].tokens[0].feats.gender, Some(super::super::Gender::M));
        assert_eq!(import.warnings.len(), 1);
    }

    #[test]
    fn blocks_and_articles() {
        let text = "# article: Perro\nEl\tDET\nperro\tNOUN\tgender=m;number=sg\nbebe\tVERB\nagua\tNOUN\tgender=f;number=sg\n.\tPUNCT\n\n\
                    ¿\tPUNCT\nEs\tAUX\tcopula=yes\nesto\tPRON\nun\tDET\nlibro\tNOUN\n?\tPUNCT\n\n\n# article: Gato\nGato\tNOUN\n";
        let import = parse_tagged(Lang::Es, text).unwrap();
        let records: Vec<_> = import.sentences.iter().map(|s| (&*s.record.article_title, s.record.index, &*s.record.text)).collect();
        assert_eq!(
            records,
            [("Perro", 0, "El perro bebe agua."), ("Perro", 1, "¿Es esto un libro?"), ("Gato", 0, "Gato")]
        );
    }

    #[test]
    fn export_round_trip() {
        let import = parse_tagged(Lang::Es, "Es\tAUX\tcopula=yes\nverde\tADJ\tnumber=sg\n").unwrap();
        let again = parse_tagged(Lang::Es, &import.sentences[0].to_tsv_block()).unwrap();
        assert_eq!(again, import);
    }
}
