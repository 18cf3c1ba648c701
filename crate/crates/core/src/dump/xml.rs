use std::io::BufRead;

use quick_xml::events::{BytesStart, Event};
use quick_xml::Reader;

use super::RawPage;
use crate::lang::{normalize_title, Lang};

#[derive(Debug, thiserror::Error)]
pub enum DumpError {
    #[error("malformed XML at byte {offset}: {message}")]
    Xml { offset: u64, message: String },
    #[error("dump declares xml:lang=\"{found}\" but was opened as `{expected}`")]
    LangMismatch { expected: Lang, found: String },
}

/// Pages dropped while reading. They never reach the caller.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SkipCounts {
    pub missing_title: usize,
    pub other_namespace: usize,
    pub self_redirect: usize,
}

impl SkipCounts {
    /// Pages removed from the output. Self-redirects are kept as plain pages
    /// and so are not part of this total.
    pub fn total(&self) -> usize {
        self.missing_title + self.other_namespace
    }
}

#[derive(Debug, Clone, Default)]
pub struct ParsedDump {
    pub pages: Vec<RawPage>,
    pub skipped: SkipCounts,
}

/// Reads the whole export into memory.
pub fn parse_dump<R: BufRead>(input: R, lang: Lang) -> Result<ParsedDump, DumpError> {
    let mut reader = DumpReader::new(input, lang);
    let mut pages = Vec::new();
    while let Some(page) = reader.next_page()? {
        pages.push(page);
    }
    Ok(ParsedDump { pages, skipped: reader.skipped() })
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Field {
    None,
    Title,
    Ns,
    Text,
}

#[derive(Default)]
struct PageBuilder {
    title: Option<String>,
    ns: Option<String>,
    text: String,
    redirect: Option<String>,
}

/// Streaming page reader. Holds at most one page in memory at a time.
pub struct DumpReader<R> {
    reader: Reader<R>,
    lang: Lang,
    depth: usize,
    skipped: SkipCounts,
    finished: bool,
}

impl<R: BufRead> DumpReader<R> {
    pub fn new(input: R, lang: Lang) -> Self {
        let mut reader = Reader::from_reader(input);
        reader.config_mut().check_end_names = true;
        DumpReader { reader, lang, depth: 0, skipped: SkipCounts::default(), finished: false }
    }

    pub fn skipped(&self) -> SkipCounts {
        self.skipped
    }

    fn error(&self, message: impl Into<String>) -> DumpError {
        DumpError::Xml { offset: self.reader.buffer_position(), message: message.into() }
    }

    pub fn next_page(&mut self) -> Result<Option<RawPage>, DumpError> {
        if self.finished {
            return Ok(None);
        }
        let mut buf = Vec::new();
        let mut page: Option<PageBuilder> = None;
        let mut page_depth = 0;
        let mut field = Field::None;
        loop {
            buf.clear();
            let event = match self.reader.read_event_into(&mut buf) {
                Ok(event) => event,
                Err(err) => {
                    self.finished = true;
                    return Err(DumpError::Xml {
                        offset: self.reader.error_position(),
                        message: err.to_string(),
                    });
                }
            };
            match event {
                Event::Start(start) => {
                    self.depth += 1;
                    let name = start.local_name();
                    match name.as_ref() {
                        b"mediawiki" => self.check_lang(&start)?,
                        b"page" if page.is_none() => {
                            page = Some(PageBuilder::default());
                            page_depth = self.depth;
                        }
                        _ => {}
                    }
                    if let Some(builder) = page.as_mut() {
                        field = match name.as_ref() {
                            b"title" if self.depth == page_depth + 1 => Field::Title,
                            b"ns" if self.depth == page_depth + 1 => Field::Ns,
                            b"text" => {
                                // a later revision replaces an earlier one
                                builder.text.clear();
                                Field::Text
                            }
                            _ => Field::None,
                        };
                        if name.as_ref() == b"redirect" {
                            builder.redirect = self.redirect_attr(&start)?;
                        }
                    }
                }
                Event::Empty(start) => {
                    let name = start.local_name();
                    if name.as_ref() == b"mediawiki" {
                        self.check_lang(&start)?;
                    }
                    if let Some(builder) = page.as_mut() {
                        match name.as_ref() {
                            b"redirect" => builder.redirect = self.redirect_attr(&start)?,
                            b"text" => builder.text.clear(),
                            _ => {}
                        }
                    }
                }
                Event::End(end) => {
                    self.depth = self.depth.saturating_sub(1);
                    field = Field::None;
                    if end.local_name().as_ref() == b"page" && self.depth + 1 == page_depth {
                        if let Some(raw) = self.finish(page.take().unwrap_or_default()) {
                            return Ok(Some(raw));
                        }
                    }
                }
                Event::Text(text) => {
                    if field != Field::None {
                        let unescaped = text.unescape().map_err(|e| self.error(e.to_string()))?;
                        if let Some(builder) = page.as_mut() {
                            push_field(builder, field, &unescaped);
                        }
                    }
                }
                Event::CData(data) => {
                    if field != Field::None {
                        let data = data.into_inner();
                        let text = std::str::from_utf8(&data).map_err(|e| self.error(e.to_string()))?;
                        if let Some(builder) = page.as_mut() {
                            push_field(builder, field, text);
                        }
                    }
                }
                Event::Eof => {
                    self.finished = true;
                    if self.depth > 0 || page.is_some() {
                        return Err(self.error("unexpected end of input inside an open element"));
                    }
                    return Ok(None);
                }
                _ => {}
            }
        }
    }

    fn check_lang(&self, start: &BytesStart<'_>) -> Result<(), DumpError> {
        for attr in start.attributes().flatten() {
            if attr.key.as_ref() == b"xml:lang" {
                let value = attr.unescape_value().map_err(|e| self.error(e.to_string()))?;
                let code = value.split('-').next().unwrap_or_default().to_ascii_lowercase();
                if code != self.lang.code() {
                    return Err(DumpError::LangMismatch { expected: self.lang, found: value.into_owned() });
                }
            }
        }
        Ok(())
    }

    fn redirect_attr(&self, start: &BytesStart<'_>) -> Result<Option<String>, DumpError> {
        for attr in start.attributes() {
            let attr = attr.map_err(|e| self.error(e.to_string()))?;
            if attr.key.as_ref() == b"title" {
                let value = attr.unescape_value().map_err(|e| self.error(e.to_string()))?;
                return Ok(Some(normalize_title(&value)));
            }
        }
        Ok(None)
    }

    fn finish(&mut self, builder: PageBuilder) -> Option<RawPage> {
        let title = builder.title.as_deref().map(normalize_title).unwrap_or_default();
        if title.is_empty() {
            self.skipped.missing_title += 1;
            log::warn!("skipping page without a title");
            return None;
        }
        if builder.ns.as_deref().is_some_and(|ns| ns.trim() != "0") {
            self.skipped.other_namespace += 1;
            return None;
        }
        let mut redirect_target = builder
            .redirect
            .or_else(|| redirect_from_wikitext(&builder.text))
            .filter(|target| !target.is_empty());
        if redirect_target.as_deref() == Some(title.as_str()) {
            self.skipped.self_redirect += 1;
            redirect_target = None;
        }
        Some(RawPage { lang: self.lang, title, wikitext: builder.text, redirect_target })
    }
}

impl<R: BufRead> Iterator for DumpReader<R> {
    type Item = Result<RawPage, DumpError>;

    fn next(&mut self) -> Option<Self::Item> {
        self.next_page().transpose()
    }
}

fn push_field(builder: &mut PageBuilder, field: Field, text: &str) {
    match field {
        Field::Title => builder.title.get_or_insert_with(String::new).push_str(text),
        Field::Ns => builder.ns.get_or_insert_with(String::new).push_str(text),
        Field::Text => builder.text.push_str(text),
        Field::None => {}
    }
}

const REDIRECT_WORDS: [&str; 4] = ["#redirect", "#redirección", "#redireccion", "#転送"];

/// Older exports have no `<redirect>` element; fall back to the magic word.
fn redirect_from_wikitext(text: &str) -> Option<String> {
    let trimmed = text.trim_start();
    let lower = trimmed.to_lowercase();
    let word = REDIRECT_WORDS.iter().find(|w| lower.starts_with(**w))?;
    // lowercase can change byte lengths only outside ASCII; both magic words
    // with non-ASCII letters keep their length under lowercasing
    let rest = trimmed.get(word.len()..)?.trim_start_matches([':', ' ', '\t']);
    let inner = rest.strip_prefix("[[")?;
    let end = inner.find("]]")?;
    let target = inner[..end].split('|').next().unwrap_or_default();
    Some(normalize_title(target))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dump(pages: &str) -> String {
        format!("<mediawiki xml:lang=\"es\"><siteinfo><sitename>W</sitename></siteinfo>{pages}</mediawiki>")
    }

    #[test]
    fn two_pages_in_order() {
        let xml = dump(
            "<page><title>Perro</title><ns>0</ns><revision><text>El perro.</text></revision></page>\
             <page><title>Agua</title><ns>0</ns><revision><text>Agua.</text></revision></page>",
        );
        let parsed = parse_dump(xml.as_bytes(), Lang::Es).unwrap();
        let titles: Vec<_> = parsed.pages.iter().map(|p| p.title.as_str()).collect();
        assert_eq!(titles, ["Perro", "Agua"]);
        assert_eq!(parsed.pages[0].wikitext, "El perro.");
    }

    #[test]
    fn redirect_element() {
        let xml = dump(
            "<page><title>Einstein</title><ns>0</ns><redirect title=\"Albert Einstein\" />\
             <revision><text>#REDIRECT [[Albert Einstein]]</text></revision></page>",
        );
        let parsed = parse_dump(xml.as_bytes(), Lang::Es).unwrap();
        assert_eq!(parsed.pages[0].redirect_target.as_deref(), Some("Albert Einstein"));
    }

    #[test]
    fn redirect_magic_word_without_element() {
        let xml = dump("<page><title>EE.UU.</title><revision><text>#REDIRECCIÓN [[Estados_Unidos]]</text></revision></page>");
        let parsed = parse_dump(xml.as_bytes(), Lang::Es).unwrap();
        assert_eq!(parsed.pages[0].redirect_target.as_deref(), Some("Estados Unidos"));
    }

    #[test]
    fn empty_text_element() {
        let xml = dump("<page><title>Vacío</title><revision><text /></revision></page>");
        let parsed = parse_dump(xml.as_bytes(), Lang::Es).unwrap();
        assert_eq!(parsed.pages.len(), 1);
        assert_eq!(parsed.pages[0].wikitext, "");
    }

    #[test]
    fn missing_title_is_skipped_and_counted() {
        let xml = dump(
            "<page><revision><text>x</text></revision></page>\
             <page><title>Bien</title><revision><text>y</text></revision></page>",
        );
        let parsed = parse_dump(xml.as_bytes(), Lang::Es).unwrap();
        assert_eq!(parsed.pages.len(), 1);
        assert_eq!(parsed.skipped.missing_title, 1);
    }

    #[test]
    fn non_article_namespace_is_skipped() {
        let xml = dump("<page><title>Categoría:Perros</title><ns>14</ns><revision><text>x</text></revision></page>");
        let parsed = parse_dump(xml.as_bytes(), Lang::Es).unwrap();
        assert!(parsed.pages.is_empty());
        assert_eq!(parsed.skipped.other_namespace, 1);
    }

    #[test]
    fn entities_are_unescaped() {
        let xml = dump("<page><title>A &amp; B</title><revision><text>&lt;ref&gt;x&lt;/ref&gt;</text></revision></page>");
        let parsed = parse_dump(xml.as_bytes(), Lang::Es).unwrap();
        assert_eq!(parsed.pages[0].title, "A & B");
        assert_eq!(parsed.pages[0].wikitext, "<ref>x</ref>");
    }

    #[test]
    fn malformed_xml_reports_offset() {
        let xml = "<mediawiki><page><title>X</title></revision></page></mediawiki>";
        match parse_dump(xml.as_bytes(), Lang::Es) {
            Err(DumpError::Xml { offset, .. }) => assert!(offset > 0),
            other => panic!("expected xml error, got {other:?}"),
        }
    }

    #[test]
    fn truncated_input_is_an_error() {
        let xml = "<mediawiki><page><title>X</title><revision><text>abc";
        assert!(matches!(parse_dump(xml.as_bytes(), Lang::Es), Err(DumpError::Xml { .. })));
    }

    #[test]
    fn language_mismatch() {
        let xml = "<mediawiki xml:lang=\"ja\"></mediawiki>";
        assert!(matches!(parse_dump(xml.as_bytes(), Lang::Es), Err(DumpError::LangMismatch { .. })));
    }

    #[test]
    fn self_redirect_is_not_a_redirect() {
        let xml = dump("<page><title>Bucle</title><redirect title=\"Bucle\"/><revision><text/></revision></page>");
        let parsed = parse_dump(xml.as_bytes(), Lang::Es).unwrap();
        assert_eq!(parsed.pages[0].redirect_target, None);
        assert_eq!(parsed.skipped.self_redirect, 1);
    }
}
