//! Reading MediaWiki XML exports: pages, redirects, interlanguage links and
//! wikitext stripping.

mod langlinks;
mod redirect;
mod wikitext;
mod xml;

use serde::Serialize;

use crate::lang::Lang;

pub use langlinks::extract_langlinks;
pub use redirect::{resolve_redirects, RedirectMap, Resolution, MAX_REDIRECT_HOPS};
pub use wikitext::{strip_wikitext, Stripped};
pub use xml::{parse_dump, DumpError, DumpReader, ParsedDump, SkipCounts};

/// A page as it appears in the dump, before any cleaning.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawPage {
    pub lang: Lang,
    pub title: String,
    pub wikitext: String,
    pub redirect_target: Option<String>,
}

impl RawPage {
    pub fn is_redirect(&self) -> bool {
        self.redirect_target.is_some()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Hyperlink {
    pub target: String,
    pub anchor: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct InterlangLink {
    pub src_lang: Lang,
    pub src_title: String,
    /// Any 2-3 letter wiki language code, not only the two corpus languages.
    pub dst_lang: String,
    pub dst_title: String,
}

/// A non-redirect page reduced to plain text plus the links it carried.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CleanArticle {
    pub lang: Lang,
    pub title: String,
    pub text: String,
    pub links: Vec<Hyperlink>,
    pub langlinks: Vec<InterlangLink>,
}

impl CleanArticle {
    pub fn from_page(page: &RawPage) -> CleanArticle {
        let stripped = strip_wikitext(&page.wikitext);
        CleanArticle {
            lang: page.lang,
            title: page.title.clone(),
            text: stripped.text,
            links: stripped.links,
            langlinks: extract_langlinks(page),
        }
    }

    /// Rewrites link targets to the article they redirect to. Targets that
    /// are unknown to the dump, or caught in a cycle, are left as written.
    pub fn resolve_links(&mut self, redirects: &RedirectMap) {
        for link in &mut self.links {
            if let Resolution::Article(title) = redirects.resolve(&link.target) {
                link.target = title.to_string();
            }
        }
    }
}
