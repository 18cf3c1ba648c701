use std::collections::HashSet;
use std::sync::LazyLock;

use regex::Regex;

use super::{InterlangLink, RawPage};
use crate::lang::normalize_title;

// `[[xx:Title]]` with a 2-3 letter lowercase code. `[[:xx:...]]` is an inline
// interwiki link and is deliberately not matched.
static LANGLINK: LazyLock<Regex> =
    LazyLock::new(|| Regex::new(r"\[\[([a-z]{2,3}):([^\[\]|]*)(?:\|[^\[\]]*)?\]\]").unwrap());

/// Inline interlanguage links in document order, first occurrence kept.
pub fn extract_langlinks(page: &RawPage) -> Vec<InterlangLink> {
    let mut seen = HashSet::new();
    let mut links = Vec::new();
    for caps in LANGLINK.captures_iter(&page.wikitext) {
        let dst_lang = &caps[1];
        if dst_lang == page.lang.code() {
            continue;
        }
        let dst_title = normalize_title(&caps[2]);
        if dst_title.is_empty() {
            continue;
        }
        if seen.insert((dst_lang.to_string(), dst_title.clone())) {
            links.push(InterlangLink {
                src_lang: page.lang,
                src_title: page.title.clone(),
                dst_lang: dst_lang.to_string(),
                dst_title,
            });
        }
    }
    links
}

/// True for link targets shaped like an interlanguage prefix (`es:Foo`).
pub(crate) fn is_langlink_target(target: &str) -> bool {
    let Some((prefix, _)) = target.split_once(':') else {
        return false;
    };
    (2..=3).contains(&prefix.len()) && prefix.bytes().all(|b| b.is_ascii_lowercase())
}
