use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::RawPage;
use crate::lang::{normalize_title, upper_first};

/// Longest redirect chain followed before the start is given up on as a cycle.
pub const MAX_REDIRECT_HOPS: usize = 16;

/// Title -> canonical article title for one language.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RedirectMap {
    resolved: BTreeMap<String, String>,
    cycles: BTreeSet<String>,
    /// Redirects leading into a cycle without being on it.
    unresolved: BTreeSet<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Resolution<'a> {
    Article(&'a str),
    Cycle,
    /// Not a page of this dump.
    Unknown,
}

/// Follows every redirect chain to its end.
///
/// All pages must belong to one language. When a title occurs twice the first
/// page wins.
pub fn resolve_redirects(pages: &[RawPage]) -> RedirectMap {
    debug_assert!(pages.windows(2).all(|w| w[0].lang == w[1].lang));
    let mut edges: HashMap<&str, Option<&str>> = HashMap::with_capacity(pages.len());
    for page in pages {
        edges.entry(page.title.as_str()).or_insert(page.redirect_target.as_deref());
    }

    let mut map = RedirectMap::default();
    for (&start, &target) in &edges {
        let Some(mut next) = target else {
            map.resolved.insert(start.to_string(), start.to_string());
            continue;
        };
        let mut path = vec![start];
        let mut outcome = None;
        for _ in 0..MAX_REDIRECT_HOPS {
            if let Some(pos) = path.iter().position(|&t| t == next) {
                outcome = Some(Err(pos));
                break;
            }
            match edges.get(next) {
                Some(Some(further)) => {
                    path.push(next);
                    next = further;
                }
                // an article, or a title the dump does not contain
                _ => {
                    outcome = Some(Ok(next));
                    break;
                }
            }
        }
        match outcome {
            Some(Ok(article)) => {
                map.resolved.insert(start.to_string(), article.to_string());
            }
            Some(Err(0)) => {
                map.cycles.insert(start.to_string());
            }
            Some(Err(_)) => {
                map.unresolved.insert(start.to_string());
            }
            None => {
                map.cycles.insert(start.to_string());
            }
        }
    }
    map
}

impl RedirectMap {
    /// Exact title first, then the first-letter-uppercased form.
    pub fn resolve(&self, title: &str) -> Resolution<'_> {
        let title = normalize_title(title);
        match self.lookup(&title) {
            Resolution::Unknown => {
                let upper = upper_first(&title);
                if upper != title {
                    self.lookup(&upper)
                } else {
                    Resolution::Unknown
                }
            }
            found => found,
        }
    }

    fn lookup(&self, title: &str) -> Resolution<'_> {
        if let Some(article) = self.resolved.get(title) {
            Resolution::Article(article)
        } else if self.cycles.contains(title) || self.unresolved.contains(title) {
            Resolution::Cycle
        } else {
            Resolution::Unknown
        }
    }

    pub fn get(&self, title: &str) -> Option<&str> {
        self.resolved.get(title).map(String::as_str)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &str)> {
        self.resolved.iter().map(|(k, v)| (k.as_str(), v.as_str()))
    }

    /// Titles on a redirect cycle, or whose chain is longer than
    /// [`MAX_REDIRECT_HOPS`].
    pub fn cycle_members(&self) -> &BTreeSet<String> {
        &self.cycles
    }

    pub fn unresolved(&self) -> &BTreeSet<String> {
        &self.unresolved
    }

    pub fn len(&self) -> usize {
        self.resolved.len()
    }

    pub fn is_empty(&self) -> bool {
        self.resolved.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lang::Lang;

    fn page(title: &str, target: Option<&str>) -> RawPage {
        RawPage {
            lang: Lang::Es,
            title: title.into(),
            wikitext: String::new(),
            redirect_target: target.map(Into::into),
        }
    }

    #[test]
    fn abbreviation_redirect() {
        let pages = [
            page("USA", Some("The United States of America")),
            page("The United States of America", None),
        ];
        let map = resolve_redirects(&pages);
        assert_eq!(map.resolve("USA"), Resolution::Article("The United States of America"));
        assert_eq!(map.get("The United States of America"), Some("The United States of America"));
    }

    #[test]
    fn chains_are_transitive() {
        let pages = [page("A", Some("B")), page("B", Some("C")), page("C", None)];
        let map = resolve_redirects(&pages);
        assert_eq!(map.get("A"), Some("C"));
        assert_eq!(map.get("B"), Some("C"));
    }

    #[test]
    fn two_cycle() {
        let pages = [page("A", Some("B")), page("B", Some("A"))];
        let map = resolve_redirects(&pages);
        assert!(map.is_empty());
        assert_eq!(map.cycle_members().iter().collect::<Vec<_>>(), ["A", "B"]);
        assert_eq!(map.resolve("A"), Resolution::Cycle);
    }

    #[test]
    fn tail_into_cycle_is_unresolved() {
        let pages = [page("T", Some("A")), page("A", Some("B")), page("B", Some("A"))];
        let map = resolve_redirects(&pages);
        assert!(map.unresolved().contains("T"));
        assert!(!map.cycle_members().contains("T"));
        assert_eq!(map.resolve("T"), Resolution::Cycle);
    }

    #[test]
    fn hop_limit() {
        // chain of 18 redirects ending in an article
        let mut pages: Vec<RawPage> = (0..18).map(|i| page(&format!("R{i}"), Some(&format!("R{}", i + 1)))).collect();
        pages.push(page("R18", None));
        let map = resolve_redirects(&pages);
        // R2 needs exactly 16 hops; R1 and R0 need more
        assert_eq!(map.get("R2"), Some("R18"));
        assert!(map.cycle_members().contains("R1"));
        assert!(map.cycle_members().contains("R0"));
    }

    #[test]
    fn dangling_redirect_maps_to_its_target() {
        let map = resolve_redirects(&[page("X", Some("Nowhere"))]);
        assert_eq!(map.get("X"), Some("Nowhere"));
    }

    #[test]
    fn first_letter_fallback() {
        let map = resolve_redirects(&[page("Economía", None)]);
        assert_eq!(map.resolve("economía"), Resolution::Article("Economía"));
        assert_eq!(map.resolve("economia"), Resolution::Unknown);
    }
}
