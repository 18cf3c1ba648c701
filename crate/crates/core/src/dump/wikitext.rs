use super::langlinks::is_langlink_target;
use super::Hyperlink;
use crate::lang::{collapse_whitespace, normalize_title};

/// Plain text and the internal links found while stripping.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Stripped {
    pub text: String,
    pub links: Vec<Hyperlink>,
    /// Unterminated `{{`, `{|`, `<ref>` or `<!--` regions. Each one drops
    /// the rest of its input.
    pub unbalanced: usize,
}

/// Namespaces whose links never show up as article text.
const DROPPED_NAMESPACES: [&str; 11] = [
    "file", "image", "media", "archivo", "imagen", "category", "categoría", "categoria", "ファイル", "画像",
    "カテゴリ",
];

/// Punctuation treated as noise and deleted outright.
const NOISE: [char; 14] = ['(', ')', '"', '*', '（', '）', '「', '」', '『', '』', '“', '”', '«', '»'];

// Anchors are stripped recursively; past this depth they are only flattened.
const MAX_ANCHOR_DEPTH: usize = 8;

/// Reduces wikitext to plain text.
///
/// Runs the stripping pass until the text stops changing, so the result is a
/// fixed point: stripping it again returns it unchanged.
pub fn strip_wikitext(wikitext: &str) -> Stripped {
    strip_at_depth(wikitext, 0)
}

fn strip_at_depth(wikitext: &str, depth: usize) -> Stripped {
    let mut out = Stripped::default();
    let mut current = strip_pass(wikitext, depth, &mut out.links, &mut out.unbalanced);
    loop {
        let next = strip_pass(&current, depth, &mut out.links, &mut out.unbalanced);
        if next == current {
            break;
        }
        current = next;
    }
    out.text = current;
    out
}

fn strip_pass(input: &str, depth: usize, links: &mut Vec<Hyperlink>, unbalanced: &mut usize) -> String {
    let structural = remove_markup(input, depth, links, unbalanced);
    let cleaned = clean_characters(&structural);
    let lines: Vec<&str> = cleaned.lines().map(trim_line_markers).collect();
    collapse_whitespace(&lines.join("\n"))
}

fn starts_with_ci(haystack: &[u8], needle: &[u8]) -> bool {
    haystack.len() >= needle.len() && haystack[..needle.len()].eq_ignore_ascii_case(needle)
}

fn find_ci(haystack: &[u8], needle: &[u8]) -> Option<usize> {
    haystack.windows(needle.len()).position(|w| w.eq_ignore_ascii_case(needle))
}

/// Skips a `{{ }}` / `{| |}` region starting at `start`, respecting nesting of
/// either kind. Returns the index just past the closing marker.
fn skip_braces(bytes: &[u8], start: usize) -> Option<usize> {
    #[derive(PartialEq)]
    enum Open {
        Template,
        Table,
    }
    let mut stack = Vec::new();
    let mut i = start;
    while i + 1 < bytes.len() {
        match (bytes[i], bytes[i + 1]) {
            (b'{', b'{') => {
                stack.push(Open::Template);
                i += 2;
            }
            (b'{', b'|') => {
                stack.push(Open::Table);
                i += 2;
            }
            (b'}', b'}') if stack.last() == Some(&Open::Template) => {
                stack.pop();
                i += 2;
            }
            (b'|', b'}') if stack.last() == Some(&Open::Table) => {
                stack.pop();
                i += 2;
            }
            _ => i += 1,
        }
        if stack.is_empty() {
            return Some(i);
        }
    }
    None
}

/// Finds the `]]` closing the `[[` at `start`. Returns (inner end, after).
fn skip_link(bytes: &[u8], start: usize) -> Option<(usize, usize)> {
    let mut depth = 0usize;
    let mut i = start;
    while i + 1 < bytes.len() {
        match (bytes[i], bytes[i + 1]) {
            (b'[', b'[') => {
                depth += 1;
                i += 2;
            }
            (b']', b']') => {
                depth -= 1;
                if depth == 0 {
                    return Some((i, i + 2));
                }
                i += 2;
            }
            _ => i += 1,
        }
    }
    None
}

/// Splits `target|anchor` at the first pipe outside nested brackets.
fn split_pipe(inner: &str) -> (&str, Option<&str>) {
    let bytes = inner.as_bytes();
    let mut depth = 0i32;
    for (i, &b) in bytes.iter().enumerate() {
        match b {
            b'[' | b'{' => depth += 1,
            b']' | b'}' => depth -= 1,
            b'|' if depth <= 0 => return (&inner[..i], Some(&inner[i + 1..])),
            _ => {}
        }
    }
    (inner, None)
}

fn remove_markup(input: &str, depth: usize, links: &mut Vec<Hyperlink>, unbalanced: &mut usize) -> String {
    let bytes = input.as_bytes();
    let mut out = String::with_capacity(input.len());
    let mut copied = 0;
    let mut i = 0;

    // Every marker is ASCII, so byte positions of markers are char boundaries.
    macro_rules! flush {
        () => {
            out.push_str(&input[copied..i]);
        };
    }

    while i < bytes.len() {
        let rest = &bytes[i..];
        if rest.starts_with(b"<!--") {
            flush!();
            match find_ci(&rest[4..], b"-->") {
                Some(end) => i += 4 + end + 3,
                None => {
                    *unbalanced += 1;
                    i = bytes.len();
                }
            }
            copied = i;
        } else if starts_with_ci(rest, b"<ref") && rest.get(4).is_none_or(|b| matches!(b, b'>' | b'/' | b' ' | b'\t' | b'\n')) {
            flush!();
            let tag_end = rest.iter().position(|&b| b == b'>');
            match tag_end {
                Some(end) if rest[..end].ends_with(b"/") => i += end + 1,
                Some(end) => match find_ci(&rest[end..], b"</ref") {
                    Some(close) => {
                        let close_at = end + close;
                        let gt = rest[close_at..].iter().position(|&b| b == b'>').map_or(5, |p| p + 1);
                        i += close_at + gt;
                    }
                    None => {
                        *unbalanced += 1;
                        i = bytes.len();
                    }
                },
                None => {
                    *unbalanced += 1;
                    i = bytes.len();
                }
            }
            copied = i;
        } else if rest.starts_with(b"{{") || rest.starts_with(b"{|") {
            flush!();
            match skip_braces(bytes, i) {
                Some(end) => i = end,
                None => {
                    *unbalanced += 1;
                    i = bytes.len();
                }
            }
            copied = i;
        } else if rest.starts_with(b"[[") {
            flush!();
            match skip_link(bytes, i) {
                Some((inner_end, after)) => {
                    let inner = &input[i + 2..inner_end];
                    emit_link(inner, depth, &mut out, links, unbalanced);
                    i = after;
                }
                // an unclosed `[[` is just dropped
                None => i += 2,
            }
            copied = i;
        } else if rest[0] == b'[' && (starts_with_ci(&rest[1..], b"http://") || starts_with_ci(&rest[1..], b"https://") || rest[1..].starts_with(b"//")) {
            match rest.iter().position(|&b| b == b']' || b == b'\n') {
                Some(end) if rest[end] == b']' => {
                    flush!();
                    let inner = &input[i + 1..i + end];
                    if let Some((_, label)) = inner.split_once([' ', '\t']) {
                        out.push_str(label);
                    }
                    i += end + 1;
                    copied = i;
                }
                _ => i += 1,
            }
        } else if rest[0] == b'<' && rest.get(1).is_some_and(|b| b.is_ascii_alphabetic() || *b == b'/' || *b == b'!') {
            match rest[1..].iter().position(|&b| b == b'>' || b == b'<' || b == b'\n') {
                Some(end) if rest[end + 1] == b'>' => {
                    flush!();
                    i += end + 2;
                    copied = i;
                }
                // an unclosed tag: drop the bracket so no `<ref` survives
                _ => {
                    flush!();
                    i += 1;
                    copied = i;
                }
            }
        } else if rest.starts_with(b"__") {
            let name_len = rest[2..].iter().take_while(|b| b.is_ascii_uppercase()).count();
            if name_len > 0 && rest[2 + name_len..].starts_with(b"__") {
                flush!();
                i += name_len + 4;
                copied = i;
            } else {
                i += 2;
            }
        } else {
            i += 1;
        }
    }
    out.push_str(&input[copied..]);
    out
}

fn emit_link(inner: &str, depth: usize, out: &mut String, links: &mut Vec<Hyperlink>, unbalanced: &mut usize) {
    let (raw_target, anchor) = split_pipe(inner);
    let mut target = raw_target.trim();
    if let Some((ns, _)) = target.split_once(':') {
        if DROPPED_NAMESPACES.contains(&ns.trim().to_lowercase().as_str()) {
            return;
        }
    }
    if is_langlink_target(target) {
        return;
    }
    target = target.strip_prefix(':').unwrap_or(target);

    let anchor_source = match anchor {
        Some(a) if !a.trim().is_empty() => a,
        // the pipe trick `[[Foo (bar)|]]` shows as "Foo"
        Some(_) => crate::lang::strip_disambiguator(target),
        None => target,
    };
    let anchor_text = if depth >= MAX_ANCHOR_DEPTH {
        clean_characters(&anchor_source.replace(['[', ']', '{', '}', '|', '<', '>'], " "))
    } else {
        let nested = strip_at_depth(anchor_source, depth + 1);
        *unbalanced += nested.unbalanced;
        nested.text
    };
    let anchor_text = collapse_whitespace(&anchor_text);
    let target = normalize_title(target);

    out.push_str(&anchor_text);
    if !target.is_empty() && !anchor_text.is_empty() {
        links.push(Hyperlink { target, anchor: anchor_text });
    }
}

fn clean_characters(input: &str) -> String {
    let mut out = String::with_capacity(input.len());
    let mut chars = input.chars().peekable();
    while let Some(c) = chars.next() {
        match c {
            '\'' if chars.peek() == Some(&'\'') => {
                while chars.peek() == Some(&'\'') {
                    chars.next();
                }
            }
            '[' if chars.peek() == Some(&'[') => {
                chars.next();
            }
            ']' if chars.peek() == Some(&']') => {
                chars.next();
            }
            '{' | '}' => {}
            c if NOISE.contains(&c) => {}
            c => out.push(c),
        }
    }
    out
}

fn trim_line_markers(line: &str) -> &str {
    line.trim_start_matches(|c: char| matches!(c, '=' | '#' | ':' | ';') || c.is_whitespace())
        .trim_end_matches(|c: char| c == '=' || c.is_whitespace())
}
