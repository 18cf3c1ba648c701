#![no_main]

use corpusforge::dump::strip_wikitext;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|text: &str| {
    let once = strip_wikitext(text).text;
    assert_eq!(strip_wikitext(&once).text, once);
    assert!(!once.contains("[[") && !once.contains("{{") && !once.contains("<ref"));
});
