#![no_main]

use corpusforge::lexicon::{parse_dictionary, BilingualLexicon};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|text: &str| {
    let (lexicon, _) = parse_dictionary(text);
    let tsv = lexicon.to_tsv();
    assert_eq!(BilingualLexicon::from_tsv(&tsv).expect("own output parses").to_tsv(), tsv);
});
