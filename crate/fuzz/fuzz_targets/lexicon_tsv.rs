#![no_main]

use corpusforge::lexicon::BilingualLexicon;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|text: &str| {
    if let Ok(lexicon) = BilingualLexicon::from_tsv(text) {
        let tsv = lexicon.to_tsv();
        assert_eq!(BilingualLexicon::from_tsv(&tsv).expect("own output parses"), lexicon);
    }
});
