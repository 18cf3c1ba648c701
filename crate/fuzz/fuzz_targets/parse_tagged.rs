#![no_main]

use corpusforge::lang::Lang;
use corpusforge::tagging::parse_tagged;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Some((&first, rest)) = data.split_first() else { return };
    let Ok(text) = std::str::from_utf8(rest) else { return };
    let lang = if first & 1 == 0 { Lang::Ja } else { Lang::Es };
    if let Ok(import) = parse_tagged(lang, text) {
        for s in &import.sentences {
            assert!(!s.tokens.is_empty());
        }
    }
});
