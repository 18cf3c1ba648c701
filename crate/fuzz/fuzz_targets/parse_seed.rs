#![no_main]

use corpusforge::lang::Lang;
use corpusforge::tagging::SeedLexicon;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Some((&first, rest)) = data.split_first() else { return };
    let Ok(text) = std::str::from_utf8(rest) else { return };
    let lang = if first & 1 == 0 { Lang::Ja } else { Lang::Es };
    let _ = SeedLexicon::parse(lang, text);
});
