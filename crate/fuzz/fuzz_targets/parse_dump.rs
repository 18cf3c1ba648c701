#![no_main]

use corpusforge::dump::parse_dump;
use corpusforge::lang::Lang;
use libfuzzer_sys::fuzz_target;

// First byte picks the language.
fuzz_target!(|data: &[u8]| {
    let Some((&first, xml)) = data.split_first() else { return };
    let lang = if first & 1 == 0 { Lang::Ja } else { Lang::Es };
    if let Ok(dump) = parse_dump(xml, lang) {
        for page in &dump.pages {
            assert!(!page.title.is_empty());
            assert_eq!(page.lang, lang);
        }
    }
});
