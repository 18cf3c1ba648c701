#![no_main]

use corpusforge::eval::parse_gold;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|text: &str| {
    let _ = parse_gold(text);
});
