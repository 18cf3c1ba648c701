#![no_main]

use corpusforge::aligner::{read_alignments_tsv, tmx_string, tsv_string};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|text: &str| {
    if let Ok(rows) = read_alignments_tsv(text) {
        let tsv = tsv_string(&rows);
        let again = read_alignments_tsv(&tsv).expect("own output parses");
        assert_eq!(again.len(), rows.len());
        let _ = tmx_string(&rows);
    }
});
