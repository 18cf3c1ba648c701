#![no_main]

use corpusforge::eval::{import_judgments, tabulate};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|text: &str| {
    if let Ok(judgments) = import_judgments(text, None) {
        if let Ok(report) = tabulate("fuzz", &judgments) {
            assert_eq!(report.counts.total(), judgments.len());
        }
    }
});
