#![no_main]

use corpusforge::pipeline::PipelineConfig;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|text: &str| {
    let _ = PipelineConfig::parse(text, std::path::Path::new("/nonexistent"));
});
