pub mod aligner;
pub mod dump;
pub mod eval;
pub mod lang;
pub mod lexicon;
pub mod pipeline;
pub mod rules;
pub mod tagging;
pub mod textprep;
