use std::io::{BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use corpusforge::aligner::OutputFormat;
use corpusforge::dump::{CleanArticle, DumpReader};
use corpusforge::eval::Strategy;
use corpusforge::lang::Lang;
use corpusforge::pipeline::{run, PipelineConfig, PipelineError, RunOptions, Stage};

#[derive(Parser)]
#[command(name = "corpusforge", version, about = "Japanese-Spanish comparable-corpus mining")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct StageArgs {
    /// Pipeline configuration (TOML). Relative paths inside it are taken
    /// from its own directory.
    #[arg(long, default_value = "corpusforge.toml")]
    config: PathBuf,
    /// Worker threads for alignment.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    jobs: u16,
    #[arg(long, value_name = "FILE")]
    stopwords_ja: Option<PathBuf>,
    #[arg(long, value_name = "FILE")]
    stopwords_es: Option<PathBuf>,
    /// Also write TMX next to the TSV alignments.
    #[arg(long, default_value = "tsv", value_parser = ["tsv", "tmx"])]
    format: String,
    /// Sampling strategy for the annotation sheets.
    #[arg(long, value_parser = ["uniform", "topk"])]
    strategy: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Build the bilingual lexicon from interlanguage links and the dictionary.
    Lexicon(StageArgs),
    /// Pair Japanese and Spanish articles through the link lexicon.
    Pairs(StageArgs),
    /// Rule-based sentence alignment.
    Align(StageArgs),
    /// Link-overlap baseline alignment.
    Baseline(StageArgs),
    /// Score alignments and export annotation sheets.
    Eval(StageArgs),
    /// Every stage in order.
    All(StageArgs),
    /// Print the cleaned articles of one dump as NDJSON.
    Inspect {
        #[arg(long, value_parser = ["ja", "es"])]
        lang: String,
        dump: PathBuf,
    },
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let (stage, args) = match cli.command {
        Command::Lexicon(a) => (Stage::Lexicon, a),
        Command::Pairs(a) => (Stage::Pairs, a),
        Command::Align(a) => (Stage::Align, a),
        Command::Baseline(a) => (Stage::Baseline, a),
        Command::Eval(a) => (Stage::Eval, a),
        Command::All(a) => (Stage::All, a),
        Command::Inspect { lang, dump } => return inspect(&lang, &dump),
    };
    match run_stage(stage, args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run_stage(stage: Stage, args: StageArgs) -> Result<(), PipelineError> {
    let mut cfg = PipelineConfig::load(&args.config)?;
    if args.stopwords_ja.is_some() {
        cfg.input.stopwords_ja = args.stopwords_ja;
    }
    if args.stopwords_es.is_some() {
        cfg.input.stopwords_es = args.stopwords_es;
    }
    if let Some(s) = args.strategy {
        cfg.eval.strategy = s.parse::<Strategy>().expect("restricted by clap");
    }
    let opts = RunOptions { jobs: args.jobs as usize, format: args.format.parse::<OutputFormat>().expect("restricted by clap") };
    for manifest in run(stage, &cfg, &opts)? {
        log::info!("{}: {:?}", manifest.stage, manifest.counts);
    }
    Ok(())
}

fn inspect(lang: &str, dump: &PathBuf) -> ExitCode {
    let lang = if lang == "ja" { Lang::Ja } else { Lang::Es };
    let file = match std::fs::File::open(dump) {
        Ok(f) => f,
        Err(e) => {
            eprintln!("error: {}: {e}", dump.display());
            return ExitCode::from(2);
        }
    };
    let mut reader = DumpReader::new(BufReader::new(file), lang);
    let mut out = BufWriter::new(std::io::stdout().lock());
    loop {
        match reader.next_page() {
            Ok(Some(page)) if page.is_redirect() => continue,
            Ok(Some(page)) => {
                let line = serde_json::to_string(&CleanArticle::from_page(&page)).expect("article serializes");
                if writeln!(out, "{line}").is_err() {
                    return ExitCode::SUCCESS;
                }
            }
            Ok(None) => break,
            Err(e) => {
                let _ = out.flush();
                eprintln!("error: {}: {e}", dump.display());
                return ExitCode::from(2);
            }
        }
    }
    let _ = out.flush();
    ExitCode::SUCCESS
}
