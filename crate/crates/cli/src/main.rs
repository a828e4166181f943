mod commands;
mod config;
mod io;

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use config::{Overrides, PipelineConfig};
use io::DocFormat;
use wlcoref_core::{Rule, SCHEMA_VERSION};

const EXIT_USAGE: u8 = 2;
const EXIT_VALIDATION: u8 = 3;
const EXIT_IO: u8 = 4;

/// Bad flag combinations or settings found after clap has parsed argv.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn version() -> &'static str {
    Box::leak(format!("{} (schema {})", env!("CARGO_PKG_VERSION"), SCHEMA_VERSION).into_boxed_str())
}

#[derive(Parser, Debug)]
#[command(name = "wlcoref", version = version(), about = "Word-level coreference toolkit")]
struct Cli {
    /// TOML file with rule, cc_tags, dummy, top_k and a [columns] table.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    /// Worker threads for per-document processing.
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,
    /// Head-word rule.
    #[arg(long, global = true, value_parser = parse_rule)]
    rule: Option<Rule>,
    /// Comma-separated POS tags treated as coordinating conjunctions.
    #[arg(long, global = true, value_delimiter = ',', value_name = "TAGS")]
    cc_tags: Option<Vec<String>>,
    /// Score of the dummy antecedent.
    #[arg(long, global = true, allow_negative_numbers = true)]
    dummy: Option<f64>,
    /// Keep only the k best coarse antecedents per word.
    #[arg(long, global = true, value_name = "K")]
    top_k: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

fn parse_rule(s: &str) -> Result<Rule, String> {
    s.parse::<Rule>().map_err(|e| e.to_string())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ColorChoice {
    Auto,
    Always,
    Never,
}

#[derive(Args, Debug)]
pub struct DocsInput {
    /// Documents in CoNLL or jsonlines.
    #[arg(long, short)]
    input: PathBuf,
    /// Input format; guessed from the extension when omitted.
    #[arg(long)]
    from: Option<DocFormat>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Convert between CoNLL and jsonlines.
    Ingest {
        #[command(flatten)]
        docs: DocsInput,
        /// Output format; defaults to the other format.
        #[arg(long)]
        to: Option<DocFormat>,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Print the head-word of every gold mention.
    Headwords {
        #[command(flatten)]
        docs: DocsInput,
        #[arg(long, default_value = "text")]
        format: OutputFormat,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Build word-level documents and report head-word collisions.
    BuildWl {
        #[command(flatten)]
        docs: DocsInput,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Count conjoined mentions and collisions under both rules.
    AnalyzeConflicts {
        #[command(flatten)]
        docs: DocsInput,
        #[arg(long, default_value = "text")]
        format: OutputFormat,
    },
    /// Cluster words from score matrices and extract spans.
    Cluster {
        /// Score-matrix jsonlines (coarse, fine or combined records).
        #[arg(long)]
        scores: PathBuf,
        /// Documents the scores refer to.
        #[arg(long)]
        docs: PathBuf,
        #[arg(long)]
        docs_format: Option<DocFormat>,
        /// Boundary-score jsonlines, one record per head-word.
        #[arg(long, conflicts_with = "oracle_spans")]
        spans: Option<PathBuf>,
        /// Extract gold spans of gold head-words.
        #[arg(long)]
        oracle_spans: bool,
        #[arg(long, short)]
        output: Option<PathBuf>,
        /// Response format; guessed from the output extension, CoNLL otherwise.
        #[arg(long)]
        to: Option<DocFormat>,
    },
    /// Score a response against a key with MUC, B-cubed and CEAF-phi4.
    Score {
        #[arg(long)]
        key: PathBuf,
        #[arg(long)]
        response: PathBuf,
        #[arg(long, default_value = "text")]
        format: OutputFormat,
    },
    /// Run the bundled examples under both rules.
    Demo {
        #[arg(long, default_value = "text")]
        format: OutputFormat,
        #[arg(long, default_value = "auto")]
        color: ColorChoice,
    },
}

fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if cause.is::<UsageError>() {
            return EXIT_USAGE;
        }
        if let Some(e) = cause.downcast_ref::<wlcoref_core::Error>() {
            return match e {
                e if e.is_io() => EXIT_IO,
                wlcoref_core::Error::Argument(_) => EXIT_USAGE,
                _ => EXIT_VALIDATION,
            };
        }
        if cause.is::<std::io::Error>() {
            return EXIT_IO;
        }
    }
    EXIT_VALIDATION
}

fn run(cli: Cli) -> anyhow::Result<()> {
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            return Err(UsageError("--jobs must be at least 1".into()).into());
        }
        rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global()?;
    }
    let config = PipelineConfig::load(
        cli.config.as_deref(),
        Overrides {
            rule: cli.rule,
            cc_tags: cli.cc_tags,
            dummy: cli.dummy,
            top_k: cli.top_k,
        },
    )?;
    match cli.command {
        Command::Ingest { docs, to, output } => commands::ingest(&config, &docs, to, output.as_ref()),
        Command::Headwords { docs, format, output } => commands::headwords(&config, &docs, format, output.as_ref()),
        Command::BuildWl { docs, output } => commands::build_wl(&config, &docs, output.as_ref()),
        Command::AnalyzeConflicts { docs, format } => commands::analyze_conflicts(&config, &docs, format),
        Command::Cluster {
            scores,
            docs,
            docs_format,
            spans,
            oracle_spans,
            output,
            to,
        } => {
            let spans = match (spans, oracle_spans) {
                (Some(path), false) => commands::SpanSource::Boundaries(path),
                (None, true) => commands::SpanSource::Oracle,
                _ => return Err(UsageError("cluster needs --spans FILE or --oracle-spans".into()).into()),
            };
            let to = to.or(output.as_deref().map(DocFormat::from_path)).unwrap_or(DocFormat::Conll);
            commands::cluster(&config, &scores, &docs, docs_format, spans, output.as_ref(), to)
        }
        Command::Score { key, response, format } => commands::score(&config, &key, &response, format),
        Command::Demo { format, color } => commands::demo(format, color),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {:#}", e);
            ExitCode::from(exit_code(&e))
        }
    }
}
