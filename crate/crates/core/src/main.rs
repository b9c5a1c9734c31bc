use std::fs::File;
use std::io::{self, BufReader, BufWriter, Read};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use multirank::corpus::{parse_documents, parse_gold, Document, GoldReferences, TagMap};
use multirank::graph::AdjustmentVariant;
use multirank::pipeline::{
    evaluate_corpus, extract_corpus, summary_table, sweep, sweep_table, write_extract_jsonl,
    ModelKind, PipelineError, RunConfig,
};
use multirank::PatternKind;

const EXIT_PARSE: u8 = 1;
const EXIT_CONFIG: u8 = 2;
const EXIT_ID_MISMATCH: u8 = 3;

#[derive(Parser)]
#[command(
    name = "multirank",
    version,
    about = "Graph-based keyphrase extraction and evaluation"
)]
struct Cli {
    #[command(subcommand)]
    command: Commands,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelArg {
    Multipartite,
    SingleRank,
    SingleRankNormalized,
    TopicRank,
    TopicRankNoTopics,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Published,
    Draft,
}

#[derive(Clone, Copy, ValueEnum)]
enum PatternArg {
    NaPlus,
    AdjStarNounPlus,
}

#[derive(Args)]
struct ConfigArgs {
    /// Ranking model
    #[arg(long, value_enum, default_value = "multipartite")]
    model: ModelArg,

    /// Weight-adjustment strength
    #[arg(long, default_value_t = 1.1)]
    alpha: f64,

    /// Topic clustering threshold
    #[arg(long, default_value_t = 0.9)]
    tau: f64,

    /// Read tau as a similarity (cutoff = 1 - tau) instead of a distance
    #[arg(long)]
    tau_is_similarity: bool,

    /// Weight-adjustment formula variant
    #[arg(long, value_enum, default_value = "published")]
    variant: VariantArg,

    /// Candidate POS pattern
    #[arg(long, value_enum, default_value = "na-plus")]
    pattern: PatternArg,

    /// Number of keyphrases to emit
    #[arg(long, default_value_t = 10)]
    top_n: usize,

    /// TextRank damping factor
    #[arg(long, default_value_t = 0.85)]
    lambda: f64,

    /// SingleRank co-occurrence window
    #[arg(long, default_value_t = 10)]
    window: usize,

    /// Use k as the precision denominator even for short lists
    #[arg(long)]
    strict_at_k: bool,

    /// Worker threads
    #[arg(long, default_value_t = 1)]
    threads: usize,

    /// JSON file mapping POS-tag prefixes to N/A/O
    #[arg(long)]
    tag_map: Option<PathBuf>,
}

impl ConfigArgs {
    fn to_run_config(&self) -> RunConfig {
        RunConfig {
            model: match self.model {
                ModelArg::Multipartite => ModelKind::Multipartite,
                ModelArg::SingleRank => ModelKind::SingleRank,
                ModelArg::SingleRankNormalized => ModelKind::SingleRankNormalized,
                ModelArg::TopicRank => ModelKind::TopicRank,
                ModelArg::TopicRankNoTopics => ModelKind::TopicRankNoTopics,
            },
            alpha: self.alpha,
            tau: self.tau,
            tau_is_similarity: self.tau_is_similarity,
            variant: match self.variant {
                VariantArg::Published => AdjustmentVariant::Published,
                VariantArg::Draft => AdjustmentVariant::Draft,
            },
            pattern: match self.pattern {
                PatternArg::NaPlus => PatternKind::NaPlus,
                PatternArg::AdjStarNounPlus => PatternKind::AdjStarNounPlus,
            },
            top_n: self.top_n,
            lambda: self.lambda,
            window: self.window,
            strict_at_k: self.strict_at_k,
            threads: self.threads,
            ..RunConfig::default()
        }
    }

    fn load_tag_map(&self) -> Result<TagMap, CliError> {
        match &self.tag_map {
            None => Ok(TagMap::default()),
            Some(path) => {
                let bytes = read_file(path)?;
                TagMap::from_json(&bytes)
                    .map_err(|e| CliError::parse(format!("tag map {}: {e}", path.display())))
            }
        }
    }
}

#[derive(Subcommand)]
enum Commands {
    /// Extract keyphrases; writes one JSON object per document
    Extract {
        #[command(flatten)]
        config: ConfigArgs,
        /// Input corpus (line-delimited JSON document records)
        input: PathBuf,
        /// Output path, or "-" for stdout
        output: PathBuf,
        /// Dump each document's adjusted graph as <id>.tsv into this directory
        #[arg(long, value_name = "DIR")]
        dump_graph: Option<PathBuf>,
    },
    /// Score extractions against gold references
    Evaluate {
        #[command(flatten)]
        config: ConfigArgs,
        input: PathBuf,
        /// Gold references (JSON object: id -> phrase list)
        gold: PathBuf,
    },
    /// Evaluate a grid of alpha/tau values
    Sweep {
        #[command(flatten)]
        config: ConfigArgs,
        input: PathBuf,
        gold: PathBuf,
        /// Comma-separated alpha values
        #[arg(long, value_delimiter = ',')]
        alpha_grid: Vec<f64>,
        /// Comma-separated tau values
        #[arg(long, value_delimiter = ',')]
        tau_grid: Vec<f64>,
    },
}

struct CliError {
    message: String,
    code: u8,
}

impl CliError {
    fn parse(message: String) -> CliError {
        CliError {
            message,
            code: EXIT_PARSE,
        }
    }
}

impl From<PipelineError> for CliError {
    fn from(e: PipelineError) -> CliError {
        let code = match &e {
            PipelineError::InvalidConfig(_) => EXIT_CONFIG,
            PipelineError::MissingGold(_) => EXIT_ID_MISMATCH,
            _ => EXIT_PARSE,
        };
        CliError {
            message: e.to_string(),
            code,
        }
    }
}

fn read_file(path: &Path) -> Result<Vec<u8>, CliError> {
    let mut buf = Vec::new();
    File::open(path)
        .and_then(|mut f| f.read_to_end(&mut buf))
        .map_err(|e| CliError::parse(format!("{}: {e}", path.display())))?;
    Ok(buf)
}

fn load_corpus(path: &Path, tag_map: &TagMap) -> Result<Vec<Document>, CliError> {
    let file = File::open(path).map_err(|e| CliError::parse(format!("{}: {e}", path.display())))?;
    parse_documents(BufReader::new(file), tag_map)
        .map_err(|e| CliError::parse(format!("{}: {e}", path.display())))
}

fn load_gold(path: &Path) -> Result<GoldReferences, CliError> {
    let file = File::open(path).map_err(|e| CliError::parse(format!("{}: {e}", path.display())))?;
    parse_gold(BufReader::new(file))
        .map_err(|e| CliError::parse(format!("{}: {e}", path.display())))
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Commands::Extract {
            config,
            input,
            output,
            dump_graph,
        } => {
            let cfg = config.to_run_config();
            cfg.validate()?;
            let tag_map = config.load_tag_map()?;
            let docs = load_corpus(&input, &tag_map)?;
            let results = extract_corpus(&docs, &cfg, dump_graph.is_some())?;
            if let Some(dir) = &dump_graph {
                std::fs::create_dir_all(dir)
                    .map_err(|e| CliError::parse(format!("{}: {e}", dir.display())))?;
                for r in &results {
                    if let (Some(g), Some(topics)) = (&r.graph, &r.topics) {
                        let path = dir.join(format!("{}.tsv", r.id));
                        let file = File::create(&path)
                            .map_err(|e| CliError::parse(format!("{}: {e}", path.display())))?;
                        g.dump(topics.k(), BufWriter::new(file))
                            .map_err(|e| CliError::parse(e.to_string()))?;
                    }
                }
            }
            if output.as_os_str() == "-" {
                let stdout = io::stdout();
                write_extract_jsonl(&results, cfg.top_n, stdout.lock())?;
            } else {
                let file = File::create(&output)
                    .map_err(|e| CliError::parse(format!("{}: {e}", output.display())))?;
                write_extract_jsonl(&results, cfg.top_n, BufWriter::new(file))?;
            }
            eprintln!("extracted {} documents", results.len());
            Ok(())
        }
        Commands::Evaluate {
            config,
            input,
            gold,
        } => {
            let cfg = config.to_run_config();
            cfg.validate()?;
            let tag_map = config.load_tag_map()?;
            let docs = load_corpus(&input, &tag_map)?;
            let gold = load_gold(&gold)?;
            let report = evaluate_corpus(&docs, &gold, &cfg)?;
            let json = serde_json::to_string_pretty(&report).expect("report serializes");
            println!("{json}");
            eprint!("{}", summary_table(&report));
            Ok(())
        }
        Commands::Sweep {
            config,
            input,
            gold,
            alpha_grid,
            tau_grid,
        } => {
            let cfg = config.to_run_config();
            cfg.validate()?;
            let tag_map = config.load_tag_map()?;
            let docs = load_corpus(&input, &tag_map)?;
            let gold = load_gold(&gold)?;
            let rows = sweep(&docs, &gold, &cfg, &alpha_grid, &tau_grid)?;
            print!("{}", sweep_table(&rows));
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
