//! Command-line front end: composes a RunConfig from an optional config
//! file plus flag overrides and dispatches one pipeline command.

#![forbid(unsafe_code)]

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use textnet::config::RunConfig;
use textnet::pipeline::{self, Command as PipelineCommand};
use textnet::Result;

#[derive(Parser)]
#[command(
    name = "textnet",
    about = "Word-adjacency network analysis of text corpora: subtext sampling, topological measurements, variability, and authorship classification",
    version
)]
struct Cli {
    #[command(flatten)]
    overrides: Overrides,

    #[command(subcommand)]
    command: CliCommand,
}

#[derive(Args)]
struct Overrides {
    /// Flat key=value config file; flags below override its values
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Corpus manifest CSV (author,title,year,path)
    #[arg(long, global = true)]
    manifest: Option<PathBuf>,

    /// Stopword list, one word per line
    #[arg(long, global = true)]
    stoplist: Option<PathBuf>,

    /// Lemma dictionary (surface<TAB>lemma); pass an empty string to disable
    #[arg(long, global = true)]
    lemmas: Option<String>,

    /// Window size in tokens, or one of full/thirds/quarters (repeatable)
    #[arg(long = "window", global = true)]
    windows: Vec<String>,

    /// Window to project in `report` (repeatable)
    #[arg(long = "pca-window", global = true)]
    pca_windows: Vec<String>,

    /// Minimum occurrences for a word to enter the intermittency set
    #[arg(long, global = true)]
    f_min: Option<usize>,

    /// kNN neighbor count
    #[arg(long, global = true)]
    knn_k: Option<usize>,

    /// SVM box constraint C
    #[arg(long, global = true)]
    svm_c: Option<f64>,

    /// Decision-tree minimum leaf size
    #[arg(long, global = true)]
    min_leaf: Option<usize>,

    /// Bayes variance floor
    #[arg(long, global = true)]
    variance_floor: Option<f64>,

    /// Cross-validation fold count
    #[arg(long, global = true)]
    folds: Option<usize>,

    /// RNG seed; required for classify
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Threshold-rule fraction of the full-book accuracy
    #[arg(long, global = true)]
    theta: Option<f64>,

    /// Output directory
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Recurrence-time convention: difference or gap
    #[arg(long, global = true)]
    gap_convention: Option<String>,

    /// Count windows in raw tokens and preprocess each window afterwards
    #[arg(long, global = true)]
    count_raw_tokens: bool,

    /// Keep all subtexts of a book in a single cross-validation fold
    #[arg(long, global = true)]
    group_by_book: bool,

    /// Worker threads (0 = all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Write per-subtext token, measurement, and network dumps
    #[arg(long, global = true)]
    dump: bool,

    /// Also cross-validate with permuted labels (chance-level audit)
    #[arg(long, global = true)]
    permutation_audit: bool,
}

#[derive(Subcommand)]
enum CliCommand {
    /// Preprocess every book in the manifest into token caches
    Ingest,
    /// Compute per-subtext feature vectors for every window
    Measure,
    /// Coefficient-of-variation report across each book's subtexts
    Variability,
    /// Cross-validated authorship classification over the feature files
    Classify,
    /// PCA projections and the run summary
    Report,
}

fn build_config(overrides: &Overrides) -> Result<RunConfig> {
    let mut config = match &overrides.config {
        Some(path) => RunConfig::from_file(path)?,
        None => RunConfig::default(),
    };
    if let Some(v) = &overrides.manifest {
        config.manifest = v.clone();
    }
    if let Some(v) = &overrides.stoplist {
        config.stoplist = v.clone();
    }
    if let Some(v) = &overrides.lemmas {
        config.set("lemmas", v)?;
    }
    if !overrides.windows.is_empty() {
        config.set("windows", &overrides.windows.join(","))?;
    }
    if !overrides.pca_windows.is_empty() {
        config.set("pca_windows", &overrides.pca_windows.join(","))?;
    }
    if let Some(v) = overrides.f_min {
        config.f_min = v;
    }
    if let Some(v) = overrides.knn_k {
        config.knn_k = v;
    }
    if let Some(v) = overrides.svm_c {
        config.svm_c = v;
    }
    if let Some(v) = overrides.min_leaf {
        config.min_leaf = v;
    }
    if let Some(v) = overrides.variance_floor {
        config.variance_floor = v;
    }
    if let Some(v) = overrides.folds {
        config.folds = v;
    }
    if let Some(v) = overrides.seed {
        config.seed = Some(v);
    }
    if let Some(v) = overrides.theta {
        config.theta = v;
    }
    if let Some(v) = &overrides.out {
        config.out = v.clone();
    }
    if let Some(v) = &overrides.gap_convention {
        config.set("gap_convention", v)?;
    }
    if overrides.count_raw_tokens {
        config.count_raw_tokens = true;
    }
    if overrides.group_by_book {
        config.group_by_book = true;
    }
    if let Some(v) = overrides.threads {
        config.threads = v;
    }
    if overrides.dump {
        config.dump = true;
    }
    if overrides.permutation_audit {
        config.permutation_audit = true;
    }
    Ok(config)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let command = match cli.command {
        CliCommand::Ingest => PipelineCommand::Ingest,
        CliCommand::Measure => PipelineCommand::Measure,
        CliCommand::Variability => PipelineCommand::Variability,
        CliCommand::Classify => PipelineCommand::Classify,
        CliCommand::Report => PipelineCommand::Report,
    };
    let outcome = build_config(&cli.overrides).and_then(|config| pipeline::run(&config, command));
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
