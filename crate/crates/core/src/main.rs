use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};

use revkg::kg::Iri;
use revkg::pipeline::{self, PipelineConfig, PipelineError, Target};

#[derive(Parser)]
#[command(
    name = "revkg",
    version,
    about = "Review and knowledge-graph based item recommendation"
)]
struct Cli {
    /// Pipeline config file (TOML).
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Overrides `evaluation.seed`.
    #[arg(long, global = true, value_name = "INT")]
    seed: Option<u64>,
    /// Overrides `paths.output`.
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<PathBuf>,
    /// More log output on stderr; repeat for debug detail.
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Annotate reviews and write the occurrence index and entity types.
    Annotate,
    /// Discover related entities through the configured graph properties.
    Discover {
        /// Precompute LDSD between each discovered entity and its source.
        #[arg(long)]
        with_ldsd: bool,
    },
    /// Print top-N recommendations for an item or a user.
    Recommend(RecommendArgs),
    /// Cross-validate every grid row and baseline.
    Evaluate,
    /// Print corpus statistics for the annotated reviews.
    Stats,
}

#[derive(Args)]
struct RecommendArgs {
    /// Seed item IRI.
    #[arg(long, conflicts_with = "user", required_unless_present = "user")]
    item: Option<String>,
    /// User id from the ratings file.
    #[arg(long)]
    user: Option<String>,
    /// Name of the grid row to use.
    #[arg(long = "config-row", value_name = "NAME")]
    config_row: String,
    #[arg(long, default_value_t = 10)]
    top: usize,
}

fn load_config(cli: &Cli) -> Result<PipelineConfig, PipelineError> {
    let path = cli
        .config
        .as_ref()
        .ok_or_else(|| PipelineError::Usage("--config PATH is required".into()))?;
    let mut cfg = PipelineConfig::load(path)?;
    if let Some(seed) = cli.seed {
        cfg.evaluation.seed = seed;
    }
    if let Some(out) = &cli.out {
        cfg.paths.output = out.clone();
    }
    Ok(cfg)
}

fn run(cli: &Cli) -> Result<(), PipelineError> {
    let cfg = load_config(cli)?;
    match &cli.command {
        Command::Annotate => {
            let out = pipeline::cmd_annotate(&cfg)?;
            print!("{}", out.stats);
        }
        Command::Discover { with_ldsd } => {
            let n = pipeline::cmd_discover(&cfg, *with_ldsd)?;
            println!("discovered\t{n}");
        }
        Command::Recommend(args) => {
            let target = match (&args.item, &args.user) {
                (Some(item), _) => {
                    Target::Item(Iri::new(item).map_err(|e| PipelineError::Usage(e.to_string()))?)
                }
                (None, Some(user)) => Target::User(user.clone()),
                (None, None) => unreachable!("clap enforces one target"),
            };
            let tsv = pipeline::cmd_recommend(&cfg, &target, &args.config_row, args.top)?;
            print!("{tsv}");
        }
        Command::Evaluate => {
            let reports = pipeline::cmd_evaluate(&cfg)?;
            println!("evaluated\t{}", reports.len());
        }
        Command::Stats => {
            print!("{}", pipeline::cmd_stats(&cfg)?);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => log::LevelFilter::Warn,
        1 => log::LevelFilter::Info,
        _ => log::LevelFilter::Debug,
    };
    env_logger::Builder::new().filter_level(level).init();
    match run(&cli) {
        Ok(()) => match std::io::stdout().flush().context("flushing output") {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: {e:#}");
                ExitCode::from(1)
            }
        },
        Err(e) => {
            let code = e.exit_code() as u8;
            eprintln!("error: {:#}", anyhow::Error::from(e));
            ExitCode::from(code)
        }
    }
}
