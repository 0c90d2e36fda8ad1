use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use topicmap::config::PipelineConfig;
use topicmap::corpus::{write_isi, write_jsonl};
use topicmap::pipeline::{self, PipelineError, Stage};
use topicmap::synth;

#[derive(Parser)]
#[command(name = "topicmap", version, about = "Build topic maps from bibliographic records")]
struct Cli {
    /// Pipeline configuration (TOML)
    #[arg(long, short, global = true)]
    config: Option<PathBuf>,
    /// Worker threads (default: all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Output directory, overriding output.dir from the config
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse the inputs and split them into periods
    Ingest,
    /// Extract candidate terms for every period
    Extract,
    /// Detect variant relations between terms
    Graph,
    /// Cluster the term graph
    Cluster,
    /// Write maps and period reports
    Export,
    /// Compare period reports, each with the next
    Compare {
        #[arg(required = true)]
        reports: Vec<PathBuf>,
    },
    /// Run every stage
    Run,
    /// Write a synthetic corpus
    Synth {
        /// Number of random records; without it the two-period demo corpus is written
        #[arg(long)]
        records: Option<usize>,
        #[arg(long, default_value_t = synth::DEMO_SEED)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = SynthFormat::Isi)]
        format: SynthFormat,
        /// Destination file; stdout when omitted
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SynthFormat {
    Isi,
    Jsonl,
}

fn load_config(path: Option<&Path>) -> Result<PipelineConfig, PipelineError> {
    let path = path.ok_or_else(|| PipelineError::new(Stage::Usage, "--config is required for this command"))?;
    PipelineConfig::load(path).map_err(|e| PipelineError::new(Stage::Config, e.to_string()))
}

fn execute(cli: Cli) -> Result<(), PipelineError> {
    let with_config = |f: fn(&PipelineConfig, &Path) -> Result<(), PipelineError>| {
        let cfg = load_config(cli.config.as_deref())?;
        let out = cli.out.clone().unwrap_or_else(|| cfg.output_dir());
        f(&cfg, &out)
    };
    match &cli.command {
        Command::Ingest => with_config(pipeline::stage_ingest),
        Command::Extract => with_config(pipeline::stage_extract),
        Command::Graph => with_config(pipeline::stage_graph),
        Command::Cluster => with_config(pipeline::stage_cluster),
        Command::Export => with_config(pipeline::stage_export),
        Command::Compare { reports } => {
            let out = cli.out.clone().unwrap_or_else(|| PathBuf::from("."));
            for p in pipeline::stage_compare(reports, &out)? {
                println!("{}", p.display());
            }
            Ok(())
        }
        Command::Run => {
            let cfg = load_config(cli.config.as_deref())?;
            let out = cli.out.clone().unwrap_or_else(|| cfg.output_dir());
            let summary = pipeline::run_pipeline(&cfg, &out)?;
            for p in &summary.periods {
                println!(
                    "{}: {} records, {} terms, {} relations, {} clusters ({} shown)",
                    p.label, p.records, p.terms, p.edges, p.clusters, p.displayed
                );
            }
            if summary.unassigned > 0 {
                println!("unassigned: {} records", summary.unassigned);
            }
            println!("wrote {}", out.display());
            Ok(())
        }
        Command::Synth {
            records,
            seed,
            format,
            output,
        } => {
            let recs = match records {
                Some(n) => synth::perf_records(*n, *seed),
                None => synth::demo_records(*seed),
            };
            let text = match format {
                SynthFormat::Isi => write_isi(&recs),
                SynthFormat::Jsonl => write_jsonl(&recs),
            };
            match output {
                Some(path) => std::fs::write(path, text)
                    .map_err(|e| PipelineError::new(Stage::Io, format!("{}: {e}", path.display()))),
                None => {
                    print!("{text}");
                    Ok(())
                }
            }
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if n == 0 {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(Stage::Usage.exit_code() as u8);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(Stage::Usage.exit_code() as u8);
        }
    }
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
