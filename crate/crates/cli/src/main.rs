use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use logcorr_cli::{configure_threads, run, Experiment, ExperimentConfig};
use std::path::PathBuf;

#[derive(Parser)]
#[command(name = "logcorr", version, about = "Reproducible experiments on log-correlated fields")]
struct Cli {
    /// Override the config seed
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output directory (overrides output_path in the config)
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads; falls back to LOGCORR_THREADS, then all cores
    #[arg(long, global = true, env = "LOGCORR_THREADS")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the experiment described by a TOML config file
    Run { config: PathBuf },
    /// List available experiments
    ListExperiments,
    /// Show parameters and output columns of one experiment
    Describe { experiment: String },
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    configure_threads(cli.threads.unwrap_or(0))?;
    match cli.command {
        Command::Run { config } => {
            let text = std::fs::read_to_string(&config).with_context(|| format!("reading {}", config.display()))?;
            let mut cfg = ExperimentConfig::parse(&text).with_context(|| format!("in {}", config.display()))?;
            if let Some(seed) = cli.seed {
                cfg.seed = seed;
            }
            let dir = cli.out.or_else(|| cfg.output_path.clone()).unwrap_or_else(|| PathBuf::from("out"));
            let record = run(&cfg)?;
            let (csv, json) = record.write(&dir)?;
            eprintln!("{} finished in {:.2}s: {} rows -> {}, {}", cfg.experiment, record.runtime_s, record.table.rows.len(), csv.display(), json.display());
        }
        Command::ListExperiments => {
            for e in Experiment::ALL {
                println!("{:<18} {}", e.name(), e.info().summary);
            }
        }
        Command::Describe { experiment } => {
            let e = Experiment::parse(&experiment)?;
            let info = e.info();
            println!("{}\n  {}\n\nparameters:", e.name(), info.summary);
            for p in &info.params {
                let default = match p.default {
                    None => "required".to_string(),
                    Some("") => "optional".to_string(),
                    Some(d) => format!("default {d}"),
                };
                println!("  {:<14} {:<22} {}", p.key, format!("[{default}]"), p.doc);
            }
            println!("\ncolumns: {}", info.columns.join(", "));
        }
    }
    Ok(())
}
