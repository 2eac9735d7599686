//! Declarative experiment runner over the `logcorr` library.

pub mod config;
pub mod experiments;
pub mod output;

pub use config::{Experiment, ExperimentConfig};
pub use experiments::{run_experiment, Cell, ResultTable};
pub use output::RunRecord;

use std::time::Instant;

pub fn run(config: &ExperimentConfig) -> anyhow::Result<RunRecord> {
    let start = Instant::now();
    let table = run_experiment(config)?;
    Ok(RunRecord { config: config.clone(), version: output::VERSION, runtime_s: start.elapsed().as_secs_f64(), table })
}

/// Sets the global thread pool size; 0 leaves the rayon default (all cores).
pub fn configure_threads(threads: usize) -> anyhow::Result<()> {
    if threads > 0 {
        rayon::ThreadPoolBuilder::new().num_threads(threads).build_global()?;
    }
    Ok(())
}
