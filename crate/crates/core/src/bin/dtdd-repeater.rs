//! Command line front end for the repeater experiments.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use dtdd_repeater::channels::{sample_channel_set, trial_rng};
use dtdd_repeater::experiments::{
    assisted_direction, default_sweep_positions, run_cdf, run_position_sweep, run_single, write_cdf, write_sweep,
    RunMetadata,
};
use dtdd_repeater::{Direction, ExperimentConfig, Result};

#[derive(Parser, Debug)]
#[command(name = "dtdd-repeater", version, about = "Repeater gain experiments for two-cell dynamic TDD")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Common {
    /// JSON experiment configuration; flags override its values
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    /// Number of phases S in the grid 2*pi*s/S
    #[arg(long)]
    phase_grid: Option<usize>,
    /// Worker threads (default: all cores); results do not depend on this
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Median SEs over a grid of repeater positions
    Sweep {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        /// Repeat to give explicit positions (m) instead of the default grid
        #[arg(long = "d-r", allow_negative_numbers = true)]
        d_r: Vec<f64>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Targeted-user SE samples with complex, real and no repeater gain
    Cdf {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long = "d-r", allow_negative_numbers = true)]
        d_r: Option<f64>,
        /// Defaults to the cell the repeater is located in
        #[arg(long, value_enum)]
        direction: Option<Dir>,
        #[arg(long)]
        out: PathBuf,
    },
    /// One realization, printed as JSON
    Single {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 0)]
        trial: u64,
        #[arg(long = "d-r", allow_negative_numbers = true)]
        d_r: Option<f64>,
        #[arg(long, value_enum)]
        direction: Option<Dir>,
        /// Also write the sampled channels to this JSON file
        #[arg(long)]
        dump_channels: Option<PathBuf>,
        /// Write the record here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Dir {
    Dl,
    Ul,
}

impl From<Dir> for Direction {
    fn from(d: Dir) -> Self {
        match d {
            Dir::Dl => Direction::Dl,
            Dir::Ul => Direction::Ul,
        }
    }
}

fn load_config(common: &Common, d_r: Option<f64>) -> Result<ExperimentConfig> {
    let mut cfg = match &common.config {
        Some(path) => ExperimentConfig::load(path)?,
        None => ExperimentConfig::default(),
    };
    if let Some(seed) = common.seed {
        cfg.seed = seed;
    }
    if let Some(s) = common.phase_grid {
        cfg.phase_grid_s = s;
    }
    if let Some(d) = d_r {
        cfg.d_repeater_m = d;
    }
    Ok(cfg)
}

fn set_threads(common: &Common) -> Result<()> {
    if let Some(n) = common.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| dtdd_repeater::Error::InvalidParam(format!("thread pool: {e}")))?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Sweep {
            common,
            trials,
            d_r,
            out,
        } => {
            set_threads(&common)?;
            let cfg = load_config(&common, None)?;
            let params = cfg.to_params()?;
            let positions = if d_r.is_empty() { default_sweep_positions() } else { d_r };
            let result = run_position_sweep(&params, &positions, trials)?;
            write_sweep(&result, &out, &RunMetadata::new("sweep", trials, &params, Some(&cfg)))?;
            eprintln!("wrote {} positions to {}", result.points.len(), out.display());
        }
        Command::Cdf {
            common,
            trials,
            d_r,
            direction,
            out,
        } => {
            set_threads(&common)?;
            let cfg = load_config(&common, d_r)?;
            let params = cfg.to_params()?;
            let d_r = cfg.d_repeater_m;
            let direction = direction.map_or_else(|| assisted_direction(d_r), Direction::from);
            let result = run_cdf(&params, d_r, direction, trials)?;
            write_cdf(&result, &out, &RunMetadata::new("cdf", trials, &params, Some(&cfg)))?;
            eprintln!("wrote {trials} {direction} samples at d_r = {d_r} m to {}", out.display());
        }
        Command::Single {
            common,
            trial,
            d_r,
            direction,
            dump_channels,
            out,
        } => {
            let cfg = load_config(&common, d_r)?;
            let params = cfg.to_params()?;
            let d_r = cfg.d_repeater_m;
            let direction = direction.map_or_else(|| assisted_direction(d_r), Direction::from);
            let record = run_single(&params, d_r, direction, trial)?;
            if let Some(path) = dump_channels {
                let ch = sample_channel_set(&params, &mut trial_rng(params.seed, trial))?;
                ch.dump_json(&path)?;
            }
            let text = serde_json::to_string_pretty(&record).expect("record serializes");
            match out {
                Some(path) => {
                    std::fs::write(&path, text + "\n").map_err(|source| dtdd_repeater::Error::Io { path, source })?
                }
                None => println!("{text}"),
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
