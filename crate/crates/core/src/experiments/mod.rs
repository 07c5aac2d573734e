//! Monte Carlo harness for the repeater position sweep and the SE CDFs.
//!
//! Every trial draws its channels from a substream keyed by `(seed, trial)`,
//! so results are identical for any number of worker threads. All modes
//! compared within a trial share one channel realization.

mod output;

pub use output::{read_cdf_csv, read_sweep_csv, write_cdf, write_sweep, RunMetadata, CDF_HEADER, SWEEP_HEADER};

use rayon::prelude::*;
use serde::Serialize;

use crate::channels::{sample_channel_set, trial_rng, ChannelSet};
use crate::error::{Error, Result};
use crate::gain_optimizer::{alternating_optimize, poly_basis, AlternatingOutcome};
use crate::link_metrics::{se_from_sinr, sinr, Direction, Target};
use crate::scenario::SystemParams;
use crate::system_model::{mr_state, RepeaterGain};

/// The repeater assists the cell it sits in: DL for `d_r < 0`, otherwise UL.
pub fn assisted_direction(d_r: f64) -> Direction {
    if d_r < 0.0 {
        Direction::Dl
    } else {
        Direction::Ul
    }
}

/// Default sweep grid: 75 evenly spaced points on `[-150, 150]` m plus the
/// two highlighted positions -58 m and 55 m.
pub fn default_sweep_positions() -> Vec<f64> {
    let steps = 74;
    let mut d: Vec<f64> = (0..=steps)
        .map(|i| -150.0 + 300.0 * i as f64 / steps as f64)
        .chain([-58.0, 55.0])
        .collect();
    d.sort_by(f64::total_cmp);
    d.dedup();
    d
}

pub fn median(values: &[f64]) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n == 0 {
        f64::NAN
    } else if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

/// One realization at one repeater position.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialRecord {
    pub trial: u64,
    pub d_r: f64,
    pub target: Direction,
    /// SE of DL user 0 with the optimized gain.
    pub se_dl_opt: f64,
    /// SE of DL user 0 with the repeater off.
    pub se_dl_base: f64,
    pub se_ul_opt: f64,
    pub se_ul_base: f64,
    pub alpha_r: f64,
    pub alpha_phi: f64,
    pub iterations: usize,
    pub converged: bool,
}

impl TrialRecord {
    pub fn target_gain(&self) -> (f64, f64) {
        match self.target {
            Direction::Dl => (self.se_dl_opt, self.se_dl_base),
            Direction::Ul => (self.se_ul_opt, self.se_ul_base),
        }
    }
}

fn realization(params: &SystemParams, trial: u64) -> Result<ChannelSet> {
    sample_channel_set(params, &mut trial_rng(params.seed, trial))
}

/// SE of both user-0 links at the optimized operating point and with the
/// repeater off.
fn both_directions(ch: &ChannelSet, params: &SystemParams, outcome: &AlternatingOutcome) -> Result<[f64; 4]> {
    let budget = params.budget();
    let off = mr_state(ch, RepeaterGain::OFF)?;
    let mut out = [0.0; 4];
    for (i, target) in [Target::dl(0), Target::ul(0)].into_iter().enumerate() {
        let opt = sinr(ch, &outcome.state, outcome.result.alpha, budget, target)?;
        let basis = poly_basis(ch, &off, budget, target)?;
        out[2 * i] = se_from_sinr(opt)?;
        out[2 * i + 1] = se_from_sinr(basis.a0 / basis.b0)?;
    }
    Ok(out)
}

/// Runs the alternating optimizer for one realization with the repeater at
/// `d_r`, targeting user 0 of `direction`.
pub fn run_single(params: &SystemParams, d_r: f64, direction: Direction, trial: u64) -> Result<TrialRecord> {
    let params = params.with_repeater_at(d_r);
    let ch = realization(&params, trial)?;
    let target = Target {
        direction,
        index: 0,
    };
    let outcome = alternating_optimize(&ch, &params, target)?;
    let [se_dl_opt, se_dl_base, se_ul_opt, se_ul_base] = both_directions(&ch, &params, &outcome)?;
    let mut record = TrialRecord {
        trial,
        d_r,
        target: direction,
        se_dl_opt,
        se_dl_base,
        se_ul_opt,
        se_ul_base,
        alpha_r: outcome.result.alpha.r,
        alpha_phi: outcome.result.alpha.phi,
        iterations: outcome.iterations,
        converged: outcome.converged,
    };
    // the optimizer's own scoring for the target, bit-for-bit
    match direction {
        Direction::Dl => {
            record.se_dl_opt = outcome.result.se;
            record.se_dl_base = outcome.baseline_se();
        }
        Direction::Ul => {
            record.se_ul_opt = outcome.result.se;
            record.se_ul_base = outcome.baseline_se();
        }
    }
    Ok(record)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepPoint {
    pub d_r: f64,
    pub median_se_dl_opt: f64,
    pub median_se_dl_base: f64,
    pub median_se_ul_opt: f64,
    pub median_se_ul_base: f64,
    pub median_iterations: f64,
}

impl SweepPoint {
    /// Relative median SE gain of the DL user over the repeater-off baseline.
    pub fn dl_gain(&self) -> f64 {
        self.median_se_dl_opt / self.median_se_dl_base - 1.0
    }

    pub fn ul_gain(&self) -> f64 {
        self.median_se_ul_opt / self.median_se_ul_base - 1.0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepResult {
    pub points: Vec<SweepPoint>,
    pub trials: usize,
    pub seed: u64,
}

impl SweepResult {
    pub fn repeater_positions(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.d_r).collect()
    }
}

/// Median SEs per repeater position over `trials` paired realizations.
pub fn run_position_sweep(params: &SystemParams, positions: &[f64], trials: usize) -> Result<SweepResult> {
    if trials == 0 {
        return Err(Error::NoTrials);
    }
    params.validate()?;
    let points = positions
        .iter()
        .map(|&d_r| {
            let direction = assisted_direction(d_r);
            let records = (0..trials as u64)
                .into_par_iter()
                .map(|t| run_single(params, d_r, direction, t))
                .collect::<Result<Vec<_>>>()?;
            let col = |f: fn(&TrialRecord) -> f64| median(&records.iter().map(f).collect::<Vec<_>>());
            Ok(SweepPoint {
                d_r,
                median_se_dl_opt: col(|r| r.se_dl_opt),
                median_se_dl_base: col(|r| r.se_dl_base),
                median_se_ul_opt: col(|r| r.se_ul_opt),
                median_se_ul_base: col(|r| r.se_ul_base),
                median_iterations: col(|r| r.iterations as f64),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepResult {
        points,
        trials,
        seed: params.seed,
    })
}

/// Target SE of one realization under the three gain modes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CdfTrial {
    /// Amplification and phase optimized on the full phase grid: the better
    /// of the alternating search started with the repeater off and the
    /// real-valued solution, which is a feasible complex gain with zero phase.
    pub complex: f64,
    /// Full-grid alternating search from the repeater-off start alone.
    pub complex_from_off: f64,
    /// Amplification only, phase fixed to zero.
    pub real: f64,
    /// Repeater off.
    pub none: f64,
    pub iterations_complex: usize,
    pub iterations_real: usize,
    pub converged_complex: bool,
    pub converged_real: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CdfResult {
    pub direction: Direction,
    pub d_r: f64,
    /// Per-trial records in trial order.
    pub trials: Vec<CdfTrial>,
    pub se_complex: Vec<f64>,
    pub se_real: Vec<f64>,
    pub se_none: Vec<f64>,
}

fn sorted(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(f64::total_cmp);
    v
}

/// SE samples of user 0 of `direction` under complex-valued, real-valued and
/// no repeater gain, on shared realizations.
pub fn run_cdf(params: &SystemParams, d_r: f64, direction: Direction, trials: usize) -> Result<CdfResult> {
    if trials == 0 {
        return Err(Error::NoTrials);
    }
    params.validate()?;
    let complex_params = params.with_repeater_at(d_r);
    let real_params = complex_params.with_phase_grid(1);
    let target = Target {
        direction,
        index: 0,
    };
    let records = (0..trials as u64)
        .into_par_iter()
        .map(|t| {
            let ch = realization(&complex_params, t)?;
            let complex = alternating_optimize(&ch, &complex_params, target)?;
            let real = alternating_optimize(&ch, &real_params, target)?;
            Ok(CdfTrial {
                complex: complex.result.se.max(real.result.se),
                complex_from_off: complex.result.se,
                real: real.result.se,
                none: complex.baseline_se(),
                iterations_complex: complex.iterations,
                iterations_real: real.iterations,
                converged_complex: complex.converged,
                converged_real: real.converged,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CdfResult {
        direction,
        d_r,
        se_complex: sorted(records.iter().map(|r| r.complex).collect()),
        se_real: sorted(records.iter().map(|r| r.real).collect()),
        se_none: sorted(records.iter().map(|r| r.none).collect()),
        trials: records,
    })
}
