use crate::channels::ChannelSet;
use crate::error::Result;
use crate::link_metrics::{se_from_sinr, Target};
use crate::scenario::SystemParams;
use crate::system_model::{mr_state, BeamformerState, RepeaterGain};

use super::{optimize_gain, poly_basis, GainOptResult};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlternatingSettings {
    /// Hard cap on gain/beamformer rounds.
    pub max_iter: usize,
    /// Stop once the SE gain of a round falls below this (bits/s/Hz).
    pub tolerance: f64,
}

impl Default for AlternatingSettings {
    fn default() -> Self {
        Self {
            max_iter: 50,
            tolerance: 1e-5,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AlternatingOutcome {
    /// Best gain found, with the SINR/SE it achieves together with `state`.
    pub result: GainOptResult,
    /// Beamformers the returned gain was optimized against.
    pub state: BeamformerState,
    /// Target SE per round; entry 0 is the repeater-off starting point.
    pub se_trace: Vec<f64>,
    /// Index into `se_trace` of the returned point.
    pub best_index: usize,
    /// Gain optimization rounds performed.
    pub iterations: usize,
    pub converged: bool,
}

impl AlternatingOutcome {
    /// SE with the repeater switched off, MR beamformers.
    pub fn baseline_se(&self) -> f64 {
        self.se_trace[0]
    }
}

pub fn alternating_optimize(ch: &ChannelSet, params: &SystemParams, target: Target) -> Result<AlternatingOutcome> {
    alternating_optimize_with(ch, params, target, AlternatingSettings::default())
}

/// Alternates the phase-grid gain search with MR beamformer updates.
///
/// Starts from the repeater switched off. Round `n` optimizes the gain for
/// the beamformers of round `n - 1` and scores the round by that optimized
/// SE, so every scored (gain, beamformer) pair meets the output power
/// limit. The beamformers are then recomputed for the new gain. The loop
/// stops when a round improves on the best SE by less than the tolerance,
/// when a round is worse than the best so far, or at `max_iter`. The best
/// round seen is returned.
pub fn alternating_optimize_with(
    ch: &ChannelSet,
    params: &SystemParams,
    target: Target,
    settings: AlternatingSettings,
) -> Result<AlternatingOutcome> {
    let budget = params.budget();
    let mut state = mr_state(ch, RepeaterGain::OFF)?;
    let basis = poly_basis(ch, &state, budget, target)?;
    let baseline_sinr = basis.a0 / basis.b0;
    let baseline_se = se_from_sinr(baseline_sinr)?;

    let mut best = AlternatingOutcome {
        result: GainOptResult {
            alpha: RepeaterGain::OFF,
            sinr: baseline_sinr,
            se: baseline_se,
            candidates_evaluated: 0,
            phase_index: 0,
            r_max: f64::NAN,
        },
        state: state.clone(),
        se_trace: vec![baseline_se],
        best_index: 0,
        iterations: 0,
        converged: false,
    };

    for n in 1..=settings.max_iter {
        let step = optimize_gain(ch, &state, params, target)?;
        best.iterations = n;
        best.se_trace.push(step.se);
        if step.se < best.result.se {
            best.converged = true;
            break;
        }
        let improvement = step.se - best.result.se;
        best.result = step;
        best.best_index = n;
        if improvement < settings.tolerance {
            best.state = state;
            best.converged = true;
            return Ok(best);
        }
        let next = mr_state(ch, step.alpha)?;
        best.state = std::mem::replace(&mut state, next);
    }
    Ok(best)
}
