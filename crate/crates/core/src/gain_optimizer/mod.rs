//! Repeater gain optimization.
//!
//! For fixed beamformers and a fixed phase the SINR is a ratio of quadratics
//! in the amplification `r`, so its maximum over `[0, r_max]` lies at an
//! endpoint or at a root of the derivative numerator. The phase is searched
//! on the grid `2 pi s / S`, and [`alternating_optimize`] alternates this
//! gain step with MR beamformer updates.

mod alternating;
mod poly;

pub use alternating::{alternating_optimize, alternating_optimize_with, AlternatingOutcome, AlternatingSettings};
pub use poly::{
    dl_poly_basis, dl_poly_coeffs, poly_basis, rational_sinr, sinr_derivative_numerator, stationary_points,
    ul_poly_basis, ul_poly_coeffs, DerivativeNumerator, PolyBasis, SinrPolyCoeffs,
};

use std::f64::consts::TAU;

use crate::channels::ChannelSet;
use crate::error::Result;
use crate::link_metrics::{se_from_sinr, Target};
use crate::scenario::SystemParams;
use crate::system_model::{max_amplification, repeater_input_power, BeamformerState, RepeaterGain};

/// Best amplification for one phase.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AmplificationChoice {
    pub r: f64,
    pub sinr: f64,
    pub candidates: usize,
}

/// Maximizes the rational SINR over `r` in `[0, r_max]`.
///
/// Candidates are both endpoints and every stationary point inside the
/// interval. Ties go to the smallest `r`.
pub fn optimize_amplification(c: &SinrPolyCoeffs, r_max: f64) -> Result<AmplificationChoice> {
    let d = sinr_derivative_numerator(c);
    let mut candidates = vec![0.0];
    candidates.extend(
        stationary_points(d.c0, d.c1, d.c2)
            .into_iter()
            .filter(|&r| r > 0.0 && r < r_max),
    );
    if r_max > 0.0 {
        candidates.push(r_max);
    }

    let mut best = AmplificationChoice {
        r: 0.0,
        sinr: rational_sinr(c, 0.0)?,
        candidates: candidates.len(),
    };
    for &r in &candidates[1..] {
        let sinr = rational_sinr(c, r)?;
        if sinr > best.sinr {
            best.r = r;
            best.sinr = sinr;
        }
    }
    Ok(best)
}

/// Optimal repeater gain for fixed beamformers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GainOptResult {
    pub alpha: RepeaterGain,
    pub sinr: f64,
    pub se: f64,
    pub candidates_evaluated: usize,
    /// Index `s` of the chosen phase `2 pi s / S`.
    pub phase_index: usize,
    /// Amplification limit implied by the beamformers the gain was chosen for.
    pub r_max: f64,
}

/// Grid phase `2 pi s / S`.
pub fn grid_phase(s: usize, grid: usize) -> f64 {
    TAU * s as f64 / grid as f64
}

/// Searches the phase grid and, per phase, the optimal amplification under
/// the repeater output power limit.
pub fn optimize_gain(
    ch: &ChannelSet,
    state: &BeamformerState,
    params: &SystemParams,
    target: Target,
) -> Result<GainOptResult> {
    let budget = params.budget();
    let p_in = repeater_input_power(ch, state, budget.rho_d, budget.rho_u);
    let r_max = max_amplification(p_in, budget.sigma_r_sq, params.p_max)?;
    let basis = poly_basis(ch, state, budget, target)?;

    let mut best: Option<(usize, AmplificationChoice)> = None;
    let mut evaluated = 0;
    let grid = params.phase_grid.max(1);
    for s in 0..grid {
        let choice = optimize_amplification(&basis.at_phase(grid_phase(s, grid)), r_max)?;
        evaluated += choice.candidates;
        if best.is_none_or(|(_, b)| choice.sinr > b.sinr) {
            best = Some((s, choice));
        }
    }
    let (s, choice) = best.expect("phase grid is never empty");
    let phi = if choice.r > 0.0 { grid_phase(s, grid) } else { 0.0 };
    Ok(GainOptResult {
        alpha: RepeaterGain::new(choice.r, phi),
        sinr: choice.sinr,
        se: se_from_sinr(choice.sinr)?,
        candidates_evaluated: evaluated,
        phase_index: if choice.r > 0.0 { s } else { 0 },
        r_max,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coeffs(a0: f64, a1: f64, a2: f64, b0: f64, b1: f64, b2: f64) -> SinrPolyCoeffs {
        SinrPolyCoeffs { a0, a1, a2, b0, b1, b2 }
    }

    #[test]
    fn flat_objective_prefers_zero() {
        let c = coeffs(2.0, 0.0, 0.0, 4.0, 0.0, 0.0);
        let got = optimize_amplification(&c, 10.0).unwrap();
        assert_eq!(got.r, 0.0);
        assert_eq!(got.sinr, 0.5);
    }

    #[test]
    fn increasing_objective_hits_boundary() {
        // (1 + r) / 1 is increasing everywhere
        let c = coeffs(1.0, 1.0, 0.0, 1.0, 0.0, 0.0);
        let got = optimize_amplification(&c, 3.0).unwrap();
        assert_eq!(got.r, 3.0);
        assert_eq!(got.sinr, 4.0);
    }

    #[test]
    fn interior_maximum_found() {
        // r / (1 + r^2) peaks at r = 1 with value 1/2
        let c = coeffs(0.0, 1.0, 0.0, 1.0, 0.0, 1.0);
        let got = optimize_amplification(&c, 10.0).unwrap();
        assert!((got.r - 1.0).abs() < 1e-12);
        assert!((got.sinr - 0.5).abs() < 1e-15);
        assert_eq!(got.candidates, 3);
        // interior point outside the feasible range is discarded
        let got = optimize_amplification(&c, 0.5).unwrap();
        assert_eq!(got.r, 0.5);
    }

    #[test]
    fn zero_range_only_origin() {
        let c = coeffs(1.0, 1.0, 0.0, 1.0, 0.0, 0.0);
        let got = optimize_amplification(&c, 0.0).unwrap();
        assert_eq!((got.r, got.candidates), (0.0, 1));
    }

    #[test]
    fn phase_grid_points() {
        assert_eq!(grid_phase(0, 16), 0.0);
        assert!((grid_phase(4, 16) - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
        assert_eq!(grid_phase(0, 1), 0.0);
    }
}
