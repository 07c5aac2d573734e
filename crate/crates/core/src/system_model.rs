//! Composite channels through the repeater, MR beamforming, power control and
//! the repeater output power constraint.

use std::f64::consts::TAU;

use ndarray::{Array1, Array2};
use num_complex::Complex64;

use crate::channels::ChannelSet;
use crate::error::{Error, Result};

/// Complex repeater gain `r * exp(i * phi)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RepeaterGain {
    /// Amplification, non-negative.
    pub r: f64,
    /// Phase shift in `[0, 2pi)`.
    pub phi: f64,
}

impl RepeaterGain {
    pub const OFF: RepeaterGain = RepeaterGain { r: 0.0, phi: 0.0 };

    pub fn new(r: f64, phi: f64) -> Self {
        debug_assert!(r >= 0.0, "negative amplification {r}");
        Self {
            r,
            phi: phi.rem_euclid(TAU),
        }
    }

    pub fn value(&self) -> Complex64 {
        Complex64::from_polar(self.r, self.phi)
    }
}

/// Precoders, combiners and power control coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct BeamformerState {
    pub w: Vec<Array1<Complex64>>,
    pub v: Vec<Array1<Complex64>>,
    pub eta_d: Vec<f64>,
    pub eta_u: Vec<f64>,
}

impl BeamformerState {
    /// `sum_k eta_d[k] * ||w_k||^2`, which must not exceed one.
    pub fn dl_power(&self) -> f64 {
        self.w
            .iter()
            .zip(&self.eta_d)
            .map(|(w, eta)| eta * norm_sqr(w))
            .sum()
    }
}

/// `g_dl[k] + alpha * h_dl[k] * h_d`
pub fn composite_dl_channel(ch: &ChannelSet, k: usize, alpha: RepeaterGain) -> Array1<Complex64> {
    let a = alpha.value() * ch.h_dl[k];
    &ch.g_dl[k] + &ch.h_d.mapv(|x| a * x)
}

/// `g_ul[j] + alpha * h_ul[j] * h_u`
pub fn composite_ul_channel(ch: &ChannelSet, j: usize, alpha: RepeaterGain) -> Array1<Complex64> {
    let a = alpha.value() * ch.h_ul[j];
    &ch.g_ul[j] + &ch.h_u.mapv(|x| a * x)
}

/// `f[k][j] + alpha * h_dl[k] * h_ul[j]`
pub fn composite_inter_user(ch: &ChannelSet, k: usize, j: usize, alpha: RepeaterGain) -> Complex64 {
    ch.f_inter_user[k][j] + alpha.value() * ch.h_dl[k] * ch.h_ul[j]
}

/// `F + alpha * h_u h_d^T` (plain transpose, no conjugation).
pub fn composite_inter_ap(ch: &ChannelSet, alpha: RepeaterGain) -> Array2<Complex64> {
    let a = alpha.value();
    let m = ch.antennas();
    let mut out = ch.f_inter_ap.clone();
    for row in 0..m {
        let hu = a * ch.h_u[row];
        for col in 0..m {
            out[[row, col]] += hu * ch.h_d[col];
        }
    }
    out
}

/// MR precoders `w_k = conj(composite DL channel)` and combiners
/// `v_j = composite UL channel`, unnormalized. Power coefficients are left
/// empty; see [`max_power_control`].
pub fn mr_beamformers(ch: &ChannelSet, alpha: RepeaterGain) -> BeamformerState {
    let w = (0..ch.dl_users())
        .map(|k| composite_dl_channel(ch, k, alpha).mapv(|z| z.conj()))
        .collect();
    let v = (0..ch.ul_users())
        .map(|j| composite_ul_channel(ch, j, alpha))
        .collect();
    BeamformerState {
        w,
        v,
        eta_d: Vec::new(),
        eta_u: Vec::new(),
    }
}

/// Maximal power control: every UL user at full power, the DL budget split
/// evenly so that `eta_d[k] * ||w_k||^2 = 1/K`.
pub fn max_power_control(w: &[Array1<Complex64>], ul_users: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    let users = w.len() as f64;
    let eta_d = w
        .iter()
        .enumerate()
        .map(|(k, wk)| {
            let n = norm_sqr(wk);
            if n > 0.0 {
                Ok(1.0 / (users * n))
            } else {
                Err(Error::ZeroPrecoder(k))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((eta_d, vec![1.0; ul_users]))
}

/// MR beamformers at `alpha` with maximal power control applied.
pub fn mr_state(ch: &ChannelSet, alpha: RepeaterGain) -> Result<BeamformerState> {
    let mut state = mr_beamformers(ch, alpha);
    let (eta_d, eta_u) = max_power_control(&state.w, state.v.len())?;
    state.eta_d = eta_d;
    state.eta_u = eta_u;
    Ok(state)
}

/// Average power received by the repeater. Does not depend on its gain.
pub fn repeater_input_power(ch: &ChannelSet, state: &BeamformerState, rho_d: f64, rho_u: f64) -> f64 {
    let dl: f64 = state
        .w
        .iter()
        .zip(&state.eta_d)
        .map(|(w, eta)| rho_d * eta * ch.h_d.dot(w).norm_sqr())
        .sum();
    let ul: f64 = ch
        .h_ul
        .iter()
        .zip(&state.eta_u)
        .map(|(h, eta)| rho_u * eta * h.norm_sqr())
        .sum();
    dl + ul
}

/// Largest amplification meeting `r^2 (P_in + sigma_r^2) <= P_max`.
pub fn max_amplification(p_in: f64, sigma_r_sq: f64, p_max: f64) -> Result<f64> {
    let total = p_in + sigma_r_sq;
    if total.is_nan() || total <= 0.0 {
        return Err(Error::UnboundedGain);
    }
    Ok((p_max / total).sqrt())
}

pub(crate) fn norm_sqr(x: &Array1<Complex64>) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum()
}

/// `x^H y`
pub(crate) fn dotc(x: &Array1<Complex64>, y: &Array1<Complex64>) -> Complex64 {
    x.iter().zip(y).map(|(a, b)| a.conj() * b).sum()
}
