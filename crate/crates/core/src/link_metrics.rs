//! Closed-form achievable SINR and SE of every DL and UL user.
//!
//! Both expressions treat the repeater-forwarded noise and all cross-link
//! interference as effective noise, with perfect channel knowledge.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::channels::ChannelSet;
use crate::error::{Error, Result};
use crate::scenario::LinkBudget;
use crate::system_model::{
    composite_dl_channel, composite_inter_ap, composite_inter_user, composite_ul_channel, dotc,
    norm_sqr, BeamformerState, RepeaterGain,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Dl,
    Ul,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Dl => "dl",
            Direction::Ul => "ul",
        })
    }
}

/// The user whose SE is being evaluated or optimized.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Target {
    pub direction: Direction,
    pub index: usize,
}

impl Target {
    pub const fn dl(index: usize) -> Self {
        Self {
            direction: Direction::Dl,
            index,
        }
    }

    pub const fn ul(index: usize) -> Self {
        Self {
            direction: Direction::Ul,
            index,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkReport {
    pub sinr: f64,
    pub se: f64,
    pub direction: Direction,
    pub user_index: usize,
}

/// SINR of DL user `k`.
pub fn sinr_dl(
    ch: &ChannelSet,
    state: &BeamformerState,
    alpha: RepeaterGain,
    budget: LinkBudget,
    k: usize,
) -> Result<f64> {
    check_index("DL user", k, ch.dl_users())?;
    let g = composite_dl_channel(ch, k, alpha);
    let received = |kp: usize| budget.rho_d * state.eta_d[kp] * g.dot(&state.w[kp]).norm_sqr();

    let signal = received(k);
    let multi_user: f64 = (0..ch.dl_users()).filter(|&kp| kp != k).map(received).sum();
    let inter_user: f64 = (0..ch.ul_users())
        .map(|j| budget.rho_u * state.eta_u[j] * composite_inter_user(ch, k, j, alpha).norm_sqr())
        .sum();
    let repeater_noise = budget.sigma_r_sq * (alpha.value() * ch.h_dl[k]).norm_sqr();
    Ok(signal / (multi_user + inter_user + repeater_noise + 1.0))
}

/// SINR of UL user `j` after combining with `v_j`.
pub fn sinr_ul(
    ch: &ChannelSet,
    state: &BeamformerState,
    alpha: RepeaterGain,
    budget: LinkBudget,
    j: usize,
) -> Result<f64> {
    check_index("UL user", j, ch.ul_users())?;
    let v = &state.v[j];
    let combiner_noise = norm_sqr(v);
    if combiner_noise.is_nan() || combiner_noise <= 0.0 {
        return Err(Error::ZeroCombiner(j));
    }
    let received = |jp: usize| {
        budget.rho_u * state.eta_u[jp] * dotc(v, &composite_ul_channel(ch, jp, alpha)).norm_sqr()
    };

    let signal = received(j);
    let multi_user: f64 = (0..ch.ul_users()).filter(|&jp| jp != j).map(received).sum();
    let f = composite_inter_ap(ch, alpha);
    let inter_ap: f64 = state
        .w
        .iter()
        .zip(&state.eta_d)
        .map(|(w, eta)| budget.rho_d * eta * dotc(v, &f.dot(w)).norm_sqr())
        .sum();
    let repeater_noise = budget.sigma_r_sq * (alpha.value() * dotc(v, &ch.h_u)).norm_sqr();
    Ok(signal / (multi_user + inter_ap + repeater_noise + combiner_noise))
}

pub fn sinr(
    ch: &ChannelSet,
    state: &BeamformerState,
    alpha: RepeaterGain,
    budget: LinkBudget,
    target: Target,
) -> Result<f64> {
    match target.direction {
        Direction::Dl => sinr_dl(ch, state, alpha, budget, target.index),
        Direction::Ul => sinr_ul(ch, state, alpha, budget, target.index),
    }
}

/// `log2(1 + sinr)` in bits/s/Hz.
pub fn se_from_sinr(sinr: f64) -> Result<f64> {
    if sinr.is_nan() || sinr < 0.0 {
        return Err(Error::NegativeSinr(sinr));
    }
    Ok((1.0 + sinr).log2())
}

pub fn link_report(
    ch: &ChannelSet,
    state: &BeamformerState,
    alpha: RepeaterGain,
    budget: LinkBudget,
    target: Target,
) -> Result<LinkReport> {
    let sinr = sinr(ch, state, alpha, budget, target)?;
    Ok(LinkReport {
        sinr,
        se: se_from_sinr(sinr)?,
        direction: target.direction,
        user_index: target.index,
    })
}

pub(crate) fn check_index(kind: &'static str, index: usize, count: usize) -> Result<()> {
    if index < count {
        Ok(())
    } else {
        Err(Error::IndexOutOfRange { kind, index, count })
    }
}
