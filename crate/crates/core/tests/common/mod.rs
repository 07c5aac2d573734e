//! Reference implementations of the signal model, written directly from the
//! received-signal expressions with explicit index loops. They share no code
//! with the library beyond the data types.

#![allow(dead_code, clippy::needless_range_loop)]

use dtdd_repeater::channels::ChannelSet;
use dtdd_repeater::scenario::LinkBudget;
use dtdd_repeater::{BeamformerState, Direction, Target};
use num_complex::Complex64 as C64;

fn zero() -> C64 {
    C64::new(0.0, 0.0)
}

/// DL SINR of user `k`, composite channels built entry by entry.
pub fn oracle_sinr_dl(ch: &ChannelSet, st: &BeamformerState, alpha: C64, b: LinkBudget, k: usize) -> f64 {
    let m = ch.h_d.len();
    let gbar = |kk: usize| -> Vec<C64> { (0..m).map(|i| ch.g_dl[kk][i] + alpha * ch.h_dl[kk] * ch.h_d[i]).collect() };
    let g = gbar(k);
    let gain = |kp: usize| -> f64 {
        let mut s = zero();
        for i in 0..m {
            s += g[i] * st.w[kp][i];
        }
        s.norm_sqr()
    };
    let signal = b.rho_d * st.eta_d[k] * gain(k);
    let mut den = 1.0;
    for kp in 0..st.w.len() {
        if kp != k {
            den += b.rho_d * st.eta_d[kp] * gain(kp);
        }
    }
    for j in 0..ch.h_ul.len() {
        let fbar = ch.f_inter_user[k][j] + alpha * ch.h_dl[k] * ch.h_ul[j];
        den += b.rho_u * st.eta_u[j] * fbar.norm_sqr();
    }
    den += b.sigma_r_sq * (alpha * ch.h_dl[k]).norm_sqr();
    signal / den
}

/// UL SINR of user `j`.
pub fn oracle_sinr_ul(ch: &ChannelSet, st: &BeamformerState, alpha: C64, b: LinkBudget, j: usize) -> f64 {
    let m = ch.h_d.len();
    let v = &st.v[j];
    let proj = |jj: usize| -> f64 {
        let mut s = zero();
        for i in 0..m {
            s += v[i].conj() * (ch.g_ul[jj][i] + alpha * ch.h_ul[jj] * ch.h_u[i]);
        }
        s.norm_sqr()
    };
    let signal = b.rho_u * st.eta_u[j] * proj(j);
    let mut den = 0.0;
    for i in 0..m {
        den += v[i].norm_sqr();
    }
    for jp in 0..st.v.len() {
        if jp != j {
            den += b.rho_u * st.eta_u[jp] * proj(jp);
        }
    }
    for k in 0..st.w.len() {
        let mut s = zero();
        for a in 0..m {
            let mut row = zero();
            for c in 0..m {
                row += (ch.f_inter_ap[[a, c]] + alpha * ch.h_u[a] * ch.h_d[c]) * st.w[k][c];
            }
            s += v[a].conj() * row;
        }
        den += b.rho_d * st.eta_d[k] * s.norm_sqr();
    }
    let mut vh = zero();
    for i in 0..m {
        vh += v[i].conj() * ch.h_u[i];
    }
    den += b.sigma_r_sq * (alpha * vh).norm_sqr();
    signal / den
}

pub fn oracle_sinr(ch: &ChannelSet, st: &BeamformerState, alpha: C64, b: LinkBudget, t: Target) -> f64 {
    match t.direction {
        Direction::Dl => oracle_sinr_dl(ch, st, alpha, b, t.index),
        Direction::Ul => oracle_sinr_ul(ch, st, alpha, b, t.index),
    }
}

/// Repeater input power from its definition as the received signal power.
pub fn oracle_input_power(ch: &ChannelSet, st: &BeamformerState, b: LinkBudget) -> f64 {
    let mut p = 0.0;
    for (k, w) in st.w.iter().enumerate() {
        let mut s = zero();
        for i in 0..w.len() {
            s += ch.h_d[i] * w[i];
        }
        p += b.rho_d * st.eta_d[k] * s.norm_sqr();
    }
    for (j, h) in ch.h_ul.iter().enumerate() {
        p += b.rho_u * st.eta_u[j] * h.norm_sqr();
    }
    p
}

/// SINR at fixed beamformers as a function of the complex gain, with each
/// received component kept as `x + alpha y`. Built once, cheap to evaluate
/// on dense grids.
pub struct AffineSinr {
    signal: (f64, C64, C64),
    interference: Vec<(f64, C64, C64)>,
    noise: f64,
    repeater_noise: f64,
}

impl AffineSinr {
    pub fn new(ch: &ChannelSet, st: &BeamformerState, b: LinkBudget, t: Target) -> Self {
        let one = C64::new(1.0, 0.0);
        let m = ch.h_d.len();
        // every amplitude is affine in alpha: x = value at 0, y = value at 1 minus x
        let affine = |f: &dyn Fn(C64) -> C64| {
            let x = f(zero());
            (x, f(one) - x)
        };
        match t.direction {
            Direction::Dl => {
                let k = t.index;
                let amp = |kp: usize| {
                    move |a: C64| {
                        let mut s = zero();
                        for i in 0..m {
                            s += (ch.g_dl[k][i] + a * ch.h_dl[k] * ch.h_d[i]) * st.w[kp][i];
                        }
                        s
                    }
                };
                let (x, y) = affine(&amp(k));
                let mut interference = Vec::new();
                for kp in 0..st.w.len() {
                    if kp != k {
                        let (x, y) = affine(&amp(kp));
                        interference.push((b.rho_d * st.eta_d[kp], x, y));
                    }
                }
                for j in 0..ch.h_ul.len() {
                    interference.push((b.rho_u * st.eta_u[j], ch.f_inter_user[k][j], ch.h_dl[k] * ch.h_ul[j]));
                }
                Self {
                    signal: (b.rho_d * st.eta_d[k], x, y),
                    interference,
                    noise: 1.0,
                    repeater_noise: b.sigma_r_sq * ch.h_dl[k].norm_sqr(),
                }
            }
            Direction::Ul => {
                let j = t.index;
                let v = &st.v[j];
                let amp = |jp: usize| {
                    move |a: C64| {
                        let mut s = zero();
                        for i in 0..m {
                            s += v[i].conj() * (ch.g_ul[jp][i] + a * ch.h_ul[jp] * ch.h_u[i]);
                        }
                        s
                    }
                };
                let (x, y) = affine(&amp(j));
                let mut interference = Vec::new();
                for jp in 0..st.v.len() {
                    if jp != j {
                        let (x, y) = affine(&amp(jp));
                        interference.push((b.rho_u * st.eta_u[jp], x, y));
                    }
                }
                for k in 0..st.w.len() {
                    let f = |a: C64| {
                        let mut s = zero();
                        for r in 0..m {
                            for c in 0..m {
                                s += v[r].conj() * (ch.f_inter_ap[[r, c]] + a * ch.h_u[r] * ch.h_d[c]) * st.w[k][c];
                            }
                        }
                        s
                    };
                    let (x, y) = affine(&f);
                    interference.push((b.rho_d * st.eta_d[k], x, y));
                }
                let mut vh = zero();
                let mut vv = 0.0;
                for i in 0..m {
                    vh += v[i].conj() * ch.h_u[i];
                    vv += v[i].norm_sqr();
                }
                Self {
                    signal: (b.rho_u * st.eta_u[j], x, y),
                    interference,
                    noise: vv,
                    repeater_noise: b.sigma_r_sq * vh.norm_sqr(),
                }
            }
        }
    }

    pub fn eval(&self, alpha: C64) -> f64 {
        let (p, x, y) = self.signal;
        let mut den = self.noise + self.repeater_noise * alpha.norm_sqr();
        for &(q, x, y) in &self.interference {
            den += q * (x + alpha * y).norm_sqr();
        }
        p * (x + alpha * y).norm_sqr() / den
    }
}

/// Linear-interpolated quantile of sorted data.
pub fn quantile(sorted: &[f64], q: f64) -> f64 {
    let pos = q * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    sorted[lo] + (pos - lo as f64) * (sorted[hi] - sorted[lo])
}
