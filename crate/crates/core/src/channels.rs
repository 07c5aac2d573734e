//! I.i.d. Rayleigh fading realizations of every link in the network.

use std::fs;
use std::path::Path;

use ndarray::{Array1, Array2};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scenario::{large_scale_coeff, SystemParams};

/// RNG substream for one Monte Carlo trial.
///
/// The stream depends only on `(seed, trial)`, so results do not depend on
/// how trials are scheduled across workers.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha12Rng {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Large-scale coefficient of every link, shadowing included.
#[derive(Debug, Clone, PartialEq)]
pub struct LinkGains {
    pub g_dl: Vec<f64>,
    pub g_ul: Vec<f64>,
    pub h_d: f64,
    pub h_u: f64,
    pub h_dl: Vec<f64>,
    pub h_ul: Vec<f64>,
    pub f_inter_ap: f64,
    /// Indexed `[k][j]`.
    pub f_inter_user: Vec<Vec<f64>>,
}

impl LinkGains {
    /// Evaluates the pathloss of every link and draws one independent
    /// shadowing sample per link.
    pub fn draw<R: Rng + ?Sized>(params: &SystemParams, rng: &mut R) -> Result<Self> {
        let geo = &params.geometry;
        let model = &params.ls_model;
        let shadowed = model.shadow_sigma_db > 0.0;
        let mut beta = |a, b| {
            let z = if shadowed {
                Some(rng.sample::<f64, _>(StandardNormal))
            } else {
                None
            };
            large_scale_coeff(model, a, b, z)
        };

        let g_dl = geo
            .dl_user_pos
            .iter()
            .map(|u| beta(&geo.ap_dl_pos, u))
            .collect::<Result<Vec<_>>>()?;
        let g_ul = geo
            .ul_user_pos
            .iter()
            .map(|u| beta(&geo.ap_ul_pos, u))
            .collect::<Result<Vec<_>>>()?;
        let h_d = beta(&geo.ap_dl_pos, &geo.repeater_pos)?;
        let h_u = beta(&geo.ap_ul_pos, &geo.repeater_pos)?;
        let h_dl = geo
            .dl_user_pos
            .iter()
            .map(|u| beta(&geo.repeater_pos, u))
            .collect::<Result<Vec<_>>>()?;
        let h_ul = geo
            .ul_user_pos
            .iter()
            .map(|u| beta(&geo.repeater_pos, u))
            .collect::<Result<Vec<_>>>()?;
        let f_inter_ap = beta(&geo.ap_dl_pos, &geo.ap_ul_pos)?;
        let f_inter_user = geo
            .dl_user_pos
            .iter()
            .map(|dk| {
                geo.ul_user_pos
                    .iter()
                    .map(|uj| beta(dk, uj))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;

        Ok(Self {
            g_dl,
            g_ul,
            h_d,
            h_u,
            h_dl,
            h_ul,
            f_inter_ap,
            f_inter_user,
        })
    }
}

/// One realization of all channels.
///
/// Naming follows the link endpoints: `g_*` are direct AP-user channels,
/// `h_*` involve the repeater, `f_*` are cross-link interference channels.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelSet {
    /// DL AP to DL user `k`, length M.
    pub g_dl: Vec<Array1<Complex64>>,
    /// UL user `j` to UL AP, length M.
    pub g_ul: Vec<Array1<Complex64>>,
    /// DL AP to repeater.
    pub h_d: Array1<Complex64>,
    /// Repeater to UL AP.
    pub h_u: Array1<Complex64>,
    /// Repeater to DL user `k`.
    pub h_dl: Vec<Complex64>,
    /// UL user `j` to repeater.
    pub h_ul: Vec<Complex64>,
    /// DL AP to UL AP, M x M (rows: UL AP antennas).
    pub f_inter_ap: Array2<Complex64>,
    /// UL user `j` to DL user `k`, indexed `[k][j]`.
    pub f_inter_user: Vec<Vec<Complex64>>,
}

impl ChannelSet {
    pub fn antennas(&self) -> usize {
        self.h_d.len()
    }

    pub fn dl_users(&self) -> usize {
        self.g_dl.len()
    }

    pub fn ul_users(&self) -> usize {
        self.g_ul.len()
    }

    /// Draws fading for the given large-scale coefficients.
    pub fn sample<R: Rng + ?Sized>(gains: &LinkGains, m: usize, rng: &mut R) -> Self {
        let g_dl = gains.g_dl.iter().map(|&b| cn_vector(m, b, rng)).collect();
        let g_ul = gains.g_ul.iter().map(|&b| cn_vector(m, b, rng)).collect();
        let h_d = cn_vector(m, gains.h_d, rng);
        let h_u = cn_vector(m, gains.h_u, rng);
        let h_dl = gains.h_dl.iter().map(|&b| cn_scalar(b, rng)).collect();
        let h_ul = gains.h_ul.iter().map(|&b| cn_scalar(b, rng)).collect();
        let f_inter_ap = Array2::from_shape_simple_fn((m, m), || cn_scalar(gains.f_inter_ap, rng));
        let f_inter_user = gains
            .f_inter_user
            .iter()
            .map(|row| row.iter().map(|&b| cn_scalar(b, rng)).collect())
            .collect();
        Self {
            g_dl,
            g_ul,
            h_d,
            h_u,
            h_dl,
            h_ul,
            f_inter_ap,
            f_inter_user,
        }
    }

    /// Writes the realization as JSON, complex entries as `[re, im]` pairs.
    pub fn dump_json(&self, path: &Path) -> Result<()> {
        let text = serde_json::to_string_pretty(&ChannelDump::from(self)).map_err(|e| Error::Format {
            path: path.to_owned(),
            message: e.to_string(),
        })?;
        fs::write(path, text).map_err(|source| Error::Io {
            path: path.to_owned(),
            source,
        })
    }
}

/// Samples one channel realization: shadowing first, then fading, both from
/// `rng`.
pub fn sample_channel_set<R: Rng + ?Sized>(params: &SystemParams, rng: &mut R) -> Result<ChannelSet> {
    let gains = LinkGains::draw(params, rng)?;
    Ok(ChannelSet::sample(&gains, params.m, rng))
}

/// Circularly-symmetric complex Gaussian with variance `beta`.
pub fn cn_scalar<R: Rng + ?Sized>(beta: f64, rng: &mut R) -> Complex64 {
    let s = (beta / 2.0).sqrt();
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(s * re, s * im)
}

fn cn_vector<R: Rng + ?Sized>(m: usize, beta: f64, rng: &mut R) -> Array1<Complex64> {
    Array1::from_shape_simple_fn(m, || cn_scalar(beta, rng))
}

type Pair = [f64; 2];

#[derive(Serialize)]
struct ChannelDump {
    g_dl: Vec<Vec<Pair>>,
    g_ul: Vec<Vec<Pair>>,
    h_d: Vec<Pair>,
    h_u: Vec<Pair>,
    h_dl: Vec<Pair>,
    h_ul: Vec<Pair>,
    f_inter_ap: Vec<Vec<Pair>>,
    f_inter_user: Vec<Vec<Pair>>,
}

fn pair(z: &Complex64) -> Pair {
    [z.re, z.im]
}

fn pairs<'a>(it: impl IntoIterator<Item = &'a Complex64>) -> Vec<Pair> {
    it.into_iter().map(pair).collect()
}

impl From<&ChannelSet> for ChannelDump {
    fn from(ch: &ChannelSet) -> Self {
        Self {
            g_dl: ch.g_dl.iter().map(pairs).collect(),
            g_ul: ch.g_ul.iter().map(pairs).collect(),
            h_d: pairs(&ch.h_d),
            h_u: pairs(&ch.h_u),
            h_dl: pairs(&ch.h_dl),
            h_ul: pairs(&ch.h_ul),
            f_inter_ap: ch.f_inter_ap.rows().into_iter().map(pairs).collect(),
            f_inter_user: ch.f_inter_user.iter().map(pairs).collect(),
        }
    }
}
