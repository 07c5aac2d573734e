//! Experiment configuration file.
//!
//! A flat JSON object whose keys map one-to-one onto [`SystemParams`]. Missing
//! keys take the default scenario values; unknown keys are rejected.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scenario::{
    build_line_scenario, calibrate_tx_snr, db_to_linear, large_scale_coeff, LargeScaleModel,
    SystemParams, NOMINAL_DL_USER_M, NOMINAL_UL_USER_M,
};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub m: usize,
    pub k: usize,
    pub j: usize,
    /// Target median per-antenna receive SNR at the DL user (dB).
    pub snr_dl_db: f64,
    /// Target median per-antenna receive SNR at the UL AP (dB).
    pub snr_ul_db: f64,
    pub sigma_r_sq: f64,
    pub p_max_dbm: f64,
    /// Receiver noise power all powers are normalized to.
    pub noise_floor_dbm: f64,
    pub phase_grid_s: usize,
    pub seed: u64,
    pub d_dl_user_m: f64,
    pub d_ul_user_m: f64,
    pub d_repeater_m: f64,
    pub pathloss_intercept_db: f64,
    pub pathloss_slope_db: f64,
    pub shadow_sigma_db: f64,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        let ls = LargeScaleModel::default();
        Self {
            m: 16,
            k: 1,
            j: 1,
            snr_dl_db: 15.0,
            snr_ul_db: 5.0,
            sigma_r_sq: 1.0,
            p_max_dbm: 38.0,
            noise_floor_dbm: -94.0,
            phase_grid_s: 16,
            seed: 2025,
            d_dl_user_m: NOMINAL_DL_USER_M,
            d_ul_user_m: NOMINAL_UL_USER_M,
            d_repeater_m: -58.0,
            pathloss_intercept_db: ls.intercept_db,
            pathloss_slope_db: ls.slope_db,
            shadow_sigma_db: ls.shadow_sigma_db,
        }
    }
}

impl ExperimentConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_owned(),
            source,
        })?;
        serde_json::from_str(&text).map_err(|e| Error::Format {
            path: path.to_owned(),
            message: e.to_string(),
        })
    }

    pub fn ls_model(&self) -> LargeScaleModel {
        LargeScaleModel {
            intercept_db: self.pathloss_intercept_db,
            slope_db: self.pathloss_slope_db,
            shadow_sigma_db: self.shadow_sigma_db,
        }
    }

    /// Repeater output power limit normalized to the noise floor.
    pub fn p_max(&self) -> f64 {
        db_to_linear(self.p_max_dbm - self.noise_floor_dbm)
    }

    /// Resolves dB targets into calibrated linear parameters.
    ///
    /// The transmit SNRs are set so that the pathloss-only per-antenna SNR
    /// between each AP and a user at the nominal position of its cell hits
    /// the target. Shadowing and small-scale fading are not part of the
    /// calibration.
    pub fn to_params(&self) -> Result<SystemParams> {
        let ls_model = self.ls_model();
        ls_model.validate()?;
        let nominal = build_line_scenario(NOMINAL_DL_USER_M, NOMINAL_UL_USER_M, 0.0);
        let beta_dl = large_scale_coeff(&ls_model, &nominal.ap_dl_pos, &nominal.dl_user_pos[0], None)?;
        let beta_ul = large_scale_coeff(&ls_model, &nominal.ap_ul_pos, &nominal.ul_user_pos[0], None)?;

        let geometry = build_line_scenario(self.d_dl_user_m, self.d_ul_user_m, self.d_repeater_m)
            .with_user_counts(self.k.max(1), self.j.max(1));
        let params = SystemParams {
            m: self.m,
            k: self.k,
            j: self.j,
            rho_d: calibrate_tx_snr(self.snr_dl_db, beta_dl)?,
            rho_u: calibrate_tx_snr(self.snr_ul_db, beta_ul)?,
            sigma_r_sq: self.sigma_r_sq,
            p_max: self.p_max(),
            phase_grid: self.phase_grid_s,
            seed: self.seed,
            geometry,
            ls_model,
        };
        params.validate()?;
        Ok(params)
    }
}
