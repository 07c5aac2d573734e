//! Two-cell line topology, large-scale fading and transmit SNR calibration.
//!
//! Positions are measured along a single horizontal line between the two APs,
//! with `d = 0` at the cell border. The DL AP sits at `d = -100 m` and the UL
//! AP at `d = +100 m`. Every node type has a fixed elevation, so colocated
//! nodes of different types still have a strictly positive 3D distance.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Horizontal distance from each AP to the cell border.
pub const AP_OFFSET_M: f64 = 100.0;
pub const AP_ELEVATION_M: f64 = 10.0;
pub const REPEATER_ELEVATION_M: f64 = 5.0;
pub const USER_ELEVATION_M: f64 = 1.0;

/// Nominal user positions used for SNR calibration.
pub const NOMINAL_DL_USER_M: f64 = -50.0;
pub const NOMINAL_UL_USER_M: f64 = 50.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Point3 {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn distance(&self, other: &Point3) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        let dz = self.z - other.z;
        (dx * dx + dy * dy + dz * dz).sqrt()
    }
}

/// Positions of every node in the network.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Geometry {
    pub ap_dl_pos: Point3,
    pub ap_ul_pos: Point3,
    pub dl_user_pos: Vec<Point3>,
    pub ul_user_pos: Vec<Point3>,
    pub repeater_pos: Point3,
}

impl Geometry {
    /// Places `k` DL users and `j` UL users at the positions of the first
    /// user of each kind. Users still see independent fading and shadowing.
    pub fn with_user_counts(mut self, k: usize, j: usize) -> Self {
        let dl = self.dl_user_pos[0];
        let ul = self.ul_user_pos[0];
        self.dl_user_pos = vec![dl; k];
        self.ul_user_pos = vec![ul; j];
        self
    }

    /// Moves the repeater along the line, keeping its elevation.
    pub fn with_repeater_at(mut self, d_repeater: f64) -> Self {
        self.repeater_pos = Point3::new(d_repeater, 0.0, REPEATER_ELEVATION_M);
        self
    }
}

/// Builds the single-DL-user, single-UL-user line scenario.
pub fn build_line_scenario(d_dl_user: f64, d_ul_user: f64, d_repeater: f64) -> Geometry {
    Geometry {
        ap_dl_pos: Point3::new(-AP_OFFSET_M, 0.0, AP_ELEVATION_M),
        ap_ul_pos: Point3::new(AP_OFFSET_M, 0.0, AP_ELEVATION_M),
        dl_user_pos: vec![Point3::new(d_dl_user, 0.0, USER_ELEVATION_M)],
        ul_user_pos: vec![Point3::new(d_ul_user, 0.0, USER_ELEVATION_M)],
        repeater_pos: Point3::new(d_repeater, 0.0, REPEATER_ELEVATION_M),
    }
}

/// Log-distance pathloss with optional log-normal shadowing.
///
/// `beta_dB = intercept_db - slope_db * log10(d) + shadow_sigma_db * z`,
/// where `d` is the 3D distance in metres and `z` a standard normal draw.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LargeScaleModel {
    pub intercept_db: f64,
    pub slope_db: f64,
    pub shadow_sigma_db: f64,
}

impl Default for LargeScaleModel {
    /// Urban Microcell constants with 4 dB shadowing.
    fn default() -> Self {
        Self {
            intercept_db: -30.5,
            slope_db: 36.7,
            shadow_sigma_db: 4.0,
        }
    }
}

impl LargeScaleModel {
    pub fn without_shadowing(self) -> Self {
        Self {
            shadow_sigma_db: 0.0,
            ..self
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.slope_db.is_nan() || self.slope_db <= 0.0 {
            return Err(Error::InvalidParam(format!(
                "pathloss slope must be positive, got {}",
                self.slope_db
            )));
        }
        if self.shadow_sigma_db.is_nan() || self.shadow_sigma_db < 0.0 {
            return Err(Error::InvalidParam(format!(
                "shadow sigma must be non-negative, got {}",
                self.shadow_sigma_db
            )));
        }
        if !self.intercept_db.is_finite() {
            return Err(Error::InvalidParam("pathloss intercept must be finite".into()));
        }
        Ok(())
    }

    /// Pathloss in dB (negative) at a given 3D distance, without shadowing.
    pub fn pathloss_db(&self, distance: f64) -> f64 {
        self.intercept_db - self.slope_db * distance.log10()
    }
}

/// Linear large-scale coefficient of the link between `a` and `b`.
///
/// `shadow_draw` is a standard normal sample; `None` disables shadowing for
/// this evaluation.
pub fn large_scale_coeff(
    model: &LargeScaleModel,
    a: &Point3,
    b: &Point3,
    shadow_draw: Option<f64>,
) -> Result<f64> {
    let dist = a.distance(b);
    if dist <= 0.0 {
        return Err(Error::ZeroDistance);
    }
    let shadow = shadow_draw.map_or(0.0, |z| model.shadow_sigma_db * z);
    Ok(10f64.powf((model.pathloss_db(dist) + shadow) / 10.0))
}

/// Transmit SNR such that `rho * beta_ref` equals the target receive SNR.
pub fn calibrate_tx_snr(target_median_snr_db: f64, beta_ref: f64) -> Result<f64> {
    if beta_ref.is_nan() || beta_ref <= 0.0 {
        return Err(Error::NonPositiveBeta(beta_ref));
    }
    Ok(10f64.powf(target_median_snr_db / 10.0) / beta_ref)
}

pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

/// Complete scalar configuration of one simulated network.
///
/// Powers are normalized to the receiver noise power.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SystemParams {
    /// AP antenna count.
    pub m: usize,
    /// DL user count.
    pub k: usize,
    /// UL user count.
    pub j: usize,
    pub rho_d: f64,
    pub rho_u: f64,
    pub sigma_r_sq: f64,
    pub p_max: f64,
    /// Number of repeater phase samples `S`.
    pub phase_grid: usize,
    pub seed: u64,
    pub geometry: Geometry,
    pub ls_model: LargeScaleModel,
}

impl SystemParams {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParam(msg));
        if self.m == 0 || self.k == 0 || self.j == 0 {
            return bad(format!(
                "m, k, j must all be at least 1 (got {}, {}, {})",
                self.m, self.k, self.j
            ));
        }
        if self.phase_grid == 0 {
            return bad("phase grid size must be at least 1".into());
        }
        if !(self.rho_d > 0.0 && self.rho_u > 0.0 && self.p_max > 0.0) {
            return bad("rho_d, rho_u and p_max must be positive".into());
        }
        if self.sigma_r_sq.is_nan() || self.sigma_r_sq < 0.0 {
            return bad("sigma_r_sq must be non-negative".into());
        }
        if self.geometry.dl_user_pos.len() != self.k || self.geometry.ul_user_pos.len() != self.j {
            return bad("geometry user counts do not match k and j".into());
        }
        self.ls_model.validate()
    }

    pub fn with_phase_grid(&self, phase_grid: usize) -> Self {
        Self {
            phase_grid,
            ..self.clone()
        }
    }

    pub fn with_repeater_at(&self, d_repeater: f64) -> Self {
        Self {
            geometry: self.geometry.clone().with_repeater_at(d_repeater),
            ..self.clone()
        }
    }

    pub fn with_seed(&self, seed: u64) -> Self {
        Self {
            seed,
            ..self.clone()
        }
    }

    pub fn budget(&self) -> LinkBudget {
        LinkBudget {
            rho_d: self.rho_d,
            rho_u: self.rho_u,
            sigma_r_sq: self.sigma_r_sq,
        }
    }
}

/// Transmit SNRs and repeater noise: everything the SINR expressions need
/// beyond channels and beamformers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkBudget {
    pub rho_d: f64,
    pub rho_u: f64,
    pub sigma_r_sq: f64,
}
