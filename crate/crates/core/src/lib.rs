//! Repeater gain optimization for a two-cell dynamic TDD massive MIMO network.
//!
//! One DL cell and one UL cell share the same time-frequency resources, and a
//! full-duplex repeater with complex gain `alpha = r e^{i phi}` forwards
//! everything it hears: the desired signals as well as the cross-link
//! interference between the two cells.
//!
//! Module map:
//! - [`scenario`]: line topology, pathloss, SNR calibration, [`SystemParams`]
//! - [`config`]: JSON experiment configuration
//! - [`channels`]: Rayleigh fading realizations
//! - [`system_model`]: composite channels, MR beamforming, power control,
//!   repeater power constraint
//! - [`link_metrics`]: closed-form SINR and SE
//! - [`gain_optimizer`]: ratio-of-quadratics gain search and the alternating
//!   gain/beamformer loop
//! - [`experiments`]: Monte Carlo position sweep and CDF runs, CSV output

pub mod channels;
pub mod config;
pub mod error;
pub mod experiments;
pub mod gain_optimizer;
pub mod link_metrics;
pub mod scenario;
pub mod system_model;

pub use config::ExperimentConfig;
pub use error::{Error, Result};
pub use link_metrics::{Direction, Target};
pub use scenario::SystemParams;
pub use system_model::{BeamformerState, RepeaterGain};
