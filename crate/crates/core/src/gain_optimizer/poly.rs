//! SINR as a ratio of quadratics in the repeater amplification.
//!
//! For a fixed phase `phi` and fixed beamformers, every power term of the
//! form `|A + r e^{i phi} B|^2` expands to
//! `|A|^2 + 2 r Re{e^{-i phi} A conj(B)} + r^2 |B|^2`, so both SINRs become
//! `(a0 + a1 r + a2 r^2) / (b0 + b1 r + b2 r^2)`.

use num_complex::Complex64;

use crate::channels::ChannelSet;
use crate::error::{Error, Result};
use crate::link_metrics::{check_index, Direction, Target};
use crate::scenario::LinkBudget;
use crate::system_model::{dotc, norm_sqr, BeamformerState};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SinrPolyCoeffs {
    pub a0: f64,
    pub a1: f64,
    pub a2: f64,
    pub b0: f64,
    pub b1: f64,
    pub b2: f64,
}

/// Numerator of the derivative: `c0 + 2 c1 r + c2 r^2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivativeNumerator {
    pub c0: f64,
    pub c1: f64,
    pub c2: f64,
}

impl DerivativeNumerator {
    pub fn eval(&self, r: f64) -> f64 {
        self.c0 + r * (2.0 * self.c1 + r * self.c2)
    }
}

impl SinrPolyCoeffs {
    pub fn numerator(&self, r: f64) -> f64 {
        self.a0 + r * (self.a1 + r * self.a2)
    }

    pub fn denominator(&self, r: f64) -> f64 {
        self.b0 + r * (self.b1 + r * self.b2)
    }
}

/// Evaluates the rational SINR at amplification `r`.
pub fn rational_sinr(c: &SinrPolyCoeffs, r: f64) -> Result<f64> {
    let den = c.denominator(r);
    if den.is_nan() || den <= 0.0 {
        return Err(Error::NonPositiveDenominator(den, r));
    }
    Ok(c.numerator(r) / den)
}

pub fn sinr_derivative_numerator(c: &SinrPolyCoeffs) -> DerivativeNumerator {
    DerivativeNumerator {
        c0: c.a1 * c.b0 - c.a0 * c.b1,
        c1: c.a2 * c.b0 - c.a0 * c.b2,
        c2: c.a2 * c.b1 - c.a1 * c.b2,
    }
}

/// Non-negative real roots of `c0 + 2 c1 r + c2 r^2`, ascending.
///
/// Uses the cancellation-free form of the quadratic formula, so a tiny `c2`
/// yields the near-linear root accurately plus a very large second root
/// (dropped if it overflows). A discriminant that is negative only by
/// roundoff is clamped to zero.
pub fn stationary_points(c0: f64, c1: f64, c2: f64) -> Vec<f64> {
    let mut roots = Vec::with_capacity(2);
    if c2 == 0.0 {
        if c1 != 0.0 {
            roots.push(-c0 / (2.0 * c1));
        }
    } else {
        let mut disc = c1 * c1 - c0 * c2;
        if disc < 0.0 {
            if disc >= -1e-12 * (c1 * c1).max((c0 * c2).abs()) {
                disc = 0.0;
            } else {
                return roots;
            }
        }
        let q = -(c1 + c1.signum() * disc.sqrt());
        if q == 0.0 {
            // c1 = 0 and c0 = 0: double root at the origin
            roots.push(0.0);
        } else {
            roots.push(q / c2);
            roots.push(c0 / q);
        }
    }
    roots.retain(|r| r.is_finite() && *r >= 0.0);
    roots.sort_by(f64::total_cmp);
    roots.dedup();
    roots
}

/// Phase-independent parts of the coefficients. The cross terms are kept
/// complex: `a1(phi) = Re{e^{-i phi} a1_cross}`, likewise for `b1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolyBasis {
    pub a0: f64,
    pub a1_cross: Complex64,
    pub a2: f64,
    pub b0: f64,
    pub b1_cross: Complex64,
    pub b2: f64,
}

impl PolyBasis {
    pub fn at_phase(&self, phi: f64) -> SinrPolyCoeffs {
        let rot = Complex64::from_polar(1.0, -phi);
        SinrPolyCoeffs {
            a0: self.a0,
            a1: (rot * self.a1_cross).re,
            a2: self.a2,
            b0: self.b0,
            b1: (rot * self.b1_cross).re,
            b2: self.b2,
        }
    }
}

#[derive(Default)]
struct Acc {
    constant: f64,
    cross: Complex64,
    square: f64,
}

impl Acc {
    /// Adds `weight * |direct + alpha * via_repeater|^2`.
    fn add(&mut self, weight: f64, direct: Complex64, via_repeater: Complex64) {
        self.constant += weight * direct.norm_sqr();
        self.cross += 2.0 * weight * direct * via_repeater.conj();
        self.square += weight * via_repeater.norm_sqr();
    }
}

pub fn dl_poly_basis(ch: &ChannelSet, state: &BeamformerState, budget: LinkBudget, k: usize) -> Result<PolyBasis> {
    check_index("DL user", k, ch.dl_users())?;
    let hdk = ch.h_dl[k];
    let terms = |kp: usize| {
        let w = &state.w[kp];
        (ch.g_dl[k].dot(w), hdk * ch.h_d.dot(w))
    };

    let mut signal = Acc::default();
    let (a, b) = terms(k);
    signal.add(budget.rho_d * state.eta_d[k], a, b);

    let mut interference = Acc {
        constant: 1.0,
        ..Default::default()
    };
    for kp in (0..ch.dl_users()).filter(|&kp| kp != k) {
        let (a, b) = terms(kp);
        interference.add(budget.rho_d * state.eta_d[kp], a, b);
    }
    for j in 0..ch.ul_users() {
        interference.add(budget.rho_u * state.eta_u[j], ch.f_inter_user[k][j], hdk * ch.h_ul[j]);
    }
    interference.square += budget.sigma_r_sq * hdk.norm_sqr();

    Ok(PolyBasis {
        a0: signal.constant,
        a1_cross: signal.cross,
        a2: signal.square,
        b0: interference.constant,
        b1_cross: interference.cross,
        b2: interference.square,
    })
}

pub fn ul_poly_basis(ch: &ChannelSet, state: &BeamformerState, budget: LinkBudget, j: usize) -> Result<PolyBasis> {
    check_index("UL user", j, ch.ul_users())?;
    let v = &state.v[j];
    let v_hu = dotc(v, &ch.h_u);
    let terms = |jp: usize| (dotc(v, &ch.g_ul[jp]), ch.h_ul[jp] * v_hu);

    let mut signal = Acc::default();
    let (a, b) = terms(j);
    signal.add(budget.rho_u * state.eta_u[j], a, b);

    let mut interference = Acc {
        constant: norm_sqr(v),
        ..Default::default()
    };
    for jp in (0..ch.ul_users()).filter(|&jp| jp != j) {
        let (a, b) = terms(jp);
        interference.add(budget.rho_u * state.eta_u[jp], a, b);
    }
    // v^H F w_k and v^H h_u h_d^T w_k
    let v_f = ch.f_inter_ap.t().dot(&v.mapv(|z| z.conj()));
    for (w, eta) in state.w.iter().zip(&state.eta_d) {
        interference.add(budget.rho_d * eta, v_f.dot(w), v_hu * ch.h_d.dot(w));
    }
    interference.square += budget.sigma_r_sq * v_hu.norm_sqr();

    Ok(PolyBasis {
        a0: signal.constant,
        a1_cross: signal.cross,
        a2: signal.square,
        b0: interference.constant,
        b1_cross: interference.cross,
        b2: interference.square,
    })
}

pub fn poly_basis(ch: &ChannelSet, state: &BeamformerState, budget: LinkBudget, target: Target) -> Result<PolyBasis> {
    match target.direction {
        Direction::Dl => dl_poly_basis(ch, state, budget, target.index),
        Direction::Ul => ul_poly_basis(ch, state, budget, target.index),
    }
}

/// Coefficients of the DL SINR of user `k` at phase `phi`.
pub fn dl_poly_coeffs(
    ch: &ChannelSet,
    state: &BeamformerState,
    budget: LinkBudget,
    k: usize,
    phi: f64,
) -> Result<SinrPolyCoeffs> {
    Ok(dl_poly_basis(ch, state, budget, k)?.at_phase(phi))
}

/// Coefficients of the UL SINR of user `j` at phase `phi`.
pub fn ul_poly_coeffs(
    ch: &ChannelSet,
    state: &BeamformerState,
    budget: LinkBudget,
    j: usize,
    phi: f64,
) -> Result<SinrPolyCoeffs> {
    Ok(ul_poly_basis(ch, state, budget, j)?.at_phase(phi))
}
