//! Finite-blocklength (normal approximation) rates and outage predicates.
//!
//! Rates are computed per channel use,
//!
//! ```text
//! r = max(0, log2(1 + g) - sqrt(V / u) * Qinv(eps))
//! ```
//!
//! and scaled by the bandwidth once, so both hops are measured in bit/s and
//! compared against the same threshold.

use std::f64::consts::{LOG2_E, SQRT_2};

use serde::{Deserialize, Serialize};

use crate::error::ModelError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FblParams {
    /// Blocklength in channel uses.
    pub blocklength: u64,
    pub target_error: f64,
    /// Information bits per channel use.
    pub code_rate: f64,
    /// Required data rate [bit/s].
    pub rate_threshold: f64,
    pub bandwidth: f64,
    /// Scale FBL rates by the code rate before the outage test.
    pub code_rate_scaling: bool,
}

/// Gaussian tail probability Q(x).
pub fn q_function(x: f64) -> f64 {
    0.5 * libm::erfc(x / SQRT_2)
}

/// Inverse of the Gaussian Q-function.
///
/// Acklam's rational approximation of the normal quantile followed by one
/// Halley step against `erfc`, which brings the relative error in Q below
/// 1e-9 over `[1e-9, 1 - 1e-9]`.
pub fn q_inv(eps: f64) -> Result<f64, ModelError> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(ModelError::domain("eps", eps, "(0, 1)"));
    }
    if eps == 0.5 {
        return Ok(0.0);
    }
    // Q^{-1}(eps) = Phi^{-1}(1 - eps) = -Phi^{-1}(eps)
    Ok(-normal_quantile(eps))
}

fn normal_quantile(p: f64) -> f64 {
    const A: [f64; 6] = [
        -3.969_683_028_665_376e1,
        2.209_460_984_245_205e2,
        -2.759_285_104_469_687e2,
        1.383_577_518_672_69e2,
        -3.066_479_806_614_716e1,
        2.506_628_277_459_239,
    ];
    const B: [f64; 5] = [
        -5.447_609_879_822_406e1,
        1.615_858_368_580_409e2,
        -1.556_989_798_598_866e2,
        6.680_131_188_771_972e1,
        -1.328_068_155_288_572e1,
    ];
    const C: [f64; 6] = [
        -7.784_894_002_430_293e-3,
        -3.223_964_580_411_365e-1,
        -2.400_758_277_161_838,
        -2.549_732_539_343_734,
        4.374_664_141_464_968,
        2.938_163_982_698_783,
    ];
    const D: [f64; 4] = [
        7.784_695_709_041_462e-3,
        3.224_671_290_700_398e-1,
        2.445_134_137_142_996,
        3.754_408_661_907_416,
    ];
    const P_LOW: f64 = 0.024_25;

    let tail = |q: f64| {
        (((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5])
            / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0)
    };
    let x = if p < P_LOW {
        tail((-2.0 * p.ln()).sqrt())
    } else if p <= 1.0 - P_LOW {
        let q = p - 0.5;
        let r = q * q;
        (((((A[0] * r + A[1]) * r + A[2]) * r + A[3]) * r + A[4]) * r + A[5]) * q
            / (((((B[0] * r + B[1]) * r + B[2]) * r + B[3]) * r + B[4]) * r + 1.0)
    } else {
        -tail((-2.0 * (1.0 - p).ln()).sqrt())
    };

    // Halley refinement; the lower tail of Phi is evaluated through erfc so
    // it keeps full relative precision for small p.
    let e = 0.5 * libm::erfc(-x / SQRT_2) - p;
    let u = e * (2.0 * std::f64::consts::PI).sqrt() * (0.5 * x * x).exp();
    x - u / (1.0 + 0.5 * x * u)
}

/// Dispersion of the IM/DD VLC channel at effective SINR `gamma_prime`.
pub fn dispersion_vlc(gamma_prime: f64) -> f64 {
    2.0 * gamma_prime / (1.0 + gamma_prime) * LOG2_E * LOG2_E
}

/// Dispersion of the real AWGN channel.
pub fn dispersion_awgn(gamma: f64) -> f64 {
    (1.0 - 1.0 / ((1.0 + gamma) * (1.0 + gamma))) * LOG2_E * LOG2_E
}

/// Effective SINR entering the VLC capacity lower bound, `e / (2 pi) * sinr`.
pub fn effective_vlc_sinr(sinr: f64) -> f64 {
    std::f64::consts::E / (2.0 * std::f64::consts::PI) * sinr
}

/// Capacity `B log2(1 + gamma)` in bit/s.
pub fn shannon_rate(gamma: f64, bandwidth: f64) -> f64 {
    bandwidth * (gamma.ln_1p() * LOG2_E)
}

/// Normal-approximation achievable rate in bit/s, clamped at zero.
///
/// `q_inv_eps` is `Q^{-1}(target_error)`; callers evaluate it once per
/// parameter set.
pub fn fbl_rate_with(gamma: f64, dispersion: f64, blocklength: u64, q_inv_eps: f64, bandwidth: f64) -> f64 {
    let penalty = (dispersion / blocklength as f64).sqrt() * q_inv_eps;
    bandwidth * (gamma.ln_1p() * LOG2_E - penalty).max(0.0)
}

pub fn fbl_rate(gamma: f64, dispersion: f64, params: &FblParams) -> Result<f64, ModelError> {
    Ok(fbl_rate_with(
        gamma,
        dispersion,
        params.blocklength,
        q_inv(params.target_error)?,
        params.bandwidth,
    ))
}

pub fn effective_rate(r_fbl: f64, params: &FblParams) -> f64 {
    if params.code_rate_scaling {
        params.code_rate * r_fbl
    } else {
        r_fbl
    }
}

/// A link is in outage when its rate falls strictly below the threshold.
pub fn outage(link_rate: f64, r_th: f64) -> bool {
    link_rate < r_th
}

/// Outage of two independent links in series.
pub fn combine_outage(p_vlc: f64, p_bc: f64) -> Result<f64, ModelError> {
    if !(0.0..=1.0).contains(&p_vlc) {
        return Err(ModelError::domain("p_vlc", p_vlc, "[0, 1]"));
    }
    if !(0.0..=1.0).contains(&p_bc) {
        return Err(ModelError::domain("p_bc", p_bc, "[0, 1]"));
    }
    Ok(p_vlc + p_bc - p_vlc * p_bc)
}

/// Rates and outage flags of both hops for one drop.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FblAssessment {
    /// Effective VLC rate compared against the threshold [bit/s].
    pub rate_vlc: f64,
    pub rate_bc: f64,
    pub outage_vlc: bool,
    pub outage_bc: bool,
    pub outage_overall: bool,
}

impl FblAssessment {
    pub fn assess(vlc_sinr: f64, bc_snr: f64, params: &FblParams, q_inv_eps: f64) -> Self {
        let gamma_prime = effective_vlc_sinr(vlc_sinr);
        let r_vlc = fbl_rate_with(
            gamma_prime,
            dispersion_vlc(gamma_prime),
            params.blocklength,
            q_inv_eps,
            params.bandwidth,
        );
        let r_bc = fbl_rate_with(
            bc_snr,
            dispersion_awgn(bc_snr),
            params.blocklength,
            q_inv_eps,
            params.bandwidth,
        );
        let rate_vlc = effective_rate(r_vlc, params);
        let rate_bc = effective_rate(r_bc, params);
        let outage_vlc = outage(rate_vlc, params.rate_threshold);
        let outage_bc = outage(rate_bc, params.rate_threshold);
        FblAssessment {
            rate_vlc,
            rate_bc,
            outage_vlc,
            outage_bc,
            outage_overall: outage_vlc || outage_bc,
        }
    }
}
