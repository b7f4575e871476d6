//! Wireless TherMod scheme: complex-baseband sample statistics, threshold
//! detection, the uniform-error threshold, and closed-form BEP evaluators.
//!
//! A single transmitter indexes a low- or high-valued resistor per bit; the
//! receiver estimates the variance of `n` complex baseband samples and
//! thresholds it. Each received sample is the sum of the information-
//! bearing noise and the receiver's own noise, so with everything
//! normalized to the receiver noise variance the two hypotheses have total
//! variances `1 + delta` (bit 0) and `1 + alpha*delta` (bit 1), where
//! `delta` is the useful-to-receiver noise variance ratio — the scheme's
//! SNR-like quality metric. For large `n` the variance estimate is
//! Gaussian with mean `m` and standard deviation `m / sqrt(n)` (complex
//! samples halve the variance of the real-sample case).
//!
//! Physical link-budget quantities (path gain, receiver noise floor) enter
//! only through `delta`; helpers to estimate them live in [`crate::math`].

use crate::error::{Error, Result};
use crate::math::q;

/// Scheme parameters of a TherMod link.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermodConfig {
    alpha: f64,
    delta: f64,
    n_samples: u32,
}

impl ThermodConfig {
    /// `alpha` is the resistance ratio (> 1), `delta` the useful-to-
    /// receiver noise variance ratio (> 0), `n_samples` the complex
    /// samples per bit (>= 2).
    pub fn new(alpha: f64, delta: f64, n_samples: u32) -> Result<Self> {
        if !(alpha.is_finite() && alpha > 1.0) {
            return Err(Error::domain(format!(
                "alpha must be a finite ratio > 1, got {alpha}"
            )));
        }
        if !(delta.is_finite() && delta > 0.0) {
            return Err(Error::domain(format!(
                "delta must be finite and > 0, got {delta}"
            )));
        }
        if n_samples < 2 {
            return Err(Error::domain(format!(
                "n_samples must be >= 2, got {n_samples}"
            )));
        }
        Ok(Self {
            alpha,
            delta,
            n_samples,
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn n_samples(&self) -> u32 {
        self.n_samples
    }
}

/// Total per-sample variances under the two hypotheses, normalized to the
/// receiver noise variance: `tilde0 = 1 + delta`, `tilde1 = 1 + alpha*delta`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermodVariances {
    pub tilde0: f64,
    pub tilde1: f64,
}

/// Decision threshold normalized to the receiver noise variance. Must lie
/// strictly between the two hypothesis variances `1 + delta` and
/// `1 + alpha*delta` of the supplied config.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermodThreshold {
    chi: f64,
}

impl ThermodThreshold {
    pub fn new(chi: f64, cfg: &ThermodConfig) -> Result<Self> {
        let v = thermod_variances(cfg);
        if !(chi.is_finite() && v.tilde0 < chi && chi < v.tilde1) {
            return Err(Error::domain(format!(
                "chi must lie in ({}, {}) for alpha={}, delta={}, got {chi}",
                v.tilde0,
                v.tilde1,
                cfg.alpha,
                cfg.delta
            )));
        }
        Ok(Self { chi })
    }

    pub fn chi(&self) -> f64 {
        self.chi
    }
}

/// Hypothesis variances for a config (see [`ThermodVariances`]).
pub fn thermod_variances(cfg: &ThermodConfig) -> ThermodVariances {
    ThermodVariances {
        tilde0: 1.0 + cfg.delta,
        tilde1: 1.0 + cfg.alpha * cfg.delta,
    }
}

/// Bit decision from a normalized complex-sample variance estimate:
/// 1 iff the estimate strictly exceeds `chi`. Requires `sigma_hat_s >= 0`.
#[inline]
pub fn decide_thermod(sigma_hat_s: f64, th: &ThermodThreshold) -> bool {
    sigma_hat_s > th.chi
}

/// The threshold equalizing the bit-0 and bit-1 error probabilities:
///
/// ```text
/// chi = 2 (1+d)(1+a d) / (2 + d (1+a))
/// ```
///
/// Always strictly inside the feasible interval, so construction cannot
/// fail for a valid config.
pub fn uniform_chi(cfg: &ThermodConfig) -> ThermodThreshold {
    let v = thermod_variances(cfg);
    let chi = 2.0 * v.tilde0 * v.tilde1 / (2.0 + cfg.delta * (1.0 + cfg.alpha));
    ThermodThreshold { chi }
}

/// Closed-form BEP at threshold `chi`:
///
/// ```text
/// Pb = 1/2 [ Q((chi - t0)/(t0/sqrt(n))) + Q((t1 - chi)/(t1/sqrt(n))) ]
/// ```
///
/// with `t0 = 1 + d`, `t1 = 1 + a d`. The threshold is re-validated
/// against the supplied config.
pub fn thermod_bep(cfg: &ThermodConfig, th: &ThermodThreshold) -> Result<f64> {
    let v = thermod_variances(cfg);
    if !(v.tilde0 < th.chi && th.chi < v.tilde1) {
        return Err(Error::domain(format!(
            "chi must lie in ({}, {}) for alpha={}, delta={}, got {}",
            v.tilde0, v.tilde1, cfg.alpha, cfg.delta, th.chi
        )));
    }
    let s = 1.0 / (cfg.n_samples as f64).sqrt();
    Ok(0.5
        * (q((th.chi - v.tilde0) / (v.tilde0 * s)) + q((v.tilde1 - th.chi) / (v.tilde1 * s))))
}

/// BEP at the uniform-error threshold, in closed form:
///
/// ```text
/// Pb = Q( sqrt(n) d (a-1) / (2 + d (1+a)) )
/// ```
///
/// Algebraically identical to `thermod_bep(cfg, uniform_chi(cfg))`.
pub fn thermod_bep_uniform(cfg: &ThermodConfig) -> f64 {
    let arg =
        (cfg.n_samples as f64).sqrt() * cfg.delta * (cfg.alpha - 1.0) / (2.0 + cfg.delta * (1.0 + cfg.alpha));
    q(arg)
}

/// Large-alpha reduction of [`thermod_bep_uniform`]:
///
/// ```text
/// Pb ~ Q( sqrt(n) a d / (2 + a d) )
/// ```
///
/// Approaches `Q(sqrt(n))` for `a d >> 1` and `Q(sqrt(n) a d / 2)` for
/// `a d << 1`.
pub fn thermod_bep_largealpha(cfg: &ThermodConfig) -> f64 {
    let ad = cfg.alpha * cfg.delta;
    q((cfg.n_samples as f64).sqrt() * ad / (2.0 + ad))
}
