//! Wired KLJN scheme: configuration, decision thresholds, per-sample
//! decision rules for all four detectors, and closed-form bit-error
//! probability (BEP) evaluators.
//!
//! # Model
//!
//! Per bit interval, each party estimates the line noise variance from `n`
//! independent samples. For large `n` the estimate is Gaussian with mean
//! equal to the true case variance `m` and standard deviation
//! `m * sqrt(2/n)`. All variances are normalized so the `00` case is 1
//! (voltage) resp. 1 (current); the BEP then depends only on the
//! resistance ratio `alpha`, the sample count `n`, and the normalized
//! thresholds.
//!
//! # Decision rules
//!
//! A party's own bit collapses the three-level variance hypothesis to a
//! binary one, so each decision uses a single threshold:
//!
//! * voltage, own bit 0: partner is 0 iff the estimate falls below `beta`;
//! * voltage, own bit 1: partner is 1 iff the estimate exceeds `kappa`;
//! * current (variance ordering reversed), own bit 0: partner is 0 iff the
//!   estimate exceeds `xi`;
//! * current, own bit 1: partner is 1 iff the estimate falls below `eta`.
//!
//! Exact threshold equality counts as the middle region, consistently with
//! [`eve_classify`]'s closed middle interval. These are measure-zero events;
//! the rule is fixed anyway so runs are deterministic.
//!
//! The two joint detectors combine voltage and current measurements, which
//! are statistically independent: `NewDetectorI` flags bits whose voltage
//! and current interpretations disagree, `NewDetectorII` picks the
//! measurement type per the party's own bit (current for 0, voltage for 1),
//! avoiding the dominant error event of each measurement.

use crate::error::{Error, Result};
use crate::math::{check_positive, q};

/// Number of samples per bit below which the Gaussian fit of the sample
/// variance is considered poor (see [`KljnConfig::gaussian_fit_questionable`]).
pub const GAUSSIAN_FIT_SOFT_MIN_SAMPLES: u32 = 50;

/// Scheme parameters of a KLJN link.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KljnConfig {
    alpha: f64,
    n_samples: u32,
}

impl KljnConfig {
    /// `alpha` is the high-to-low resistance ratio (must be > 1);
    /// `n_samples` the number of independent noise samples per bit
    /// (must be >= 2).
    pub fn new(alpha: f64, n_samples: u32) -> Result<Self> {
        if !(alpha.is_finite() && alpha > 1.0) {
            return Err(Error::domain(format!(
                "alpha must be a finite ratio > 1, got {alpha}"
            )));
        }
        if n_samples < 2 {
            return Err(Error::domain(format!(
                "n_samples must be >= 2, got {n_samples}"
            )));
        }
        Ok(Self { alpha, n_samples })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn n_samples(&self) -> u32 {
        self.n_samples
    }

    /// True when `n_samples` is below the soft minimum of
    /// [`GAUSSIAN_FIT_SOFT_MIN_SAMPLES`]; the sample variance then fits a
    /// Gaussian poorly and the closed-form BEPs degrade accordingly.
    pub fn gaussian_fit_questionable(&self) -> bool {
        self.n_samples < GAUSSIAN_FIT_SOFT_MIN_SAMPLES
    }

    /// Normalized intermediate voltage variance `2a/(1+a)`.
    pub(crate) fn sigma01(&self) -> f64 {
        2.0 * self.alpha / (1.0 + self.alpha)
    }

    /// Normalized intermediate current variance `2/(1+a)`.
    pub(crate) fn s01(&self) -> f64 {
        2.0 / (1.0 + self.alpha)
    }

    /// `sqrt(2/n)`, the relative sigma of the Gaussian sample-variance fit.
    pub(crate) fn rel_sigma(&self) -> f64 {
        (2.0 / self.n_samples as f64).sqrt()
    }
}

/// Normalized voltage decision thresholds `beta` (lower) and `kappa`
/// (upper). Feasibility `1 < beta < 2a/(1+a) < kappa < alpha` is checked
/// against a supplied `alpha` by [`VoltageThresholds::validate_for`];
/// construction enforces only the alpha-independent part.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VoltageThresholds {
    beta: f64,
    kappa: f64,
}

impl VoltageThresholds {
    pub fn new(beta: f64, kappa: f64) -> Result<Self> {
        if !(beta.is_finite() && kappa.is_finite() && 1.0 < beta && beta < kappa) {
            return Err(Error::domain(format!(
                "voltage thresholds must satisfy 1 < beta < kappa, got beta={beta}, kappa={kappa}"
            )));
        }
        Ok(Self { beta, kappa })
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    /// Full feasibility check `1 < beta < 2a/(1+a) < kappa < alpha`.
    pub fn validate_for(&self, alpha: f64) -> Result<()> {
        let sigma01 = 2.0 * alpha / (1.0 + alpha);
        check_beta(self.beta, alpha)?;
        if !(sigma01 < self.kappa && self.kappa < alpha) {
            return Err(Error::domain(format!(
                "kappa must lie in ({sigma01}, {alpha}) for alpha={alpha}, got {}",
                self.kappa
            )));
        }
        Ok(())
    }
}

/// Normalized current decision thresholds `eta` (lower) and `xi` (upper).
/// Feasibility `1/a < eta < 2/(1+a) < xi < 1` is checked against a supplied
/// `alpha` by [`CurrentThresholds::validate_for`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurrentThresholds {
    eta: f64,
    xi: f64,
}

impl CurrentThresholds {
    pub fn new(eta: f64, xi: f64) -> Result<Self> {
        if !(eta.is_finite() && xi.is_finite() && 0.0 < eta && eta < xi && xi < 1.0) {
            return Err(Error::domain(format!(
                "current thresholds must satisfy 0 < eta < xi < 1, got eta={eta}, xi={xi}"
            )));
        }
        Ok(Self { eta, xi })
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn xi(&self) -> f64 {
        self.xi
    }

    /// Full feasibility check `1/a < eta < 2/(1+a) < xi < 1`.
    pub fn validate_for(&self, alpha: f64) -> Result<()> {
        let s01 = 2.0 / (1.0 + alpha);
        check_eta(self.eta, alpha)?;
        if !(s01 < self.xi && self.xi < 1.0) {
            return Err(Error::domain(format!(
                "xi must lie in ({s01}, 1) for alpha={alpha}, got {}",
                self.xi
            )));
        }
        Ok(())
    }
}

/// A bit pair selected by the two parties; the first component is Alice's.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BitPair {
    pub alice_bit: bool,
    pub bob_bit: bool,
}

impl BitPair {
    /// True for the secure `01`/`10` exchanges.
    pub fn is_secure(&self) -> bool {
        self.alice_bit != self.bob_bit
    }
}

/// The four receiver variants.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DetectorKind {
    /// Voltage-variance thresholding only.
    ClassicalVoltage,
    /// Current-variance thresholding only.
    ClassicalCurrent,
    /// Joint voltage+current detector raising an error flag on
    /// disagreement (ND-I).
    NewDetectorI,
    /// Adaptive detector choosing the measurement type from the party's
    /// own bit (ND-II).
    NewDetectorII,
}

impl std::fmt::Display for DetectorKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            DetectorKind::ClassicalVoltage => "classical-voltage",
            DetectorKind::ClassicalCurrent => "classical-current",
            DetectorKind::NewDetectorI => "nd-i",
            DetectorKind::NewDetectorII => "nd-ii",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for DetectorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "classical-voltage" => Ok(DetectorKind::ClassicalVoltage),
            "classical-current" => Ok(DetectorKind::ClassicalCurrent),
            "nd-i" => Ok(DetectorKind::NewDetectorI),
            "nd-ii" => Ok(DetectorKind::NewDetectorII),
            other => Err(Error::config(format!(
                "unknown detector '{other}' (expected classical-voltage, classical-current, nd-i or nd-ii)"
            ))),
        }
    }
}

/// Eavesdropper's ternary classification of a voltage-variance estimate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EveClass {
    Case00,
    Secure,
    Case11,
}

/// Partner-bit decision from a normalized voltage-variance estimate.
///
/// Own bit 0: returns 0 iff `sigma_hat < beta`, else 1. Own bit 1: returns
/// 1 iff `sigma_hat > kappa`, else 0. Requires `sigma_hat >= 0`.
#[inline]
pub fn decide_voltage(sigma_hat: f64, own_bit: bool, th: &VoltageThresholds) -> bool {
    if own_bit {
        sigma_hat > th.kappa
    } else {
        sigma_hat >= th.beta
    }
}

/// Partner-bit decision from a normalized current-variance estimate; the
/// variance ordering is reversed (the `00` case fluctuates hardest).
///
/// Own bit 0: returns 0 iff `s_hat > xi`, else 1. Own bit 1: returns 1 iff
/// `s_hat < eta`, else 0. Requires `s_hat >= 0`.
#[inline]
pub fn decide_current(s_hat: f64, own_bit: bool, th: &CurrentThresholds) -> bool {
    if own_bit {
        s_hat < th.eta
    } else {
        s_hat <= th.xi
    }
}

/// Eve's ternary classification of the line voltage-variance estimate,
/// using the same thresholds as the legitimate parties. The middle
/// interval `[beta, kappa]` is closed.
#[inline]
pub fn eve_classify(sigma_hat: f64, th: &VoltageThresholds) -> EveClass {
    if sigma_hat < th.beta {
        EveClass::Case00
    } else if sigma_hat > th.kappa {
        EveClass::Case11
    } else {
        EveClass::Secure
    }
}

/// Closed-form BEP of the classical voltage detector: the average of the
/// four error-event tail probabilities
///
/// ```text
/// Pb = 1/4 [ Q((b-1)/s) + Q((a-k)/(a s)) + Q((m-b)/(m s)) + Q((k-m)/(m s)) ]
/// ```
///
/// with `m = 2a/(1+a)` and `s = sqrt(2/n)`. Scale-free: only ratios enter.
pub fn bep_voltage(cfg: &KljnConfig, th: &VoltageThresholds) -> Result<f64> {
    th.validate_for(cfg.alpha)?;
    let s = cfg.rel_sigma();
    let m = cfg.sigma01();
    Ok(0.25
        * (q((th.beta - 1.0) / s)
            + q((cfg.alpha - th.kappa) / (cfg.alpha * s))
            + q((m - th.beta) / (m * s))
            + q((th.kappa - m) / (m * s))))
}

/// Two-term approximation of [`bep_voltage`] keeping only the dominant
/// `00`-side error events, which is independent of `kappa`:
///
/// ```text
/// Pb ~ 1/4 [ Q((b-1)/s) + Q((m-b)/(m s)) ]
/// ```
///
/// With `large_alpha` set, `m = 2a/(1+a)` is replaced by its limit 2. At
/// `beta = 4/3` the large-alpha form reduces to `0.5 Q(1/(3 s))`, the
/// uniform-error operating point.
pub fn bep_voltage_approx(cfg: &KljnConfig, beta: f64, large_alpha: bool) -> Result<f64> {
    check_beta(beta, cfg.alpha)?;
    let s = cfg.rel_sigma();
    let m = if large_alpha { 2.0 } else { cfg.sigma01() };
    Ok(0.25 * (q((beta - 1.0) / s) + q((m - beta) / (m * s))))
}

/// Closed-form BEP of the classical current detector (mirror image of
/// [`bep_voltage`] on the reversed variance ladder `1 : 2/(1+a) : 1/a`).
pub fn bep_current(cfg: &KljnConfig, th: &CurrentThresholds) -> Result<f64> {
    th.validate_for(cfg.alpha)?;
    let s = cfg.rel_sigma();
    let m = cfg.s01();
    let inv_a = 1.0 / cfg.alpha;
    Ok(0.25
        * (q((1.0 - th.xi) / s)
            + q((th.eta - inv_a) / (inv_a * s))
            + q((th.xi - m) / (m * s))
            + q((m - th.eta) / (m * s))))
}

/// Large-alpha two-term approximation of [`bep_current`] keeping the
/// dominant `11`-side error events (the intermediate variance is
/// approximated by `2/a`):
///
/// ```text
/// Pb ~ 1/4 [ Q((e - 1/a)/((1/a) s)) + Q((2/a - e)/((2/a) s)) ]
/// ```
///
/// At `eta = 4/(3a)` this is algebraically identical to the voltage
/// detector's uniform-error value `0.5 Q(1/(3 s))`: the two measurement
/// types perform identically.
pub fn bep_current_approx(cfg: &KljnConfig, eta: f64) -> Result<f64> {
    check_eta(eta, cfg.alpha)?;
    let s = cfg.rel_sigma();
    let inv_a = 1.0 / cfg.alpha;
    let two_a = 2.0 / cfg.alpha;
    Ok(0.25 * (q((eta - inv_a) / (inv_a * s)) + q((two_a - eta) / (two_a * s))))
}

/// Correct symbol-detection probability of ND-I: the average over the four
/// bit-pair cases of the product of the voltage-correct and
/// current-correct probabilities (the two measurements are independent).
/// Always in (0, 1].
pub fn prob_correct_ndi(
    cfg: &KljnConfig,
    vth: &VoltageThresholds,
    cth: &CurrentThresholds,
) -> Result<f64> {
    vth.validate_for(cfg.alpha)?;
    cth.validate_for(cfg.alpha)?;
    let s = cfg.rel_sigma();
    let mv = cfg.sigma01();
    let mc = cfg.s01();
    let inv_a = 1.0 / cfg.alpha;
    Ok(0.25
        * (q((1.0 - vth.beta) / s) * q((cth.xi - 1.0) / s)
            + q((vth.kappa - cfg.alpha) / (cfg.alpha * s)) * q((inv_a - cth.eta) / (inv_a * s))
            + q((vth.beta - mv) / (mv * s)) * q((mc - cth.xi) / (mc * s))
            + q((mv - vth.kappa) / (mv * s)) * q((cth.eta - mc) / (mc * s))))
}

/// BEP of ND-I, `0.5 (1 - Pc)`: a flagged symbol costs half a bit error on
/// average, since a forced random pick between two disagreeing
/// interpretations errs half the time.
pub fn bep_ndi(cfg: &KljnConfig, vth: &VoltageThresholds, cth: &CurrentThresholds) -> Result<f64> {
    Ok(0.5 * (1.0 - prob_correct_ndi(cfg, vth, cth)?))
}

/// Closed-form BEP of ND-II. Only the upper thresholds enter: the
/// measurement type chosen from the party's own bit removes the
/// fragile-threshold (`beta`, `eta`) error events entirely.
///
/// Requires `2a/(1+a) < kappa < a` and `2/(1+a) < xi < 1`. With
/// `xi = kappa/a` the bit-0 and bit-1 error probabilities coincide.
pub fn bep_ndii(cfg: &KljnConfig, kappa: f64, xi: f64) -> Result<f64> {
    let mv = cfg.sigma01();
    let mc = cfg.s01();
    if !(kappa.is_finite() && mv < kappa && kappa < cfg.alpha) {
        return Err(Error::domain(format!(
            "kappa must lie in ({mv}, {}) for alpha={}, got {kappa}",
            cfg.alpha, cfg.alpha
        )));
    }
    if !(xi.is_finite() && mc < xi && xi < 1.0) {
        return Err(Error::domain(format!(
            "xi must lie in ({mc}, 1) for alpha={}, got {xi}",
            cfg.alpha
        )));
    }
    let s = cfg.rel_sigma();
    Ok(0.25
        * (q((1.0 - xi) / s)
            + q((cfg.alpha - kappa) / (cfg.alpha * s))
            + q((xi - mc) / (mc * s))
            + q((kappa - mv) / (mv * s))))
}

/// Largest number of statistically independent samples per bit at noise
/// bandwidth `bandwidth_df`: `floor(2 * bit_duration * bandwidth_df)`
/// (Wiener–Khinchin spacing). The same limit binds an eavesdropper.
pub fn max_samples_per_bit(bit_duration: f64, bandwidth_df: f64) -> Result<u64> {
    check_positive("bit_duration", bit_duration)?;
    check_positive("bandwidth_df", bandwidth_df)?;
    Ok((2.0 * bit_duration * bandwidth_df).floor() as u64)
}

pub(crate) fn check_beta(beta: f64, alpha: f64) -> Result<()> {
    let sigma01 = 2.0 * alpha / (1.0 + alpha);
    if beta.is_finite() && 1.0 < beta && beta < sigma01 {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "beta must lie in (1, {sigma01}) for alpha={alpha}, got {beta}"
        )))
    }
}

pub(crate) fn check_eta(eta: f64, alpha: f64) -> Result<()> {
    let inv_a = 1.0 / alpha;
    let s01 = 2.0 / (1.0 + alpha);
    if eta.is_finite() && inv_a < eta && eta < s01 {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "eta must lie in ({inv_a}, {s01}) for alpha={alpha}, got {eta}"
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vth(beta: f64, kappa: f64) -> VoltageThresholds {
        VoltageThresholds::new(beta, kappa).unwrap()
    }

    fn cth(eta: f64, xi: f64) -> CurrentThresholds {
        CurrentThresholds::new(eta, xi).unwrap()
    }

    #[test]
    fn config_rejects_bad_parameters() {
        assert!(KljnConfig::new(1.0, 100).is_err());
        assert!(KljnConfig::new(f64::NAN, 100).is_err());
        assert!(KljnConfig::new(10.0, 1).is_err());
        assert!(KljnConfig::new(10.0, 2).is_ok());
    }

    #[test]
    fn soft_warning_boundary() {
        assert!(KljnConfig::new(10.0, 49).unwrap().gaussian_fit_questionable());
        assert!(!KljnConfig::new(10.0, 50).unwrap().gaussian_fit_questionable());
    }

    #[test]
    fn decide_voltage_regions() {
        let th = vth(4.0 / 3.0, 5.0);
        assert!(!decide_voltage(1.0, false, &th));
        assert!(decide_voltage(1.5, false, &th));
        assert!(!decide_voltage(4.0, true, &th));
        assert!(decide_voltage(6.0, true, &th));
    }

    #[test]
    fn decide_voltage_tie_goes_to_middle() {
        let th = vth(4.0 / 3.0, 5.0);
        // At beta exactly: middle region, so partner differs from own bit 0.
        assert!(decide_voltage(4.0 / 3.0, false, &th));
        // At kappa exactly: middle region, so partner differs from own bit 1.
        assert!(!decide_voltage(5.0, true, &th));
    }

    #[test]
    fn decide_current_regions() {
        let th = cth(0.13, 0.3168);
        assert!(!decide_current(0.9, false, &th));
        assert!(decide_current(0.05, true, &th));
        assert!(decide_current(0.18, false, &th));
        // Ties land in the middle region.
        assert!(decide_current(0.3168, false, &th));
        assert!(!decide_current(0.13, true, &th));
    }

    #[test]
    fn eve_classify_regions() {
        let th = vth(4.0 / 3.0, 5.0);
        assert_eq!(eve_classify(1.0, &th), EveClass::Case00);
        assert_eq!(eve_classify(1.8, &th), EveClass::Secure);
        assert_eq!(eve_classify(10.0, &th), EveClass::Case11);
        assert_eq!(eve_classify(4.0 / 3.0, &th), EveClass::Secure);
        assert_eq!(eve_classify(5.0, &th), EveClass::Secure);
    }

    #[test]
    fn thresholds_validate_against_alpha() {
        assert!(vth(4.0 / 3.0, 5.0).validate_for(10.0).is_ok());
        // kappa above alpha
        assert!(vth(4.0 / 3.0, 11.0).validate_for(10.0).is_err());
        // beta above the intermediate variance
        assert!(vth(1.9, 5.0).validate_for(10.0).is_err());
        assert!(cth(0.13, 0.3168).validate_for(10.0).is_ok());
        // eta below 1/alpha
        assert!(cth(0.05, 0.3168).validate_for(10.0).is_err());
        // xi below the intermediate variance
        assert!(cth(0.13, 0.17).validate_for(10.0).is_err());
    }

    #[test]
    fn threshold_constructors_reject_disorder() {
        assert!(VoltageThresholds::new(1.5, 1.2).is_err());
        assert!(VoltageThresholds::new(0.9, 5.0).is_err());
        assert!(CurrentThresholds::new(0.4, 0.2).is_err());
        assert!(CurrentThresholds::new(0.2, 1.1).is_err());
    }

    #[test]
    fn bep_voltage_rejects_mismatched_thresholds() {
        let cfg = KljnConfig::new(10.0, 100).unwrap();
        // Valid for alpha=50 but kappa exceeds alpha=10's ceiling.
        let th = vth(1.5, 20.0);
        assert!(bep_voltage(&cfg, &th).is_err());
    }

    #[test]
    fn bep_voltage_decreases_with_n() {
        let th = vth(4.0 / 3.0, 5.0);
        let mut last = f64::INFINITY;
        for n in [50, 100, 200, 400, 800] {
            let cfg = KljnConfig::new(10.0, n).unwrap();
            let p = bep_voltage(&cfg, &th).unwrap();
            assert!(p < last, "bep not strictly decreasing at n={n}");
            last = p;
        }
    }

    #[test]
    fn bep_voltage_approx_matches_eq12_form_at_four_thirds() {
        // The large-alpha form at beta = 4/3 equals 0.5 Q(1/(3 sqrt(2/n))).
        for n in [50, 100, 400] {
            let cfg = KljnConfig::new(10.0, n).unwrap();
            let p = bep_voltage_approx(&cfg, 4.0 / 3.0, true).unwrap();
            let expected = 0.5 * q(1.0 / (3.0 * (2.0 / n as f64).sqrt()));
            assert!((p - expected).abs() / expected < 1e-12);
        }
    }

    #[test]
    fn bep_voltage_approx_rejects_out_of_range_beta() {
        let cfg = KljnConfig::new(10.0, 100).unwrap();
        assert!(bep_voltage_approx(&cfg, 0.5, false).is_err());
        assert!(bep_voltage_approx(&cfg, 1.9, false).is_err());
    }

    #[test]
    fn bep_current_decreases_with_n() {
        let th = cth(4.0 / 30.0, 0.3168);
        let mut last = f64::INFINITY;
        for n in [50, 100, 200, 400] {
            let cfg = KljnConfig::new(10.0, n).unwrap();
            let p = bep_current(&cfg, &th).unwrap();
            assert!(p < last);
            last = p;
        }
    }

    #[test]
    fn current_approx_uniform_eta_equals_voltage_uniform_value() {
        // eta = 4/(3 alpha) makes the current approximation identical to
        // the voltage detector's uniform-error value, for any alpha and n.
        for (alpha, n) in [(10.0, 50), (10.0, 400), (25.0, 128)] {
            let cfg = KljnConfig::new(alpha, n).unwrap();
            let pc = bep_current_approx(&cfg, 4.0 / (3.0 * alpha)).unwrap();
            let pv = 0.5 * q(1.0 / (3.0 * cfg.rel_sigma()));
            assert!((pc - pv).abs() / pv < 1e-12, "alpha={alpha} n={n}");
        }
    }

    #[test]
    fn ndi_probability_bounds_and_limit() {
        let cfg = KljnConfig::new(10.0, 100).unwrap();
        let pc = prob_correct_ndi(&cfg, &vth(1.3150, 3.1532), &cth(0.13, 0.3168)).unwrap();
        assert!(pc > 0.0 && pc <= 1.0);
        // Huge n drives every correct-detection probability to 1.
        let cfg_big = KljnConfig::new(10.0, 4_000_000).unwrap();
        let pc_big = prob_correct_ndi(&cfg_big, &vth(1.3150, 3.1532), &cth(0.13, 0.3168)).unwrap();
        assert!(1.0 - pc_big < 1e-9);
        assert!(bep_ndi(&cfg_big, &vth(1.3150, 3.1532), &cth(0.13, 0.3168)).unwrap() < 1e-9);
    }

    #[test]
    fn ndii_reduced_symmetry() {
        // xi = kappa/alpha pairs up the four Q terms.
        let cfg = KljnConfig::new(10.0, 100).unwrap();
        let s = cfg.rel_sigma();
        let kappa = 3.1512;
        let xi = kappa / 10.0;
        let t1 = q((1.0 - xi) / s);
        let t2 = q((10.0 - kappa) / (10.0 * s));
        assert!((t1 - t2).abs() / t2 < 1e-12);
        let mc = cfg.s01();
        let mv = cfg.sigma01();
        let t3 = q((xi - mc) / (mc * s));
        let t4 = q((kappa - mv) / (mv * s));
        assert!((t3 - t4).abs() / t4 < 1e-12);
        // And the evaluator itself accepts the reduced point.
        let p = bep_ndii(&cfg, kappa, xi).unwrap();
        assert!((p - 0.5 * (t1 + t3)).abs() / p < 1e-12);
    }

    #[test]
    fn ndii_rejects_out_of_range() {
        let cfg = KljnConfig::new(10.0, 100).unwrap();
        assert!(bep_ndii(&cfg, 1.5, 0.3).is_err()); // kappa below 2a/(1+a)
        assert!(bep_ndii(&cfg, 3.15, 0.15).is_err()); // xi below 2/(1+a)
        assert!(bep_ndii(&cfg, 12.0, 0.3).is_err()); // kappa above alpha
    }

    #[test]
    fn ndii_decreases_with_n() {
        let mut last = f64::INFINITY;
        for n in [50, 100, 200, 400] {
            let cfg = KljnConfig::new(10.0, n).unwrap();
            let p = bep_ndii(&cfg, 3.1512, 0.3148).unwrap();
            assert!(p < last);
            last = p;
        }
    }

    #[test]
    fn sample_limit_examples() {
        assert_eq!(max_samples_per_bit(1e-3, 50e3).unwrap(), 100);
        assert_eq!(max_samples_per_bit(1.0, 0.5).unwrap(), 1);
        assert_eq!(
            max_samples_per_bit(0.5e-3, 50e3).unwrap(),
            max_samples_per_bit(1e-3, 50e3).unwrap() / 2
        );
        assert!(max_samples_per_bit(0.0, 1.0).is_err());
        assert!(max_samples_per_bit(1.0, -2.0).is_err());
    }

    #[test]
    fn detector_kind_round_trips_names() {
        for d in [
            DetectorKind::ClassicalVoltage,
            DetectorKind::ClassicalCurrent,
            DetectorKind::NewDetectorI,
            DetectorKind::NewDetectorII,
        ] {
            let s = d.to_string();
            assert_eq!(s.parse::<DetectorKind>().unwrap(), d);
        }
        assert!("voltage".parse::<DetectorKind>().is_err());
    }
}
