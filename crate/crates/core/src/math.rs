//! Shared numeric primitives: the Gaussian tail function, physical
//! Johnson–Nyquist variance formulas, normalized variance ratios, and the
//! Friis link budget.
//!
//! Everything downstream of this module works on *normalized* variances
//! (the `00`-case variance scaled to 1), since the detection error
//! probabilities depend only on variance ratios. The physical-unit
//! operations here exist for link-budget and reporting use.
//!
//! The Boltzmann constant is fixed at `1.38e-23` J/K rather than the CODATA
//! value so that worked examples reproduce exactly.

use crate::error::{Error, Result};

/// Boltzmann's constant in joules per kelvin (fixed convention, see module
/// docs).
pub const BOLTZMANN_K: f64 = 1.38e-23;

/// Physical parameters of a Johnson–Nyquist noise source.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalParams {
    temperature_t: f64,
    resistance_r: f64,
    bandwidth_df: f64,
}

impl PhysicalParams {
    /// Boltzmann's constant used by all formulas on this type.
    pub const BOLTZMANN_K: f64 = BOLTZMANN_K;

    /// Temperature in kelvin, resistance in ohms, bandwidth in hertz; all
    /// must be strictly positive and finite.
    pub fn new(temperature_t: f64, resistance_r: f64, bandwidth_df: f64) -> Result<Self> {
        check_positive("temperature_T", temperature_t)?;
        check_positive("resistance_R", resistance_r)?;
        check_positive("bandwidth_df", bandwidth_df)?;
        Ok(Self {
            temperature_t,
            resistance_r,
            bandwidth_df,
        })
    }

    pub fn temperature_t(&self) -> f64 {
        self.temperature_t
    }

    pub fn resistance_r(&self) -> f64 {
        self.resistance_r
    }

    pub fn bandwidth_df(&self) -> f64 {
        self.bandwidth_df
    }
}

/// Free-space link parameters for the Friis transmission equation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkBudget {
    wavelength: f64,
    distance_d: f64,
    gain_tx: f64,
    gain_rx: f64,
}

impl LinkBudget {
    /// Wavelength and distance in meters, antenna gains dimensionless; all
    /// strictly positive and finite.
    pub fn new(wavelength: f64, distance_d: f64, gain_tx: f64, gain_rx: f64) -> Result<Self> {
        check_positive("wavelength", wavelength)?;
        check_positive("distance_d", distance_d)?;
        check_positive("gain_tx", gain_tx)?;
        check_positive("gain_rx", gain_rx)?;
        Ok(Self {
            wavelength,
            distance_d,
            gain_tx,
            gain_rx,
        })
    }

    pub fn wavelength(&self) -> f64 {
        self.wavelength
    }

    pub fn distance_d(&self) -> f64 {
        self.distance_d
    }

    pub fn gain_tx(&self) -> f64 {
        self.gain_tx
    }

    pub fn gain_rx(&self) -> f64 {
        self.gain_rx
    }
}

/// The six normalized noise variances of the wired scheme, for the bit-pair
/// cases `00`, `01`/`10`, and `11`.
///
/// Voltage variances grow with the selected resistances
/// (`v00 < v01 < v11`), current variances shrink (`c11 < c01 < c00`); both
/// are normalized so the `00` case is 1. Built by [`normalized_variances`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseVarianceSet {
    pub v00: f64,
    pub v01: f64,
    pub v11: f64,
    pub c00: f64,
    pub c01: f64,
    pub c11: f64,
}

impl NoiseVarianceSet {
    /// Voltage variance for a bit pair.
    pub fn voltage_for(&self, alice_bit: bool, bob_bit: bool) -> f64 {
        match (alice_bit, bob_bit) {
            (false, false) => self.v00,
            (true, true) => self.v11,
            _ => self.v01,
        }
    }

    /// Current variance for a bit pair.
    pub fn current_for(&self, alice_bit: bool, bob_bit: bool) -> f64 {
        match (alice_bit, bob_bit) {
            (false, false) => self.c00,
            (true, true) => self.c11,
            _ => self.c01,
        }
    }
}

/// Gaussian tail function without the input check; for internal use where
/// the argument is known finite.
#[inline]
pub(crate) fn q(x: f64) -> f64 {
    0.5 * libm::erfc(x / std::f64::consts::SQRT_2)
}

/// P(Z > x) for a standard normal Z.
///
/// Monotone nonincreasing in `x`; relative accuracy is a couple of ulp over
/// the range used here (|x| up to ~12). Non-finite input is a domain error.
pub fn q_function(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::domain(format!("q_function: non-finite input {x}")));
    }
    Ok(q(x))
}

/// Mean-square thermal noise voltage `4 k T R df` of a resistor, in volts².
pub fn johnson_voltage_variance(p: &PhysicalParams) -> f64 {
    4.0 * BOLTZMANN_K * p.temperature_t * p.resistance_r * p.bandwidth_df
}

/// Power density spectrum of the noise voltage across two parallel
/// resistors at a common temperature: `4 k T Ra Rb / (Ra + Rb)`, in W/Hz.
pub fn parallel_voltage_psd(temperature_t: f64, ra: f64, rb: f64) -> Result<f64> {
    check_positive("temperature_T", temperature_t)?;
    check_positive("Ra", ra)?;
    check_positive("Rb", rb)?;
    Ok(4.0 * BOLTZMANN_K * temperature_t * (ra * rb) / (ra + rb))
}

/// Power density spectrum of the noise current around the loop formed by
/// two resistors: `4 k T / (Ra + Rb)`, in W/Hz.
pub fn loop_current_psd(temperature_t: f64, ra: f64, rb: f64) -> Result<f64> {
    check_positive("temperature_T", temperature_t)?;
    check_positive("Ra", ra)?;
    check_positive("Rb", rb)?;
    Ok(4.0 * BOLTZMANN_K * temperature_t / (ra + rb))
}

/// Normalized variance ratios for resistance ratio `alpha > 1`.
///
/// Voltage: `1 : 2a/(1+a) : a`. Current: `1 : 2/(1+a) : 1/a`.
pub fn normalized_variances(alpha: f64) -> Result<NoiseVarianceSet> {
    if !(alpha.is_finite() && alpha > 1.0) {
        return Err(Error::domain(format!(
            "alpha must be a finite ratio > 1, got {alpha}"
        )));
    }
    Ok(NoiseVarianceSet {
        v00: 1.0,
        v01: 2.0 * alpha / (1.0 + alpha),
        v11: alpha,
        c00: 1.0,
        c01: 2.0 / (1.0 + alpha),
        c11: 1.0 / alpha,
    })
}

/// Friis free-space path gain `Gt * Gr * (lambda / (4 pi d))^2`.
pub fn friis_path_gain(lb: &LinkBudget) -> f64 {
    let ratio = lb.wavelength / (4.0 * std::f64::consts::PI * lb.distance_d);
    lb.gain_tx * lb.gain_rx * ratio * ratio
}

pub(crate) fn check_positive(name: &str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "{name} must be finite and > 0, got {value}"
        )))
    }
}
