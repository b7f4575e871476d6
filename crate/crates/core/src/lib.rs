//! Thermal-noise communication (TherCom) toolkit.
//!
//! Information is carried by the *power* of a noise waveform rather than by a
//! deterministic signal: a transmitter indexes one of two resistors and the
//! receiver distinguishes the two resulting noise-variance levels from a
//! limited number of samples. Two schemes are covered:
//!
//! * **KLJN** (wired): Alice and Bob each connect a low- or high-valued
//!   resistor to a shared wire per bit interval. The line noise variance
//!   takes one of three levels (low/intermediate/high for the bit pairs
//!   `00`, `01`/`10`, `11`), and each party decodes the partner bit from
//!   estimated voltage and/or current variance, using its own bit as the
//!   key. Exchanges where the bits differ are secure against a passive
//!   eavesdropper: she sees the intermediate level but cannot tell which
//!   party holds which bit. See [`kljn`].
//! * **TherMod** (wireless): a single transmitter indexes the resistor and a
//!   receiver thresholds the estimated complex-baseband sample variance.
//!   See [`thermod`].
//!
//! The crate provides closed-form bit-error-probability evaluators for four
//! KLJN detectors and the TherMod receiver ([`kljn`], [`thermod`]), a seeded
//! and chunk-parallel Monte Carlo engine ([`simulate`]), and grid-search
//! threshold optimization ([`optimize`]). All detection theory works on
//! variance *ratios* (the low-level variance normalized to 1), so results
//! depend only on the resistance ratio `alpha`, the samples per bit `n`,
//! the thresholds, and (for TherMod) the quality metric `delta`. Physical
//! Johnson–Nyquist and link-budget formulas live in [`math`] for reporting
//! purposes only.

pub mod error;
pub mod kljn;
pub mod math;
pub mod optimize;
pub mod simulate;
pub mod thermod;

pub use error::{Error, Result};
