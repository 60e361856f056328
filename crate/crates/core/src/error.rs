// Copyright 2026 The snrg Authors
// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

/// Errors produced by the simulation library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A sequence cannot be laid out with the requested timing.
    #[error("infeasible sequence geometry: {0}")]
    Infeasible(String),

    /// A fidelity curve never drops below the bandwidth threshold.
    #[error("no threshold crossing below r = {r_max} (threshold {threshold})")]
    NoCrossing { r_max: f64, threshold: f64 },

    /// The on-resonance fidelity is already at or below the threshold.
    #[error("on-resonance failure: F(0) = {fidelity} is not above threshold {threshold}")]
    OnResonanceFailure { fidelity: f64, threshold: f64 },

    /// Rendering would alias the highest instantaneous frequency.
    #[error("undersampling: sample rate {sample_rate} Hz is below 10x the highest frequency {max_frequency} Hz")]
    Undersampled {
        sample_rate: f64,
        max_frequency: f64,
    },

    /// Fit data carry no information about the parameters.
    #[error("unidentifiable fit: {0}")]
    Unidentifiable(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
