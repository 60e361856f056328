// Copyright 2026 The snrg Authors
// SPDX-License-Identifier: Apache-2.0

//! Conversion between laboratory units and the internal SI/angular units.

use std::f64::consts::PI;

/// Gyromagnetic ratio of the NV electron spin, Hz per gauss.
pub const GAMMA_HZ_PER_GAUSS: f64 = 2.8e6;

/// NV ground-state zero-field splitting, Hz.
pub const ZERO_FIELD_SPLITTING_HZ: f64 = 2.870e9;

/// kHz (ordinary frequency) to rad/s.
pub fn khz_to_angular(khz: f64) -> f64 {
    2.0 * PI * khz * 1e3
}

/// rad/s to kHz.
pub fn angular_to_khz(omega: f64) -> f64 {
    omega / (2.0 * PI * 1e3)
}

pub fn hz_to_angular(hz: f64) -> f64 {
    2.0 * PI * hz
}

pub fn angular_to_hz(omega: f64) -> f64 {
    omega / (2.0 * PI)
}

pub fn us_to_s(us: f64) -> f64 {
    us * 1e-6
}

pub fn s_to_us(s: f64) -> f64 {
    s * 1e6
}

pub fn ns_to_s(ns: f64) -> f64 {
    ns * 1e-9
}

pub fn s_to_ns(s: f64) -> f64 {
    s * 1e9
}

pub fn mg_to_gauss(mg: f64) -> f64 {
    mg * 1e-3
}

pub fn gauss_to_mg(g: f64) -> f64 {
    g * 1e3
}

/// Spin transition frequency shift (Hz) produced by a longitudinal field
/// change of `gauss`.
pub fn field_to_hz(gauss: f64, gamma: f64) -> f64 {
    gamma * gauss
}

/// Longitudinal field (G) whose Zeeman shift equals the angular detuning.
pub fn angular_to_field(omega: f64, gamma: f64) -> f64 {
    angular_to_hz(omega) / gamma
}

/// Qubit (|0> to |-1>) transition frequency at longitudinal field `bz`.
pub fn transition_frequency_hz(bz_gauss: f64) -> f64 {
    ZERO_FIELD_SPLITTING_HZ - GAMMA_HZ_PER_GAUSS * bz_gauss
}
