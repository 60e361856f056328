// Copyright 2026 The snrg Authors
// SPDX-License-Identifier: Apache-2.0

//! Run configuration in lab units.
//!
//! Configs are TOML. Frequencies are in kHz (ordinary, not angular), times
//! in µs or ns and fields in gauss or mG; every key carries its unit as a
//! suffix. Conversion to the library's rad/s and seconds happens here and
//! nowhere else.
//!
//! ```toml
//! name = "example"
//! scheme = "snrg_xy8"   # rabi | dpg_cpmg | dpg_xy8 | snrg_cpmg | snrg_xy8
//! seed = 1
//! shots = 20000
//!
//! [gate]
//! omega_khz = 54.0      # Rabi frequency
//! theta_pi = 1.0        # rotation angle in units of pi
//! delta_z_khz = 0.0     # gradient detuning (waveform export)
//! pulse_ns = 20.0       # decoupling pulse length
//! spacing_ns = 125.0    # drive time between pulses
//! # cycles = 9          # fixed XY-8 cycle count (default: fit to spacing)
//!
//! [noise]
//! mode = "ou"           # none | quasi_static | ou
//! b_khz = 42.0          # bath coupling
//! tau_c_us = 230.0      # bath correlation time
//! sigma_dd = 0.085      # pulse-angle error (fraction of pi)
//! pulse_errors = "per_shot"   # per_shot | per_pulse
//! step_us = 0.5         # longest drive interval with a frozen bath
//!
//! [bandwidth]
//! step = 0.25           # search grid, units of the Rabi frequency
//! r_max = 5.0
//! threshold = 0.1
//! rel_tol = 1e-3
//! shots = 2000          # shots per point of the fidelity curve
//!
//! [scan]
//! kind = "detuning_time"   # detuning_time | omega_detuning | enhancement
//! schemes = ["rabi"]
//! detuning_khz = { start = -150.0, stop = 150.0, points = 31 }
//! time_us = { start = 0.0, stop = 20.0, points = 21 }
//! # omega_khz = { values = [10.0, 20.0, 54.0] }
//!
//! [waveform]
//! sample_rate_mhz = 50.0
//! carrier = "baseband"  # baseband | rf
//! b0_gauss = 380.0
//! b1_mg = 70.0
//!
//! [fit]
//! target = "ou"         # ou | dd
//! b_khz = [34.0, 38.0, 42.0, 46.0, 50.0]
//! tau_c_us = [115.0, 230.0, 460.0]
//! ```

use serde::{Deserialize, Serialize};

use crate::engine::{BandwidthOptions, NoiseMode, SchemeSpec, ShotConfig};
use crate::error::{domain, Result};
use crate::noise::{DdImperfection, OuParams, PulseErrorModel};
use crate::sequences::{CarrierModel, Scheme, WaveformSettings};
use crate::units::{khz_to_angular, mg_to_gauss, ns_to_s, us_to_s, GAMMA_HZ_PER_GAUSS};

macro_rules! defaults {
    ($($name:ident: $ty:ty = $v:expr;)*) => {
        $(fn $name() -> $ty { $v })*
    };
}

defaults! {
    d_scheme: Scheme = Scheme::SnrgXy8;
    d_seed: u64 = 1;
    d_shots: usize = crate::engine::DEFAULT_REPORT_SHOTS;
    d_omega: f64 = 54.0;
    d_theta: f64 = 1.0;
    d_pulse: f64 = 20.0;
    d_spacing: f64 = 125.0;
    d_mode: NoiseMode = NoiseMode::Ou;
    d_b: f64 = 42.0;
    d_tau: f64 = 230.0;
    d_sigma: f64 = 0.085;
    d_step_us: f64 = 0.5;
    d_bw_step: f64 = 0.25;
    d_r_max: f64 = 5.0;
    d_threshold: f64 = 0.1;
    d_rel_tol: f64 = 1e-3;
    d_curve_shots: usize = crate::engine::DEFAULT_SCAN_SHOTS;
    d_gamma: f64 = GAMMA_HZ_PER_GAUSS / 1e6;
    d_b0: f64 = 380.0;
    d_b1: f64 = 70.0;
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default)]
    pub name: String,
    #[serde(default = "d_scheme")]
    pub scheme: Scheme,
    #[serde(default = "d_seed")]
    pub seed: u64,
    #[serde(default = "d_shots")]
    pub shots: usize,
    /// Output path; subcommands pick a default from `name` when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<String>,
    #[serde(default)]
    pub gate: GateSection,
    #[serde(default)]
    pub noise: NoiseSection,
    #[serde(default)]
    pub bandwidth: BandwidthSection,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scan: Option<ScanSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub waveform: Option<WaveformSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fit: Option<FitSection>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GateSection {
    #[serde(default = "d_omega")]
    pub omega_khz: f64,
    #[serde(default = "d_theta")]
    pub theta_pi: f64,
    #[serde(default)]
    pub delta_z_khz: f64,
    #[serde(default = "d_pulse")]
    pub pulse_ns: f64,
    #[serde(default = "d_spacing")]
    pub spacing_ns: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cycles: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NoiseSection {
    #[serde(default = "d_mode")]
    pub mode: NoiseMode,
    #[serde(default = "d_b")]
    pub b_khz: f64,
    #[serde(default = "d_tau")]
    pub tau_c_us: f64,
    #[serde(default = "d_sigma")]
    pub sigma_dd: f64,
    #[serde(default)]
    pub pulse_errors: PulseErrorModel,
    #[serde(default = "d_step_us")]
    pub step_us: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BandwidthSection {
    #[serde(default = "d_bw_step")]
    pub step: f64,
    #[serde(default = "d_r_max")]
    pub r_max: f64,
    #[serde(default = "d_threshold")]
    pub threshold: f64,
    #[serde(default = "d_rel_tol")]
    pub rel_tol: f64,
    #[serde(default = "d_curve_shots")]
    pub shots: usize,
}

/// Either an evenly spaced range or explicit values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Grid {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub start: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stop: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub values: Option<Vec<f64>>,
}

impl Grid {
    pub fn range(start: f64, stop: f64, points: usize) -> Self {
        Self {
            start: Some(start),
            stop: Some(stop),
            points: Some(points),
            values: None,
        }
    }

    pub fn values(values: Vec<f64>) -> Self {
        Self {
            start: None,
            stop: None,
            points: None,
            values: Some(values),
        }
    }

    /// Grid points in the config's own units.
    pub fn resolve(&self, key: &str) -> Result<Vec<f64>> {
        match (self.start, self.stop, self.points, &self.values) {
            (None, None, None, Some(v)) if !v.is_empty() => Ok(v.clone()),
            (Some(a), Some(b), Some(n), None) if n >= 1 => {
                if n == 1 {
                    return Ok(vec![a]);
                }
                let h = (b - a) / (n - 1) as f64;
                Ok((0..n)
                    .map(|k| if k + 1 == n { b } else { a + k as f64 * h })
                    .collect())
            }
            _ => domain(format!(
                "grid `{key}` needs either `values` or all of `start`, `stop`, `points`"
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScanKind {
    DetuningTime,
    OmegaDetuning,
    Enhancement,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScanSection {
    pub kind: ScanKind,
    #[serde(default)]
    pub schemes: Vec<Scheme>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detuning_khz: Option<Grid>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub time_us: Option<Grid>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega_khz: Option<Grid>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WaveformSection {
    pub sample_rate_mhz: f64,
    #[serde(default = "d_carrier")]
    pub carrier: CarrierModel,
    #[serde(default = "d_gamma")]
    pub gamma_mhz_per_gauss: f64,
    #[serde(default = "d_b0")]
    pub b0_gauss: f64,
    #[serde(default = "d_b1")]
    pub b1_mg: f64,
}

fn d_carrier() -> CarrierModel {
    CarrierModel::Baseband
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FitTarget {
    /// Bath parameters from a Rabi decay.
    Ou,
    /// Pulse-angle error from an on-resonance gate slice.
    Dd,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FitSection {
    pub target: FitTarget,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub b_khz: Vec<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub tau_c_us: Vec<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub sigma: Vec<f64>,
}

impl Default for GateSection {
    fn default() -> Self {
        Self {
            omega_khz: d_omega(),
            theta_pi: d_theta(),
            delta_z_khz: 0.0,
            pulse_ns: d_pulse(),
            spacing_ns: d_spacing(),
            cycles: None,
        }
    }
}

impl Default for NoiseSection {
    fn default() -> Self {
        Self {
            mode: d_mode(),
            b_khz: d_b(),
            tau_c_us: d_tau(),
            sigma_dd: d_sigma(),
            pulse_errors: PulseErrorModel::default(),
            step_us: d_step_us(),
        }
    }
}

impl Default for BandwidthSection {
    fn default() -> Self {
        Self {
            step: d_bw_step(),
            r_max: d_r_max(),
            threshold: d_threshold(),
            rel_tol: d_rel_tol(),
            shots: d_curve_shots(),
        }
    }
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            name: String::new(),
            scheme: d_scheme(),
            seed: d_seed(),
            shots: d_shots(),
            out: None,
            gate: GateSection::default(),
            noise: NoiseSection::default(),
            bandwidth: BandwidthSection::default(),
            scan: None,
            waveform: None,
            fit: None,
        }
    }
}

/// Configs shipped with the crate, by name.
pub const BUNDLED: &[(&str, &str)] = &[
    ("paper_snrg", include_str!("../../configs/paper_snrg.toml")),
    ("paper_rabi", include_str!("../../configs/paper_rabi.toml")),
    ("paper_dpg", include_str!("../../configs/paper_dpg.toml")),
    ("ideal_rabi", include_str!("../../configs/ideal_rabi.toml")),
    (
        "paper_fig4_rabi",
        include_str!("../../configs/paper_fig4_rabi.toml"),
    ),
    (
        "paper_fig4_dpg",
        include_str!("../../configs/paper_fig4_dpg.toml"),
    ),
    (
        "paper_fig4_snrg",
        include_str!("../../configs/paper_fig4_snrg.toml"),
    ),
    ("paper_fig5", include_str!("../../configs/paper_fig5.toml")),
    (
        "paper_fig12",
        include_str!("../../configs/paper_fig12.toml"),
    ),
    (
        "paper_fit_ou",
        include_str!("../../configs/paper_fit_ou.toml"),
    ),
    (
        "paper_fit_dd",
        include_str!("../../configs/paper_fit_dd.toml"),
    ),
    (
        "snrg_waveform",
        include_str!("../../configs/snrg_waveform.toml"),
    ),
];

/// Text of a bundled config.
pub fn bundled(name: &str) -> Option<&'static str> {
    BUNDLED.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

impl RunConfig {
    pub fn from_toml(text: &str) -> std::result::Result<Self, toml::de::Error> {
        toml::from_str(text)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config always serializes")
    }

    /// Display name used for default output paths.
    pub fn stem(&self) -> &str {
        if self.name.is_empty() {
            "snrg"
        } else {
            &self.name
        }
    }

    pub fn omega(&self) -> f64 {
        khz_to_angular(self.gate.omega_khz)
    }

    pub fn delta_z(&self) -> f64 {
        khz_to_angular(self.gate.delta_z_khz)
    }

    pub fn scheme_spec(&self, scheme: Scheme) -> Result<SchemeSpec> {
        let g = &self.gate;
        for (key, v) in [
            ("gate.omega_khz", g.omega_khz),
            ("gate.theta_pi", g.theta_pi),
            ("gate.spacing_ns", g.spacing_ns),
        ] {
            if !(v > 0.0) || !v.is_finite() {
                return domain(format!("`{key}` must be > 0, got {v}"));
            }
        }
        if !(g.pulse_ns >= 0.0) {
            return domain(format!("`gate.pulse_ns` must be >= 0, got {}", g.pulse_ns));
        }
        if g.cycles == Some(0) {
            return domain("`gate.cycles` must be >= 1");
        }
        Ok(SchemeSpec {
            scheme,
            omega: self.omega(),
            theta: g.theta_pi * std::f64::consts::PI,
            eps: ns_to_s(g.pulse_ns),
            spacing: ns_to_s(g.spacing_ns),
            cycles: g.cycles,
        })
    }

    pub fn shot_config(&self) -> Result<ShotConfig> {
        let n = &self.noise;
        let ou = OuParams::new(khz_to_angular(n.b_khz), us_to_s(n.tau_c_us))
            .map_err(|e| crate::Error::Domain(format!("[noise] {e}")))?;
        let dd_imp = DdImperfection::new(n.sigma_dd)
            .map_err(|e| crate::Error::Domain(format!("`noise.sigma_dd`: {e}")))?;
        if self.shots == 0 {
            return domain("`shots` must be >= 1");
        }
        if !(n.step_us > 0.0) {
            return domain("`noise.step_us` must be > 0");
        }
        Ok(ShotConfig {
            noise_mode: n.mode,
            ou,
            dd_imp,
            pulse_errors: n.pulse_errors,
            seed: self.seed,
            shots: self.shots,
            noise_step: us_to_s(n.step_us),
        })
    }

    pub fn bandwidth_options(&self) -> Result<BandwidthOptions> {
        let b = &self.bandwidth;
        if !(b.step > 0.0) || !(b.r_max > 0.0) || !(b.rel_tol > 0.0) || b.shots == 0 {
            return domain("[bandwidth] step, r_max, rel_tol and shots must be > 0");
        }
        Ok(BandwidthOptions {
            step: b.step,
            r_max: b.r_max,
            threshold: b.threshold,
            rel_tol: b.rel_tol,
            shots: Some(b.shots),
        })
    }

    pub fn waveform_settings(&self) -> Result<WaveformSettings> {
        let Some(w) = &self.waveform else {
            return domain("config has no [waveform] section");
        };
        Ok(WaveformSettings {
            sample_rate: w.sample_rate_mhz * 1e6,
            gamma: w.gamma_mhz_per_gauss * 1e6,
            b0: w.b0_gauss,
            b1: mg_to_gauss(w.b1_mg),
            carrier: w.carrier,
        })
    }
}
