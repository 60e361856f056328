// Copyright 2026 The snrg Authors
// SPDX-License-Identifier: Apache-2.0

//! Monte Carlo evaluation of gate sequences.
//!
//! A shot starts in `|0>`, runs every segment of a [`Sequence`] under one
//! realization of the bath detuning and the pulse-angle errors, and ends in
//! a projective measurement of `|-1>`. Ensembles average shots; scans,
//! reports and fits are built on top of ensembles.
//!
//! Shot `k` draws its bath noise from stream `2k` and its pulse errors from
//! stream `2k + 1` of the master seed. Two ensembles with the same seed
//! therefore see the same noise at every detuning (common random numbers),
//! and the result is the same for any number of worker threads.

mod ensemble;
mod fit;
mod report;
mod scan;

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::noise::{DdImperfection, OuParams, PulseErrorModel};
use crate::sequences::{
    build_dpg_cpmg, build_dpg_xy8, build_rabi, build_snrg, build_snrg_cpmg, build_xy8_scheme,
    Scheme, Sequence, Xy8Layout, DEFAULT_PULSE_DURATION, DEFAULT_PULSE_SPACING,
};

pub use ensemble::{
    rabi_decay_curve, run_ensemble, shot_streams, simulate_shot, with_threads, Ensemble,
};
pub use fit::{fit_dd_imperfection, fit_ou, DdFit, OuFit, OuGridPoint, SigmaGridPoint};
pub use report::{
    enhancement_scan, scheme_report, Bandwidth, BandwidthOptions, Convention, EnhancementRow,
    SchemeReport, MIN_FIDELITY_FOR_BANDWIDTH,
};
pub use scan::{scan_detuning_time, scan_omega_detuning, ScanAxis, ScanResult};

/// Default shots per cell of a 2-D scan.
pub const DEFAULT_SCAN_SHOTS: usize = 2_000;

/// Default shots for a scalar fidelity report.
pub const DEFAULT_REPORT_SHOTS: usize = 20_000;

/// Default longest drive interval over which the bath detuning is held fixed.
pub const DEFAULT_NOISE_STEP: f64 = 0.5e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NoiseMode {
    None,
    /// One detuning per shot.
    QuasiStatic,
    /// OU detuning, redrawn per segment.
    Ou,
}

impl NoiseMode {
    pub fn name(self) -> &'static str {
        match self {
            NoiseMode::None => "none",
            NoiseMode::QuasiStatic => "quasi_static",
            NoiseMode::Ou => "ou",
        }
    }
}

/// Noise, imperfection and sampling settings shared by every shot.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShotConfig {
    pub noise_mode: NoiseMode,
    pub ou: OuParams,
    pub dd_imp: DdImperfection,
    pub pulse_errors: PulseErrorModel,
    pub seed: u64,
    pub shots: usize,
    /// Drive segments longer than this are split so the OU detuning can
    /// drift within them, s.
    pub noise_step: f64,
}

impl ShotConfig {
    /// No noise and perfect pulses.
    pub fn noiseless(shots: usize) -> Self {
        Self {
            noise_mode: NoiseMode::None,
            ou: OuParams { b: 0.0, tau_c: 1.0 },
            dd_imp: DdImperfection::none(),
            pulse_errors: PulseErrorModel::PerShot,
            seed: 0,
            shots,
            noise_step: DEFAULT_NOISE_STEP,
        }
    }

    /// OU bath of an NV center (2π·42 kHz, 230 µs) with σ_DD = 0.085.
    pub fn nv_defaults(seed: u64, shots: usize) -> Self {
        Self {
            noise_mode: NoiseMode::Ou,
            ou: OuParams::nv_bath(),
            dd_imp: DdImperfection { sigma: 0.085 },
            pulse_errors: PulseErrorModel::PerShot,
            seed,
            shots,
            noise_step: DEFAULT_NOISE_STEP,
        }
    }

    pub fn with_shots(mut self, shots: usize) -> Self {
        self.shots = shots;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.shots == 0 {
            return domain("shots must be >= 1");
        }
        if !(self.noise_step > 0.0) {
            return domain("noise_step must be > 0");
        }
        OuParams::new(self.ou.b, self.ou.tau_c)?;
        DdImperfection::new(self.dd_imp.sigma)?;
        Ok(())
    }

    /// True when every shot would give the same result.
    pub(crate) fn is_deterministic(&self, seq: &Sequence) -> bool {
        let quiet = self.noise_mode == NoiseMode::None || self.ou.b == 0.0;
        quiet && (self.dd_imp.sigma == 0.0 || seq.pulse_count() == 0)
    }
}

/// Mean with its standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub mean: f64,
    pub stderr: f64,
}

/// How to compile a scheme at a given rotation angle and detuning.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchemeSpec {
    pub scheme: Scheme,
    /// Rabi frequency, rad/s.
    pub omega: f64,
    /// Target rotation, rad.
    pub theta: f64,
    /// Inversion pulse length, s.
    pub eps: f64,
    /// Drive interval between inversion pulses, s.
    pub spacing: f64,
    /// Fixed cycle count. `None` fits as many whole cycles of `spacing` as
    /// the drive time allows and appends the rest as a plain-drive tail.
    pub cycles: Option<usize>,
}

impl SchemeSpec {
    /// A π gate with 20 ns pulses every 125 ns of drive.
    pub fn new(scheme: Scheme, omega: f64) -> Self {
        Self {
            scheme,
            omega,
            theta: PI,
            eps: DEFAULT_PULSE_DURATION,
            spacing: DEFAULT_PULSE_SPACING,
            cycles: None,
        }
    }

    pub fn with_scheme(mut self, scheme: Scheme) -> Self {
        self.scheme = scheme;
        self
    }

    pub fn with_omega(mut self, omega: f64) -> Self {
        self.omega = omega;
        self
    }

    /// Compiles the gate at `delta_z`.
    pub fn build(&self, delta_z: f64) -> Result<Sequence> {
        self.compile(self.theta, self.cycles, delta_z)
    }

    /// Compiles the gate for a given total drive time instead of `theta`.
    /// The cycle count follows from `spacing`; any fixed `cycles` is ignored.
    pub fn build_for_drive_time(&self, drive_time: f64, delta_z: f64) -> Result<Sequence> {
        if !(self.omega > 0.0) {
            return domain("omega must be > 0");
        }
        self.compile(self.omega * drive_time, None, delta_z)
    }

    fn compile(&self, theta: f64, cycles: Option<usize>, delta_z: f64) -> Result<Sequence> {
        let (omega, eps) = (self.omega, self.eps);
        let drive = theta / omega;
        let seq = match self.scheme {
            Scheme::Rabi => build_rabi(omega, theta, 0.0)?,
            Scheme::DpgCpmg | Scheme::SnrgCpmg => {
                let n = match cycles {
                    Some(n) => n,
                    None => (drive / (2.0 * self.spacing) + 1e-9).floor() as usize,
                };
                if n == 0 {
                    return Err(Error::Infeasible(format!(
                        "drive time {drive:e} s is shorter than one CPMG cycle"
                    )));
                }
                if self.scheme == Scheme::DpgCpmg {
                    build_dpg_cpmg(n, theta, omega, eps)?
                } else {
                    build_snrg_cpmg(n, theta, omega, eps, delta_z)?
                }
            }
            Scheme::DpgXy8 => match cycles {
                Some(n) => build_dpg_xy8(n, theta, omega, eps, self.spacing)?,
                None => {
                    let layout = Xy8Layout::for_drive_time(drive, self.spacing, eps)?;
                    build_xy8_scheme(Scheme::DpgXy8, &layout, theta, omega, delta_z)?
                }
            },
            Scheme::SnrgXy8 => match cycles {
                Some(n) => build_snrg(n, theta, omega, eps, delta_z)?,
                None => {
                    let layout = Xy8Layout::for_drive_time(drive, self.spacing, eps)?;
                    build_xy8_scheme(Scheme::SnrgXy8, &layout, theta, omega, delta_z)?
                }
            },
        };
        Ok(seq.with_delta_z(delta_z))
    }
}
