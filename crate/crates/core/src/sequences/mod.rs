// Copyright 2026 The snrg Authors
// SPDX-License-Identifier: Apache-2.0

//! Gate timelines for the Rabi, DPG and SNRG schemes.
//!
//! A [`Sequence`] is an ordered list of [`Segment`]s. Drive segments carry
//! the slow Rabi drive; `DdPulse` segments are the fast inversion pulses of
//! the decoupling sequence. Each segment records the multiplier applied to
//! the gradient detuning (`detuning_sign`) and the frame sign used for phase
//! cycling.
//!
//! Phase cycling works as follows. Every inversion pulse flips `S_z` in the
//! toggling frame; a `Y` pulse additionally flips `S_x`. The frame sign is
//! toggled at each `Y` pulse and the physical drive phase is set to `pi`
//! while it is negative, so every drive segment rotates about `+x` in the
//! toggling frame. For SNRG the gradient sign is also toggled at every pulse,
//! so the gradient detuning keeps its sign in the toggling frame while the
//! bath noise alternates and averages out.

mod timing;
mod waveform;

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::spincore::{propagator_unchecked, Propagator, SpinState};

pub use timing::{pulse_train_u, switching_times, Timings};
pub use waveform::{
    fm_params, render_waveform, CarrierModel, FmSegment, Waveform, WaveformSettings,
};

/// Symmetric XY-8 axis pattern.
pub const XY8_AXES: [PulseAxis; 8] = [
    PulseAxis::X,
    PulseAxis::Y,
    PulseAxis::X,
    PulseAxis::Y,
    PulseAxis::Y,
    PulseAxis::X,
    PulseAxis::Y,
    PulseAxis::X,
];

/// Default inversion pulse length.
pub const DEFAULT_PULSE_DURATION: f64 = 20e-9;

/// Default drive interval between inversion pulses.
pub const DEFAULT_PULSE_SPACING: f64 = 125e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SegmentKind {
    Drive,
    DdPulse,
    Wait,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PulseAxis {
    X,
    Y,
}

impl PulseAxis {
    pub fn phi(self) -> f64 {
        match self {
            PulseAxis::X => 0.0,
            PulseAxis::Y => FRAC_PI_2,
        }
    }
}

/// One piecewise-constant interval of a gate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    pub kind: SegmentKind,
    /// Rabi frequency during the interval, rad/s. Zero for an instantaneous pulse.
    pub omega: f64,
    /// Drive azimuth, rad. For pulses, 0 (X) or pi/2 (Y).
    pub phi: f64,
    /// Multiplier on the gradient detuning: -1, 0 or +1.
    pub detuning_sign: i8,
    /// Interval length, s. Zero only for instantaneous pulses.
    pub duration: f64,
    /// Phase-cycling frame sign in effect during the interval.
    pub frame_sign: i8,
}

impl Segment {
    pub fn drive(omega: f64, phi: f64, detuning_sign: i8, duration: f64, frame_sign: i8) -> Self {
        Self {
            kind: SegmentKind::Drive,
            omega,
            phi,
            detuning_sign,
            duration,
            frame_sign,
        }
    }

    /// A nominal π pulse about `axis`. `duration == 0` makes it instantaneous.
    pub fn pulse(axis: PulseAxis, detuning_sign: i8, duration: f64, frame_sign: i8) -> Self {
        Self {
            kind: SegmentKind::DdPulse,
            omega: if duration > 0.0 { PI / duration } else { 0.0 },
            phi: axis.phi(),
            detuning_sign,
            duration,
            frame_sign,
        }
    }

    pub fn wait(detuning_sign: i8, duration: f64) -> Self {
        Self {
            kind: SegmentKind::Wait,
            omega: 0.0,
            phi: 0.0,
            detuning_sign,
            duration,
            frame_sign: 1,
        }
    }

    pub fn is_pulse(&self) -> bool {
        self.kind == SegmentKind::DdPulse
    }

    /// Nominal rotation angle of the segment.
    pub fn nominal_angle(&self) -> f64 {
        match self.kind {
            SegmentKind::DdPulse => PI,
            _ => self.omega * self.duration,
        }
    }

    /// Propagator with the pulse angle replaced by `pulse_angle` and total
    /// detuning `delta` (gradient contribution already included).
    #[inline]
    pub(crate) fn propagator_with(&self, delta: f64, pulse_angle: f64) -> Propagator {
        match self.kind {
            SegmentKind::DdPulse if self.duration == 0.0 => {
                Propagator::rotation(pulse_angle, self.phi)
            }
            SegmentKind::DdPulse => {
                propagator_unchecked(pulse_angle / self.duration, self.phi, delta, self.duration)
            }
            _ => propagator_unchecked(self.omega, self.phi, delta, self.duration),
        }
    }

    /// Noise-free, ideal-pulse propagator at gradient detuning `delta_z`.
    pub fn ideal_propagator(&self, delta_z: f64) -> Propagator {
        self.propagator_with(f64::from(self.detuning_sign) * delta_z, PI)
    }
}

/// Gate scheme a sequence implements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scheme {
    Rabi,
    DpgCpmg,
    DpgXy8,
    SnrgCpmg,
    SnrgXy8,
}

impl Scheme {
    pub fn name(self) -> &'static str {
        match self {
            Scheme::Rabi => "rabi",
            Scheme::DpgCpmg => "dpg_cpmg",
            Scheme::DpgXy8 => "dpg_xy8",
            Scheme::SnrgCpmg => "snrg_cpmg",
            Scheme::SnrgXy8 => "snrg_xy8",
        }
    }

    pub fn uses_decoupling(self) -> bool {
        self != Scheme::Rabi
    }

    pub fn alternates_gradient(self) -> bool {
        matches!(self, Scheme::SnrgCpmg | Scheme::SnrgXy8)
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "rabi" => Scheme::Rabi,
            "dpg_cpmg" => Scheme::DpgCpmg,
            "dpg_xy8" | "dpg" => Scheme::DpgXy8,
            "snrg_cpmg" => Scheme::SnrgCpmg,
            "snrg_xy8" | "snrg" => Scheme::SnrgXy8,
            other => return domain(format!("unknown scheme '{other}'")),
        })
    }
}

/// An ordered gate timeline.
#[derive(Debug, Clone, PartialEq)]
pub struct Sequence {
    pub segments: Vec<Segment>,
    /// Number of decoupling cycles (1 for Rabi).
    pub n_cycles: usize,
    pub scheme: Scheme,
    /// Target rotation angle, rad.
    pub total_theta: f64,
    /// Gradient-induced detuning amplitude, rad/s.
    pub delta_z: f64,
    /// Rabi frequency of the drive segments, rad/s.
    pub omega: f64,
    /// Inversion pulse length, s.
    pub eps: f64,
}

impl Sequence {
    /// The same timeline compiled at a different gradient detuning.
    pub fn with_delta_z(mut self, delta_z: f64) -> Self {
        self.delta_z = delta_z;
        self
    }

    pub fn wall_time(&self) -> f64 {
        self.segments.iter().map(|s| s.duration).sum()
    }

    /// Accumulated drive time (excludes pulses and waits).
    pub fn drive_time(&self) -> f64 {
        self.segments
            .iter()
            .filter(|s| s.kind == SegmentKind::Drive)
            .map(|s| s.duration)
            .sum()
    }

    pub fn pulse_count(&self) -> usize {
        self.segments.iter().filter(|s| s.is_pulse()).count()
    }

    /// Rotation accrued about `+x` in the toggling frame.
    pub fn accumulated_theta(&self) -> f64 {
        self.segments
            .iter()
            .filter(|s| s.kind == SegmentKind::Drive)
            .map(|s| f64::from(s.frame_sign) * s.omega * s.duration * s.phi.cos())
            .sum()
    }

    /// Boundaries of every segment, starting at 0.
    pub fn boundaries(&self) -> Vec<f64> {
        let mut t = 0.0;
        let mut out = Vec::with_capacity(self.segments.len() + 1);
        out.push(0.0);
        for s in &self.segments {
            t += s.duration;
            out.push(t);
        }
        out
    }

    /// Noise-free propagator with ideal pulses.
    pub fn propagator(&self) -> Propagator {
        self.segments.iter().fold(Propagator::identity(), |acc, s| {
            s.ideal_propagator(self.delta_z) * acc
        })
    }

    /// Final state from `|0>` without noise.
    pub fn ideal_final_state(&self) -> SpinState {
        self.propagator() * SpinState::ground()
    }
}

/// Layout of a symmetric XY-8 gate: `cycles` cycles with drive segments of
/// length `segment`, pulses of length `eps`, and a plain-drive tail appended
/// after the last cycle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Xy8Layout {
    pub cycles: usize,
    pub segment: f64,
    pub eps: f64,
    pub tail: f64,
}

impl Xy8Layout {
    /// Whole cycles of `spacing`-long segments that fit in `drive_time`, the
    /// remainder becoming the tail.
    pub fn for_drive_time(drive_time: f64, spacing: f64, eps: f64) -> Result<Self> {
        if !(spacing > 0.0) || !(eps >= 0.0) || !(drive_time > 0.0) {
            return domain("drive time and spacing must be > 0, eps >= 0");
        }
        let per_cycle = 8.0 * spacing;
        let cycles = (drive_time / per_cycle + 1e-9).floor() as usize;
        if cycles == 0 {
            return Err(Error::Infeasible(format!(
                "drive time {drive_time:e} s is shorter than one XY-8 cycle ({per_cycle:e} s)"
            )));
        }
        let tail = (drive_time - cycles as f64 * per_cycle).max(0.0);
        Ok(Self {
            cycles,
            segment: spacing,
            eps,
            tail: if tail <= 1e-9 * drive_time { 0.0 } else { tail },
        })
    }

    pub fn drive_time(&self) -> f64 {
        8.0 * self.cycles as f64 * self.segment + self.tail
    }
}

fn check_positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        domain(format!("{name} must be > 0, got {v}"))
    }
}

fn check_cycles(n: usize) -> Result<()> {
    if n >= 1 {
        Ok(())
    } else {
        domain("cycle count must be >= 1")
    }
}

/// Continuous drive under a constant gradient.
pub fn build_rabi(omega: f64, theta: f64, phi: f64) -> Result<Sequence> {
    check_positive("omega", omega)?;
    check_positive("theta", theta)?;
    Ok(Sequence {
        segments: vec![Segment::drive(omega, phi, 1, theta / omega, 1)],
        n_cycles: 1,
        scheme: Scheme::Rabi,
        total_theta: theta,
        delta_z: 0.0,
        omega,
        eps: 0.0,
    })
}

fn cpmg(n: usize, theta: f64, omega: f64, eps: f64, alternate: bool) -> Result<Vec<Segment>> {
    check_cycles(n)?;
    check_positive("theta", theta)?;
    check_positive("omega", omega)?;
    if !(eps >= 0.0) {
        return domain("eps must be >= 0");
    }
    let seg = theta / (2 * n) as f64 / omega;
    let pulse_sign = if alternate { 0 } else { 1 };
    let mut out = Vec::with_capacity(4 * n);
    let mut sign = 1i8;
    for _ in 0..2 * n {
        out.push(Segment::drive(omega, 0.0, sign, seg, 1));
        out.push(Segment::pulse(PulseAxis::X, pulse_sign, eps, 1));
        if alternate {
            sign = -sign;
        }
    }
    Ok(out)
}

/// CPMG-protected gate: `2n` drive segments of `theta / 2n`, each followed
/// by a `pi_X` pulse, under a constant gradient.
pub fn build_dpg_cpmg(n: usize, theta: f64, omega: f64, eps: f64) -> Result<Sequence> {
    Ok(Sequence {
        segments: cpmg(n, theta, omega, eps, false)?,
        n_cycles: n,
        scheme: Scheme::DpgCpmg,
        total_theta: theta,
        delta_z: 0.0,
        omega,
        eps,
    })
}

/// CPMG variant of the selective gate: the gradient sign alternates after
/// every `pi_X` and is zero during the pulses.
pub fn build_snrg_cpmg(
    n: usize,
    theta: f64,
    omega: f64,
    eps: f64,
    delta_z: f64,
) -> Result<Sequence> {
    Ok(Sequence {
        segments: cpmg(n, theta, omega, eps, true)?,
        n_cycles: n,
        scheme: Scheme::SnrgCpmg,
        total_theta: theta,
        delta_z,
        omega,
        eps,
    })
}

/// Symmetric XY-8 timeline with phase cycling. With `alternate` the gradient
/// sign flips at every pulse and is zero during pulses (SNRG); otherwise the
/// gradient is constant throughout (DPG).
pub fn build_xy8(layout: &Xy8Layout, omega: f64, alternate: bool) -> Result<Vec<Segment>> {
    check_cycles(layout.cycles)?;
    check_positive("omega", omega)?;
    check_positive("segment", layout.segment)?;
    if !(layout.eps >= 0.0) || !(layout.tail >= 0.0) {
        return domain("eps and tail must be >= 0");
    }
    let pulses = 8 * layout.cycles;
    let pulse_sign = if alternate { 0 } else { 1 };
    let phase = |frame: i8| if frame > 0 { 0.0 } else { PI };
    let mut out = Vec::with_capacity(2 * pulses + 1);
    let mut frame = 1i8;
    let mut sign = 1i8;
    out.push(Segment::drive(
        omega,
        0.0,
        sign,
        0.5 * layout.segment,
        frame,
    ));
    for k in 0..pulses {
        let axis = XY8_AXES[k % 8];
        out.push(Segment::pulse(axis, pulse_sign, layout.eps, frame));
        if axis == PulseAxis::Y {
            frame = -frame;
        }
        if alternate {
            sign = -sign;
        }
        let dur = if k + 1 < pulses {
            layout.segment
        } else {
            0.5 * layout.segment + layout.tail
        };
        out.push(Segment::drive(omega, phase(frame), sign, dur, frame));
    }
    Ok(out)
}

/// XY-8-protected gate under a constant gradient.
///
/// `spacing` is the drive interval between consecutive pulses. The `n`
/// cycles cover `8 n spacing` of drive; any remaining drive time needed to
/// reach `theta` is appended as an unprotected tail.
pub fn build_dpg_xy8(n: usize, theta: f64, omega: f64, eps: f64, spacing: f64) -> Result<Sequence> {
    check_cycles(n)?;
    check_positive("theta", theta)?;
    check_positive("omega", omega)?;
    check_positive("spacing", spacing)?;
    if !(eps >= 0.0) || !(spacing > eps) {
        return domain("need eps >= 0 and spacing > eps");
    }
    let drive = theta / omega;
    let cycles_time = 8.0 * n as f64 * spacing;
    let tail = drive - cycles_time;
    if tail < -1e-9 * drive {
        return Err(Error::Infeasible(format!(
            "{n} cycles of {spacing:e} s segments exceed the drive time {drive:e} s"
        )));
    }
    let layout = Xy8Layout {
        cycles: n,
        segment: spacing,
        eps,
        tail: if tail <= 1e-9 * drive { 0.0 } else { tail },
    };
    Ok(Sequence {
        segments: build_xy8(&layout, omega, false)?,
        n_cycles: n,
        scheme: Scheme::DpgXy8,
        total_theta: theta,
        delta_z: 0.0,
        omega,
        eps,
    })
}

/// Selective noise resistant gate over `n` symmetric XY-8 cycles, with drive
/// segments of `theta / 8n` each.
pub fn build_snrg(n: usize, theta: f64, omega: f64, eps: f64, delta_z: f64) -> Result<Sequence> {
    check_cycles(n)?;
    check_positive("theta", theta)?;
    check_positive("omega", omega)?;
    if !(eps >= 0.0) {
        return domain("eps must be >= 0");
    }
    let layout = Xy8Layout {
        cycles: n,
        segment: theta / omega / (8 * n) as f64,
        eps,
        tail: 0.0,
    };
    build_xy8_scheme(Scheme::SnrgXy8, &layout, theta, omega, delta_z)
}

/// Builds an XY-8 scheme (DPG or SNRG) from an explicit layout.
pub fn build_xy8_scheme(
    scheme: Scheme,
    layout: &Xy8Layout,
    theta: f64,
    omega: f64,
    delta_z: f64,
) -> Result<Sequence> {
    let alternate = match scheme {
        Scheme::DpgXy8 => false,
        Scheme::SnrgXy8 => true,
        other => return domain(format!("{other} is not an XY-8 scheme")),
    };
    Ok(Sequence {
        segments: build_xy8(layout, omega, alternate)?,
        n_cycles: layout.cycles,
        scheme,
        total_theta: theta,
        delta_z,
        omega,
        eps: layout.eps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spincore::{distance_mod_phase, propagator, DriveParams};
    use num_complex::Complex64;
    use proptest::prelude::*;

    fn theta_x(theta: f64, omega: f64, delta: f64) -> Propagator {
        propagator(&DriveParams::new(omega, 0.0, delta, theta / omega)).unwrap()
    }

    #[test]
    fn rabi_examples() {
        let s = build_rabi(1.0, PI, 0.0).unwrap();
        assert_eq!(s.segments.len(), 1);
        assert!((s.segments[0].duration - PI).abs() < 1e-15);
        let omega = 2.0 * PI * 54e3;
        let s = build_rabi(omega, PI, 0.0).unwrap();
        assert!((s.wall_time() - 9.259_259e-6).abs() < 1e-11);
        let s = build_rabi(1.0, 2.0 * PI, 0.0).unwrap();
        assert!(distance_mod_phase(&s.propagator(), &Propagator::identity()) < 1e-12);
        assert!(build_rabi(0.0, PI, 0.0).is_err());
        assert!(build_rabi(1.0, -1.0, 0.0).is_err());
    }

    #[test]
    fn cpmg_structure() {
        let s = build_dpg_cpmg(1, PI, 1.0, 0.0).unwrap();
        let drives: Vec<_> = s.segments.iter().filter(|x| !x.is_pulse()).collect();
        assert_eq!(drives.len(), 2);
        assert_eq!(s.pulse_count(), 2);
        for d in drives {
            assert!((d.nominal_angle() - PI / 2.0).abs() < 1e-15);
        }
        assert!(s.segments.iter().all(|x| x.detuning_sign == 1));
    }

    #[test]
    fn cpmg_refocuses_detuning() {
        let omega = 1.0;
        let s = build_dpg_cpmg(64, PI, omega, 0.0)
            .unwrap()
            .with_delta_z(2.0 * omega);
        let d = distance_mod_phase(&s.propagator(), &theta_x(PI, omega, 0.0));
        assert!(d < 0.05, "{d}");
    }

    #[test]
    fn cpmg_exact_on_resonance() {
        for n in [1, 3, 17] {
            let s = build_dpg_cpmg(n, 1.3, 2.0, 0.0).unwrap();
            assert!(distance_mod_phase(&s.propagator(), &theta_x(1.3, 2.0, 0.0)) < 1e-12);
        }
    }

    /// Hand-multiplied single CPMG cycle of the selective gate: with
    /// `A(d) = exp(-i t (w Sx + d Sz))`, the cycle is `pi_X A(-D) pi_X A(D)`.
    /// Conjugating by `pi_X = -i sigma_x` maps `A(-D)` to `A(D)` and
    /// contributes `(-i)^2 = -1`, so the cycle equals `-A(D)^2`.
    #[test]
    fn snrg_cpmg_cycle_matches_hand_product() {
        let (omega, dz) = (1.0, 0.8);
        let s = build_snrg_cpmg(1, PI, omega, 0.0, dz).unwrap();
        let t = PI / 2.0 / omega;
        let a = propagator(&DriveParams::new(omega, 0.0, dz, t)).unwrap();
        let hand = (a * a).scale(Complex64::new(-1.0, 0.0));
        let got = s.propagator();
        for r in 0..2 {
            for c in 0..2 {
                assert!((got.matrix()[r][c] - hand.matrix()[r][c]).norm() < 1e-14);
            }
        }
        assert!(distance_mod_phase(&got, &theta_x(PI, omega, dz)) < 1e-12);
    }

    #[test]
    fn xy8_pulse_count_and_cycle_time() {
        let s = build_dpg_xy8(1, 2.0 * PI * 54e3 * 1e-6, 2.0 * PI * 54e3, 20e-9, 125e-9).unwrap();
        assert_eq!(s.pulse_count(), 8);
        assert!((s.wall_time() - 1.16e-6).abs() < 1e-15);
        let s = build_dpg_xy8(3, 2.0 * PI * 54e3 * 3e-6, 2.0 * PI * 54e3, 20e-9, 125e-9).unwrap();
        assert_eq!(s.pulse_count(), 24);
        assert!((s.wall_time() - 3.0 * 1.16e-6).abs() < 1e-15);
    }

    #[test]
    fn xy8_infeasible_geometry() {
        // 2 cycles need 2 us of drive; theta/omega is 1 us
        let omega = 2.0 * PI * 54e3;
        assert!(matches!(
            build_dpg_xy8(2, omega * 1e-6, omega, 20e-9, 125e-9),
            Err(Error::Infeasible(_))
        ));
        assert!(build_dpg_xy8(1, omega * 1e-6, omega, 200e-9, 125e-9).is_err());
    }

    #[test]
    fn xy8_dpg_exact_on_resonance() {
        let omega = 2.0 * PI * 54e3;
        let theta = omega * 2.3e-6;
        let s = build_dpg_xy8(2, theta, omega, 0.0, 125e-9).unwrap();
        assert!(distance_mod_phase(&s.propagator(), &theta_x(theta, omega, 0.0)) < 1e-10);
    }

    #[test]
    fn snrg_reduces_to_dpg_without_gradient() {
        let (n, theta, omega) = (3, 2.1, 1.7);
        let snrg = build_snrg(n, theta, omega, 0.0, 0.0).unwrap();
        let spacing = theta / omega / (8 * n) as f64;
        let dpg = build_dpg_xy8(n, theta, omega, 0.0, spacing * (1.0 - 1e-13)).unwrap();
        let d = distance_mod_phase(&snrg.propagator(), &dpg.propagator());
        assert!(d < 1e-10, "{d}");
    }

    #[test]
    fn snrg_gradient_pattern() {
        let s = build_snrg(2, PI, 1.0, 1e-3, 0.5).unwrap();
        let drives: Vec<i8> = s
            .segments
            .iter()
            .filter(|x| x.kind == SegmentKind::Drive)
            .map(|x| x.detuning_sign)
            .collect();
        assert!(drives.windows(2).all(|w| w[0] == -w[1]));
        assert!(s
            .segments
            .iter()
            .filter(|x| x.is_pulse())
            .all(|x| x.detuning_sign == 0));
        assert_eq!(s.pulse_count(), 16);
    }

    #[test]
    fn phase_inverted_after_each_y() {
        let s = build_snrg(1, PI, 1.0, 0.0, 0.0).unwrap();
        let mut frame = 1;
        let mut last_axis_y = false;
        for seg in &s.segments {
            if seg.is_pulse() {
                last_axis_y = seg.phi != 0.0;
                continue;
            }
            if last_axis_y {
                frame = -frame;
                last_axis_y = false;
            }
            assert_eq!(seg.frame_sign, frame);
            let expected = if frame > 0 { 0.0 } else { PI };
            assert_eq!(seg.phi, expected);
        }
    }

    #[test]
    fn xy8_layout_quantization() {
        let l = Xy8Layout::for_drive_time(9.259e-6, 125e-9, 20e-9).unwrap();
        assert_eq!(l.cycles, 9);
        assert!((l.tail - 0.259e-6).abs() < 1e-12);
        assert!((l.drive_time() - 9.259e-6).abs() < 1e-15);
        let l = Xy8Layout::for_drive_time(3e-6, 125e-9, 20e-9).unwrap();
        assert_eq!((l.cycles, l.tail), (3, 0.0));
        assert!(matches!(
            Xy8Layout::for_drive_time(0.9e-6, 125e-9, 20e-9),
            Err(Error::Infeasible(_))
        ));
    }

    #[test]
    fn scheme_names_round_trip() {
        for s in [
            Scheme::Rabi,
            Scheme::DpgCpmg,
            Scheme::DpgXy8,
            Scheme::SnrgCpmg,
            Scheme::SnrgXy8,
        ] {
            assert_eq!(s.name().parse::<Scheme>().unwrap(), s);
        }
        assert!("xy16".parse::<Scheme>().is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn theta_accounting(
            n in 1usize..12,
            theta in 0.1f64..(2.0 * PI),
            omega in 0.5f64..5.0,
            eps in 0.0f64..0.01,
            dz in -3.0f64..3.0,
        ) {
            for s in [
                build_snrg(n, theta, omega, eps, dz).unwrap(),
                build_dpg_cpmg(n, theta, omega, eps).unwrap(),
                build_snrg_cpmg(n, theta, omega, eps, dz).unwrap(),
            ] {
                prop_assert!((s.accumulated_theta() - theta).abs() < 1e-9);
            }
        }

        #[test]
        fn snrg_is_exact_detuned_rotation(
            n in 1usize..=32,
            theta in 0.01f64..=(2.0 * PI),
            r in -5.0f64..5.0,
        ) {
            let omega = 1.0;
            let s = build_snrg(n, theta, omega, 0.0, r * omega).unwrap();
            let d = distance_mod_phase(&s.propagator(), &theta_x(theta, omega, r * omega));
            prop_assert!(d < 1e-9, "{}", d);
        }
    }
}
