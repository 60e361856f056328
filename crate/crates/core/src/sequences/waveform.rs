// Copyright 2026 The snrg Authors
// SPDX-License-Identifier: Apache-2.0

//! Frequency-modulated drive synthesis for export to an arbitrary waveform
//! generator.
//!
//! While the longitudinal field steps between values the drive has to follow
//! the accumulated spin phase `2 pi gamma int_0^t B_z(s) ds`, so each segment
//! gets its own carrier frequency and a phase offset that keeps the phase
//! continuous across the switch.

use std::f64::consts::PI;
use std::io::{self, Write};

use serde::{Deserialize, Serialize};

use super::{Scheme, SegmentKind, Sequence};
use crate::error::{domain, Error, Result};
use crate::format;

/// How the drive channel is rendered.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CarrierModel {
    /// I/Q envelope relative to a fixed carrier at `gamma * b0`.
    Baseband,
    /// The full oscillating field `B_x(t)`.
    Rf,
}

impl CarrierModel {
    pub fn name(self) -> &'static str {
        match self {
            CarrierModel::Baseband => "baseband",
            CarrierModel::Rf => "rf",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveformSettings {
    /// Samples per second.
    pub sample_rate: f64,
    /// Gyromagnetic ratio, Hz per gauss.
    pub gamma: f64,
    /// Static bias field, G.
    pub b0: f64,
    /// Gradient field amplitude at the target spin, G.
    pub b1: f64,
    pub carrier: CarrierModel,
}

/// Carrier of one constant-field segment: `cos(2 pi f t - phase_offset)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FmSegment {
    /// Instantaneous drive frequency, Hz.
    pub frequency: f64,
    /// Phase subtracted from `2 pi f t`, rad.
    pub phase_offset: f64,
}

/// Carrier frequency and phase offset per `(field, duration)` segment such
/// that the concatenated carrier tracks `2 pi gamma int B_z`.
pub fn fm_params(bz_segments: &[(f64, f64)], gamma: f64) -> Result<Vec<FmSegment>> {
    if bz_segments.is_empty() {
        return domain("fm_params needs at least one field segment");
    }
    let mut out = Vec::with_capacity(bz_segments.len());
    let mut start = 0.0;
    // accumulated cycles, sum_j f_j d_j
    let mut cycles = 0.0;
    for &(b, duration) in bz_segments {
        if !(duration >= 0.0) {
            return domain(format!("segment duration must be >= 0, got {duration}"));
        }
        let f = gamma * b;
        out.push(FmSegment {
            frequency: f,
            phase_offset: 2.0 * PI * (f * start - cycles),
        });
        cycles += f * duration;
        start += duration;
    }
    Ok(out)
}

/// Drive channels of a rendered waveform.
#[derive(Debug, Clone, PartialEq)]
pub enum DriveChannels {
    Baseband { i: Vec<f64>, q: Vec<f64> },
    Rf { bx: Vec<f64> },
}

/// Sampled, time-aligned channels of a gate.
#[derive(Debug, Clone, PartialEq)]
pub struct Waveform {
    pub settings: WaveformSettings,
    pub scheme: Scheme,
    pub omega: f64,
    pub theta: f64,
    pub cycles: usize,
    pub eps: f64,
    pub wall_time: f64,
    pub t: Vec<f64>,
    /// `U(t) * b1`, G.
    pub gradient: Vec<f64>,
    pub drive: DriveChannels,
    /// 1 during inversion pulses.
    pub marker: Vec<u8>,
    /// Accumulated phase `2 pi gamma int B_z` at each segment boundary.
    pub boundary_phase: Vec<f64>,
}

/// Renders a sequence as gradient, drive and marker channels.
///
/// Drive amplitudes are in field units: a Rabi frequency `omega` maps to
/// `omega / (2 pi gamma)` gauss.
pub fn render_waveform(seq: &Sequence, settings: &WaveformSettings) -> Result<Waveform> {
    let WaveformSettings {
        sample_rate,
        gamma,
        b0,
        b1,
        carrier,
    } = *settings;
    if !(sample_rate > 0.0) || !(gamma > 0.0) {
        return domain("sample rate and gamma must be > 0");
    }
    if !b0.is_finite() || !b1.is_finite() {
        return domain("fields must be finite");
    }
    let fields: Vec<f64> = seq
        .segments
        .iter()
        .map(|s| b0 + f64::from(s.detuning_sign) * b1)
        .collect();
    let max_frequency = fields
        .iter()
        .map(|&b| match carrier {
            CarrierModel::Baseband => (gamma * (b - b0)).abs(),
            CarrierModel::Rf => (gamma * b).abs(),
        })
        .fold(0.0, f64::max);
    if sample_rate < 10.0 * max_frequency {
        return Err(Error::Undersampled {
            sample_rate,
            max_frequency,
        });
    }

    let bounds = seq.boundaries();
    // rf phase uses the full field, baseband only the offset from b0
    let mut boundary_phase = Vec::with_capacity(bounds.len());
    let mut envelope_phase = Vec::with_capacity(bounds.len());
    let (mut full, mut offset) = (0.0, 0.0);
    boundary_phase.push(0.0);
    envelope_phase.push(0.0);
    for (s, &b) in seq.segments.iter().zip(&fields) {
        full += 2.0 * PI * gamma * b * s.duration;
        offset += 2.0 * PI * gamma * (b - b0) * s.duration;
        boundary_phase.push(full);
        envelope_phase.push(offset);
    }

    let wall = seq.wall_time();
    let n = (wall * sample_rate + 1e-9).floor() as usize + 1;
    let mut t = Vec::with_capacity(n);
    let mut gradient = Vec::with_capacity(n);
    let mut marker = Vec::with_capacity(n);
    let (mut ch_i, mut ch_q) = (Vec::with_capacity(n), Vec::with_capacity(n));
    let mut k = 0usize;
    let last = seq.segments.len() - 1;
    for idx in 0..n {
        let ti = idx as f64 / sample_rate;
        while k < last && ti >= bounds[k + 1] {
            k += 1;
        }
        let seg = &seq.segments[k];
        let dt = ti - bounds[k];
        let amp = match seg.kind {
            SegmentKind::Wait => 0.0,
            _ => seg.omega / (2.0 * PI * gamma),
        };
        t.push(ti);
        gradient.push(f64::from(seg.detuning_sign) * b1);
        marker.push(u8::from(seg.is_pulse()));
        match carrier {
            CarrierModel::Baseband => {
                let psi = envelope_phase[k] + 2.0 * PI * gamma * (fields[k] - b0) * dt + seg.phi;
                ch_i.push(amp * psi.cos());
                ch_q.push(amp * psi.sin());
            }
            CarrierModel::Rf => {
                let phase = boundary_phase[k] + 2.0 * PI * gamma * fields[k] * dt + seg.phi;
                ch_i.push(amp * phase.cos());
            }
        }
    }
    let drive = match carrier {
        CarrierModel::Baseband => DriveChannels::Baseband { i: ch_i, q: ch_q },
        CarrierModel::Rf => DriveChannels::Rf { bx: ch_i },
    };
    Ok(Waveform {
        settings: *settings,
        scheme: seq.scheme,
        omega: seq.omega,
        theta: seq.total_theta,
        cycles: seq.n_cycles,
        eps: seq.eps,
        wall_time: wall,
        t,
        gradient,
        drive,
        marker,
        boundary_phase,
    })
}

impl Waveform {
    pub fn len(&self) -> usize {
        self.t.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t.is_empty()
    }

    fn channel_names(&self) -> (&'static str, &'static str) {
        match self.drive {
            DriveChannels::Baseband { .. } => ("t,gradient,drive_i,drive_q,marker", "s,G,G,G,1"),
            DriveChannels::Rf { .. } => ("t,gradient,bx,marker", "s,G,G,1"),
        }
    }

    /// Writes the self-describing text format: `#`-prefixed header lines
    /// followed by a CSV header row and one row per sample.
    ///
    /// `extra_header` lines are emitted verbatim (each gets a `# ` prefix).
    pub fn write_to<W: Write>(&self, w: &mut W, extra_header: &[String]) -> io::Result<()> {
        let s = &self.settings;
        let num = |x: f64| format::sig(x, 17);
        let (names, units) = self.channel_names();
        writeln!(w, "# snrg waveform v1")?;
        writeln!(w, "# scheme = {}", self.scheme)?;
        writeln!(w, "# carrier = {}", s.carrier.name())?;
        writeln!(w, "# sample_rate_hz = {}", num(s.sample_rate))?;
        writeln!(w, "# gamma_hz_per_gauss = {}", num(s.gamma))?;
        writeln!(w, "# b0_gauss = {}", num(s.b0))?;
        writeln!(w, "# b1_gauss = {}", num(s.b1))?;
        writeln!(w, "# omega_rad_per_s = {}", num(self.omega))?;
        writeln!(w, "# theta_rad = {}", num(self.theta))?;
        writeln!(w, "# cycles = {}", self.cycles)?;
        writeln!(w, "# pulse_duration_s = {}", num(self.eps))?;
        writeln!(w, "# wall_time_s = {}", num(self.wall_time))?;
        writeln!(w, "# samples = {}", self.len())?;
        writeln!(w, "# channels = {names}")?;
        writeln!(w, "# units = {units}")?;
        for line in extra_header {
            writeln!(w, "# {line}")?;
        }
        writeln!(w, "{names}")?;
        for k in 0..self.len() {
            write!(
                w,
                "{},{},",
                format::csv(self.t[k]),
                format::csv(self.gradient[k])
            )?;
            match &self.drive {
                DriveChannels::Baseband { i, q } => {
                    write!(w, "{},{},", format::csv(i[k]), format::csv(q[k]))?
                }
                DriveChannels::Rf { bx } => write!(w, "{},", format::csv(bx[k]))?,
            }
            writeln!(w, "{}", self.marker[k])?;
        }
        Ok(())
    }

    pub fn to_text(&self, extra_header: &[String]) -> String {
        let mut buf = Vec::new();
        self.write_to(&mut buf, extra_header)
            .expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("waveform text is ASCII")
    }
}
