// Copyright 2026 The snrg Authors
// SPDX-License-Identifier: Apache-2.0

//! Renders a one-cycle SNRG gate to AWG channels and writes the CSV
//! into the system temp dir.

use std::f64::consts::PI;

use snrg::sequences::{build_snrg, render_waveform, CarrierModel, WaveformSettings};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let omega = 2.0 * PI * 54e3;
    let seq = build_snrg(1, 0.108 * PI, omega, 20e-9, 2.0 * PI * 196e3)?;
    let settings = WaveformSettings {
        sample_rate: 250e6,
        gamma: 2.8e6,
        b0: 380.0,
        b1: 0.07,
        carrier: CarrierModel::Baseband,
    };
    let wf = render_waveform(&seq, &settings)?;
    let pulses = wf
        .marker
        .windows(2)
        .filter(|w| w[0] == 0 && w[1] == 1)
        .count();
    println!(
        "{} samples over {:.3} us, {pulses} marked pulses",
        wf.len(),
        wf.wall_time * 1e6
    );
    let path = std::env::temp_dir().join("snrg_waveform_example.csv");
    std::fs::write(&path, wf.to_text(&[]))?;
    println!("wrote {}", path.display());
    Ok(())
}
