// Copyright 2026 The snrg Authors
// SPDX-License-Identifier: Apache-2.0

//! On-resonance fidelity and spectral bandwidth of Rabi and SNRG pi gates at
//! the NV bath parameters.

use std::f64::consts::PI;

use snrg::engine::{scheme_report, Bandwidth, BandwidthOptions, SchemeSpec, ShotConfig};
use snrg::sequences::Scheme;

fn main() -> snrg::Result<()> {
    let omega = 2.0 * PI * 54e3;
    let cfg = ShotConfig::nv_defaults(20240611, 5000);
    let opts = BandwidthOptions::default();
    for scheme in [Scheme::Rabi, Scheme::SnrgXy8] {
        let r = scheme_report(&SchemeSpec::new(scheme, omega), &cfg, &opts)?;
        let bw = match r.bandwidth {
            Bandwidth::Crossing {
                value, uncertainty, ..
            } => format!(
                "{:.1} +/- {:.1} kHz",
                value / (2.0 * PI * 1e3),
                uncertainty / (2.0 * PI * 1e3)
            ),
            Bandwidth::NoCrossing { .. } => "none".into(),
        };
        println!(
            "{:<9} F = {:.3} +/- {:.3}  P1 = {:.3}  BW = 2pi x {bw}",
            scheme.name(),
            r.fidelity.mean,
            r.fidelity.stderr,
            r.population.mean
        );
    }
    Ok(())
}
