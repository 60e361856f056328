// Copyright 2026 The snrg Authors
// SPDX-License-Identifier: Apache-2.0

//! How much SNRG gains over a plain Rabi pulse as the drive gets slower, and
//! whether its bandwidth keeps tracking the Rabi frequency.

use std::f64::consts::PI;

use snrg::engine::{enhancement_scan, BandwidthOptions, SchemeSpec, ShotConfig};
use snrg::sequences::Scheme;

fn main() -> snrg::Result<()> {
    let omegas: Vec<f64> = [10.0, 20.0, 54.0, 150.0, 500.0]
        .iter()
        .map(|k| 2.0 * PI * k * 1e3)
        .collect();
    let template = SchemeSpec::new(Scheme::SnrgXy8, omegas[0]);
    let cfg = ShotConfig::nv_defaults(5, 2000);
    let opts = BandwidthOptions {
        shots: Some(500),
        ..Default::default()
    };
    let rows = enhancement_scan(&omegas, &template, &cfg, &opts)?;
    println!(
        "{:>9} {:>8} {:>8} {:>7} {:>10}",
        "kHz", "F_rabi", "F_snrg", "ratio", "BW/Omega"
    );
    for r in rows {
        let bw = r
            .bw_snrg
            .and_then(|b| b.value())
            .map_or("-".to_string(), |b| format!("{:.2}", b / r.omega));
        println!(
            "{:>9.1} {:>8.4} {:>8.4} {:>7.2} {bw:>10}",
            r.omega / (2.0 * PI * 1e3),
            r.rabi.mean,
            r.snrg.mean,
            r.fidelity_ratio
        );
    }
    Ok(())
}
