// Copyright 2026 The snrg Authors
// SPDX-License-Identifier: Apache-2.0

//! Rabi chevron under the NV bath: final <S_z> against gradient detuning and
//! drive time, printed as a character map.

use std::f64::consts::PI;

use snrg::engine::{scan_detuning_time, SchemeSpec, ShotConfig};
use snrg::sequences::Scheme;

const SHADES: &[u8] = b" .:-=+*#%@";

fn main() -> snrg::Result<()> {
    let omega = 2.0 * PI * 54e3;
    let spec = SchemeSpec::new(Scheme::Rabi, omega);
    let cfg = ShotConfig::nv_defaults(1, 300);
    let dets: Vec<f64> = (-10..=10).map(|k| 2.0 * PI * 15e3 * k as f64).collect();
    let times: Vec<f64> = (0..=60).map(|k| k as f64 * 0.5e-6).collect();
    let scan = scan_detuning_time(&spec, &dets, &times, &cfg)?;

    println!("rows: detuning -150..150 kHz, columns: 0..30 us, darker = more |-1>");
    for (i, dz) in dets.iter().enumerate() {
        let row: String = (0..times.len())
            .map(|j| {
                let (sz, _) = scan.cell(i, j).expect("rabi cells are always feasible");
                // <S_z> = 1/2 - P1
                let p1 = (0.5 - sz).clamp(0.0, 1.0);
                SHADES[(p1 * (SHADES.len() - 1) as f64).round() as usize] as char
            })
            .collect();
        println!("{:>7.1} |{row}|", dz / (2.0 * PI * 1e3));
    }
    Ok(())
}
