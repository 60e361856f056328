// Copyright 2026 The snrg Authors
// SPDX-License-Identifier: Apache-2.0

//! Fidelity against gradient detuning for the three schemes. DPG is robust to
//! the gradient as well as to the bath; SNRG keeps the bath protection but
//! stays selective.

use std::f64::consts::PI;

use snrg::engine::{run_ensemble, SchemeSpec, ShotConfig};
use snrg::sequences::Scheme;

fn main() -> snrg::Result<()> {
    let omega = 2.0 * PI * 54e3;
    let cfg = ShotConfig::nv_defaults(3, 1000);
    let schemes = [Scheme::Rabi, Scheme::DpgXy8, Scheme::SnrgXy8];
    println!(
        "{:>8} {:>9} {:>9} {:>9}",
        "dz/Omega", "rabi", "dpg_xy8", "snrg_xy8"
    );
    for k in 0..=12 {
        let r = 0.25 * k as f64;
        let mut line = format!("{r:>8.2}");
        for scheme in schemes {
            let seq = SchemeSpec::new(scheme, omega).build(r * omega)?;
            line += &format!(" {:>9.4}", run_ensemble(&seq, &cfg)?.f_paper().mean);
        }
        println!("{line}");
    }
    Ok(())
}
