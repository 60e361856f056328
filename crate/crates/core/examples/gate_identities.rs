// Copyright 2026 The snrg Authors
// SPDX-License-Identifier: Apache-2.0

//! Checks the algebra behind the selective gate without any noise: an SNRG
//! timeline multiplies out to a single detuned rotation, while the DPG
//! timeline cancels the gradient and stays a plain rotation.

use std::f64::consts::PI;

use snrg::sequences::{build_dpg_cpmg, build_dpg_xy8, build_snrg};
use snrg::spincore::{distance_mod_phase, propagator, DriveParams};

fn main() -> snrg::Result<()> {
    let omega = 2.0 * PI * 54e3;
    let theta = PI;
    println!("{:>6} {:>12} {:>12}", "r", "SNRG", "DPG");
    for r in [0.0, 0.5, 1.0, 2.0, 4.0] {
        let dz = r * omega;
        let detuned = propagator(&DriveParams::new(omega, 0.0, dz, theta / omega))?;
        let plain = propagator(&DriveParams::new(omega, 0.0, 0.0, theta / omega))?;
        let snrg = build_snrg(4, theta, omega, 0.0, dz)?.propagator();
        let dpg = build_dpg_xy8(4, theta, omega, 0.0, 125e-9)?
            .with_delta_z(dz)
            .propagator();
        println!(
            "{r:>6.1} {:>12.2e} {:>12.2e}",
            distance_mod_phase(&snrg, &detuned),
            distance_mod_phase(&dpg, &plain)
        );
    }

    // CPMG-style DPG approaches the plain rotation as 1/N
    println!();
    println!("{:>6} {:>12}", "N", "CPMG error");
    let target = propagator(&DriveParams::new(omega, 0.0, 0.0, theta / omega))?;
    for n in [4, 16, 64, 256] {
        let seq = build_dpg_cpmg(n, theta, omega, 0.0)?.with_delta_z(omega);
        println!(
            "{n:>6} {:>12.3e}",
            distance_mod_phase(&seq.propagator(), &target)
        );
    }
    Ok(())
}
