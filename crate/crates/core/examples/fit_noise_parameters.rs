// Copyright 2026 The snrg Authors
// SPDX-License-Identifier: Apache-2.0

//! Recovers the bath from a synthetic Rabi decay, then the pulse-angle error
//! from a synthetic SNRG slice.

use std::f64::consts::PI;

use snrg::engine::{
    fit_dd_imperfection, fit_ou, rabi_decay_curve, run_ensemble, SchemeSpec, ShotConfig,
};
use snrg::sequences::Scheme;

fn main() -> snrg::Result<()> {
    let omega = 2.0 * PI * 54e3;
    let truth = ShotConfig::nv_defaults(123, 2000);

    let times: Vec<f64> = (0..60).map(|k| k as f64 * 1e-6).collect();
    let data: Vec<(f64, f64)> = times
        .iter()
        .zip(rabi_decay_curve(omega, 0.0, &times, &truth)?)
        .map(|(t, e)| (*t, e.sz().mean))
        .collect();
    let b_grid: Vec<f64> = [30.0, 36.0, 42.0, 48.0, 54.0]
        .iter()
        .map(|k| 2.0 * PI * k * 1e3)
        .collect();
    let tau_grid = [115e-6, 230e-6, 460e-6];
    let ou = fit_ou(
        &data,
        &b_grid,
        &tau_grid,
        omega,
        &ShotConfig::nv_defaults(7, 1000),
    )?;
    println!(
        "bath: b = 2pi x {:.0} kHz, tau_c = {:.0} us (residual {:.3e})",
        ou.params.b / (2.0 * PI * 1e3),
        ou.params.tau_c * 1e6,
        ou.residual
    );

    let spec = SchemeSpec::new(Scheme::SnrgXy8, omega);
    let mut slice = Vec::new();
    for k in 1..=20 {
        let t = k as f64 * 1.5e-6;
        slice.push((
            t,
            run_ensemble(&spec.build_for_drive_time(t, 0.0)?, &truth)?
                .sz()
                .mean,
        ));
    }
    let fitted = ShotConfig {
        ou: ou.params,
        ..ShotConfig::nv_defaults(7, 1000)
    };
    let dd = fit_dd_imperfection(&slice, &[0.025, 0.055, 0.085, 0.115, 0.145], &spec, &fitted)?;
    for p in &dd.map {
        println!("sigma {:.3}: residual {:.3e}", p.sigma, p.residual);
    }
    println!("pulse error: sigma = {:.3}", dd.imperfection.sigma);
    Ok(())
}
