// Copyright 2026 The snrg Authors
// SPDX-License-Identifier: Apache-2.0

//! Ornstein-Uhlenbeck detuning noise: stationary statistics of sampled traces
//! and the Gaussian free-induction decay they produce.

use snrg::noise::{ou_trace, OuParams};

fn main() -> snrg::Result<()> {
    let p = OuParams::nv_bath();
    let (dt, n, traces) = (0.05e-6, 240, 4000u64);

    let first = ou_trace(p, dt, n, 0)?;
    let mean = first.values.iter().sum::<f64>() / n as f64;
    println!(
        "b = {:.4e} rad/s, tau_c = {:.0} us, T2* = {:.2} us",
        p.b,
        p.tau_c * 1e6,
        p.t2_star() * 1e6
    );
    println!(
        "one trace: mean {mean:+.3e}, first {:+.3e}, last {:+.3e}",
        first.values[0],
        first.values[n - 1]
    );

    let mut re = vec![0.0f64; n];
    let mut im = vec![0.0f64; n];
    let mut var = 0.0;
    for s in 0..traces {
        let tr = ou_trace(p, dt, n, s)?;
        var += tr.values[0].powi(2);
        let mut phase = 0.0f64;
        for k in 0..n {
            re[k] += phase.cos();
            im[k] += phase.sin();
            phase += tr.values[k] * dt;
        }
    }
    println!(
        "sample std {:.4e} rad/s over {traces} traces",
        (var / traces as f64).sqrt()
    );
    println!("{:>7} {:>10} {:>10}", "t (us)", "coherence", "gaussian");
    for k in (0..n).step_by(20) {
        let t = k as f64 * dt;
        let c = re[k].hypot(im[k]) / traces as f64;
        println!(
            "{:>7.2} {c:>10.4} {:>10.4}",
            t * 1e6,
            (-(p.b * t).powi(2) / 2.0).exp()
        );
    }
    Ok(())
}
