// Copyright 2026 The snrg Authors
// SPDX-License-Identifier: Apache-2.0

//! Gradient switching times and the rectangular pulse train `U(t)`.
//!
//! For a symmetric XY-8 gate with drive segment `tau_bar` and pulse length
//! `eps`, odd indices end a drive interval and even indices end a pulse:
//!
//! ```text
//! T_0     = 0
//! T_i     = tau_bar * i / 2       + eps * (i - 1) / 2     (i odd)
//! T_i     = tau_bar * (i - 1) / 2 + eps * i / 2           (i even)
//! T_last  = 8 N (tau_bar + eps)
//! ```
//!
//! The first and last drive intervals are half segments. `U(t)` cycles
//! through `+1, 0, -1, 0` over consecutive intervals.

use crate::error::{domain, Result};

/// Strictly increasing switch times (non-decreasing when `eps == 0`).
#[derive(Debug, Clone, PartialEq)]
pub struct Timings {
    t: Vec<f64>,
}

impl Timings {
    pub fn new(t: Vec<f64>) -> Result<Self> {
        if t.first() != Some(&0.0) {
            return domain("switch times must start at 0");
        }
        if t.windows(2).any(|w| !(w[1] >= w[0])) {
            return domain("switch times must be non-decreasing");
        }
        Ok(Self { t })
    }

    pub fn times(&self) -> &[f64] {
        &self.t
    }

    pub fn total(&self) -> f64 {
        *self.t.last().expect("timings are never empty")
    }
}

/// Switch times of the SNRG gradient for `n` symmetric XY-8 cycles.
pub fn switching_times(n: usize, tau_bar: f64, eps: f64) -> Result<Timings> {
    if n == 0 {
        return domain("cycle count must be >= 1");
    }
    if !(tau_bar > 0.0) || !tau_bar.is_finite() {
        return domain(format!("tau_bar must be > 0, got {tau_bar}"));
    }
    if !(eps >= 0.0) || !eps.is_finite() {
        return domain(format!("eps must be >= 0, got {eps}"));
    }
    let pulses = 8 * n;
    let mut t = Vec::with_capacity(2 * pulses + 2);
    t.push(0.0);
    for i in 1..=2 * pulses {
        let x = i as f64;
        let ti = if i % 2 == 1 {
            tau_bar * x / 2.0 + eps * (x - 1.0) / 2.0
        } else {
            tau_bar * (x - 1.0) / 2.0 + eps * x / 2.0
        };
        t.push(ti);
    }
    t.push(pulses as f64 * (tau_bar + eps));
    Timings::new(t)
}

/// Value of the gradient pulse train at time `t`.
pub fn pulse_train_u(t: f64, tm: &Timings) -> Result<i8> {
    let times = tm.times();
    if !(t >= 0.0) || t > tm.total() {
        return domain(format!("t = {t} outside [0, {}]", tm.total()));
    }
    // index of the last switch time <= t, clamped to the final interval
    let j = times.partition_point(|&x| x <= t).saturating_sub(1);
    let j = j.min(times.len().saturating_sub(2));
    Ok(match j % 4 {
        0 => 1,
        2 => -1,
        _ => 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequences::build_snrg;
    use proptest::prelude::*;

    #[test]
    fn first_switch_times() {
        let (tb, eps) = (125e-9, 20e-9);
        let tm = switching_times(1, tb, eps).unwrap();
        let t = tm.times();
        assert_eq!(t[0], 0.0);
        assert!((t[1] - tb / 2.0).abs() < 1e-20);
        assert!((t[2] - (tb / 2.0 + eps)).abs() < 1e-20);
        assert!((t[3] - (1.5 * tb + eps)).abs() < 1e-20);
        assert_eq!(t.len(), 16 + 2);
        assert!((tm.total() - 8.0 * (tb + eps)).abs() < 1e-20);
        assert!(t.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(switching_times(0, 1.0, 0.0).is_err());
        assert!(switching_times(1, 0.0, 0.0).is_err());
        assert!(switching_times(1, 1.0, -1.0).is_err());
        assert!(Timings::new(vec![1.0]).is_err());
        assert!(Timings::new(vec![0.0, 2.0, 1.0]).is_err());
    }

    #[test]
    fn four_branch_pattern() {
        let tm = switching_times(1, 1.0, 0.1).unwrap();
        let t = tm.times();
        let mid = |i: usize| 0.5 * (t[i] + t[i + 1]);
        assert_eq!(pulse_train_u(mid(0), &tm).unwrap(), 1);
        assert_eq!(pulse_train_u(mid(1), &tm).unwrap(), 0);
        assert_eq!(pulse_train_u(mid(2), &tm).unwrap(), -1);
        assert_eq!(pulse_train_u(mid(3), &tm).unwrap(), 0);
        assert_eq!(pulse_train_u(mid(4), &tm).unwrap(), 1);
        assert_eq!(pulse_train_u(tm.total(), &tm).unwrap(), 1);
        assert!(pulse_train_u(-1e-3, &tm).is_err());
        assert!(pulse_train_u(tm.total() * 1.01, &tm).is_err());
    }

    #[test]
    fn instantaneous_pulses_skip_zero_intervals() {
        let tm = switching_times(1, 1.0, 0.0).unwrap();
        assert_eq!(pulse_train_u(0.25, &tm).unwrap(), 1);
        assert_eq!(pulse_train_u(0.75, &tm).unwrap(), -1);
        assert_eq!(pulse_train_u(1.75, &tm).unwrap(), 1);
    }

    proptest! {
        #[test]
        fn matches_snrg_timeline(n in 1usize..6, theta in 0.5f64..6.0, eps in 0.0f64..0.05) {
            let omega = 1.0;
            let s = build_snrg(n, theta, omega, eps, 0.3).unwrap();
            let tau_bar = theta / omega / (8 * n) as f64;
            let tm = switching_times(n, tau_bar, eps).unwrap();
            let b = s.boundaries();
            prop_assert_eq!(b.len(), tm.times().len());
            for (x, y) in b.iter().zip(tm.times()) {
                prop_assert!((x - y).abs() < 1e-12);
            }
            prop_assert!((s.wall_time() - tm.total()).abs() < 1e-12);
            // gradient sign of each segment agrees with U(t) at its midpoint
            for (seg, w) in s.segments.iter().zip(b.windows(2)) {
                if w[1] > w[0] {
                    let u = pulse_train_u(0.5 * (w[0] + w[1]), &tm).unwrap();
                    prop_assert_eq!(u, seg.detuning_sign);
                }
            }
        }
    }
}
