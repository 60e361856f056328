// Copyright 2026 The snrg Authors
// SPDX-License-Identifier: Apache-2.0

//! Stochastic models: Ornstein-Uhlenbeck bath detuning and multiplicative
//! π-pulse angle errors.
//!
//! Random numbers come from ChaCha8 streams. A master seed selects the key
//! and each Monte Carlo shot reads its own stream (see [`substream`]), so a
//! result never depends on how shots are scheduled across threads.

use std::f64::consts::PI;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

/// Stationary OU bath: `<d(t) d(0)> = b^2 exp(-t / tau_c)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OuParams {
    /// Coupling, rad/s.
    pub b: f64,
    /// Correlation time, s.
    pub tau_c: f64,
}

impl OuParams {
    pub fn new(b: f64, tau_c: f64) -> Result<Self> {
        if !(b >= 0.0) || !b.is_finite() {
            return domain(format!("b must be >= 0, got {b}"));
        }
        if !(tau_c > 0.0) {
            return domain(format!("tau_c must be > 0, got {tau_c}"));
        }
        Ok(Self { b, tau_c })
    }

    /// 2π·42 kHz, 230 µs.
    pub fn nv_bath() -> Self {
        Self {
            b: 2.0 * PI * 42e3,
            tau_c: 230e-6,
        }
    }

    /// Quasi-static 1/e dephasing time, `sqrt(2) / b`.
    pub fn t2_star(&self) -> f64 {
        2f64.sqrt() / self.b
    }
}

/// Uniformly sampled detuning, rad/s.
#[derive(Debug, Clone, PartialEq)]
pub struct NoiseTrace {
    pub dt: f64,
    pub values: Vec<f64>,
}

/// Multiplicative angle error of the decoupling pulses.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DdImperfection {
    pub sigma: f64,
}

impl DdImperfection {
    pub fn new(sigma: f64) -> Result<Self> {
        if !(sigma >= 0.0) || !sigma.is_finite() {
            return domain(format!("sigma must be >= 0, got {sigma}"));
        }
        Ok(Self { sigma })
    }

    pub fn none() -> Self {
        Self { sigma: 0.0 }
    }
}

/// How often the pulse-angle error is redrawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PulseErrorModel {
    /// One error per shot, shared by all of its pulses (a miscalibrated
    /// amplitude that drifts between repetitions).
    #[default]
    PerShot,
    /// An independent error for every pulse.
    PerPulse,
}

/// Stream `stream` of the ChaCha8 generator keyed by `seed`.
pub fn substream(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

#[inline]
fn normal<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.sample(StandardNormal)
}

/// Exact OU update over arbitrary time steps, started from the stationary
/// distribution.
#[derive(Debug, Clone)]
pub struct OuStepper {
    p: OuParams,
    x: f64,
}

impl OuStepper {
    pub fn stationary<R: Rng + ?Sized>(p: OuParams, rng: &mut R) -> Self {
        let x = p.b * normal(rng);
        Self { p, x }
    }

    pub fn value(&self) -> f64 {
        self.x
    }

    /// Advances by `dt` and returns the new value. `dt == 0` consumes no
    /// randomness.
    #[inline]
    pub fn step<R: Rng + ?Sized>(&mut self, dt: f64, rng: &mut R) -> f64 {
        if dt > 0.0 {
            let a = (-dt / self.p.tau_c).exp();
            // 1 - a^2 via expm1 keeps precision when dt << tau_c
            let s = (-(-2.0 * dt / self.p.tau_c).exp_m1()).sqrt();
            self.x = self.x * a + self.p.b * s * normal(rng);
        }
        self.x
    }
}

/// `n` samples of a stationary OU process at spacing `dt`.
pub fn ou_trace(p: OuParams, dt: f64, n: usize, seed: u64) -> Result<NoiseTrace> {
    if !(dt > 0.0) || !dt.is_finite() {
        return domain(format!("dt must be > 0, got {dt}"));
    }
    if n == 0 {
        return domain("trace length must be >= 1");
    }
    let p = OuParams::new(p.b, p.tau_c)?;
    let mut rng = substream(seed, 0);
    let mut st = OuStepper::stationary(p, &mut rng);
    let mut values = Vec::with_capacity(n);
    values.push(st.value());
    for _ in 1..n {
        values.push(st.step(dt, &mut rng));
    }
    Ok(NoiseTrace { dt, values })
}

/// One detuning held constant over a whole shot, `N(0, b^2)`.
pub fn quasi_static_sample(p: OuParams, seed: u64) -> f64 {
    quasi_static_from(p, &mut substream(seed, 0))
}

/// As [`quasi_static_sample`], drawing from an existing generator.
pub fn quasi_static_from<R: Rng + ?Sized>(p: OuParams, rng: &mut R) -> f64 {
    p.b * normal(rng)
}

/// A π rotation angle with multiplicative error, `pi (1 + eta)`.
pub fn perturb_pi<R: Rng + ?Sized>(imp: DdImperfection, rng: &mut R) -> f64 {
    if imp.sigma == 0.0 {
        return PI;
    }
    PI * (1.0 + imp.sigma * normal(rng))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mean_var(x: &[f64]) -> (f64, f64) {
        let n = x.len() as f64;
        let m = x.iter().sum::<f64>() / n;
        let v = x.iter().map(|y| (y - m).powi(2)).sum::<f64>() / (n - 1.0);
        (m, v)
    }

    #[test]
    fn zero_coupling_is_silent() {
        let p = OuParams::new(0.0, 1e-4).unwrap();
        let t = ou_trace(p, 1e-6, 100, 3).unwrap();
        assert!(t.values.iter().all(|&v| v == 0.0));
        assert_eq!(quasi_static_sample(p, 9), 0.0);
    }

    #[test]
    fn rejects_bad_inputs() {
        let p = OuParams::nv_bath();
        assert!(ou_trace(p, 0.0, 10, 1).is_err());
        assert!(ou_trace(p, 1e-6, 0, 1).is_err());
        assert!(OuParams::new(-1.0, 1.0).is_err());
        assert!(OuParams::new(1.0, 0.0).is_err());
        assert!(DdImperfection::new(-0.1).is_err());
    }

    #[test]
    fn seeded_traces_are_reproducible() {
        let p = OuParams::nv_bath();
        let a = ou_trace(p, 1e-6, 500, 77).unwrap();
        let b = ou_trace(p, 1e-6, 500, 77).unwrap();
        let c = ou_trace(p, 1e-6, 500, 78).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    /// Stationary variance and lag covariance against `b^2` and
    /// `b^2 exp(-lag dt / tau_c)`, each within 3 standard errors.
    #[test]
    fn stationary_moments() {
        let p = OuParams::new(2.0, 1.0).unwrap();
        let dt = 0.3;
        let (traces, len) = (100_000, 8);
        let mut at0 = Vec::with_capacity(traces);
        let mut at7 = Vec::with_capacity(traces);
        let mut prod = [Vec::with_capacity(traces), Vec::with_capacity(traces)];
        for s in 0..traces {
            let t = ou_trace(p, dt, len, s as u64).unwrap();
            at0.push(t.values[0]);
            at7.push(t.values[7]);
            prod[0].push(t.values[2] * t.values[3]);
            prod[1].push(t.values[1] * t.values[5]);
        }
        let b2 = p.b * p.b;
        for x in [&at0, &at7] {
            let sq: Vec<f64> = x.iter().map(|v| v * v).collect();
            let (m, v) = mean_var(&sq);
            let se = (v / traces as f64).sqrt();
            assert!((m - b2).abs() < 3.0 * se, "{m} vs {b2} (se {se})");
        }
        for (lag, x) in [(1.0, &prod[0]), (4.0, &prod[1])] {
            let want = b2 * (-lag * dt / p.tau_c).exp();
            let (m, v) = mean_var(x);
            let se = (v / traces as f64).sqrt();
            assert!(
                (m - want).abs() < 3.0 * se,
                "lag {lag}: {m} vs {want} (se {se})"
            );
        }
    }

    fn ks_statistic(a: &mut [f64], b: &mut [f64]) -> f64 {
        a.sort_by(f64::total_cmp);
        b.sort_by(f64::total_cmp);
        let (n, m) = (a.len(), b.len());
        let (mut i, mut j, mut d) = (0, 0, 0.0f64);
        while i < n && j < m {
            let x = a[i].min(b[j]);
            while i < n && a[i] <= x {
                i += 1;
            }
            while j < m && b[j] <= x {
                j += 1;
            }
            d = d.max((i as f64 / n as f64 - j as f64 / m as f64).abs());
        }
        d
    }

    /// Exact update vs a fine Euler-Maruyama integration of
    /// `dx = -x/tau dt + b sqrt(2/tau) dW`, both started at the same point.
    #[test]
    fn exact_update_matches_euler_maruyama() {
        let p = OuParams::new(1.5, 0.8).unwrap();
        let (x0, horizon, fine) = (2.0, 0.6, 600);
        let h = horizon / fine as f64;
        let n = 10_000;
        let mut exact = Vec::with_capacity(n);
        let mut em = Vec::with_capacity(n);
        for s in 0..n as u64 {
            let mut rng = substream(11, s);
            let mut st = OuStepper { p, x: x0 };
            exact.push(st.step(horizon, &mut rng));
            let mut rng = substream(12, s);
            let mut x = x0;
            let diff = p.b * (2.0 / p.tau_c).sqrt() * h.sqrt();
            for _ in 0..fine {
                x += -x / p.tau_c * h + diff * normal(&mut rng);
            }
            em.push(x);
        }
        let d = ks_statistic(&mut exact, &mut em);
        // two-sample critical value at alpha = 0.01
        let crit = 1.628 * ((2 * n) as f64 / (n * n) as f64).sqrt();
        assert!(d < crit, "KS {d} >= {crit}");
    }

    /// Free-induction decay `|<exp(i int d dt)>|` over OU traces; its 1/e
    /// time should be close to `sqrt(2) / b` for `tau_c >> T2*`.
    #[test]
    fn free_induction_decay_time() {
        let p = OuParams::nv_bath();
        let dt = 0.05e-6;
        let n = 300;
        let traces = 10_000;
        let mut re = vec![0.0f64; n];
        let mut im = vec![0.0; n];
        for s in 0..traces {
            let t = ou_trace(p, dt, n, 1000 + s).unwrap();
            let mut phase = 0.0f64;
            for k in 0..n {
                re[k] += phase.cos();
                im[k] += phase.sin();
                phase += t.values[k] * dt;
            }
        }
        let coh: Vec<f64> = (0..n).map(|k| re[k].hypot(im[k]) / traces as f64).collect();
        let k = coh.iter().position(|&c| c < (-1f64).exp()).unwrap();
        let t2 = k as f64 * dt;
        assert!((4e-6..=6e-6).contains(&t2), "T2* = {t2}");
        assert!((t2 - p.t2_star()).abs() < 0.2e-6);
    }

    #[test]
    fn quasi_static_moments() {
        let p = OuParams::new(3.0, 1.0).unwrap();
        let x: Vec<f64> = (0..100_000).map(|s| quasi_static_sample(p, s)).collect();
        let (m, v) = mean_var(&x);
        assert!(m.abs() < 3.0 * p.b / (x.len() as f64).sqrt());
        assert!((v.sqrt() / p.b - 1.0).abs() < 0.02);
    }

    #[test]
    fn pulse_angle_moments() {
        assert_eq!(perturb_pi(DdImperfection::none(), &mut substream(0, 0)), PI);
        let imp = DdImperfection::new(0.085).unwrap();
        let mut rng = substream(5, 1);
        let x: Vec<f64> = (0..100_000).map(|_| perturb_pi(imp, &mut rng)).collect();
        let (m, v) = mean_var(&x);
        let sd = v.sqrt();
        assert!((sd / (0.085 * PI) - 1.0).abs() < 0.02);
        let skew = x.iter().map(|y| ((y - m) / sd).powi(3)).sum::<f64>() / x.len() as f64;
        // standard error of the sample skewness is about sqrt(6 / n)
        assert!(skew.abs() < 3.0 * (6.0 / x.len() as f64).sqrt(), "{skew}");
    }
}
