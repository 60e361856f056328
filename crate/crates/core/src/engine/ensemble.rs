// Copyright 2026 The snrg Authors
// SPDX-License-Identifier: Apache-2.0

use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{Estimate, NoiseMode, ShotConfig};
use crate::error::{domain, Error, Result};
use crate::noise::{perturb_pi, quasi_static_from, substream, OuStepper, PulseErrorModel};
use crate::sequences::{SegmentKind, Sequence};
use crate::spincore::{propagator_unchecked, SpinState};

/// Bath-noise and pulse-error generators of shot `shot`.
pub fn shot_streams(seed: u64, shot: u64) -> (ChaCha8Rng, ChaCha8Rng) {
    (substream(seed, 2 * shot), substream(seed, 2 * shot + 1))
}

/// Bath detuning seen by one shot, advanced piece by piece.
enum Bath {
    Quiet,
    Fixed(f64),
    Ou { st: OuStepper, pending: f64 },
}

impl Bath {
    fn new(cfg: &ShotConfig, rng: &mut ChaCha8Rng) -> Self {
        match cfg.noise_mode {
            NoiseMode::None => Bath::Quiet,
            NoiseMode::QuasiStatic => Bath::Fixed(quasi_static_from(cfg.ou, rng)),
            NoiseMode::Ou => Bath::Ou {
                st: OuStepper::stationary(cfg.ou, rng),
                pending: 0.0,
            },
        }
    }

    fn splits(&self) -> bool {
        matches!(self, Bath::Ou { .. })
    }

    /// Detuning over the next `dt`, sampled at its start.
    #[inline]
    fn next(&mut self, dt: f64, rng: &mut ChaCha8Rng) -> f64 {
        match self {
            Bath::Quiet => 0.0,
            Bath::Fixed(d) => *d,
            Bath::Ou { st, pending } => {
                let d = st.step(*pending, rng);
                *pending = dt;
                d
            }
        }
    }
}

/// Final state of one Monte Carlo shot, starting from `|0>`.
pub fn simulate_shot(seq: &Sequence, cfg: &ShotConfig, shot: u64) -> Result<SpinState> {
    cfg.validate()?;
    Ok(run_shot(seq, cfg, shot))
}

fn run_shot(seq: &Sequence, cfg: &ShotConfig, shot: u64) -> SpinState {
    let (mut noise_rng, mut pulse_rng) = shot_streams(cfg.seed, shot);
    let mut bath = Bath::new(cfg, &mut noise_rng);
    let shared_angle = match cfg.pulse_errors {
        PulseErrorModel::PerShot if seq.pulse_count() > 0 => perturb_pi(cfg.dd_imp, &mut pulse_rng),
        _ => std::f64::consts::PI,
    };
    let mut state = SpinState::ground();
    for seg in &seq.segments {
        let dz = f64::from(seg.detuning_sign) * seq.delta_z;
        if seg.is_pulse() {
            let angle = match cfg.pulse_errors {
                PulseErrorModel::PerShot => shared_angle,
                PulseErrorModel::PerPulse => perturb_pi(cfg.dd_imp, &mut pulse_rng),
            };
            let delta = if seg.duration > 0.0 {
                dz + bath.next(seg.duration, &mut noise_rng)
            } else {
                dz
            };
            state = seg.propagator_with(delta, angle) * state;
            continue;
        }
        if seg.duration == 0.0 {
            continue;
        }
        let pieces = if bath.splits() && seg.kind == SegmentKind::Drive {
            (seg.duration / cfg.noise_step - 1e-9).ceil().max(1.0) as usize
        } else {
            1
        };
        let h = seg.duration / pieces as f64;
        for _ in 0..pieces {
            let delta = dz + bath.next(h, &mut noise_rng);
            state = propagator_unchecked(seg.omega, seg.phi, delta, h) * state;
        }
    }
    state
}

/// Ensemble statistics of the `|-1>` population.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Ensemble {
    pub shots: usize,
    /// Population of `|-1>`.
    pub p1: Estimate,
}

impl Ensemble {
    pub(crate) fn from_samples(x: &[f64]) -> Self {
        let n = x.len();
        let mean = x.iter().sum::<f64>() / n as f64;
        let stderr = if n > 1 {
            let var = x.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
            (var / n as f64).sqrt()
        } else {
            0.0
        };
        Self {
            shots: n,
            p1: Estimate { mean, stderr },
        }
    }

    fn exact(shots: usize, p1: f64) -> Self {
        Self {
            shots,
            p1: Estimate {
                mean: p1,
                stderr: 0.0,
            },
        }
    }

    /// `<S_z> = 1/2 - P1`.
    pub fn sz(&self) -> Estimate {
        Estimate {
            mean: 0.5 - self.p1.mean,
            stderr: self.p1.stderr,
        }
    }

    /// Squared-population fidelity `P1^2` (first-order error propagation).
    pub fn f_paper(&self) -> Estimate {
        Estimate {
            mean: self.p1.mean * self.p1.mean,
            stderr: 2.0 * self.p1.mean * self.p1.stderr,
        }
    }

    /// Readout contrast `2 P1 - 1`.
    pub fn contrast(&self) -> Estimate {
        Estimate {
            mean: 2.0 * self.p1.mean - 1.0,
            stderr: 2.0 * self.p1.stderr,
        }
    }
}

/// Averages `cfg.shots` shots. Shots are evaluated in parallel but reduced
/// in index order, so the result does not depend on the thread count.
pub fn run_ensemble(seq: &Sequence, cfg: &ShotConfig) -> Result<Ensemble> {
    cfg.validate()?;
    if cfg.is_deterministic(seq) {
        let p1 = run_shot(seq, cfg, 0).population();
        return Ok(Ensemble::exact(cfg.shots, p1));
    }
    let p1: Vec<f64> = (0..cfg.shots as u64)
        .into_par_iter()
        .map(|k| run_shot(seq, cfg, k).population())
        .collect();
    Ok(Ensemble::from_samples(&p1))
}

/// Runs `f` on a dedicated pool of `threads` workers.
pub fn with_threads<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    if threads == 0 {
        return domain("thread count must be >= 1");
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Domain(format!("cannot start thread pool: {e}")))?;
    Ok(pool.install(f))
}

/// Resonant or detuned continuous-drive trajectory sampled at `times`.
///
/// Each shot follows one noise realization through all times, so the curve
/// is smooth in `t`. Times must be non-decreasing and `>= 0`.
pub fn rabi_decay_curve(
    omega: f64,
    delta_z: f64,
    times: &[f64],
    cfg: &ShotConfig,
) -> Result<Vec<Ensemble>> {
    cfg.validate()?;
    if !(omega > 0.0) {
        return domain("omega must be > 0");
    }
    if times.is_empty() || !(times[0] >= 0.0) || times.windows(2).any(|w| !(w[1] >= w[0])) {
        return domain("times must be non-empty, >= 0 and sorted");
    }
    let shot = |k: u64| {
        let (mut rng, _) = shot_streams(cfg.seed, k);
        let mut bath = Bath::new(cfg, &mut rng);
        let mut state = SpinState::ground();
        let mut now = 0.0;
        let mut out = Vec::with_capacity(times.len());
        for &t in times {
            let span = t - now;
            if span > 0.0 {
                let pieces = if bath.splits() {
                    (span / cfg.noise_step - 1e-9).ceil().max(1.0) as usize
                } else {
                    1
                };
                let h = span / pieces as f64;
                for _ in 0..pieces {
                    let delta = delta_z + bath.next(h, &mut rng);
                    state = propagator_unchecked(omega, 0.0, delta, h) * state;
                }
                now = t;
            }
            out.push(state.population());
        }
        out
    };
    let quiet = cfg.noise_mode == NoiseMode::None || cfg.ou.b == 0.0;
    let runs: Vec<Vec<f64>> = if quiet {
        vec![shot(0)]
    } else {
        (0..cfg.shots as u64).into_par_iter().map(shot).collect()
    };
    Ok((0..times.len())
        .map(|j| {
            let col: Vec<f64> = runs.iter().map(|r| r[j]).collect();
            let mut e = Ensemble::from_samples(&col);
            e.shots = cfg.shots;
            e
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::transfer_probability;
    use crate::noise::{DdImperfection, OuParams};
    use crate::sequences::{build_rabi, build_snrg};
    use std::f64::consts::PI;

    #[test]
    fn noiseless_rabi_pi_is_perfect() {
        let seq = build_rabi(2.0 * PI * 54e3, PI, 0.0).unwrap();
        let s = simulate_shot(&seq, &ShotConfig::noiseless(1), 0).unwrap();
        assert!((s.population() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn noiseless_snrg_matches_generalized_rabi() {
        let omega = 2.0 * PI * 54e3;
        let seq = build_snrg(9, PI, omega, 0.0, omega).unwrap();
        let s = simulate_shot(&seq, &ShotConfig::noiseless(1), 0).unwrap();
        let want = transfer_probability(omega, omega, PI / omega).unwrap();
        assert!((s.population() - want).abs() < 1e-9);
        assert!((want - 0.317).abs() < 1e-3);
    }

    #[test]
    fn quasi_static_shot_matches_analytic() {
        let omega = 2.0 * PI * 54e3;
        let dz = 0.3 * omega;
        let seq = build_rabi(omega, PI, 0.0).unwrap().with_delta_z(dz);
        let mut cfg = ShotConfig::nv_defaults(42, 1);
        cfg.noise_mode = NoiseMode::QuasiStatic;
        for shot in 0..5 {
            let (mut rng, _) = shot_streams(cfg.seed, shot);
            let d = quasi_static_from(cfg.ou, &mut rng);
            let want = transfer_probability(omega, dz + d, PI / omega).unwrap();
            let got = simulate_shot(&seq, &cfg, shot).unwrap().population();
            assert!((got - want).abs() < 1e-10, "{got} vs {want}");
        }
    }

    #[test]
    fn single_shot_ensemble() {
        let omega = 2.0 * PI * 54e3;
        let seq = build_snrg(9, PI, omega, 20e-9, 0.0).unwrap();
        let cfg = ShotConfig::nv_defaults(5, 1);
        let e = run_ensemble(&seq, &cfg).unwrap();
        let s = simulate_shot(&seq, &cfg, 0).unwrap();
        assert_eq!(e.p1.mean, s.population());
        assert_eq!(e.p1.stderr, 0.0);
    }

    #[test]
    fn stderr_from_imperfection_only() {
        let omega = 2.0 * PI * 54e3;
        let seq = build_snrg(9, PI, omega, 20e-9, 0.0).unwrap();
        let mut cfg = ShotConfig::noiseless(200);
        assert_eq!(run_ensemble(&seq, &cfg).unwrap().p1.stderr, 0.0);
        cfg.dd_imp = DdImperfection { sigma: 0.085 };
        assert!(run_ensemble(&seq, &cfg).unwrap().p1.stderr > 0.0);
    }

    #[test]
    fn thread_count_does_not_change_results() {
        let omega = 2.0 * PI * 54e3;
        let seq = build_snrg(9, PI, omega, 20e-9, 0.2 * omega).unwrap();
        let cfg = ShotConfig::nv_defaults(9, 300);
        let a = with_threads(1, || run_ensemble(&seq, &cfg))
            .unwrap()
            .unwrap();
        let b = with_threads(4, || run_ensemble(&seq, &cfg))
            .unwrap()
            .unwrap();
        assert_eq!(a, b);
        assert!(with_threads(0, || ()).is_err());
    }

    #[test]
    fn per_pulse_errors_hurt_more() {
        let omega = 2.0 * PI * 54e3;
        let seq = build_snrg(9, PI, omega, 20e-9, 0.0).unwrap();
        let mut cfg = ShotConfig::noiseless(400);
        cfg.dd_imp = DdImperfection { sigma: 0.085 };
        let shared = run_ensemble(&seq, &cfg).unwrap().p1.mean;
        cfg.pulse_errors = PulseErrorModel::PerPulse;
        let independent = run_ensemble(&seq, &cfg).unwrap().p1.mean;
        assert!(shared > independent + 0.1, "{shared} {independent}");
    }

    #[test]
    fn decay_curve_matches_separate_runs_without_noise() {
        let omega = 2.0 * PI * 54e3;
        let times: Vec<f64> = (0..20).map(|k| k as f64 * 1e-6).collect();
        let cfg = ShotConfig::noiseless(10);
        let curve = rabi_decay_curve(omega, 0.4 * omega, &times, &cfg).unwrap();
        for (t, e) in times.iter().zip(&curve) {
            let want = transfer_probability(omega, 0.4 * omega, *t).unwrap();
            assert!((e.p1.mean - want).abs() < 1e-10);
        }
        assert!(rabi_decay_curve(omega, 0.0, &[2.0, 1.0], &cfg).is_err());
    }

    #[test]
    fn decay_curve_dephases() {
        let omega = 2.0 * PI * 54e3;
        let times = [0.0, 2.0 * PI / omega * 20.0];
        let mut cfg = ShotConfig::nv_defaults(3, 2000);
        cfg.ou = OuParams::nv_bath();
        let c = rabi_decay_curve(omega, 0.0, &times, &cfg).unwrap();
        assert_eq!(c[0].p1.mean, 0.0);
        // after 20 full periods the noiseless population would be back to 0
        assert!(c[1].p1.mean > 0.2, "{}", c[1].p1.mean);
    }
}
