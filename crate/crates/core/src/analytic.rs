// Copyright 2026 The snrg Authors
// SPDX-License-Identifier: Apache-2.0

//! Closed-form figures of merit: generalized Rabi transfer, the ideal
//! π-gate fidelity curve and the bandwidth rule.
//!
//! Two fidelity conventions are in use across the crate. The population
//! `P1 = |<-1|U|0>|^2` is the plain transfer probability; the squared
//! convention `F = P1^2` is what [`ideal_pi_fidelity`] returns and what
//! bandwidths are measured against.

use std::f64::consts::PI;

use crate::error::{domain, Error, Result};

/// Default bandwidth threshold on the squared fidelity.
pub const BANDWIDTH_THRESHOLD: f64 = 0.1;

/// Generalized Rabi transfer probability `|<-1|U|0>|^2` after driving for `t`.
///
/// At `t = pi / omega` this is the detuned π-pulse transfer.
pub fn transfer_probability(omega: f64, delta: f64, t: f64) -> Result<f64> {
    if !(omega > 0.0) || !omega.is_finite() {
        return domain(format!("omega must be > 0, got {omega}"));
    }
    if !(t >= 0.0) || !t.is_finite() || !delta.is_finite() {
        return domain("t must be >= 0 and delta finite");
    }
    let rho2 = omega * omega + delta * delta;
    let p = omega * omega / (2.0 * rho2) * (1.0 - (rho2.sqrt() * t).cos());
    Ok(p.clamp(0.0, 1.0))
}

/// Squared-convention fidelity of an ideal π pulse detuned by `r = delta / omega`.
pub fn ideal_pi_fidelity(r: f64) -> f64 {
    let q = 1.0 + r * r;
    let p = (1.0 - (PI * q.sqrt()).cos()) / (2.0 * q);
    p * p
}

/// Fidelity sampled against the dimensionless detuning `r = delta / omega`.
#[derive(Debug, Clone, PartialEq)]
pub struct FidelityCurve {
    points: Vec<(f64, f64)>,
}

impl FidelityCurve {
    pub fn new(points: Vec<(f64, f64)>) -> Result<Self> {
        if points.is_empty() {
            return domain("fidelity curve needs at least one point");
        }
        if points.windows(2).any(|w| !(w[1].0 > w[0].0)) {
            return domain("fidelity curve r values must be strictly increasing");
        }
        if let Some(&(r, f)) = points.iter().find(|(_, f)| !(0.0..=1.0).contains(f)) {
            return domain(format!("fidelity {f} at r = {r} is outside [0, 1]"));
        }
        Ok(Self { points })
    }

    /// The ideal π-pulse curve on `n` equally spaced points in `[0, r_max]`.
    pub fn ideal(r_max: f64, n: usize) -> Result<Self> {
        if n < 2 || !(r_max > 0.0) {
            return domain("ideal curve needs n >= 2 and r_max > 0");
        }
        let step = r_max / (n - 1) as f64;
        Self::new(
            (0..n)
                .map(|i| {
                    let r = i as f64 * step;
                    (r, ideal_pi_fidelity(r))
                })
                .collect(),
        )
    }

    pub fn points(&self) -> &[(f64, f64)] {
        &self.points
    }
}

/// Where a fidelity curve first drops below a threshold.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Crossing {
    /// Refined crossing, in units of the Rabi frequency.
    pub r: f64,
    /// Last point known to be at or above threshold.
    pub lower: (f64, f64),
    /// First point known to be below threshold.
    pub upper: (f64, f64),
    /// Number of function evaluations spent.
    pub evaluations: usize,
}

impl Crossing {
    /// Slope of the fidelity across the final bracket.
    pub fn slope(&self) -> f64 {
        let dr = self.upper.0 - self.lower.0;
        if dr > 0.0 {
            (self.upper.1 - self.lower.1) / dr
        } else {
            0.0
        }
    }
}

/// Smallest `r >= 0` at which a sampled curve first drops below `threshold`.
///
/// Between the bracketing samples the curve is taken as piecewise linear and
/// the crossing is refined by bisection to relative tolerance 1e-3.
pub fn bandwidth_from_curve(c: &FidelityCurve, threshold: f64) -> Result<f64> {
    let pts = c.points();
    let f0 = pts[0].1;
    if f0 <= threshold {
        return Err(Error::OnResonanceFailure {
            fidelity: f0,
            threshold,
        });
    }
    let j = match pts.iter().position(|&(_, f)| f < threshold) {
        Some(j) => j,
        None => {
            return Err(Error::NoCrossing {
                r_max: pts[pts.len() - 1].0,
                threshold,
            })
        }
    };
    let (ra, fa) = pts[j - 1];
    let (rb, fb) = pts[j];
    let interp = |r: f64| fa + (fb - fa) * (r - ra) / (rb - ra);
    let (lo, hi) = bisect(interp, ra, rb, threshold, 1e-3);
    Ok(0.5 * (lo + hi))
}

/// Bandwidth of a curve that can be evaluated anywhere.
///
/// Walks outward from resonance on a grid of spacing `step` up to `r_max`,
/// then bisects the first bracketing interval on `eval` itself.
pub fn bandwidth_search<F>(
    mut eval: F,
    step: f64,
    r_max: f64,
    threshold: f64,
    rel_tol: f64,
) -> Result<Crossing>
where
    F: FnMut(f64) -> Result<f64>,
{
    if !(step > 0.0) || !(r_max > 0.0) || !(rel_tol > 0.0) {
        return domain("bandwidth search needs positive step, range and tolerance");
    }
    let mut evaluations = 1;
    let f0 = eval(0.0)?;
    if f0 <= threshold {
        return Err(Error::OnResonanceFailure {
            fidelity: f0,
            threshold,
        });
    }
    let mut lower = (0.0, f0);
    let n = (r_max / step - 1e-9).ceil() as usize;
    for i in 1..=n {
        let r = (i as f64 * step).min(r_max);
        let f = eval(r)?;
        evaluations += 1;
        if f < threshold {
            let mut upper = (r, f);
            while upper.0 - lower.0 > rel_tol * upper.0 {
                let mid = 0.5 * (lower.0 + upper.0);
                let fm = eval(mid)?;
                evaluations += 1;
                if fm < threshold {
                    upper = (mid, fm);
                } else {
                    lower = (mid, fm);
                }
            }
            // linear interpolation inside the final bracket
            let (ra, fa) = lower;
            let (rb, fb) = upper;
            let r = if fa != fb {
                ra + (fa - threshold) * (rb - ra) / (fa - fb)
            } else {
                0.5 * (ra + rb)
            };
            return Ok(Crossing {
                r,
                lower,
                upper,
                evaluations,
            });
        }
        lower = (r, f);
    }
    Err(Error::NoCrossing { r_max, threshold })
}

fn bisect<F: Fn(f64) -> f64>(
    f: F,
    mut lo: f64,
    mut hi: f64,
    threshold: f64,
    rel_tol: f64,
) -> (f64, f64) {
    while hi - lo > rel_tol * hi {
        let mid = 0.5 * (lo + hi);
        if f(mid) < threshold {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    (lo, hi)
}
