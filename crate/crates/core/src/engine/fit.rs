// Copyright 2026 The snrg Authors
// SPDX-License-Identifier: Apache-2.0

use serde::Serialize;

use super::{rabi_decay_curve, run_ensemble, NoiseMode, SchemeSpec, ShotConfig};
use crate::error::{domain, Error, Result};
use crate::noise::{DdImperfection, OuParams};

const MIN_POINTS: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OuGridPoint {
    pub b: f64,
    pub tau_c: f64,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OuFit {
    pub params: OuParams,
    /// Sum of squared residuals at the best cell.
    pub residual: f64,
    pub map: Vec<OuGridPoint>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SigmaGridPoint {
    pub sigma: f64,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DdFit {
    pub imperfection: DdImperfection,
    pub residual: f64,
    pub map: Vec<SigmaGridPoint>,
}

fn check_data(observed: &[(f64, f64)]) -> Result<()> {
    if observed.len() < MIN_POINTS {
        return domain(format!(
            "need at least {MIN_POINTS} data points, got {}",
            observed.len()
        ));
    }
    if observed
        .iter()
        .any(|(t, v)| !t.is_finite() || !v.is_finite() || *t < 0.0)
    {
        return domain("data must be finite with t >= 0");
    }
    if observed.windows(2).any(|w| !(w[1].0 >= w[0].0)) {
        return domain("data times must be sorted");
    }
    let (lo, hi) = observed
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &(_, v)| {
            (lo.min(v), hi.max(v))
        });
    if hi - lo < 1e-9 {
        return Err(Error::Unidentifiable("observed curve is flat".into()));
    }
    Ok(())
}

fn ssr(observed: &[(f64, f64)], model: &[f64]) -> f64 {
    observed
        .iter()
        .zip(model)
        .map(|((_, y), m)| (y - m).powi(2))
        .sum()
}

fn check_spread(residuals: impl Iterator<Item = f64>) -> Result<()> {
    let (lo, hi) = residuals.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), r| {
        (lo.min(r), hi.max(r))
    });
    if hi - lo <= 1e-12 * hi.abs() {
        return Err(Error::Unidentifiable(
            "every grid cell fits the data equally well".into(),
        ));
    }
    Ok(())
}

/// Grid search for the OU bath parameters behind a resonant Rabi decay
/// curve `(t, <S_z>)` driven at `omega`.
///
/// Every cell is simulated with the same seed, so the residual map is smooth
/// across the grid.
pub fn fit_ou(
    observed: &[(f64, f64)],
    b_grid: &[f64],
    tau_grid: &[f64],
    omega: f64,
    cfg: &ShotConfig,
) -> Result<OuFit> {
    check_data(observed)?;
    if b_grid.is_empty() || tau_grid.is_empty() {
        return domain("fit grids must be non-empty");
    }
    let times: Vec<f64> = observed.iter().map(|p| p.0).collect();
    let mut map = Vec::with_capacity(b_grid.len() * tau_grid.len());
    for &b in b_grid {
        for &tau_c in tau_grid {
            let ou = OuParams::new(b, tau_c)?;
            let c = ShotConfig {
                noise_mode: NoiseMode::Ou,
                ou,
                ..*cfg
            };
            let model: Vec<f64> = rabi_decay_curve(omega, 0.0, &times, &c)?
                .iter()
                .map(|e| e.sz().mean)
                .collect();
            map.push(OuGridPoint {
                b,
                tau_c,
                residual: ssr(observed, &model),
            });
        }
    }
    if map.len() > 1 {
        check_spread(map.iter().map(|p| p.residual))?;
    }
    let best = *map
        .iter()
        .min_by(|a, b| a.residual.total_cmp(&b.residual))
        .expect("grid is non-empty");
    Ok(OuFit {
        params: OuParams::new(best.b, best.tau_c)?,
        residual: best.residual,
        map,
    })
}

/// Grid search for the pulse-angle error behind an on-resonance gate slice
/// `(drive time, <S_z>)`.
///
/// `spec` is rebuilt for each drive time (whole cycles plus tail); times too
/// short for one cycle are skipped. `cfg` carries the bath model, whose
/// parameters should already be fitted.
pub fn fit_dd_imperfection(
    observed: &[(f64, f64)],
    sigma_grid: &[f64],
    spec: &SchemeSpec,
    cfg: &ShotConfig,
) -> Result<DdFit> {
    check_data(observed)?;
    if sigma_grid.is_empty() {
        return domain("sigma grid must be non-empty");
    }
    let mut usable = Vec::with_capacity(observed.len());
    let mut seqs = Vec::with_capacity(observed.len());
    for &(t, y) in observed {
        if t == 0.0 {
            continue;
        }
        match spec.build_for_drive_time(t, 0.0) {
            Ok(s) => {
                usable.push((t, y));
                seqs.push(s);
            }
            Err(Error::Infeasible(_)) => {}
            Err(e) => return Err(e),
        }
    }
    if usable.len() < MIN_POINTS {
        return domain(format!(
            "only {} data points are long enough for one decoupling cycle",
            usable.len()
        ));
    }
    let mut map = Vec::with_capacity(sigma_grid.len());
    for &sigma in sigma_grid {
        let c = ShotConfig {
            dd_imp: DdImperfection::new(sigma)?,
            ..*cfg
        };
        let model = seqs
            .iter()
            .map(|s| Ok(run_ensemble(s, &c)?.sz().mean))
            .collect::<Result<Vec<f64>>>()?;
        map.push(SigmaGridPoint {
            sigma,
            residual: ssr(&usable, &model),
        });
    }
    if map.len() > 1 {
        check_spread(map.iter().map(|p| p.residual))?;
    }
    let best = *map
        .iter()
        .min_by(|a, b| a.residual.total_cmp(&b.residual))
        .expect("grid is non-empty");
    Ok(DdFit {
        imperfection: DdImperfection::new(best.sigma)?,
        residual: best.residual,
        map,
    })
}
