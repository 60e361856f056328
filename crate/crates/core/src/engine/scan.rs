// Copyright 2026 The snrg Authors
// SPDX-License-Identifier: Apache-2.0

use serde::Serialize;

use super::{run_ensemble, SchemeSpec, ShotConfig};
use crate::error::{domain, Error, Result};
use crate::sequences::Scheme;

/// Meaning of the second scan axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ScanAxis {
    /// Total drive time, s.
    DriveTime,
    /// Rabi frequency, rad/s.
    Omega,
}

/// `<S_z>` over a detuning grid times a drive-time or Rabi-frequency grid.
///
/// Cells that cannot be laid out (shorter than one decoupling cycle) are
/// `None`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanResult {
    pub scheme: Scheme,
    pub axis2_kind: ScanAxis,
    /// Gradient detuning, rad/s.
    pub axis1: Vec<f64>,
    pub axis2: Vec<f64>,
    /// Indexed `[detuning][axis2]`.
    pub mean_sz: Vec<Vec<Option<f64>>>,
    pub stderr: Vec<Vec<Option<f64>>>,
    pub seed: u64,
    pub shots: usize,
}

impl ScanResult {
    pub fn cell(&self, i: usize, j: usize) -> Option<(f64, f64)> {
        Some((self.mean_sz[i][j]?, self.stderr[i][j]?))
    }

    pub fn missing(&self) -> usize {
        self.mean_sz
            .iter()
            .flatten()
            .filter(|c| c.is_none())
            .count()
    }
}

fn check_grid(name: &str, g: &[f64]) -> Result<()> {
    if g.is_empty() {
        return domain(format!("{name} grid is empty"));
    }
    if g.iter().any(|x| !x.is_finite()) || g.windows(2).any(|w| !(w[1] > w[0])) {
        return domain(format!(
            "{name} grid must be finite and strictly increasing"
        ));
    }
    Ok(())
}

fn scan<F>(
    spec: &SchemeSpec,
    det_grid: &[f64],
    axis2: &[f64],
    kind: ScanAxis,
    cfg: &ShotConfig,
    cell: F,
) -> Result<ScanResult>
where
    F: Fn(f64, f64) -> Result<Option<(f64, f64)>>,
{
    cfg.validate()?;
    check_grid("detuning", det_grid)?;
    check_grid("second axis", axis2)?;
    let mut mean_sz = Vec::with_capacity(det_grid.len());
    let mut stderr = Vec::with_capacity(det_grid.len());
    for &dz in det_grid {
        let mut row_m = Vec::with_capacity(axis2.len());
        let mut row_s = Vec::with_capacity(axis2.len());
        for &x in axis2 {
            let c = cell(dz, x)?;
            row_m.push(c.map(|c| c.0));
            row_s.push(c.map(|c| c.1));
        }
        mean_sz.push(row_m);
        stderr.push(row_s);
    }
    Ok(ScanResult {
        scheme: spec.scheme,
        axis2_kind: kind,
        axis1: det_grid.to_vec(),
        axis2: axis2.to_vec(),
        mean_sz,
        stderr,
        seed: cfg.seed,
        shots: cfg.shots,
    })
}

/// Chevron-style scan: the scheme is rebuilt for every total drive time, with
/// decoupling schemes advancing in whole cycles.
pub fn scan_detuning_time(
    spec: &SchemeSpec,
    det_grid: &[f64],
    time_grid: &[f64],
    cfg: &ShotConfig,
) -> Result<ScanResult> {
    if time_grid.first().is_some_and(|&t| t < 0.0) {
        return domain("drive times must be >= 0");
    }
    scan(
        spec,
        det_grid,
        time_grid,
        ScanAxis::DriveTime,
        cfg,
        |dz, t| {
            if t == 0.0 {
                return Ok(Some((0.5, 0.0)));
            }
            match spec.build_for_drive_time(t, dz) {
                Ok(seq) => {
                    let sz = run_ensemble(&seq, cfg)?.sz();
                    Ok(Some((sz.mean, sz.stderr)))
                }
                Err(Error::Infeasible(_)) => Ok(None),
                Err(e) => Err(e),
            }
        },
    )
}

/// Gate at fixed `theta` scanned over detuning and Rabi frequency.
pub fn scan_omega_detuning(
    spec: &SchemeSpec,
    det_grid: &[f64],
    omega_grid: &[f64],
    cfg: &ShotConfig,
) -> Result<ScanResult> {
    if omega_grid.first().is_some_and(|&w| w <= 0.0) {
        return domain("Rabi frequencies must be > 0");
    }
    scan(
        spec,
        det_grid,
        omega_grid,
        ScanAxis::Omega,
        cfg,
        |dz, omega| match spec.with_omega(omega).build(dz) {
            Ok(seq) => {
                let sz = run_ensemble(&seq, cfg)?.sz();
                Ok(Some((sz.mean, sz.stderr)))
            }
            Err(Error::Infeasible(_)) => Ok(None),
            Err(e) => Err(e),
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn chevron_apex_at_pi_time() {
        let omega = 2.0 * PI * 54e3;
        let spec = SchemeSpec::new(Scheme::Rabi, omega);
        let tp = PI / omega;
        let times: Vec<f64> = (0..=40).map(|k| k as f64 * tp / 20.0).collect();
        let r = scan_detuning_time(
            &spec,
            &[-omega, 0.0, omega],
            &times,
            &ShotConfig::noiseless(1),
        )
        .unwrap();
        let row = &r.mean_sz[1];
        let (jmin, _) = row
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.unwrap().total_cmp(&b.1.unwrap()))
            .unwrap();
        assert_eq!(jmin, 20);
        assert!((row[20].unwrap() + 0.5).abs() < 1e-12);
        assert_eq!(row[0], Some(0.5));
        // detuned rows never fully invert
        assert!(r.mean_sz[0].iter().all(|c| c.unwrap() > -0.5 + 0.1));
    }

    #[test]
    fn short_dd_cells_are_missing() {
        let omega = 2.0 * PI * 54e3;
        let spec = SchemeSpec::new(Scheme::SnrgXy8, omega);
        let r =
            scan_detuning_time(&spec, &[0.0], &[0.5e-6, 2e-6], &ShotConfig::noiseless(1)).unwrap();
        assert_eq!(r.mean_sz[0][0], None);
        assert!(r.mean_sz[0][1].is_some());
        assert_eq!(r.missing(), 1);
    }

    #[test]
    fn grids_are_validated() {
        let spec = SchemeSpec::new(Scheme::Rabi, 1.0);
        let cfg = ShotConfig::noiseless(1);
        assert!(scan_detuning_time(&spec, &[], &[1.0], &cfg).is_err());
        assert!(scan_detuning_time(&spec, &[1.0, 0.0], &[1.0], &cfg).is_err());
        assert!(scan_omega_detuning(&spec, &[0.0], &[0.0, 1.0], &cfg).is_err());
    }

    #[test]
    fn omega_scan_shape() {
        let spec = SchemeSpec::new(Scheme::Rabi, 1.0);
        let omegas = [1e5, 2e5, 4e5];
        let r =
            scan_omega_detuning(&spec, &[0.0, 1e5], &omegas, &ShotConfig::noiseless(1)).unwrap();
        assert_eq!(r.mean_sz.len(), 2);
        assert!(r.mean_sz.iter().all(|row| row.len() == 3));
        assert!(r.mean_sz[0]
            .iter()
            .all(|c| (c.unwrap() + 0.5).abs() < 1e-12));
    }
}
