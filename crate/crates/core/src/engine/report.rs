// Copyright 2026 The snrg Authors
// SPDX-License-Identifier: Apache-2.0

use serde::Serialize;

use super::{run_ensemble, Ensemble, Estimate, SchemeSpec, ShotConfig};
use crate::analytic::{bandwidth_search, BANDWIDTH_THRESHOLD};
use crate::error::{Error, Result};
use crate::sequences::Scheme;

/// Bandwidths of a Rabi-frequency sweep are only reported where the
/// on-resonance fidelity exceeds this.
pub const MIN_FIDELITY_FOR_BANDWIDTH: f64 = 0.2;

/// Which fidelity a figure refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Convention {
    /// Squared population, `P1^2`.
    #[serde(rename = "F_paper")]
    FPaper,
    /// Population `P1`.
    #[serde(rename = "P1")]
    P1,
}

impl Convention {
    pub fn name(self) -> &'static str {
        match self {
            Convention::FPaper => "F_paper",
            Convention::P1 => "P1",
        }
    }
}

/// Bandwidth search settings. Detunings are in units of the Rabi frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BandwidthOptions {
    pub step: f64,
    pub r_max: f64,
    pub threshold: f64,
    pub rel_tol: f64,
    /// Shots per point of the fidelity curve; `None` uses the config's.
    pub shots: Option<usize>,
}

impl Default for BandwidthOptions {
    fn default() -> Self {
        Self {
            step: 0.25,
            r_max: 5.0,
            threshold: BANDWIDTH_THRESHOLD,
            rel_tol: 1e-3,
            shots: Some(super::DEFAULT_SCAN_SHOTS),
        }
    }
}

/// Outcome of a bandwidth search.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Bandwidth {
    Crossing {
        /// Detuning at which the fidelity crosses the threshold, rad/s.
        value: f64,
        /// One-sigma uncertainty, rad/s.
        uncertainty: f64,
        evaluations: usize,
    },
    /// The fidelity stays above threshold up to `searched_to`, rad/s.
    NoCrossing { searched_to: f64 },
}

impl Bandwidth {
    pub fn value(&self) -> Option<f64> {
        match self {
            Bandwidth::Crossing { value, .. } => Some(*value),
            Bandwidth::NoCrossing { .. } => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SchemeReport {
    pub scheme: Scheme,
    pub omega: f64,
    pub theta: f64,
    pub shots: usize,
    pub seed: u64,
    /// On-resonance fidelity in the convention named by `convention`.
    pub fidelity: Estimate,
    pub convention: Convention,
    /// On-resonance population `P1`.
    pub population: Estimate,
    /// On-resonance contrast `2 P1 - 1`.
    pub contrast: Estimate,
    pub bandwidth: Bandwidth,
}

/// On-resonance fidelity and spectral bandwidth of a scheme.
///
/// The fidelity-versus-detuning curve reuses the same shot streams at every
/// detuning, which keeps the bisection stable on Monte Carlo data.
pub fn scheme_report(
    spec: &SchemeSpec,
    cfg: &ShotConfig,
    opts: &BandwidthOptions,
) -> Result<SchemeReport> {
    let on = run_ensemble(&spec.build(0.0)?, cfg)?;
    report_from(spec, cfg, opts, on)
}

fn report_from(
    spec: &SchemeSpec,
    cfg: &ShotConfig,
    opts: &BandwidthOptions,
    on: Ensemble,
) -> Result<SchemeReport> {
    let f0 = on.f_paper();
    if f0.mean <= opts.threshold {
        return Err(Error::OnResonanceFailure {
            fidelity: f0.mean,
            threshold: opts.threshold,
        });
    }
    let curve_cfg = cfg.with_shots(opts.shots.unwrap_or(cfg.shots));
    let mut seen: Vec<(f64, Estimate)> = Vec::new();
    let search = bandwidth_search(
        |r| {
            let f = if r == 0.0 && curve_cfg.shots == cfg.shots {
                f0
            } else {
                run_ensemble(&spec.build(r * spec.omega)?, &curve_cfg)?.f_paper()
            };
            seen.push((r, f));
            Ok(f.mean)
        },
        opts.step,
        opts.r_max,
        opts.threshold,
        opts.rel_tol,
    );
    let bandwidth = match search {
        Ok(c) => {
            let se_at = |r: f64| {
                seen.iter()
                    .find(|(x, _)| *x == r)
                    .map_or(0.0, |(_, e)| e.stderr)
            };
            let se = 0.5 * (se_at(c.lower.0) + se_at(c.upper.0));
            let slope = c.slope().abs();
            let from_noise = if slope > 0.0 { se / slope } else { 0.0 };
            let from_bracket = 0.5 * (c.upper.0 - c.lower.0);
            Bandwidth::Crossing {
                value: c.r * spec.omega,
                uncertainty: from_noise.hypot(from_bracket) * spec.omega,
                evaluations: c.evaluations,
            }
        }
        Err(Error::NoCrossing { r_max, .. }) => Bandwidth::NoCrossing {
            searched_to: r_max * spec.omega,
        },
        Err(e) => return Err(e),
    };
    Ok(SchemeReport {
        scheme: spec.scheme,
        omega: spec.omega,
        theta: spec.theta,
        shots: cfg.shots,
        seed: cfg.seed,
        fidelity: f0,
        convention: Convention::FPaper,
        population: on.p1,
        contrast: on.contrast(),
        bandwidth,
    })
}

/// One Rabi frequency of an enhancement sweep.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnhancementRow {
    pub omega: f64,
    pub rabi: Estimate,
    pub snrg: Estimate,
    /// `F_snrg / F_rabi`.
    pub fidelity_ratio: f64,
    pub bw_rabi: Option<Bandwidth>,
    pub bw_snrg: Option<Bandwidth>,
}

impl EnhancementRow {
    /// `BW_rabi / BW_snrg` when both crossings exist.
    pub fn selectivity_ratio(&self) -> Option<f64> {
        let r = self.bw_rabi?.value()?;
        let s = self.bw_snrg?.value()?;
        Some(r / s)
    }
}

/// Rabi and SNRG π gates across Rabi frequencies. `template` supplies the
/// pulse length, spacing and rotation angle; its scheme is ignored.
pub fn enhancement_scan(
    omega_grid: &[f64],
    template: &SchemeSpec,
    cfg: &ShotConfig,
    opts: &BandwidthOptions,
) -> Result<Vec<EnhancementRow>> {
    if omega_grid.is_empty() || omega_grid.iter().any(|&w| !(w > 0.0)) {
        return crate::error::domain("Rabi frequencies must be > 0");
    }
    let mut rows = Vec::with_capacity(omega_grid.len());
    for &omega in omega_grid {
        let mut fid = [Estimate {
            mean: 0.0,
            stderr: 0.0,
        }; 2];
        let mut bw = [None, None];
        for (k, scheme) in [Scheme::Rabi, Scheme::SnrgXy8].into_iter().enumerate() {
            let spec = template.with_scheme(scheme).with_omega(omega);
            let on = run_ensemble(&spec.build(0.0)?, cfg)?;
            fid[k] = on.f_paper();
            if fid[k].mean > MIN_FIDELITY_FOR_BANDWIDTH {
                bw[k] = Some(report_from(&spec, cfg, opts, on)?.bandwidth);
            }
        }
        rows.push(EnhancementRow {
            omega,
            rabi: fid[0],
            snrg: fid[1],
            fidelity_ratio: fid[1].mean / fid[0].mean,
            bw_rabi: bw[0],
            bw_snrg: bw[1],
        });
    }
    Ok(rows)
}
