// Copyright 2026 The snrg Authors
// SPDX-License-Identifier: Apache-2.0

//! The `snrg` command-line front end.
//!
//! ```text
//! snrg gate     --config paper_snrg          # fidelity and bandwidth report
//! snrg scan     --config paper_fig4_rabi     # 2-D <S_z> grids as CSV
//! snrg waveform --config snrg_waveform       # AWG-ready channels
//! snrg fit      --config paper_fit_ou --data decay.csv
//! ```
//!
//! `--config` takes a file path or the name of a bundled config. Exit codes
//! are 0 on success, 1 for usage and configuration errors and 2 for errors
//! raised while running.

mod config;

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

pub use config::{
    bundled, BandwidthSection, FitSection, FitTarget, GateSection, Grid, NoiseSection, RunConfig,
    ScanKind, ScanSection, WaveformSection, BUNDLED,
};

use crate::engine::{
    enhancement_scan, fit_dd_imperfection, fit_ou, scan_detuning_time, scan_omega_detuning,
    scheme_report, with_threads, Bandwidth, EnhancementRow, ScanAxis, ScanResult, SchemeReport,
};
use crate::format;
use crate::sequences::render_waveform;
use crate::units::{angular_to_khz, khz_to_angular, s_to_us, us_to_s};

#[derive(Debug, Parser)]
#[command(
    name = "snrg",
    version,
    about = "Selective noise-resistant gate simulator"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// On-resonance fidelity and spectral bandwidth of one scheme.
    Gate(Common),
    /// Detuning x time, detuning x Rabi frequency or enhancement sweeps.
    Scan(Common),
    /// Render the gate as gradient, drive and marker channels.
    Waveform(Common),
    /// Fit bath or pulse-error parameters to measured curves.
    Fit {
        #[command(flatten)]
        common: Common,
        /// CSV of (t_us, value) rows, or a `snrg scan` output.
        #[arg(long)]
        data: PathBuf,
    },
}

#[derive(Debug, Args)]
pub struct Common {
    /// Config file path or bundled config name.
    #[arg(long)]
    pub config: String,
    #[arg(long, env = "SNRG_SEED")]
    pub seed: Option<u64>,
    #[arg(long)]
    pub shots: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, env = "SNRG_THREADS")]
    pub threads: Option<usize>,
}

/// Error with the exit code it maps to.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Runtime(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Runtime(_) => 2,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Runtime(m) => m,
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn usage(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

fn runtime(e: impl std::fmt::Display) -> CliError {
    CliError::Runtime(e.to_string())
}

/// Parses `args` (including the program name), runs the command and returns
/// the process exit code. Normal output goes to `stdout`, diagnostics to
/// standard error.
pub fn run<I, T>(args: I, stdout: &mut dyn std::io::Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli.command) {
        Ok(text) => {
            let _ = stdout.write_all(text.as_bytes());
            0
        }
        Err(e) => {
            eprintln!("snrg: {}", e.message());
            e.code()
        }
    }
}

/// Runs a parsed command and returns what it would print.
pub fn execute(cmd: &Command) -> CliResult<String> {
    let common = match cmd {
        Command::Gate(c) | Command::Scan(c) | Command::Waveform(c) => c,
        Command::Fit { common, .. } => common,
    };
    let cfg = load_config(common)?;
    let go = || match cmd {
        Command::Gate(c) => cmd_gate(&cfg, c.out.as_deref()),
        Command::Scan(c) => cmd_scan(&cfg, c.out.as_deref()),
        Command::Waveform(c) => cmd_waveform(&cfg, c.out.as_deref()),
        Command::Fit { common, data } => cmd_fit(&cfg, data, common.out.as_deref()),
    };
    match common.threads {
        Some(n) => with_threads(n, go).map_err(usage)?,
        None => go(),
    }
}

/// Reads the config named by `--config` and applies flag overrides.
pub fn load_config(c: &Common) -> CliResult<RunConfig> {
    let path = Path::new(&c.config);
    let text = if path.is_file() {
        fs::read_to_string(path)
            .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?
    } else if let Some(t) = bundled(&c.config) {
        t.to_string()
    } else {
        let names: Vec<&str> = BUNDLED.iter().map(|(n, _)| *n).collect();
        return Err(usage(format!(
            "no config file or bundled config named '{}' (bundled: {})",
            c.config,
            names.join(", ")
        )));
    };
    let mut cfg = RunConfig::from_toml(&text).map_err(|e| usage(format!("config error: {e}")))?;
    if let Some(s) = c.seed {
        cfg.seed = s;
    }
    if let Some(n) = c.shots {
        cfg.shots = n;
        cfg.bandwidth.shots = cfg.bandwidth.shots.min(n);
    }
    if c.threads == Some(0) {
        return Err(usage("--threads must be >= 1"));
    }
    Ok(cfg)
}

fn provenance(cfg: &RunConfig) -> Vec<String> {
    let mut lines = vec![format!(
        "generator = {} {}",
        env!("CARGO_PKG_NAME"),
        env!("CARGO_PKG_VERSION")
    )];
    lines.push("config:".to_string());
    lines.extend(cfg.to_toml().lines().map(|l| format!("  {l}")));
    lines
}

fn write_file(path: &Path, text: &str) -> CliResult<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)
            .map_err(|e| runtime(format!("cannot create {}: {e}", dir.display())))?;
    }
    fs::write(path, text).map_err(|e| runtime(format!("cannot write {}: {e}", path.display())))
}

fn out_path(cfg: &RunConfig, flag: Option<&Path>, suffix: &str) -> PathBuf {
    flag.map(Path::to_path_buf)
        .or_else(|| cfg.out.as_ref().map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from(format!("{}{suffix}", cfg.stem())))
}

fn fmt_bandwidth(b: &Bandwidth) -> String {
    match *b {
        Bandwidth::Crossing {
            value, uncertainty, ..
        } => format!(
            "2pi x {:.2} +/- {:.2} kHz",
            angular_to_khz(value),
            angular_to_khz(uncertainty)
        ),
        Bandwidth::NoCrossing { searched_to } => {
            format!(
                "no crossing up to 2pi x {:.1} kHz",
                angular_to_khz(searched_to)
            )
        }
    }
}

#[derive(Serialize)]
struct GateSidecar<'a> {
    generator: String,
    config: &'a RunConfig,
    report: &'a SchemeReport,
    summary: GateSummary,
}

#[derive(Serialize)]
struct GateSummary {
    convention: &'static str,
    fidelity: f64,
    fidelity_stderr: f64,
    population: f64,
    population_stderr: f64,
    omega_khz: f64,
    bandwidth_khz: Option<f64>,
    bandwidth_uncertainty_khz: Option<f64>,
}

/// Fidelity and bandwidth of the configured scheme, with a JSON sidecar.
pub fn cmd_gate(cfg: &RunConfig, out: Option<&Path>) -> CliResult<String> {
    let spec = cfg.scheme_spec(cfg.scheme).map_err(usage)?;
    let shot = cfg.shot_config().map_err(usage)?;
    let opts = cfg.bandwidth_options().map_err(usage)?;
    let report = scheme_report(&spec, &shot, &opts).map_err(runtime)?;
    let (bw, bw_unc) = match report.bandwidth {
        Bandwidth::Crossing {
            value, uncertainty, ..
        } => (
            Some(angular_to_khz(value)),
            Some(angular_to_khz(uncertainty)),
        ),
        Bandwidth::NoCrossing { .. } => (None, None),
    };
    let sidecar = GateSidecar {
        generator: format!("{} {}", env!("CARGO_PKG_NAME"), env!("CARGO_PKG_VERSION")),
        config: cfg,
        report: &report,
        summary: GateSummary {
            convention: report.convention.name(),
            fidelity: report.fidelity.mean,
            fidelity_stderr: report.fidelity.stderr,
            population: report.population.mean,
            population_stderr: report.population.stderr,
            omega_khz: cfg.gate.omega_khz,
            bandwidth_khz: bw,
            bandwidth_uncertainty_khz: bw_unc,
        },
    };
    let path = out_path(cfg, out, ".gate.json");
    write_file(&path, &format::json(&sidecar).map_err(runtime)?)?;
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{} at Omega = 2pi x {} kHz, {} shots, seed {}",
        report.scheme, cfg.gate.omega_khz, report.shots, report.seed
    );
    let _ = writeln!(
        s,
        "fidelity ({}) = {:.4} +/- {:.4}",
        report.convention.name(),
        report.fidelity.mean,
        report.fidelity.stderr
    );
    let _ = writeln!(
        s,
        "population P1 = {:.4} +/- {:.4}",
        report.population.mean, report.population.stderr
    );
    let _ = writeln!(s, "bandwidth = {}", fmt_bandwidth(&report.bandwidth));
    let _ = writeln!(s, "wrote {}", path.display());
    Ok(s)
}

/// CSV text of a scan: provenance comments, a header row and one row per cell.
pub fn scan_csv(result: &ScanResult, cfg: &RunConfig) -> String {
    let mut s = String::new();
    for line in provenance(cfg) {
        let _ = writeln!(s, "# {line}");
    }
    let _ = writeln!(s, "# scheme = {}", result.scheme);
    let _ = writeln!(s, "# seed = {}", result.seed);
    let _ = writeln!(s, "# shots = {}", result.shots);
    let axis2 = match result.axis2_kind {
        ScanAxis::DriveTime => "duration_us",
        ScanAxis::Omega => "omega_khz",
    };
    let _ = writeln!(s, "detuning_khz,{axis2},mean_sz,stderr");
    for (i, &dz) in result.axis1.iter().enumerate() {
        for (j, &x) in result.axis2.iter().enumerate() {
            let x = match result.axis2_kind {
                ScanAxis::DriveTime => s_to_us(x),
                ScanAxis::Omega => angular_to_khz(x),
            };
            let (m, e) = match result.cell(i, j) {
                Some((m, e)) => (format::csv(m), format::csv(e)),
                None => (String::new(), String::new()),
            };
            let _ = writeln!(
                s,
                "{},{},{m},{e}",
                format::csv(angular_to_khz(dz)),
                format::csv(x)
            );
        }
    }
    s
}

fn enhancement_csv(rows: &[EnhancementRow], cfg: &RunConfig) -> String {
    let mut s = String::new();
    for line in provenance(cfg) {
        let _ = writeln!(s, "# {line}");
    }
    let _ = writeln!(s, "# fidelity convention = F_paper");
    let _ = writeln!(
        s,
        "omega_khz,f_rabi,f_rabi_stderr,f_snrg,f_snrg_stderr,fidelity_ratio,bw_rabi_khz,bw_snrg_khz"
    );
    let bw = |b: &Option<Bandwidth>| match b.and_then(|b| b.value()) {
        Some(v) => format::csv(angular_to_khz(v)),
        None => String::new(),
    };
    for r in rows {
        let _ = writeln!(
            s,
            "{},{},{},{},{},{},{},{}",
            format::csv(angular_to_khz(r.omega)),
            format::csv(r.rabi.mean),
            format::csv(r.rabi.stderr),
            format::csv(r.snrg.mean),
            format::csv(r.snrg.stderr),
            format::csv(r.fidelity_ratio),
            bw(&r.bw_rabi),
            bw(&r.bw_snrg)
        );
    }
    s
}

fn scheme_path(base: &Path, scheme: &str, many: bool) -> PathBuf {
    if !many {
        return base.to_path_buf();
    }
    let stem = base.file_stem().and_then(|s| s.to_str()).unwrap_or("scan");
    let ext = base.extension().and_then(|s| s.to_str()).unwrap_or("csv");
    base.with_file_name(format!("{stem}_{scheme}.{ext}"))
}

/// Runs the configured `[scan]` and writes CSV files.
pub fn cmd_scan(cfg: &RunConfig, out: Option<&Path>) -> CliResult<String> {
    let scan = cfg
        .scan
        .as_ref()
        .ok_or_else(|| usage("config has no [scan] section"))?;
    let mut shot = cfg.shot_config().map_err(usage)?;
    shot.shots = cfg.shots;
    let base = out_path(cfg, out, ".csv");
    let mut s = String::new();
    let grid = |g: &Option<Grid>, key: &str| -> CliResult<Vec<f64>> {
        g.as_ref()
            .ok_or_else(|| usage(format!("[scan] needs `{key}`")))?
            .resolve(key)
            .map_err(usage)
    };
    if scan.kind == ScanKind::Enhancement {
        let omegas: Vec<f64> = grid(&scan.omega_khz, "omega_khz")?
            .into_iter()
            .map(khz_to_angular)
            .collect();
        let template = cfg.scheme_spec(cfg.scheme).map_err(usage)?;
        let opts = cfg.bandwidth_options().map_err(usage)?;
        let rows = enhancement_scan(&omegas, &template, &shot, &opts).map_err(runtime)?;
        write_file(&base, &enhancement_csv(&rows, cfg))?;
        for r in &rows {
            let _ = writeln!(
                s,
                "Omega = 2pi x {:>7.2} kHz  F_rabi = {:.4}  F_snrg = {:.4}  ratio = {:.3}",
                angular_to_khz(r.omega),
                r.rabi.mean,
                r.snrg.mean,
                r.fidelity_ratio
            );
        }
        let _ = writeln!(s, "wrote {}", base.display());
        return Ok(s);
    }
    let dets: Vec<f64> = grid(&scan.detuning_khz, "detuning_khz")?
        .into_iter()
        .map(khz_to_angular)
        .collect();
    let schemes = if scan.schemes.is_empty() {
        vec![cfg.scheme]
    } else {
        scan.schemes.clone()
    };
    for &scheme in &schemes {
        let spec = cfg.scheme_spec(scheme).map_err(usage)?;
        let result = match scan.kind {
            ScanKind::DetuningTime => {
                let times: Vec<f64> = grid(&scan.time_us, "time_us")?
                    .into_iter()
                    .map(us_to_s)
                    .collect();
                scan_detuning_time(&spec, &dets, &times, &shot)
            }
            ScanKind::OmegaDetuning => {
                let omegas: Vec<f64> = grid(&scan.omega_khz, "omega_khz")?
                    .into_iter()
                    .map(khz_to_angular)
                    .collect();
                scan_omega_detuning(&spec, &dets, &omegas, &shot)
            }
            ScanKind::Enhancement => unreachable!("handled above"),
        }
        .map_err(|e| match e {
            crate::Error::Domain(_) => usage(e),
            _ => runtime(e),
        })?;
        let path = scheme_path(&base, scheme.name(), schemes.len() > 1);
        write_file(&path, &scan_csv(&result, cfg))?;
        let _ = writeln!(
            s,
            "{scheme}: {} x {} cells ({} missing), wrote {}",
            result.axis1.len(),
            result.axis2.len(),
            result.missing(),
            path.display()
        );
    }
    Ok(s)
}

/// Renders the configured gate at `gate.delta_z_khz` to a waveform file.
pub fn cmd_waveform(cfg: &RunConfig, out: Option<&Path>) -> CliResult<String> {
    let settings = cfg.waveform_settings().map_err(usage)?;
    let spec = cfg.scheme_spec(cfg.scheme).map_err(usage)?;
    let seq = spec.build(cfg.delta_z()).map_err(runtime)?;
    let wf = render_waveform(&seq, &settings).map_err(runtime)?;
    let path = out_path(cfg, out, ".waveform.csv");
    write_file(&path, &wf.to_text(&provenance(cfg)))?;
    Ok(format!(
        "{} samples over {:.4} us, wrote {}\n",
        wf.len(),
        s_to_us(wf.wall_time),
        path.display()
    ))
}

/// Reads `(t_us, value)` pairs. Lines starting with `#` are skipped. A header
/// row naming `duration_us` and `mean_sz` (as written by `snrg scan`) selects
/// those columns; otherwise the first two columns are used.
pub fn read_curve(path: &Path) -> CliResult<Vec<(f64, f64)>> {
    let mut rdr = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .has_headers(false)
        .trim(csv::Trim::All)
        .flexible(true)
        .from_path(path)
        .map_err(|e| runtime(format!("cannot read {}: {e}", path.display())))?;
    let mut cols = (0, 1);
    let mut out = Vec::new();
    for (k, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| runtime(format!("{}: {e}", path.display())))?;
        let parse = |i: usize| rec.get(i).and_then(|v| v.parse::<f64>().ok());
        match (parse(cols.0), parse(cols.1)) {
            (Some(t), Some(v)) => out.push((us_to_s(t), v)),
            _ if k == 0 => {
                let find = |name: &str| rec.iter().position(|h| h == name);
                if let (Some(t), Some(v)) = (find("duration_us"), find("mean_sz")) {
                    cols = (t, v);
                }
            }
            // cells missing from a scan have empty values
            (Some(_), None) if rec.get(cols.1) == Some("") => {}
            _ => {
                return Err(runtime(format!(
                    "{}: row {} is not numeric",
                    path.display(),
                    k + 1
                )))
            }
        }
    }
    Ok(out)
}

/// Fits `[fit]` parameters to the curve in `data`.
pub fn cmd_fit(cfg: &RunConfig, data: &Path, out: Option<&Path>) -> CliResult<String> {
    let fit = cfg
        .fit
        .as_ref()
        .ok_or_else(|| usage("config has no [fit] section"))?;
    let curve = read_curve(data)?;
    let shot = cfg.shot_config().map_err(usage)?;
    let path = out_path(cfg, out, ".fit.csv");
    let mut csv_text = String::new();
    for line in provenance(cfg) {
        let _ = writeln!(csv_text, "# {line}");
    }
    let _ = writeln!(csv_text, "# data = {}", data.display());
    let mut s = String::new();
    let fit_err = |e: crate::Error| match e {
        crate::Error::Domain(_) => usage(e),
        _ => runtime(e),
    };
    match fit.target {
        FitTarget::Ou => {
            if fit.b_khz.is_empty() || fit.tau_c_us.is_empty() {
                return Err(usage("[fit] target `ou` needs `b_khz` and `tau_c_us`"));
            }
            let bs: Vec<f64> = fit.b_khz.iter().map(|&b| khz_to_angular(b)).collect();
            let taus: Vec<f64> = fit.tau_c_us.iter().map(|&t| us_to_s(t)).collect();
            let r = fit_ou(&curve, &bs, &taus, cfg.omega(), &shot).map_err(fit_err)?;
            let _ = writeln!(csv_text, "b_khz,tau_c_us,residual");
            for p in &r.map {
                let _ = writeln!(
                    csv_text,
                    "{},{},{}",
                    format::csv(angular_to_khz(p.b)),
                    format::csv(s_to_us(p.tau_c)),
                    format::csv(p.residual)
                );
            }
            let _ = writeln!(
                s,
                "b = 2pi x {} kHz, tau_c = {} us, residual = {}",
                format::csv(angular_to_khz(r.params.b)),
                format::csv(s_to_us(r.params.tau_c)),
                format::csv(r.residual)
            );
        }
        FitTarget::Dd => {
            if fit.sigma.is_empty() {
                return Err(usage("[fit] target `dd` needs `sigma`"));
            }
            let spec = cfg.scheme_spec(cfg.scheme).map_err(usage)?;
            let r = fit_dd_imperfection(&curve, &fit.sigma, &spec, &shot).map_err(fit_err)?;
            let _ = writeln!(csv_text, "sigma_dd,residual");
            for p in &r.map {
                let _ = writeln!(
                    csv_text,
                    "{},{}",
                    format::csv(p.sigma),
                    format::csv(p.residual)
                );
            }
            let _ = writeln!(
                s,
                "sigma_dd = {}, residual = {}",
                format::csv(r.imperfection.sigma),
                format::csv(r.residual)
            );
        }
    }
    write_file(&path, &csv_text)?;
    let _ = writeln!(s, "wrote residual map to {}", path.display());
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        let mut sink = Vec::new();
        assert_eq!(run(["snrg", "bogus"], &mut sink), 1);
        assert_eq!(
            run(["snrg", "gate", "--config", "no_such_config"], &mut sink),
            1
        );
        assert_eq!(run(["snrg", "--version"], &mut sink), 0);
    }

    #[test]
    fn scheme_paths() {
        let p = scheme_path(Path::new("out/fig.csv"), "rabi", true);
        assert_eq!(p, Path::new("out/fig_rabi.csv"));
        assert_eq!(
            scheme_path(Path::new("a.csv"), "rabi", false),
            Path::new("a.csv")
        );
    }
}
