// Copyright 2026 The snrg Authors
// SPDX-License-Identifier: Apache-2.0

use std::fs;
use std::path::{Path, PathBuf};

use snrg::cli::{bundled, run, RunConfig};
use snrg::engine::{run_ensemble, scan_detuning_time};
use snrg::sequences::Scheme;

fn snrg(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let argv = std::iter::once("snrg").chain(args.iter().copied());
    let code = run(argv, &mut out);
    (code, String::from_utf8(out).unwrap())
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn write_config(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

#[test]
fn gate_on_ideal_rabi_writes_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("gate.json");
    let (code, text) = snrg(&["gate", "--config", "ideal_rabi", "--out", path_str(&out)]);
    assert_eq!(code, 0);
    assert!(text.contains("fidelity (F_paper) = 1.0000"), "{text}");
    let json: serde_json::Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(json["summary"]["fidelity"].as_f64(), Some(1.0));
    assert_eq!(json["summary"]["fidelity_stderr"].as_f64(), Some(0.0));
    assert_eq!(json["summary"]["convention"], "F_paper");
    let bw = json["summary"]["bandwidth_khz"].as_f64().unwrap();
    assert!((bw / 54.0 - 1.0).abs() < 0.02, "{bw}");
    assert_eq!(json["config"]["name"], "ideal_rabi");
}

#[test]
fn gate_is_reproducible_from_seed_flag() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let args = [
            "gate",
            "--config",
            "paper_rabi",
            "--shots",
            "300",
            "--seed",
            "11",
            "--out",
            path_str(p),
        ];
        assert_eq!(snrg(&args).0, 0);
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}

#[test]
fn unknown_key_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let text = bundled("paper_rabi")
        .unwrap()
        .replace("[gate]", "[gate]\nomega_hz = 3.0");
    let cfg = write_config(dir.path(), "bad.toml", &text);
    assert_eq!(snrg(&["gate", "--config", path_str(&cfg)]).0, 1);
}

#[test]
fn missing_config_and_bad_flags_are_usage_errors() {
    assert_eq!(snrg(&["gate", "--config", "/nonexistent/x.toml"]).0, 1);
    assert_eq!(snrg(&["gate"]).0, 1);
    assert_eq!(
        snrg(&["gate", "--config", "ideal_rabi", "--threads", "0"]).0,
        1
    );
    assert_eq!(snrg(&["teleport"]).0, 1);
}

#[test]
fn scan_without_scan_section_is_a_usage_error() {
    assert_eq!(snrg(&["scan", "--config", "ideal_rabi"]).0, 1);
}

#[test]
fn undersampled_waveform_is_a_runtime_error() {
    let dir = tempfile::tempdir().unwrap();
    let text = bundled("snrg_waveform")
        .unwrap()
        .replace("sample_rate_mhz = 250.0", "sample_rate_mhz = 1.0");
    let cfg = write_config(dir.path(), "slow.toml", &text);
    let out = dir.path().join("w.csv");
    assert_eq!(
        snrg(&[
            "waveform",
            "--config",
            path_str(&cfg),
            "--out",
            path_str(&out)
        ])
        .0,
        2
    );
    assert!(!out.exists());
}

#[test]
fn waveform_matches_golden_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("w.csv");
    let (code, _) = snrg(&[
        "waveform",
        "--config",
        "snrg_waveform",
        "--out",
        path_str(&out),
    ]);
    assert_eq!(code, 0);
    let golden = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden/snrg_waveform.csv");
    let got = fs::read_to_string(&out).unwrap();
    if std::env::var_os("SNRG_BLESS").is_some() {
        fs::write(&golden, &got).unwrap();
    }
    assert_eq!(got, fs::read_to_string(&golden).unwrap());
}

#[test]
fn flat_fit_data_is_unidentifiable() {
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("flat.csv");
    let rows: String = (0..20).map(|k| format!("{k},0.25\n")).collect();
    fs::write(&data, rows).unwrap();
    let out = dir.path().join("fit.csv");
    let args = [
        "fit",
        "--config",
        "paper_fit_ou",
        "--shots",
        "10",
        "--data",
        path_str(&data),
        "--out",
        path_str(&out),
    ];
    assert_eq!(snrg(&args).0, 2);
}

#[test]
fn non_numeric_fit_data_is_a_runtime_error() {
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("junk.csv");
    fs::write(&data, "t,v\n1,2\nx,y\n").unwrap();
    let args = ["fit", "--config", "paper_fit_ou", "--data", path_str(&data)];
    assert_eq!(snrg(&args).0, 2);
}

#[test]
fn scan_csv_is_byte_identical_across_runs_and_threads() {
    let dir = tempfile::tempdir().unwrap();
    let text = bundled("paper_fig4_snrg").unwrap();
    let mut cfg = RunConfig::from_toml(text).unwrap();
    cfg.shots = 40;
    let scan = cfg.scan.as_mut().unwrap();
    scan.time_us = Some(snrg::cli::Grid::range(0.0, 10.0, 6));
    scan.detuning_khz = Some(snrg::cli::Grid::range(-100.0, 100.0, 5));
    let path = write_config(dir.path(), "small.toml", &cfg.to_toml());
    let mut files = Vec::new();
    for (k, threads) in ["1", "1", "4"].iter().enumerate() {
        let out = dir.path().join(format!("s{k}.csv"));
        let args = [
            "scan",
            "--config",
            path_str(&path),
            "--threads",
            threads,
            "--out",
            path_str(&out),
        ];
        assert_eq!(snrg(&args).0, 0);
        files.push(fs::read(&out).unwrap());
    }
    assert_eq!(files[0], files[1]);
    assert_eq!(files[0], files[2]);
    let text = String::from_utf8(files.remove(0)).unwrap();
    assert!(text
        .lines()
        .any(|l| l == "detuning_khz,duration_us,mean_sz,stderr"));
    // 6 times by 5 detunings
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 31);
}

#[test]
fn single_cell_scan_matches_gate_population() {
    let cfg = RunConfig::from_toml(bundled("paper_rabi").unwrap()).unwrap();
    let spec = cfg.scheme_spec(Scheme::Rabi).unwrap();
    let shot = cfg.shot_config().unwrap().with_shots(500);
    let gate = run_ensemble(&spec.build(0.0).unwrap(), &shot).unwrap();
    let t_pi = spec.theta / spec.omega;
    let scan = scan_detuning_time(&spec, &[0.0], &[t_pi], &shot).unwrap();
    let (sz, se) = scan.cell(0, 0).unwrap();
    assert!((sz - gate.sz().mean).abs() < 1e-12);
    assert!((se - gate.p1.stderr).abs() < 1e-12);
}

#[test]
fn scan_then_fit_recovers_bath() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = RunConfig::from_toml(bundled("paper_fig4_rabi").unwrap()).unwrap();
    cfg.seed = 123;
    cfg.shots = 2000;
    let scan = cfg.scan.as_mut().unwrap();
    scan.detuning_khz = Some(snrg::cli::Grid::values(vec![0.0]));
    scan.time_us = Some(snrg::cli::Grid::range(0.0, 60.0, 61));
    let scan_cfg = write_config(dir.path(), "decay.toml", &cfg.to_toml());
    let data = dir.path().join("decay.csv");
    assert_eq!(
        snrg(&[
            "scan",
            "--config",
            path_str(&scan_cfg),
            "--out",
            path_str(&data)
        ])
        .0,
        0
    );

    let out = dir.path().join("fit.csv");
    let args = [
        "fit",
        "--config",
        "paper_fit_ou",
        "--shots",
        "1000",
        "--data",
        path_str(&data),
        "--out",
        path_str(&out),
    ];
    let (code, text) = snrg(&args);
    assert_eq!(code, 0, "{text}");
    let map = fs::read_to_string(&out).unwrap();
    let best = map
        .lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| {
            l.split(',')
                .map(|v| v.parse::<f64>().unwrap())
                .collect::<Vec<_>>()
        })
        .min_by(|a, b| a[2].total_cmp(&b[2]))
        .unwrap();
    assert!((best[0] - 42.0).abs() <= 4.0, "b = {} kHz", best[0]);
    assert!(
        best[1] >= 115.0 && best[1] <= 460.0,
        "tau_c = {} us",
        best[1]
    );
}
