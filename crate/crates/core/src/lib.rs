// Copyright 2026 The snrg Authors
// SPDX-License-Identifier: Apache-2.0

//! Simulation of a driven spin qubit under gradient-induced detuning,
//! slowly fluctuating magnetic noise and imperfect dynamical-decoupling
//! pulses.
//!
//! Three gate schemes are modelled:
//!
//! * **Rabi**: one continuous drive segment under a constant gradient.
//! * **DPG** (dynamically protected gate): the drive is split into segments
//!   interleaved with CPMG or XY-8 inversion pulses. Noise is refocused, but
//!   so is the gradient detuning, so selectivity is lost.
//! * **SNRG** (selective noise resistant gate): as DPG, but the gradient sign
//!   alternates with every inversion pulse, so the detuning survives while
//!   the bath noise is still refocused.
//!
//! The crate is organised bottom-up:
//!
//! * [`spincore`]: closed-form SU(2) propagators, states and observables.
//! * [`analytic`]: generalized-Rabi transfer probability, the ideal π-gate
//!   fidelity curve and bandwidth extraction.
//! * [`sequences`]: timelines for each scheme, gradient switching times and
//!   frequency-modulated waveform export.
//! * [`noise`]: Ornstein-Uhlenbeck bath detuning and DD pulse-angle errors.
//! * [`engine`]: Monte Carlo ensembles, 2-D scans, fidelity/bandwidth
//!   reports, Rabi-frequency sweeps and grid-search fits.
//! * [`cli`]: configuration files and the `snrg` command-line front end.
//!
//! All frequencies are angular (rad/s) and all times are seconds inside the
//! library. The [`units`] module is the only place that speaks kHz, µs, ns
//! and mG.

// `!(x > 0.0)` is used on purpose so that NaN fails the check as well.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analytic;
pub mod cli;
pub mod engine;
mod error;
pub mod format;
pub mod noise;
pub mod sequences;
pub mod spincore;
pub mod units;

pub use error::{Error, Result};
