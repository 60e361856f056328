// Copyright 2026 The snrg Authors
// SPDX-License-Identifier: Apache-2.0

//! Exact two-level spin algebra.
//!
//! The qubit basis is ordered `(|0>, |-1>)` and spin operators are
//! `S_k = sigma_k / 2`, so `<S_z> = +1/2` for `|0>`. A drive segment with
//! Rabi frequency `omega`, azimuth `phi` and total z detuning `delta` evolves
//! under
//!
//! ```text
//! H = delta * S_z + omega * (cos(phi) S_x + sin(phi) S_y)
//! ```
//!
//! and is propagated in closed form with the SU(2) axis-angle formula.

use std::ops::Mul;

use num_complex::Complex64;

use crate::error::{domain, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Normalized qubit state over `(|0>, |-1>)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinState {
    amp0: Complex64,
    amp1: Complex64,
}

impl SpinState {
    /// Builds a state from two amplitudes, normalizing them.
    pub fn new(amp0: Complex64, amp1: Complex64) -> Result<Self> {
        let norm = (amp0.norm_sqr() + amp1.norm_sqr()).sqrt();
        if !norm.is_finite() || norm == 0.0 {
            return domain("state amplitudes must be finite and not both zero");
        }
        Ok(Self {
            amp0: amp0 / norm,
            amp1: amp1 / norm,
        })
    }

    /// `|m_s = 0>`, the optically initialized state.
    pub fn ground() -> Self {
        Self {
            amp0: ONE,
            amp1: ZERO,
        }
    }

    /// `|m_s = -1>`.
    pub fn excited() -> Self {
        Self {
            amp0: ZERO,
            amp1: ONE,
        }
    }

    pub fn amp0(&self) -> Complex64 {
        self.amp0
    }

    pub fn amp1(&self) -> Complex64 {
        self.amp1
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amp0.norm_sqr() + self.amp1.norm_sqr()
    }

    /// Population of `|-1>`.
    pub fn population(&self) -> f64 {
        self.amp1.norm_sqr()
    }

    /// `<S_z>` in `[-1/2, +1/2]`.
    pub fn sz_expectation(&self) -> f64 {
        0.5 * (self.amp0.norm_sqr() - self.amp1.norm_sqr())
    }

    fn renormalized(amp0: Complex64, amp1: Complex64) -> Self {
        let n = (amp0.norm_sqr() + amp1.norm_sqr()).sqrt();
        Self {
            amp0: amp0 / n,
            amp1: amp1 / n,
        }
    }
}

/// `<S_z>` of a state.
pub fn sz_expectation(s: &SpinState) -> f64 {
    s.sz_expectation()
}

/// Population `P_1 = |<-1|psi>|^2`.
pub fn population(s: &SpinState) -> f64 {
    s.population()
}

/// A 2x2 unitary acting on the qubit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Propagator {
    u: [[Complex64; 2]; 2],
}

impl Propagator {
    pub fn identity() -> Self {
        Self {
            u: [[ONE, ZERO], [ZERO, ONE]],
        }
    }

    /// Wraps a raw matrix. The caller is responsible for unitarity.
    pub fn from_matrix(u: [[Complex64; 2]; 2]) -> Self {
        Self { u }
    }

    pub fn matrix(&self) -> [[Complex64; 2]; 2] {
        self.u
    }

    /// `exp(-i angle (cos(phi) S_x + sin(phi) S_y))`: an ideal rotation with
    /// no detuning, e.g. an instantaneous inversion pulse.
    pub fn rotation(angle: f64, phi: f64) -> Self {
        let (s, c) = (0.5 * angle).sin_cos();
        let (sp, cp) = phi.sin_cos();
        // -i s (nx -/+ i ny)
        let off_upper = Complex64::new(-s * sp, -s * cp);
        let off_lower = Complex64::new(s * sp, -s * cp);
        Self {
            u: [
                [Complex64::new(c, 0.0), off_upper],
                [off_lower, Complex64::new(c, 0.0)],
            ],
        }
    }

    /// `exp(-i angle S_z)`.
    pub fn z_rotation(angle: f64) -> Self {
        let (s, c) = (0.5 * angle).sin_cos();
        Self {
            u: [[Complex64::new(c, -s), ZERO], [ZERO, Complex64::new(c, s)]],
        }
    }

    pub fn dagger(&self) -> Self {
        let u = &self.u;
        Self {
            u: [
                [u[0][0].conj(), u[1][0].conj()],
                [u[0][1].conj(), u[1][1].conj()],
            ],
        }
    }

    pub fn det(&self) -> Complex64 {
        self.u[0][0] * self.u[1][1] - self.u[0][1] * self.u[1][0]
    }

    pub fn trace(&self) -> Complex64 {
        self.u[0][0] + self.u[1][1]
    }

    /// Largest entry-wise deviation of `U^dagger U` from the identity.
    pub fn unitarity_error(&self) -> f64 {
        let p = self.dagger() * *self;
        let mut err: f64 = 0.0;
        for (i, row) in p.u.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                let target = if i == j { ONE } else { ZERO };
                err = err.max((v - target).norm());
            }
        }
        err
    }

    /// `|<-1|U|0>|^2`.
    pub fn transfer_probability(&self) -> f64 {
        self.u[1][0].norm_sqr()
    }

    pub fn scale(&self, k: Complex64) -> Self {
        let u = &self.u;
        Self {
            u: [[u[0][0] * k, u[0][1] * k], [u[1][0] * k, u[1][1] * k]],
        }
    }
}

impl Mul for Propagator {
    type Output = Propagator;

    fn mul(self, rhs: Propagator) -> Propagator {
        let a = &self.u;
        let b = &rhs.u;
        Propagator {
            u: [
                [
                    a[0][0] * b[0][0] + a[0][1] * b[1][0],
                    a[0][0] * b[0][1] + a[0][1] * b[1][1],
                ],
                [
                    a[1][0] * b[0][0] + a[1][1] * b[1][0],
                    a[1][0] * b[0][1] + a[1][1] * b[1][1],
                ],
            ],
        }
    }
}

impl Mul<SpinState> for Propagator {
    type Output = SpinState;

    fn mul(self, s: SpinState) -> SpinState {
        apply(&self, &s)
    }
}

/// Parameters of one piecewise-constant drive interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DriveParams {
    /// Rabi frequency, rad/s.
    pub omega: f64,
    /// Drive-axis azimuth, rad.
    pub phi: f64,
    /// Total z detuning (gradient plus noise), rad/s.
    pub delta: f64,
    /// Interval length, s.
    pub duration: f64,
}

impl DriveParams {
    pub fn new(omega: f64, phi: f64, delta: f64, duration: f64) -> Self {
        Self {
            omega,
            phi,
            delta,
            duration,
        }
    }

    /// Nominal rotation angle `omega * duration`.
    pub fn theta(&self) -> f64 {
        self.omega * self.duration
    }
}

/// `exp(-i duration H)` for the driven-spin Hamiltonian.
pub fn propagator(p: &DriveParams) -> Result<Propagator> {
    if !(p.omega >= 0.0) || !p.omega.is_finite() {
        return domain(format!("omega must be finite and >= 0, got {}", p.omega));
    }
    if !(p.duration >= 0.0) || !p.duration.is_finite() {
        return domain(format!(
            "duration must be finite and >= 0, got {}",
            p.duration
        ));
    }
    if !p.delta.is_finite() || !p.phi.is_finite() {
        return domain("delta and phi must be finite");
    }
    Ok(propagator_unchecked(p.omega, p.phi, p.delta, p.duration))
}

/// Closed-form propagator without argument validation. Used in the Monte
/// Carlo inner loop where inputs are already validated.
#[inline]
pub(crate) fn propagator_unchecked(omega: f64, phi: f64, delta: f64, duration: f64) -> Propagator {
    let rho = omega.hypot(delta);
    if rho == 0.0 || duration == 0.0 {
        return Propagator::identity();
    }
    let (s, c) = (0.5 * rho * duration).sin_cos();
    let k = s / rho;
    let (sp, cp) = phi.sin_cos();
    let sx = k * omega * cp;
    let sy = k * omega * sp;
    let sz = k * delta;
    Propagator {
        u: [
            [Complex64::new(c, -sz), Complex64::new(-sy, -sx)],
            [Complex64::new(sy, -sx), Complex64::new(c, sz)],
        ],
    }
}

/// Matrix-vector product, renormalized against rounding drift.
pub fn apply(u: &Propagator, s: &SpinState) -> SpinState {
    let m = &u.u;
    let a0 = m[0][0] * s.amp0 + m[0][1] * s.amp1;
    let a1 = m[1][0] * s.amp0 + m[1][1] * s.amp1;
    SpinState::renormalized(a0, a1)
}

/// Product of propagators in time order: the first element acts first.
pub fn compose(us: &[Propagator]) -> Result<Propagator> {
    let (first, rest) = match us.split_first() {
        Some(x) => x,
        None => return domain("cannot compose an empty list of propagators"),
    };
    Ok(rest.iter().fold(*first, |acc, u| *u * acc))
}

/// `min_alpha || U - e^{i alpha} V ||` in operator norm.
///
/// With `W = V^dagger U`, the norm equals `max_j |e^{i lambda_j} - e^{i alpha}|`
/// over the eigenphases of `W`; the optimum sits at the midpoint of the
/// shorter arc between them, giving `2 sin(arc / 4)`.
pub fn distance_mod_phase(u: &Propagator, v: &Propagator) -> f64 {
    let w = v.dagger() * *u;
    let root = w.det().sqrt();
    let w = w.scale(root.inv());
    // w is now in SU(2): cos(k) I - i sin(k) n.sigma
    let half_tr = 0.5 * w.trace();
    let m = &w.u;
    let t00 = m[0][0] - half_tr;
    let sin_k = (t00.norm_sqr() + 0.5 * (m[0][1].norm_sqr() + m[1][0].norm_sqr())).sqrt();
    let kappa = sin_k.atan2(half_tr.re);
    let sep = 2.0 * kappa;
    let arc = sep.min(2.0 * std::f64::consts::PI - sep).max(0.0);
    2.0 * (0.25 * arc).sin()
}
