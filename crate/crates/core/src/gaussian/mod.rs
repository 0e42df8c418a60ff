//! Single-mode Gaussian working-fluid states.
//!
//! A [`GaussianModeState`] is the unitary image `D(α) S(ξ) ρ_th S(ξ)† D(α)†`
//! of a thermal state with occupation `n_th`, with squeezing `ξ = r e^{iφ}`
//! and displacement `α`. The displacement acts after the squeeze. Because the
//! passive state of a unitary image of a Gibbs state is that Gibbs state, the
//! ergotropy is simply the excess excitation `Δn̄` times the frequency.
//!
//! Phases are carried so that states can be described faithfully, but no
//! energetic quantity depends on them.

mod fock;
mod propagator;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::thermo::{oscillator_energy, Frequency, Occupation};

pub use fock::{
    build_fock_density, build_fock_density_with, choose_cutoff, entropy_fock, ergotropy_fock,
    ergotropy_fock_with, fock_oracle, FockDensity, FockOptions, OracleReport,
};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaussianModeState {
    /// Occupation of the underlying Gibbs state.
    pub n_th: Occupation,
    /// Squeezing amplitude `r >= 0`.
    pub r: f64,
    /// Squeezing phase `φ` in `ξ = r e^{iφ}`.
    #[serde(default)]
    pub squeeze_phase: f64,
    /// Coherent displacement.
    #[serde(default)]
    pub alpha: Complex64,
}

impl GaussianModeState {
    pub fn new(n_th: Occupation, r: f64, squeeze_phase: f64, alpha: Complex64) -> Result<Self> {
        if !(r.is_finite() && r >= 0.0) {
            return Err(Error::InvalidParameter {
                name: "r",
                value: r,
                reason: "squeezing must be finite and >= 0",
            });
        }
        if !squeeze_phase.is_finite() {
            return Err(Error::InvalidParameter {
                name: "squeeze_phase",
                value: squeeze_phase,
                reason: "must be finite",
            });
        }
        if !(alpha.re.is_finite() && alpha.im.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "alpha",
                value: alpha.norm(),
                reason: "displacement must be finite",
            });
        }
        Ok(Self {
            n_th,
            r,
            squeeze_phase,
            alpha,
        })
    }

    pub fn thermal(n_th: Occupation) -> Self {
        Self {
            n_th,
            r: 0.0,
            squeeze_phase: 0.0,
            alpha: Complex64::new(0.0, 0.0),
        }
    }

    pub fn squeezed(n_th: Occupation, r: f64) -> Result<Self> {
        Self::new(n_th, r, 0.0, Complex64::new(0.0, 0.0))
    }

    pub fn displaced(n_th: Occupation, alpha: Complex64) -> Result<Self> {
        Self::new(n_th, 0.0, 0.0, alpha)
    }

    pub fn is_passive(&self) -> bool {
        self.r == 0.0 && self.alpha.norm_sqr() == 0.0
    }
}

/// Excess excitation over the underlying thermal state:
/// `(2 n_th + 1) sinh²(r) + |α|²`.
pub fn delta_n(state: &GaussianModeState) -> Occupation {
    let sh = state.r.sinh();
    let dn = (2.0 * state.n_th.value() + 1.0) * sh * sh + state.alpha.norm_sqr();
    Occupation::new(dn).expect("excess of a valid state is finite and non-negative")
}

/// Mean energy `ω (n_th + Δn̄ + 1/2)`.
pub fn state_energy(state: &GaussianModeState, omega: Frequency) -> f64 {
    omega.value() * (state.n_th.value() + delta_n(state).value() + 0.5)
}

/// Energy of the passive (thermal) state sharing this state's spectrum.
pub fn passive_energy(state: &GaussianModeState, omega: Frequency) -> f64 {
    oscillator_energy(omega, state.n_th)
}

/// Closed-form ergotropy `ω Δn̄`.
pub fn ergotropy_analytic(state: &GaussianModeState, omega: Frequency) -> f64 {
    omega.value() * delta_n(state).value()
}

/// Whether the state has no Glauber–Sudarshan P-function: squeezing must push
/// a quadrature variance below vacuum, `n_th < (e^{2r} − 1)/2`. Displacement
/// never matters.
pub fn is_nonclassical(state: &GaussianModeState) -> bool {
    state.r > 0.0 && state.n_th.value() < nonclassical_threshold(state.r)
}

/// Largest thermal occupation that still leaves a squeezed thermal state
/// non-classical.
pub fn nonclassical_threshold(r: f64) -> f64 {
    (2.0 * r).exp_m1() / 2.0
}

/// Squeezing amplitude that gives a squeezed thermal state with occupation
/// `n_th` the excess `delta_n`.
pub fn squeeze_for_excess(n_th: Occupation, delta_n: Occupation) -> f64 {
    (delta_n.value() / (2.0 * n_th.value() + 1.0))
        .sqrt()
        .asinh()
}
