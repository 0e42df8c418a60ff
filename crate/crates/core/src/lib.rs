//! Quantum Otto machines driven by non-thermal baths.
//!
//! The crate is organised around a handful of layers:
//!
//! - [`thermo`]: Bose–Einstein occupations, oscillator energies and entropies
//!   in natural units (ħ = k_B = 1).
//! - [`gaussian`]: single-mode squeezed/displaced thermal states, their
//!   closed-form ergotropy, and a brute-force truncated-Fock oracle that
//!   recomputes ergotropy and entropy from the density matrix spectrum.
//! - [`cycle`]: stroke-by-stroke work/heat ledgers for the standard, modified
//!   and second-kind Otto cycles, regime classification and law audits. Each
//!   cycle is a [`cycle::CycleEngine`] registered by name in a
//!   [`cycle::CycleRegistry`].
//! - [`sweep`]: parameter sweeps, CSV/JSON tables and randomized audit
//!   campaigns.

pub mod cycle;
pub mod error;
pub mod gaussian;
pub mod sweep;
pub mod thermo;

pub use error::{Error, Result};
