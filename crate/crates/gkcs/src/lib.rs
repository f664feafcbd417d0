//! Coherent states from discrete Hamiltonian spectra.
//!
//! This crate builds the coherent-state families attached to a discrete
//! spectrum `0 = ε₀ < ε₁ < ε₂ < …` with level degeneracies `d(n)`:
//!
//! - Gazeau-Klauder states `|J, γ⟩` (temporal stability, action identity),
//! - degeneracy-extended states `|J, γ, θ⟩` with one extra angle,
//! - branch vector coherent states over a split spectrum,
//! - the infinite-degeneracy families VCS1 / VCS2 / bi-coherent states,
//! - KMS coherent states `U₁(z)Φ_β` on a truncated double Fock space.
//!
//! Alongside the states it solves the radial moment problem
//! `∫ Jⁿ dν = εₙ! d(n)` (closed form where known, signed Laguerre series
//! otherwise), verifies resolutions of identity by quadrature over the
//! diagonal moment ratios, and runs the modular/KMS checks for the Landau
//! electron model.
//!
//! Every truncated quantity carries its truncation depth and a certified
//! tail bound; nothing is silently cut off.
//!
//! Start with the runnable examples (`cargo run --example gk_basics`) or
//! the `gkcs` binary (`gkcs state`, `gkcs verify`, `gkcs landau`,
//! `gkcs measure`, `gkcs model-card`).

pub mod cli;
pub mod error;
pub mod kernels;
pub mod landau;
pub mod measures;
pub mod models;
pub mod quad;
pub mod report;
pub mod series;
pub mod spectrum;
pub mod states;

pub use error::Error;
pub use spectrum::{DegeneracySequence, EnergySpectrum};

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
