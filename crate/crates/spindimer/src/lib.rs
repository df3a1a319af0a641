//! Spin-1/2 dimer quantum batteries at thermal equilibrium.
//!
//! This crate models an antiferromagnetically coupled pair of spin-1/2 cells
//! (a metal-complex dimer) as a quantum battery. It computes:
//!
//! - the dimer Hamiltonian, its levels, and the level-crossing field
//!   ([`dimer`]);
//! - the thermal Gibbs state and its populations ([`thermal`]);
//! - extractable work (ergotropy): the general passive-state construction,
//!   closed thermal forms, and the susceptibility-regime estimators
//!   ([`ergotropy`]);
//! - quantum correlations: Wootters concurrence, entanglement of formation,
//!   and trace-norm (Schatten 1-norm) discord ([`correlations`]);
//! - magnetometry: magnetization, the dimer susceptibility curve, its
//!   inversion back to Boltzmann weights, and CSV ingestion, so stored work
//!   can be read off non-destructively from susceptibility data
//!   ([`magnetometry`]);
//! - an idealized two-stroke discharge/recharge cycle with energy
//!   bookkeeping ([`cycle`]).
//!
//! Everything is plain SI internally; see [`units`]. The small dense
//! complex-matrix kernel behind the verification oracles lives in [`linalg`].
//!
//! ```
//! use spindimer::{reference_params, gibbs_state, self_hamiltonian};
//! use spindimer::ergotropy::{ergotropy_closed_form, ergotropy_general};
//! use spindimer::correlations::thermal_correlations;
//!
//! let battery = reference_params(); // J/k_B = 748 K, g = 2, B_z = 1e-4 T
//!
//! let work = ergotropy_closed_form(&battery, 293.0)?;
//! assert!((work.normalized_to_thermal_max - 0.7475).abs() < 1e-3);
//!
//! // the closed form agrees with the spectral construction
//! let rho = gibbs_state(&battery, 293.0)?.to_density_matrix();
//! let spectral = ergotropy_general(&rho, &self_hamiltonian(&battery))?;
//! assert!((work.per_molecule - spectral).abs() < 1e-10 * spectral);
//!
//! let corr = thermal_correlations(&battery, 293.0)?;
//! assert!(corr.concurrence > 0.62 && corr.discord_1norm > 0.37);
//! # Ok::<(), spindimer::Error>(())
//! ```

pub mod correlations;
pub mod cycle;
pub mod dimer;
pub mod ergotropy;
pub mod error;
pub mod linalg;
pub mod magnetometry;
pub mod thermal;
pub mod units;

pub use dimer::{
    build_hamiltonian, crossing_field, energy_levels, self_hamiltonian, DimerParams,
    HermitianMatrix4, StateLabel,
};
pub use error::{Error, Result};
pub use thermal::{gibbs_state, partition_function, populations, DensityMatrix4, Populations, XState};

/// Reference compound preset: the carboxylate-bridged Cu(II) dimer with
/// J/k_B = 748 K and g = 2, in the Earth-scale field 10⁻⁴ T.
pub fn reference_params() -> DimerParams {
    DimerParams::from_j_kelvin(748.0, 2.0, 1e-4).expect("reference parameters are valid")
}

/// Thermal stability limit of the reference compound (K). Model output above
/// this temperature describes the idealized spin model only; the material
/// itself starts to degrade.
pub const REFERENCE_STABILITY_LIMIT_KELVIN: f64 = 513.0;
