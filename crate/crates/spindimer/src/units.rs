//! Physical constants and unit bookkeeping.
//!
//! Everything downstream works in SI internally: energies in joule, fields in
//! tesla, temperatures in kelvin, molar susceptibilities in m³/mol (volume
//! convention, i.e. including the factor μ₀). Per-mole quantities are derived
//! views obtained by multiplying a per-dimer value by `N_A`.

use crate::error::{Error, Result};

/// Boltzmann constant (J/K), CODATA 2018 exact.
pub const K_B: f64 = 1.380649e-23;

/// Bohr magneton (J/T), CODATA 2018.
pub const MU_B: f64 = 9.2740100783e-24;

/// Avogadro constant (1/mol), CODATA 2018 exact.
pub const N_A: f64 = 6.02214076e23;

/// Vacuum permeability (T·m/A), classic exact value 4π × 10⁻⁷.
///
/// Used only for the molar-susceptibility unit convention; consistent with
/// the exact cgs↔SI factor below.
pub const MU_0: f64 = 4.0e-7 * std::f64::consts::PI;

/// Conversion factor from cgs emu/mol to SI m³/mol: exactly 4π × 10⁻⁶.
pub const CHI_CGS_TO_SI: f64 = 4.0e-6 * std::f64::consts::PI;

/// Fundamental constants bundle (immutable; all fields CODATA 2018).
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct PhysicalConstants {
    /// Boltzmann constant (J/K).
    pub k_b: f64,
    /// Bohr magneton (J/T).
    pub mu_b: f64,
    /// Avogadro constant (1/mol).
    pub n_a: f64,
}

/// The CODATA 2018 constants used throughout the crate.
pub const CODATA_2018: PhysicalConstants = PhysicalConstants {
    k_b: K_B,
    mu_b: MU_B,
    n_a: N_A,
};

/// Units tracked by [`Quantity`]. No general unit algebra beyond these.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum Unit {
    Joule,
    JoulePerMol,
    Kelvin,
    Tesla,
    Dimensionless,
    /// SI molar susceptibility, m³ per mole (volume convention).
    SiVolumeSusceptibilityPerMol,
    /// cgs molar susceptibility, emu per mole (≡ cm³/mol).
    CgsEmuPerMol,
}

impl Unit {
    pub fn symbol(self) -> &'static str {
        match self {
            Unit::Joule => "J",
            Unit::JoulePerMol => "J/mol",
            Unit::Kelvin => "K",
            Unit::Tesla => "T",
            Unit::Dimensionless => "1",
            Unit::SiVolumeSusceptibilityPerMol => "m^3/mol",
            Unit::CgsEmuPerMol => "emu/mol",
        }
    }
}

/// A value tagged with one of the seven supported units.
///
/// Arithmetic between mismatched units is rejected rather than coerced.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct Quantity {
    pub value: f64,
    pub unit: Unit,
}

impl Quantity {
    pub fn new(value: f64, unit: Unit) -> Self {
        Quantity { value, unit }
    }

    pub fn joules(value: f64) -> Self {
        Quantity::new(value, Unit::Joule)
    }

    pub fn kelvin(value: f64) -> Self {
        Quantity::new(value, Unit::Kelvin)
    }

    pub fn tesla(value: f64) -> Self {
        Quantity::new(value, Unit::Tesla)
    }

    pub fn chi_si(value: f64) -> Self {
        Quantity::new(value, Unit::SiVolumeSusceptibilityPerMol)
    }

    pub fn chi_cgs(value: f64) -> Self {
        Quantity::new(value, Unit::CgsEmuPerMol)
    }

    pub fn try_add(self, other: Quantity) -> Result<Quantity> {
        if self.unit != other.unit {
            return Err(Error::UnitMismatch {
                left: self.unit.symbol(),
                right: other.unit.symbol(),
            });
        }
        Ok(Quantity::new(self.value + other.value, self.unit))
    }

    pub fn try_sub(self, other: Quantity) -> Result<Quantity> {
        if self.unit != other.unit {
            return Err(Error::UnitMismatch {
                left: self.unit.symbol(),
                right: other.unit.symbol(),
            });
        }
        Ok(Quantity::new(self.value - other.value, self.unit))
    }

    pub fn scale(self, factor: f64) -> Quantity {
        Quantity::new(self.value * factor, self.unit)
    }

    /// Convert a molar susceptibility to SI m³/mol.
    pub fn to_chi_si(self) -> Result<Quantity> {
        match self.unit {
            Unit::SiVolumeSusceptibilityPerMol => Ok(self),
            Unit::CgsEmuPerMol => Ok(Quantity::chi_si(self.value * CHI_CGS_TO_SI)),
            other => Err(Error::UnitMismatch {
                left: other.symbol(),
                right: Unit::SiVolumeSusceptibilityPerMol.symbol(),
            }),
        }
    }

    /// Convert a molar susceptibility to cgs emu/mol.
    pub fn to_chi_cgs(self) -> Result<Quantity> {
        match self.unit {
            Unit::CgsEmuPerMol => Ok(self),
            Unit::SiVolumeSusceptibilityPerMol => {
                Ok(Quantity::chi_cgs(self.value / CHI_CGS_TO_SI))
            }
            other => Err(Error::UnitMismatch {
                left: other.symbol(),
                right: Unit::CgsEmuPerMol.symbol(),
            }),
        }
    }
}

/// Convert a temperature-equivalent energy (a value quoted in kelvin) to joules.
pub fn energy_from_kelvin(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::invalid(format!(
            "temperature-equivalent energy must be finite, got {x}"
        )));
    }
    Ok(x * K_B)
}

/// Zeeman energy scale g·μ_B·B_z in joules.
///
/// The field orientation is fixed by the model; a negative `b_z` is rejected
/// rather than interpreted as a reversed field.
pub fn zeeman_energy(g: f64, b_z: f64) -> Result<f64> {
    if !g.is_finite() || g <= 0.0 {
        return Err(Error::invalid(format!("g factor must be positive, got {g}")));
    }
    if !b_z.is_finite() || b_z < 0.0 {
        return Err(Error::invalid(format!(
            "field must be non-negative, got {b_z} T"
        )));
    }
    Ok(g * MU_B * b_z)
}
