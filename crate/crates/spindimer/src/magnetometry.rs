//! Magnetization, the dimer susceptibility curve, its inversion, and
//! susceptibility-file ingestion.
//!
//! Molar susceptibilities are SI volume-convention values (m³/mol, factor μ₀
//! included), per mole of dimers; cgs emu/mol converts by exactly 4π × 10⁻⁶.
//! The closed susceptibility form is
//!
//!   χ(T) = μ₀ · 2 N_A g² μ_B² / (k_B T (3 + e^{βJ}))
//!
//! and its inversion recovers the effective Boltzmann weight w = e^{βJ} from
//! a measured (T, χ) pair, which is what lets stored work be read off
//! without touching the state.

use std::path::Path;

use crate::correlations::{entanglement_of_formation, entanglement_temperature, CorrelationSet};
use crate::dimer::DimerParams;
use crate::ergotropy::{ergotropy_from_susceptibility, ErgotropyResult};
use crate::error::{Error, Result};
use crate::thermal::populations;
use crate::units::{Quantity, Unit, K_B, MU_0, MU_B, N_A};

/// Unit system of a susceptibility data source.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum UnitSystem {
    Si,
    Cgs,
}

impl UnitSystem {
    pub fn chi_unit(self) -> Unit {
        match self {
            UnitSystem::Si => Unit::SiVolumeSusceptibilityPerMol,
            UnitSystem::Cgs => Unit::CgsEmuPerMol,
        }
    }
}

/// Ordered (T, χ) samples with provenance. Samples are stored in SI m³/mol
/// regardless of the source unit system.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct SusceptibilityCurve {
    samples: Vec<(f64, f64)>,
    source_unit_system: UnitSystem,
    source: String,
}

impl SusceptibilityCurve {
    /// Build from samples already in SI m³/mol. Temperatures must be
    /// strictly increasing and positive; susceptibilities finite.
    pub fn from_si_samples(
        samples: Vec<(f64, f64)>,
        source_unit_system: UnitSystem,
        source: impl Into<String>,
    ) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::invalid("susceptibility curve has no rows"));
        }
        let mut prev = 0.0f64;
        for (idx, (t, chi)) in samples.iter().enumerate() {
            if !t.is_finite() || *t <= 0.0 {
                return Err(Error::invalid(format!(
                    "sample {idx}: temperature must be positive, got {t} K"
                )));
            }
            if *t <= prev {
                return Err(Error::invalid(format!(
                    "sample {idx}: temperatures must be strictly increasing ({prev} K then {t} K)"
                )));
            }
            if !chi.is_finite() {
                return Err(Error::invalid(format!(
                    "sample {idx}: susceptibility must be finite, got {chi}"
                )));
            }
            prev = *t;
        }
        Ok(SusceptibilityCurve {
            samples,
            source_unit_system,
            source: source.into(),
        })
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// (T in K, χ in SI m³/mol) samples.
    pub fn samples(&self) -> &[(f64, f64)] {
        &self.samples
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn source_unit_system(&self) -> UnitSystem {
        self.source_unit_system
    }

    /// Subtract a constant background (diamagnetic correction), given in SI.
    pub fn subtract_background(&self, chi0_si: f64) -> Result<SusceptibilityCurve> {
        if !chi0_si.is_finite() {
            return Err(Error::invalid("background must be finite"));
        }
        SusceptibilityCurve::from_si_samples(
            self.samples.iter().map(|(t, c)| (*t, c - chi0_si)).collect(),
            self.source_unit_system,
            format!("{} (background {chi0_si:e} m^3/mol subtracted)", self.source),
        )
    }

    /// Emit as CSV in the requested unit system, numerics at 17 significant
    /// digits (lossless for 64-bit floats).
    pub fn to_csv(&self, unit_system: UnitSystem) -> String {
        let mut out = String::from("T_K,chi\n");
        for (t, chi_si) in &self.samples {
            let chi = match unit_system {
                UnitSystem::Si => *chi_si,
                UnitSystem::Cgs => Quantity::chi_si(*chi_si).to_chi_cgs().unwrap().value,
            };
            out.push_str(&format!("{t:.16e},{chi:.16e}\n"));
        }
        out
    }
}

/// Signed-field magnetization helper; the public entry point restricts to
/// the model's B_z ≥ 0 domain, the signed form exists for differencing.
fn magnetization_signed(p: &DimerParams, t_kelvin: f64, b_signed: f64) -> Result<f64> {
    if !t_kelvin.is_finite() || t_kelvin <= 0.0 {
        return Err(Error::invalid(format!(
            "temperature must be positive, got {t_kelvin} K"
        )));
    }
    let beta = 1.0 / (K_B * t_kelvin);
    let g_mu = p.g() * MU_B;
    let e0 = g_mu * b_signed; // may be negative here
    let j = p.j();
    // populations of |↑↑⟩ and |↓↓⟩ at levels J ∓ E₀, evaluated in log space
    let levels = [0.0, j - e0, j, j + e0];
    let min_e = levels.iter().cloned().fold(f64::INFINITY, f64::min);
    let w: Vec<f64> = levels.iter().map(|e| (-beta * (e - min_e)).exp()).collect();
    let z: f64 = w.iter().sum();
    Ok(g_mu * (w[1] - w[3]) / z)
}

/// Equilibrium magnetic moment per dimer (J/T) at the params' field:
/// M = gμ_B (ϱ_{↑↑} − ϱ_{↓↓}). Zero at B_z = 0, saturating at gμ_B.
pub fn magnetization(p: &DimerParams, t_kelvin: f64) -> Result<f64> {
    let pops = populations(p, t_kelvin)?;
    Ok(p.g() * MU_B * (pops.up_up - pops.down_down))
}

/// Closed-form molar susceptibility of the dimer (SI m³/mol, per mole of
/// dimers): χ = μ₀ 2 N_A g²μ_B² / (k_B T (3 + e^{βJ})).
pub fn bleaney_bowers(p: &DimerParams, t_kelvin: f64) -> Result<f64> {
    if !t_kelvin.is_finite() || t_kelvin <= 0.0 {
        return Err(Error::invalid(format!(
            "temperature must be positive, got {t_kelvin} K"
        )));
    }
    let beta_j = p.j() / (K_B * t_kelvin);
    let t = (-beta_j).exp();
    // 1/(3 + e^{βJ}) written as t/(3t + 1) so large βJ underflows to 0
    let frac = t / (3.0 * t + 1.0);
    Ok(MU_0 * 2.0 * N_A * p.g() * p.g() * MU_B * MU_B * frac / (K_B * t_kelvin))
}

/// Susceptibility from `bleaney_bowers` with the Boltzmann weight w = e^{βJ}
/// supplied directly; inverse of [`invert_chi`].
pub fn bleaney_bowers_from_weight(t_kelvin: f64, g: f64, w: f64) -> Result<f64> {
    if !t_kelvin.is_finite() || t_kelvin <= 0.0 {
        return Err(Error::invalid("temperature must be positive"));
    }
    if !w.is_finite() || w < 0.0 {
        return Err(Error::invalid("Boltzmann weight must be non-negative"));
    }
    Ok(MU_0 * 2.0 * N_A * g * g * MU_B * MU_B / (K_B * t_kelvin * (3.0 + w)))
}

/// Numerical molar susceptibility by symmetric differencing of the
/// magnetization around zero field with step `db` (tesla, SI m³/mol out).
///
/// Second-order accurate in `db`; the step must stay well below the
/// crossing field (db < B_c/1000).
pub fn susceptibility_numeric(p: &DimerParams, t_kelvin: f64, db: f64) -> Result<f64> {
    let bc = crate::dimer::crossing_field(p);
    if !(db > 0.0 && db < bc / 1e3) {
        return Err(Error::invalid(format!(
            "difference step must satisfy 0 < db < {:e} T, got {db} T",
            bc / 1e3
        )));
    }
    let m_plus = magnetization_signed(p, t_kelvin, db)?;
    let m_minus = magnetization_signed(p, t_kelvin, -db)?;
    Ok(MU_0 * N_A * (m_plus - m_minus) / (2.0 * db))
}

/// Effective Boltzmann weight w = e^{βJ} recovered from one (T, χ) point.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct EffectiveBoltzmann {
    pub t_kelvin: f64,
    /// Estimate of e^{βJ}; non-negative.
    pub w: f64,
    /// False when w < 1, which would require J ≤ 0.
    pub in_model_range: bool,
}

impl EffectiveBoltzmann {
    /// Exchange coupling implied by the weight, as J/k_B in kelvin.
    pub fn j_kelvin(&self) -> f64 {
        self.t_kelvin * self.w.ln()
    }
}

/// Invert the closed susceptibility form for the Boltzmann weight:
/// w = 2 μ₀ N_A g² μ_B² / (k_B T χ) − 3.
///
/// `chi_si` is in SI m³/mol per mole of dimers. A weight below zero means
/// the susceptibility exceeds the paramagnetic bound of the model and is an
/// error; w in [0, 1) is returned but flagged out of model range.
pub fn invert_chi(t_kelvin: f64, chi_si: f64, g: f64) -> Result<EffectiveBoltzmann> {
    if !t_kelvin.is_finite() || t_kelvin <= 0.0 {
        return Err(Error::invalid(format!(
            "temperature must be positive, got {t_kelvin} K"
        )));
    }
    if !chi_si.is_finite() || chi_si <= 0.0 {
        return Err(Error::invalid(format!(
            "susceptibility must be positive, got {chi_si}"
        )));
    }
    let w = 2.0 * MU_0 * N_A * g * g * MU_B * MU_B / (K_B * t_kelvin * chi_si) - 3.0;
    if w < 0.0 {
        return Err(Error::DataInconsistency {
            t_kelvin,
            chi_si,
            message: format!(
                "susceptibility exceeds the w = 0 bound; implied Boltzmann weight {w}"
            ),
        });
    }
    Ok(EffectiveBoltzmann {
        t_kelvin,
        w,
        in_model_range: w >= 1.0,
    })
}

/// Parse a susceptibility CSV file.
///
/// Grammar: UTF-8, header `T_K,chi`, two decimal fields per row, `#` starts
/// a comment line, blank lines ignored. The unit system is declared by the
/// caller, never inferred. Temperatures must be strictly increasing.
pub fn ingest_chi_csv(path: &Path, unit_system: UnitSystem) -> Result<SusceptibilityCurve> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        Error::invalid(format!("cannot read {}: {e}", path.display()))
    })?;
    ingest_chi_str(&text, unit_system, path.display().to_string())
}

/// Same grammar as [`ingest_chi_csv`], from an in-memory string.
pub fn ingest_chi_str(
    text: &str,
    unit_system: UnitSystem,
    source: String,
) -> Result<SusceptibilityCurve> {
    let mut samples: Vec<(f64, f64)> = Vec::new();
    let mut header_seen = false;
    let mut prev_t = 0.0f64;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if !header_seen {
            if line != "T_K,chi" {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("expected header 'T_K,chi', got '{line}'"),
                });
            }
            header_seen = true;
            continue;
        }
        let mut fields = line.split(',');
        let t_field = fields.next().unwrap_or("");
        let chi_field = fields.next().ok_or(Error::Parse {
            line: line_no,
            message: "expected two comma-separated fields".into(),
        })?;
        if fields.next().is_some() {
            return Err(Error::Parse {
                line: line_no,
                message: "expected exactly two fields".into(),
            });
        }
        let t: f64 = t_field.trim().parse().map_err(|e| Error::Parse {
            line: line_no,
            message: format!("bad temperature '{}': {e}", t_field.trim()),
        })?;
        let chi: f64 = chi_field.trim().parse().map_err(|e| Error::Parse {
            line: line_no,
            message: format!("bad susceptibility '{}': {e}", chi_field.trim()),
        })?;
        if !(t.is_finite() && t > 0.0) {
            return Err(Error::Parse {
                line: line_no,
                message: format!("temperature must be positive, got {t}"),
            });
        }
        if t <= prev_t {
            return Err(Error::Parse {
                line: line_no,
                message: format!(
                    "temperatures must be strictly increasing ({prev_t} K then {t} K)"
                ),
            });
        }
        if !chi.is_finite() {
            return Err(Error::Parse {
                line: line_no,
                message: format!("susceptibility must be finite, got {chi}"),
            });
        }
        prev_t = t;
        let chi_si = match unit_system {
            UnitSystem::Si => chi,
            UnitSystem::Cgs => Quantity::chi_cgs(chi).to_chi_si()?.value,
        };
        samples.push((t, chi_si));
    }
    if !header_seen {
        return Err(Error::invalid("file has no header line 'T_K,chi'"));
    }
    if samples.is_empty() {
        return Err(Error::invalid("file has a header but no data rows"));
    }
    SusceptibilityCurve::from_si_samples(samples, unit_system, source)
}

/// Synthetic model curve on a temperature grid (for tests and demos).
pub fn synthetic_curve(p: &DimerParams, temperatures: &[f64]) -> Result<SusceptibilityCurve> {
    let samples: Result<Vec<(f64, f64)>> = temperatures
        .iter()
        .map(|&t| bleaney_bowers(p, t).map(|chi| (t, chi)))
        .collect();
    SusceptibilityCurve::from_si_samples(samples?, UnitSystem::Si, "synthetic dimer model")
}

/// Per-row output of the susceptibility analysis chain.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct ChiRow {
    pub t_kelvin: f64,
    pub chi_si: f64,
    /// Work estimate from the measured χ at the model's coupling.
    pub ergotropy: Option<ErgotropyResult>,
    /// Raw discord estimator 𝓔/(2E₀); linear in χ, so noisy data can push
    /// it past the 1/2 trace-norm bound, in which case `correlations` is
    /// withheld and the row flagged.
    pub discord_estimate: Option<f64>,
    /// Correlations reconstructed from the data (discord from the work
    /// estimate; concurrence and EoF through the Boltzmann-weight inversion).
    pub correlations: Option<CorrelationSet>,
    pub effective_boltzmann: Option<EffectiveBoltzmann>,
    pub warnings: Vec<String>,
}

/// Run the full reconstruction chain over a susceptibility curve.
///
/// Per row: ergotropy from χ (linear in χ, model coupling supplies the
/// Boltzmann factor), discord as ergotropy/(2E₀), and concurrence/EoF via
/// the weight inversion w → max{0, (w−3)/(w+3)}. Rows that fail a
/// physicality check are flagged, not fatal.
pub fn correlations_from_chi(curve: &SusceptibilityCurve, p: &DimerParams) -> Result<Vec<ChiRow>> {
    let e0 = p.e0();
    if e0 <= 0.0 {
        return Err(Error::invalid(
            "susceptibility reconstruction needs a nonzero field to set the energy scale",
        ));
    }
    let te = entanglement_temperature(p);
    let mut rows = Vec::with_capacity(curve.len());
    for &(t, chi_si) in curve.samples() {
        let mut warnings = Vec::new();

        let ergotropy = match ergotropy_from_susceptibility(p, t, Quantity::chi_si(chi_si)) {
            Ok(r) => Some(r),
            Err(e) => {
                warnings.push(format!("ergotropy estimate failed: {e}"));
                None
            }
        };

        let effective_boltzmann = match invert_chi(t, chi_si, p.g()) {
            Ok(eb) => {
                if !eb.in_model_range {
                    warnings.push(format!(
                        "inverted Boltzmann weight {} < 1 implies a non-antiferromagnetic coupling",
                        eb.w
                    ));
                }
                Some(eb)
            }
            Err(e) => {
                warnings.push(format!("weight inversion failed: {e}"));
                None
            }
        };

        let discord_estimate = ergotropy.as_ref().map(|e| e.normalized_to_2e0);

        let correlations = match (&ergotropy, &effective_boltzmann) {
            (Some(erg), Some(eb)) => {
                let discord = erg.normalized_to_2e0;
                let concurrence = ((eb.w - 3.0) / (eb.w + 3.0)).max(0.0);
                match entanglement_of_formation(concurrence)
                    .and_then(|eof| CorrelationSet::new(concurrence, eof, discord, te))
                {
                    Ok(set) => Some(set),
                    Err(e) => {
                        warnings.push(format!("correlation reconstruction failed: {e}"));
                        None
                    }
                }
            }
            _ => None,
        };

        rows.push(ChiRow {
            t_kelvin: t,
            chi_si,
            ergotropy,
            discord_estimate,
            correlations,
            effective_boltzmann,
            warnings,
        });
    }
    Ok(rows)
}
