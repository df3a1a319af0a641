//! Run configuration: CLI flags layered over an optional flat
//! `key = value` parameter file.

use std::path::Path;

use spindimer::magnetometry::UnitSystem;
use spindimer::DimerParams;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepAxis {
    Temperature,
    Field,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepScale {
    Linear,
    Log,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MoleBasis {
    /// Per mole of dimers (two ions per formula unit). The default.
    Dimer,
    /// Per mole of magnetic ions: half a mole of dimers.
    CuIon,
}

impl MoleBasis {
    /// Factor applied to per-mole-of-dimer model outputs.
    pub fn output_factor(self) -> f64 {
        match self {
            MoleBasis::Dimer => 1.0,
            MoleBasis::CuIon => 0.5,
        }
    }

    /// Factor converting input per-mole data to the per-dimer basis.
    pub fn input_factor(self) -> f64 {
        match self {
            MoleBasis::Dimer => 1.0,
            MoleBasis::CuIon => 2.0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            MoleBasis::Dimer => "dimer",
            MoleBasis::CuIon => "cu_ion",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

/// Everything a command needs, after merging the param file and flags.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub j_kelvin: f64,
    pub g: f64,
    pub bz_tesla: f64,
    pub t_kelvin: f64,
    pub axis: SweepAxis,
    pub start: f64,
    pub stop: f64,
    pub points: usize,
    pub scale: SweepScale,
    pub columns: Option<Vec<String>>,
    pub unit_system: UnitSystem,
    pub per_mole_of: MoleBasis,
    pub format: OutputFormat,
    /// True when the format came from a flag or file rather than the default
    /// (the cycle command defaults to JSON, tables to CSV).
    pub format_explicit: bool,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            j_kelvin: 748.0,
            g: 2.0,
            bz_tesla: 1e-4,
            t_kelvin: 293.0,
            axis: SweepAxis::Temperature,
            start: 2.0,
            stop: 800.0,
            points: 200,
            scale: SweepScale::Linear,
            columns: None,
            unit_system: UnitSystem::Si,
            per_mole_of: MoleBasis::Dimer,
            format: OutputFormat::Csv,
            format_explicit: false,
            seed: 0,
        }
    }
}

impl RunConfig {
    pub fn params(&self) -> Result<DimerParams, CliError> {
        DimerParams::from_j_kelvin(self.j_kelvin, self.g, self.bz_tesla)
            .map_err(|e| CliError::Usage(format!("invalid battery parameters: {e}")))
    }

    pub fn validate_sweep(&self) -> Result<(), CliError> {
        if self.points < 2 {
            return Err(CliError::Usage(format!(
                "sweep needs at least 2 points, got {}",
                self.points
            )));
        }
        if self.start >= self.stop {
            return Err(CliError::Usage(format!(
                "sweep start must be below stop, got {}..{}",
                self.start, self.stop
            )));
        }
        match self.axis {
            SweepAxis::Temperature if self.start <= 0.0 => {
                return Err(CliError::Usage(
                    "temperature sweep must start above 0 K".into(),
                ));
            }
            SweepAxis::Field if self.start < 0.0 => {
                return Err(CliError::Usage("field sweep cannot start below 0 T".into()));
            }
            _ => {}
        }
        if self.scale == SweepScale::Log && self.start <= 0.0 {
            return Err(CliError::Usage(
                "log-scale sweep must start above zero".into(),
            ));
        }
        if self.axis == SweepAxis::Field && self.t_kelvin <= 0.0 {
            return Err(CliError::Usage(
                "field sweep needs a positive fixed temperature".into(),
            ));
        }
        Ok(())
    }

    /// Grid values along the sweep axis, in order.
    pub fn grid(&self) -> Vec<f64> {
        let n = self.points;
        (0..n)
            .map(|i| {
                let f = i as f64 / (n - 1) as f64;
                match self.scale {
                    SweepScale::Linear => self.start + (self.stop - self.start) * f,
                    SweepScale::Log => self.start * (self.stop / self.start).powf(f),
                }
            })
            .collect()
    }

    /// Apply one `key = value` assignment from a parameter file.
    fn apply(&mut self, key: &str, value: &str, line: usize) -> Result<(), CliError> {
        let bad = |what: &str| {
            CliError::Usage(format!(
                "parameter file line {line}: bad value '{value}' for {what}"
            ))
        };
        match key {
            "J_kelvin" => self.j_kelvin = value.parse().map_err(|_| bad("J_kelvin"))?,
            "g" => self.g = value.parse().map_err(|_| bad("g"))?,
            "Bz_tesla" => self.bz_tesla = value.parse().map_err(|_| bad("Bz_tesla"))?,
            "T_kelvin" => self.t_kelvin = value.parse().map_err(|_| bad("T_kelvin"))?,
            "axis" => {
                self.axis = match value {
                    "T" => SweepAxis::Temperature,
                    "B" => SweepAxis::Field,
                    _ => return Err(bad("axis (T or B)")),
                }
            }
            "start" => self.start = value.parse().map_err(|_| bad("start"))?,
            "stop" => self.stop = value.parse().map_err(|_| bad("stop"))?,
            "points" => self.points = value.parse().map_err(|_| bad("points"))?,
            "scale" => {
                self.scale = match value {
                    "linear" => SweepScale::Linear,
                    "log" => SweepScale::Log,
                    _ => return Err(bad("scale (linear or log)")),
                }
            }
            "columns" => {
                self.columns = Some(value.split(',').map(|s| s.trim().to_string()).collect())
            }
            "unit_system" => {
                self.unit_system = match value {
                    "si" => UnitSystem::Si,
                    "cgs" => UnitSystem::Cgs,
                    _ => return Err(bad("unit_system (si or cgs)")),
                }
            }
            "per_mole_of" => {
                self.per_mole_of = match value {
                    "dimer" => MoleBasis::Dimer,
                    "cu_ion" => MoleBasis::CuIon,
                    _ => return Err(bad("per_mole_of (dimer or cu_ion)")),
                }
            }
            "format" => {
                self.format = match value {
                    "csv" => OutputFormat::Csv,
                    "json" => OutputFormat::Json,
                    _ => return Err(bad("format (csv or json)")),
                };
                self.format_explicit = true;
            }
            "seed" => self.seed = value.parse().map_err(|_| bad("seed"))?,
            other => {
                return Err(CliError::Usage(format!(
                    "parameter file line {line}: unknown key '{other}'"
                )));
            }
        }
        Ok(())
    }

    /// Load assignments from a flat `key = value` file.
    pub fn load_file(&mut self, path: &Path) -> Result<(), CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            CliError::Usage(format!("cannot read parameter file {}: {e}", path.display()))
        })?;
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                CliError::Usage(format!(
                    "parameter file line {}: expected 'key = value', got '{line}'",
                    idx + 1
                ))
            })?;
            self.apply(key.trim(), value.trim(), idx + 1)?;
        }
        Ok(())
    }
}
