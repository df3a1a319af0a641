//! Column registry for the sweep command: every emitted number maps to
//! exactly one library operation, which `--explain` prints.

use spindimer::correlations::{
    discord_1norm_closed, discord_limit, entanglement_of_formation, thermal_concurrence,
};
use spindimer::dimer::{ground_state, self_hamiltonian};
use spindimer::ergotropy::{
    ergotropy_closed_form, ergotropy_random_unitary_bound, ergotropy_susceptibility_regime,
};
use spindimer::magnetometry::{bleaney_bowers, magnetization, UnitSystem};
use spindimer::thermal::{gibbs_state, partition_function, populations};
use spindimer::units::{Quantity, N_A};
use spindimer::DimerParams;

use crate::config::{MoleBasis, RunConfig};
use crate::CliError;

/// One grid point with everything a column needs.
pub struct RowContext {
    pub params: DimerParams,
    pub t_kelvin: f64,
    pub per_mole_factor: f64,
    pub unit_system: UnitSystem,
    pub seed: u64,
}

/// A computed cell: numeric or text.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Number(f64),
    Text(String),
}

pub struct Column {
    pub name: &'static str,
    /// Library operation the value is traceable to.
    pub operation: &'static str,
    pub compute: fn(&RowContext) -> Result<Cell, CliError>,
}

fn num(x: f64) -> Result<Cell, CliError> {
    Ok(Cell::Number(x))
}

fn runtime(e: spindimer::Error) -> CliError {
    CliError::Runtime(e.to_string())
}

pub const COLUMNS: &[Column] = &[
    Column {
        name: "T_K",
        operation: "sweep grid",
        compute: |c| num(c.t_kelvin),
    },
    Column {
        name: "B_T",
        operation: "sweep grid",
        compute: |c| num(c.params.b_z()),
    },
    Column {
        name: "ergotropy_J_per_mol",
        operation: "spindimer::ergotropy::ergotropy_closed_form (per_mole)",
        compute: |c| {
            let r = ergotropy_closed_form(&c.params, c.t_kelvin).map_err(runtime)?;
            num(r.per_mole * c.per_mole_factor)
        },
    },
    Column {
        name: "ergotropy_normalized_E0",
        operation: "spindimer::ergotropy::ergotropy_closed_form (normalized_to_thermal_max)",
        compute: |c| {
            let r = ergotropy_closed_form(&c.params, c.t_kelvin).map_err(runtime)?;
            num(r.normalized_to_thermal_max)
        },
    },
    Column {
        name: "ergotropy_normalized_2E0",
        operation: "spindimer::ergotropy::ergotropy_closed_form (normalized_to_2e0)",
        compute: |c| {
            let r = ergotropy_closed_form(&c.params, c.t_kelvin).map_err(runtime)?;
            num(r.normalized_to_2e0)
        },
    },
    Column {
        name: "ergotropy_regime_J_per_mol",
        operation: "spindimer::ergotropy::ergotropy_susceptibility_regime (per_mole)",
        compute: |c| {
            let r = ergotropy_susceptibility_regime(&c.params, c.t_kelvin).map_err(runtime)?;
            num(r.ergotropy.per_mole * c.per_mole_factor)
        },
    },
    Column {
        name: "discord",
        operation: "spindimer::correlations::discord_1norm_closed",
        compute: |c| num(discord_1norm_closed(&c.params, c.t_kelvin).map_err(runtime)?),
    },
    Column {
        name: "discord_limit",
        operation: "spindimer::correlations::discord_limit",
        compute: |c| num(discord_limit(&c.params, c.t_kelvin).map_err(runtime)?),
    },
    Column {
        name: "concurrence",
        operation: "spindimer::correlations::thermal_concurrence",
        compute: |c| num(thermal_concurrence(&c.params, c.t_kelvin).map_err(runtime)?),
    },
    Column {
        name: "eof",
        operation: "spindimer::correlations::entanglement_of_formation(thermal_concurrence)",
        compute: |c| {
            let conc = thermal_concurrence(&c.params, c.t_kelvin).map_err(runtime)?;
            num(entanglement_of_formation(conc).map_err(runtime)?)
        },
    },
    Column {
        name: "chi",
        operation: "spindimer::magnetometry::bleaney_bowers (declared unit system)",
        compute: |c| {
            let chi_si = bleaney_bowers(&c.params, c.t_kelvin).map_err(runtime)?;
            let chi = match c.unit_system {
                UnitSystem::Si => chi_si,
                UnitSystem::Cgs => Quantity::chi_si(chi_si).to_chi_cgs().map_err(runtime)?.value,
            };
            num(chi * c.per_mole_factor)
        },
    },
    Column {
        name: "magnetization_J_per_T_per_mol",
        operation: "spindimer::magnetometry::magnetization (times N_A)",
        compute: |c| {
            let m = magnetization(&c.params, c.t_kelvin).map_err(runtime)?;
            num(m * N_A * c.per_mole_factor)
        },
    },
    Column {
        name: "partition_function",
        operation: "spindimer::thermal::partition_function",
        compute: |c| num(partition_function(&c.params, c.t_kelvin).map_err(runtime)?),
    },
    Column {
        name: "pop_singlet",
        operation: "spindimer::thermal::populations (singlet)",
        compute: |c| num(populations(&c.params, c.t_kelvin).map_err(runtime)?.singlet),
    },
    Column {
        name: "pop_up_up",
        operation: "spindimer::thermal::populations (up_up)",
        compute: |c| num(populations(&c.params, c.t_kelvin).map_err(runtime)?.up_up),
    },
    Column {
        name: "pop_triplet_zero",
        operation: "spindimer::thermal::populations (triplet_zero)",
        compute: |c| num(populations(&c.params, c.t_kelvin).map_err(runtime)?.triplet_zero),
    },
    Column {
        name: "pop_down_down",
        operation: "spindimer::thermal::populations (down_down)",
        compute: |c| num(populations(&c.params, c.t_kelvin).map_err(runtime)?.down_down),
    },
    Column {
        name: "ground_state",
        operation: "spindimer::dimer::ground_state",
        compute: |c| Ok(Cell::Text(ground_state(&c.params).name().to_string())),
    },
    Column {
        name: "unitary_bound_J_per_mol",
        operation: "spindimer::ergotropy::ergotropy_random_unitary_bound (256 samples, seeded)",
        compute: |c| {
            let rho = gibbs_state(&c.params, c.t_kelvin)
                .map_err(runtime)?
                .to_density_matrix();
            let h0 = self_hamiltonian(&c.params);
            let bound =
                ergotropy_random_unitary_bound(&rho, &h0, 256, c.seed).map_err(runtime)?;
            num(bound * N_A * c.per_mole_factor)
        },
    },
];

pub const DEFAULT_COLUMNS: &[&str] = &[
    "T_K",
    "B_T",
    "ergotropy_J_per_mol",
    "ergotropy_normalized_E0",
    "discord",
    "concurrence",
    "eof",
    "chi",
    "pop_singlet",
    "pop_up_up",
];

/// Resolve requested column names against the registry.
pub fn select(names: &[String]) -> Result<Vec<&'static Column>, CliError> {
    names
        .iter()
        .map(|name| {
            COLUMNS
                .iter()
                .find(|c| c.name == name)
                .ok_or_else(|| {
                    let known: Vec<&str> = COLUMNS.iter().map(|c| c.name).collect();
                    CliError::Usage(format!(
                        "unknown column '{name}'; available: {}",
                        known.join(", ")
                    ))
                })
        })
        .collect()
}

pub fn default_selection() -> Vec<&'static Column> {
    select(
        &DEFAULT_COLUMNS
            .iter()
            .map(|s| s.to_string())
            .collect::<Vec<_>>(),
    )
    .expect("default columns exist")
}

/// Per-row deterministic seed, independent of evaluation order.
pub fn row_seed(base: u64, row: usize) -> u64 {
    base.wrapping_add((row as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

pub fn context_for(config: &RunConfig, params: DimerParams, t_kelvin: f64, row: usize) -> RowContext {
    RowContext {
        params,
        t_kelvin,
        per_mole_factor: MoleBasis::output_factor(config.per_mole_of),
        unit_system: config.unit_system,
        seed: row_seed(config.seed, row),
    }
}
