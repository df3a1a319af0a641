//! Batch front end for the spindimer library: parameter sweeps,
//! susceptibility-file analysis, cycle runs, and constants.
//!
//! Exit codes: 0 ok, 2 usage error, 3 data-file parse error, 4 runtime error.

mod columns;
mod config;
mod output;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use spindimer::correlations::entanglement_temperature;
use spindimer::cycle::run_cycle;
use spindimer::magnetometry::{
    bleaney_bowers, correlations_from_chi, ingest_chi_csv, UnitSystem,
};
use spindimer::units::{Quantity, CHI_CGS_TO_SI, CODATA_2018, MU_0, N_A};
use spindimer::REFERENCE_STABILITY_LIMIT_KELVIN;

use columns::{context_for, default_selection, select, Cell, Column};
use config::{MoleBasis, OutputFormat, RunConfig, SweepAxis, SweepScale};
use output::{csv_table, fmt17, json_table};

/// Error with a process exit code.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Parse(String),
    Runtime(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Parse(_) => 3,
            CliError::Runtime(_) => 4,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Parse(m) => write!(f, "parse error: {m}"),
            CliError::Runtime(m) => write!(f, "runtime error: {m}"),
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum UnitSystemArg {
    Si,
    Cgs,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MoleBasisArg {
    Dimer,
    #[value(alias = "cu_ion")]
    CuIon,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum AxisArg {
    T,
    B,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ScaleArg {
    Linear,
    Log,
}

#[derive(Parser, Debug)]
#[command(
    name = "spindimer",
    about = "Spin-1/2 dimer quantum battery toolkit: ergotropy, correlations, magnetometry",
    version
)]
struct Cli {
    /// Flat `key = value` parameter file; command-line flags override it.
    #[arg(long, global = true, value_name = "FILE")]
    param_file: Option<PathBuf>,

    /// Exchange coupling as J/k_B in kelvin.
    #[arg(long = "J-kelvin", global = true, value_name = "K")]
    j_kelvin: Option<f64>,

    /// Landé g factor.
    #[arg(long, global = true)]
    g: Option<f64>,

    /// Static reference field in tesla.
    #[arg(long = "Bz-tesla", global = true, value_name = "T")]
    bz_tesla: Option<f64>,

    /// Unit system for susceptibility values (input and output).
    #[arg(long, global = true, value_enum)]
    unit_system: Option<UnitSystemArg>,

    /// Mole basis for per-mole outputs (and per-mole χ input).
    #[arg(long, global = true, value_enum)]
    per_mole_of: Option<MoleBasisArg>,

    /// Output format.
    #[arg(long, global = true, value_enum)]
    format: Option<FormatArg>,

    /// Seed for the sampled work-extraction column.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Print the column → library-operation mapping and exit.
    #[arg(long, global = true)]
    explain: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sweep temperature or field and tabulate battery observables.
    Sweep {
        /// Sweep axis: temperature (T) or field (B).
        #[arg(long, value_enum)]
        axis: Option<AxisArg>,
        /// Axis start (K or T).
        #[arg(long)]
        start: Option<f64>,
        /// Axis stop (K or T).
        #[arg(long)]
        stop: Option<f64>,
        /// Number of grid points (≥ 2).
        #[arg(long)]
        points: Option<usize>,
        /// Grid spacing.
        #[arg(long, value_enum)]
        scale: Option<ScaleArg>,
        /// Comma-separated column list.
        #[arg(long, value_delimiter = ',')]
        columns: Option<Vec<String>>,
        /// Fixed temperature for field sweeps (K).
        #[arg(long = "T-kelvin", value_name = "K")]
        t_kelvin: Option<f64>,
    },
    /// Analyze a measured susceptibility file: ergotropy, discord,
    /// concurrence, and entanglement of formation per row.
    Chi {
        /// CSV file with header `T_K,chi` (χ in the declared unit system).
        file: PathBuf,
        /// Constant background χ₀ subtracted before analysis, in the
        /// declared unit system and mole basis.
        #[arg(long, default_value_t = 0.0)]
        chi0: f64,
    },
    /// Run discharge/recharge cycles and emit the full trace.
    Cycle {
        /// Bath temperature in kelvin.
        #[arg(long = "T-bath", value_name = "K")]
        t_bath: f64,
        /// Number of cycles.
        #[arg(long, default_value_t = 1)]
        cycles: usize,
    },
    /// Print the physical constants used throughout.
    Constants,
}

fn merge_config(cli: &Cli) -> Result<RunConfig, CliError> {
    let mut cfg = RunConfig::default();
    if let Some(path) = &cli.param_file {
        cfg.load_file(path)?;
    }
    if let Some(v) = cli.j_kelvin {
        cfg.j_kelvin = v;
    }
    if let Some(v) = cli.g {
        cfg.g = v;
    }
    if let Some(v) = cli.bz_tesla {
        cfg.bz_tesla = v;
    }
    if let Some(v) = cli.unit_system {
        cfg.unit_system = match v {
            UnitSystemArg::Si => UnitSystem::Si,
            UnitSystemArg::Cgs => UnitSystem::Cgs,
        };
    }
    if let Some(v) = cli.per_mole_of {
        cfg.per_mole_of = match v {
            MoleBasisArg::Dimer => MoleBasis::Dimer,
            MoleBasisArg::CuIon => MoleBasis::CuIon,
        };
    }
    if let Some(v) = cli.format {
        cfg.format = match v {
            FormatArg::Csv => OutputFormat::Csv,
            FormatArg::Json => OutputFormat::Json,
        };
        cfg.format_explicit = true;
    }
    if let Some(v) = cli.seed {
        cfg.seed = v;
    }
    Ok(cfg)
}

fn base_metadata(cfg: &RunConfig) -> Vec<(String, String)> {
    vec![
        (
            "generator".into(),
            format!("spindimer-cli {}", env!("CARGO_PKG_VERSION")),
        ),
        ("J_kelvin".into(), fmt17(cfg.j_kelvin)),
        ("g".into(), fmt17(cfg.g)),
        ("Bz_tesla".into(), fmt17(cfg.bz_tesla)),
        (
            "unit_system".into(),
            match cfg.unit_system {
                UnitSystem::Si => "si".into(),
                UnitSystem::Cgs => "cgs".into(),
            },
        ),
        ("per_mole_of".into(), cfg.per_mole_of.name().into()),
    ]
}

/// Write to stdout, treating a closed pipe (e.g. `spindimer ... | head`)
/// as a normal early exit rather than a panic.
fn write_stdout(text: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    if out.write_all(text.as_bytes()).is_err() || out.flush().is_err() {
        std::process::exit(0);
    }
}

fn emit(cfg: &RunConfig, metadata: &[(String, String)], header: &[&str], rows: &[Vec<Cell>]) {
    let text = match cfg.format {
        OutputFormat::Csv => csv_table(metadata, header, rows),
        OutputFormat::Json => json_table(metadata, header, rows),
    };
    write_stdout(&text);
}

fn explain(selection: &[&Column]) {
    let mut text = String::from("column -> library operation\n");
    for col in selection {
        text.push_str(&format!("{} <- {}\n", col.name, col.operation));
    }
    write_stdout(&text);
}

fn cmd_sweep(cfg: &RunConfig) -> Result<(), CliError> {
    cfg.validate_sweep()?;
    let params = cfg.params()?;
    let selection = match &cfg.columns {
        Some(names) => select(names)?,
        None => default_selection(),
    };

    let grid = cfg.grid();
    let rows: Result<Vec<Vec<Cell>>, CliError> = grid
        .par_iter()
        .enumerate()
        .map(|(idx, &value)| {
            let (p, t) = match cfg.axis {
                SweepAxis::Temperature => (params, value),
                SweepAxis::Field => (
                    params
                        .with_field(value)
                        .map_err(|e| CliError::Runtime(e.to_string()))?,
                    cfg.t_kelvin,
                ),
            };
            let ctx = context_for(cfg, p, t, idx);
            selection
                .iter()
                .map(|col| (col.compute)(&ctx))
                .collect::<Result<Vec<Cell>, CliError>>()
        })
        .collect();
    let rows = rows?;

    let mut metadata = base_metadata(cfg);
    metadata.push((
        "axis".into(),
        match cfg.axis {
            SweepAxis::Temperature => "T".into(),
            SweepAxis::Field => "B".into(),
        },
    ));
    metadata.push(("start".into(), fmt17(cfg.start)));
    metadata.push(("stop".into(), fmt17(cfg.stop)));
    metadata.push(("points".into(), cfg.points.to_string()));
    metadata.push((
        "scale".into(),
        match cfg.scale {
            SweepScale::Linear => "linear".into(),
            SweepScale::Log => "log".into(),
        },
    ));
    if cfg.axis == SweepAxis::Field {
        metadata.push(("T_kelvin".into(), fmt17(cfg.t_kelvin)));
    }
    let max_t = match cfg.axis {
        SweepAxis::Temperature => cfg.stop,
        SweepAxis::Field => cfg.t_kelvin,
    };
    if max_t > REFERENCE_STABILITY_LIMIT_KELVIN {
        metadata.push((
            "note".into(),
            format!(
                "temperatures above {REFERENCE_STABILITY_LIMIT_KELVIN} K exceed the reference compound's thermal stability; values describe the idealized spin model only"
            ),
        ));
    }

    let header: Vec<&str> = selection.iter().map(|c| c.name).collect();
    emit(cfg, &metadata, &header, &rows);
    Ok(())
}

const CHI_COLUMNS: &[(&str, &str)] = &[
    ("T_K", "input file"),
    ("chi", "input file (background-corrected, declared units)"),
    (
        "ergotropy_J_per_mol",
        "spindimer::ergotropy::ergotropy_from_susceptibility (per_mole)",
    ),
    (
        "discord",
        "spindimer::magnetometry::correlations_from_chi (ergotropy/(2 E0))",
    ),
    (
        "concurrence",
        "spindimer::magnetometry::correlations_from_chi (weight inversion)",
    ),
    (
        "eof",
        "spindimer::correlations::entanglement_of_formation(concurrence)",
    ),
    ("w", "spindimer::magnetometry::invert_chi"),
    ("in_model_range", "spindimer::magnetometry::invert_chi"),
    ("warnings", "row diagnostics, `;`-joined"),
];

fn cmd_chi(cfg: &RunConfig, file: &Path, chi0: f64) -> Result<(), CliError> {
    let params = cfg.params()?;
    if params.e0() <= 0.0 {
        return Err(CliError::Usage(
            "susceptibility analysis needs Bz > 0 to set the energy scale".into(),
        ));
    }

    let curve = ingest_chi_csv(file, cfg.unit_system).map_err(|e| match e {
        spindimer::Error::Parse { .. } => CliError::Parse(e.to_string()),
        other => CliError::Parse(other.to_string()),
    })?;

    // background and mole-basis conversion: input data declared per mole of
    // `per_mole_of` units is rescaled to the internal per-dimer basis
    let chi0_si = match cfg.unit_system {
        UnitSystem::Si => chi0,
        UnitSystem::Cgs => chi0 * CHI_CGS_TO_SI,
    };
    let curve = curve
        .subtract_background(chi0_si)
        .map_err(|e| CliError::Runtime(e.to_string()))?;
    let input_factor = cfg.per_mole_of.input_factor();
    let curve = spindimer::magnetometry::SusceptibilityCurve::from_si_samples(
        curve
            .samples()
            .iter()
            .map(|(t, c)| (*t, c * input_factor))
            .collect(),
        cfg.unit_system,
        curve.source().to_string(),
    )
    .map_err(|e| CliError::Runtime(e.to_string()))?;

    let rows_data =
        correlations_from_chi(&curve, &params).map_err(|e| CliError::Runtime(e.to_string()))?;

    let out_factor = cfg.per_mole_of.output_factor();
    let mut rows: Vec<Vec<Cell>> = Vec::with_capacity(rows_data.len());
    let mut warning_count = 0usize;
    for row in &rows_data {
        if !row.warnings.is_empty() {
            warning_count += 1;
        }
        let chi_declared = {
            let per_declared_mole = row.chi_si / input_factor;
            match cfg.unit_system {
                UnitSystem::Si => per_declared_mole,
                UnitSystem::Cgs => {
                    Quantity::chi_si(per_declared_mole)
                        .to_chi_cgs()
                        .map_err(|e| CliError::Runtime(e.to_string()))?
                        .value
                }
            }
        };
        rows.push(vec![
            Cell::Number(row.t_kelvin),
            Cell::Number(chi_declared),
            match &row.ergotropy {
                Some(e) => Cell::Number(e.per_mole * out_factor),
                None => Cell::Text("nan".into()),
            },
            match row.discord_estimate {
                Some(d) => Cell::Number(d),
                None => Cell::Text("nan".into()),
            },
            match &row.correlations {
                Some(c) => Cell::Number(c.concurrence),
                None => Cell::Text("nan".into()),
            },
            match &row.correlations {
                Some(c) => Cell::Number(c.eof),
                None => Cell::Text("nan".into()),
            },
            match &row.effective_boltzmann {
                Some(eb) => Cell::Number(eb.w),
                None => Cell::Text("nan".into()),
            },
            match &row.effective_boltzmann {
                Some(eb) => Cell::Text(eb.in_model_range.to_string()),
                None => Cell::Text("false".into()),
            },
            // commas are reserved by the table format
            Cell::Text(row.warnings.join("; ").replace(',', ";")),
        ]);
    }

    let mut metadata = base_metadata(cfg);
    metadata.push(("source".into(), curve.source().to_string()));
    metadata.push(("chi0".into(), fmt17(chi0)));
    metadata.push((
        "model_entanglement_temperature_K".into(),
        fmt17(entanglement_temperature(&params)),
    ));
    metadata.push((
        "model_max_ergotropy_J_per_mol".into(),
        fmt17(params.e0() * N_A * out_factor),
    ));

    // magnitude sanity check against the model scale: a cgs file read with
    // an SI flag (or vice versa) sits ~8e4 off and is flagged here
    let mut log_ratio_sum = 0.0f64;
    let mut compared = 0usize;
    for (t, chi_si) in curve.samples() {
        if let Ok(model) = bleaney_bowers(&params, *t) {
            if model > 0.0 && *chi_si > 0.0 {
                log_ratio_sum += (chi_si / model).log10();
                compared += 1;
            }
        }
    }
    if compared > 0 {
        let mean_log_ratio = log_ratio_sum / compared as f64;
        if mean_log_ratio.abs() > 3.0 {
            metadata.push((
                "warning".into(),
                format!(
                    "susceptibility magnitude is 10^{mean_log_ratio:.1} of the model scale; check --unit-system"
                ),
            ));
        }
    }

    // data-side estimates: interpolated concurrence root and peak ergotropy
    let mut conc_root: Option<f64> = None;
    for pair in rows_data.windows(2) {
        if let (Some(a), Some(b)) = (&pair[0].correlations, &pair[1].correlations) {
            if a.concurrence > 0.0 && b.concurrence == 0.0 {
                let f = a.concurrence / (a.concurrence - b.concurrence);
                conc_root = Some(pair[0].t_kelvin + f * (pair[1].t_kelvin - pair[0].t_kelvin));
                break;
            }
        }
    }
    if let Some(root) = conc_root {
        metadata.push(("data_concurrence_root_K".into(), fmt17(root)));
    }
    if let Some(max_erg) = rows_data
        .iter()
        .filter_map(|r| r.ergotropy.as_ref().map(|e| e.per_mole * out_factor))
        .max_by(f64::total_cmp)
    {
        metadata.push(("data_max_ergotropy_J_per_mol".into(), fmt17(max_erg)));
    }
    metadata.push(("warning_count".into(), warning_count.to_string()));
    if curve
        .samples()
        .iter()
        .any(|(t, _)| *t > REFERENCE_STABILITY_LIMIT_KELVIN)
    {
        metadata.push((
            "note".into(),
            format!(
                "rows above {REFERENCE_STABILITY_LIMIT_KELVIN} K exceed the reference compound's thermal stability; values describe the idealized spin model only"
            ),
        ));
    }

    let header: Vec<&str> = CHI_COLUMNS.iter().map(|(n, _)| *n).collect();
    emit(cfg, &metadata, &header, &rows);
    Ok(())
}

fn cmd_cycle(cfg: &RunConfig, t_bath: f64, cycles: usize) -> Result<(), CliError> {
    let params = cfg.params()?;
    let trace =
        run_cycle(&params, t_bath, cycles).map_err(|e| CliError::Runtime(e.to_string()))?;
    let audits = trace.energy_audit();
    let out_factor = cfg.per_mole_of.output_factor();

    // a full state trace is structured data; JSON unless CSV was asked for
    let format = if cfg.format_explicit {
        cfg.format
    } else {
        OutputFormat::Json
    };
    match format {
        OutputFormat::Json => {
            let doc = serde_json::json!({
                "meta": {
                    "generator": format!("spindimer-cli {}", env!("CARGO_PKG_VERSION")),
                    "J_kelvin": cfg.j_kelvin,
                    "g": cfg.g,
                    "Bz_tesla": cfg.bz_tesla,
                    "bath_temperature_K": t_bath,
                    "cycles": cycles,
                    "per_mole_of": cfg.per_mole_of.name(),
                    "work_J_per_mol_per_cycle": trace
                        .work_per_cycle()
                        .iter()
                        .map(|w| w * N_A * out_factor)
                        .collect::<Vec<f64>>(),
                    "energy_audit_J": audits,
                },
                "trace": trace,
            });
            let mut text = serde_json::to_string_pretty(&doc).expect("serializable");
            text.push('\n');
            write_stdout(&text);
        }
        OutputFormat::Csv => {
            let header = [
                "step",
                "label",
                "internal_energy_h0_J",
                "ergotropy_J",
                "heat_absorbed_J",
                "work_extracted_J",
            ];
            let mut rows: Vec<Vec<Cell>> = Vec::new();
            for (idx, step) in trace.steps.iter().enumerate() {
                rows.push(vec![
                    Cell::Number(idx as f64),
                    Cell::Text(format!("{:?}", step.label).to_lowercase()),
                    Cell::Number(step.internal_energy_h0),
                    Cell::Number(step.ergotropy),
                    step.heat_absorbed
                        .map_or(Cell::Text(String::new()), Cell::Number),
                    step.work_extracted
                        .map_or(Cell::Text(String::new()), Cell::Number),
                ]);
            }
            let mut metadata = base_metadata(cfg);
            metadata.push(("bath_temperature_K".into(), fmt17(t_bath)));
            metadata.push(("cycles".into(), cycles.to_string()));
            metadata.push(("stroke_model".into(), trace.stroke_model.to_string()));
            for (i, a) in audits.iter().enumerate() {
                metadata.push((format!("energy_audit_cycle_{}_J", i + 1), fmt17(*a)));
            }
            emit(cfg, &metadata, &header, &rows);
        }
    }
    Ok(())
}

fn cmd_constants(cfg: &RunConfig) -> Result<(), CliError> {
    let rows = vec![
        vec![
            Cell::Text("k_B_J_per_K".into()),
            Cell::Number(CODATA_2018.k_b),
        ],
        vec![
            Cell::Text("mu_B_J_per_T".into()),
            Cell::Number(CODATA_2018.mu_b),
        ],
        vec![
            Cell::Text("N_A_per_mol".into()),
            Cell::Number(CODATA_2018.n_a),
        ],
        vec![Cell::Text("mu_0_T_m_per_A".into()), Cell::Number(MU_0)],
        vec![
            Cell::Text("chi_cgs_to_si".into()),
            Cell::Number(CHI_CGS_TO_SI),
        ],
    ];
    let metadata = vec![(
        "generator".into(),
        format!("spindimer-cli {}", env!("CARGO_PKG_VERSION")),
    )];
    emit(cfg, &metadata, &["constant", "value"], &rows);
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    let mut cfg = merge_config(&cli)?;

    match &cli.command {
        Command::Sweep {
            axis,
            start,
            stop,
            points,
            scale,
            columns,
            t_kelvin,
        } => {
            if let Some(v) = axis {
                cfg.axis = match v {
                    AxisArg::T => SweepAxis::Temperature,
                    AxisArg::B => SweepAxis::Field,
                };
            }
            if let Some(v) = start {
                cfg.start = *v;
            }
            if let Some(v) = stop {
                cfg.stop = *v;
            }
            if let Some(v) = points {
                cfg.points = *v;
            }
            if let Some(v) = scale {
                cfg.scale = match v {
                    ScaleArg::Linear => SweepScale::Linear,
                    ScaleArg::Log => SweepScale::Log,
                };
            }
            if let Some(v) = columns {
                cfg.columns = Some(v.clone());
            }
            if let Some(v) = t_kelvin {
                cfg.t_kelvin = *v;
            }
            if cli.explain {
                let selection = match &cfg.columns {
                    Some(names) => select(names)?,
                    None => default_selection(),
                };
                explain(&selection);
                return Ok(());
            }
            cmd_sweep(&cfg)
        }
        Command::Chi { file, chi0 } => {
            if cli.explain {
                let mut text = String::from("column -> library operation\n");
                for (name, op) in CHI_COLUMNS {
                    text.push_str(&format!("{name} <- {op}\n"));
                }
                write_stdout(&text);
                return Ok(());
            }
            cmd_chi(&cfg, file, *chi0)
        }
        Command::Cycle { t_bath, cycles } => {
            if cli.explain {
                write_stdout(concat!(
                    "field -> library operation\n",
                    "work_extracted <- spindimer::cycle::discharge (= pre-stroke ergotropy_general)\n",
                    "heat_absorbed <- spindimer::cycle::recharge (= Tr[H dρ])\n",
                    "internal_energy_h0 <- Tr[ρ H0]\n",
                    "ergotropy <- spindimer::ergotropy::ergotropy_general\n",
                    "energy_audit <- spindimer::cycle::CycleTrace::energy_audit\n",
                ));
                return Ok(());
            }
            cmd_cycle(&cfg, *t_bath, *cycles)
        }
        Command::Constants => cmd_constants(&cfg),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.code())
        }
    }
}
