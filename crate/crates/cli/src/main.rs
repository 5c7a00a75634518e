//! Command-line front end: angular profiles, temperature sweeps, total
//! cross-sections and the randomized validation suite, emitted as
//! deterministic CSV or JSON.

mod grid;
mod output;
mod runs;

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use grid::{parse_angle, parse_grid};
use output::{Format, Table};
use runs::{meta_insert_f64, CondensateMode, Meta};
use trapscat::thermal::FermiGroundMode;
use trapscat::{ScatteringContext, Statistics, TrapGeometry};

/// Errors split by exit code: usage problems exit 2, numerical failures 3.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Numerical(String),
}

#[derive(Parser)]
#[command(
    name = "trapscat",
    version,
    about = "Particle scattering by harmonically trapped quantum gases: angular profiles, temperature sweeps, cross-sections"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum StatsArg {
    Bose,
    Fermi,
    Boltzmann,
}

impl From<StatsArg> for Statistics {
    fn from(s: StatsArg) -> Self {
        match s {
            StatsArg::Bose => Statistics::Bose,
            StatsArg::Fermi => Statistics::Fermi,
            StatsArg::Boltzmann => Statistics::Boltzmann,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FermiModeArg {
    Exact,
    Approx,
}

#[derive(Clone, Copy, ValueEnum)]
enum Toggle {
    On,
    Off,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Args)]
struct GeometryArgs {
    /// Isotropic oscillator length in units of a_s (overridden by --lx/--ly/--lz)
    #[arg(long, default_value_t = 1.0)]
    l: f64,
    /// Oscillator length along x, in units of a_s
    #[arg(long)]
    lx: Option<f64>,
    /// Oscillator length along y, in units of a_s
    #[arg(long)]
    ly: Option<f64>,
    /// Oscillator length along z, in units of a_s
    #[arg(long)]
    lz: Option<f64>,
}

impl GeometryArgs {
    fn resolve(&self) -> Result<TrapGeometry, CliError> {
        let g = TrapGeometry::anisotropic(
            self.lx.unwrap_or(self.l),
            self.ly.unwrap_or(self.l),
            self.lz.unwrap_or(self.l),
        )
        .map_err(|e| CliError::Usage(e.to_string()))?;
        Ok(g)
    }

    fn echo(&self, meta: &mut Meta) {
        meta_insert_f64(meta, "l_x", self.lx.unwrap_or(self.l));
        meta_insert_f64(meta, "l_y", self.ly.unwrap_or(self.l));
        meta_insert_f64(meta, "l_z", self.lz.unwrap_or(self.l));
    }
}

#[derive(Args)]
struct OutputArgs {
    /// Output format
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
    /// Output path (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct TemperatureArgs {
    /// Dimensionless temperature t = k_B T / ħω
    #[arg(long)]
    t: Option<f64>,
    /// Laboratory temperature in kelvin (needs --omega)
    #[arg(long = "T-kelvin")]
    t_kelvin: Option<f64>,
    /// Trap angular frequency in rad/s (for --T-kelvin)
    #[arg(long)]
    omega: Option<f64>,
    /// Scatterer mass in kg; echoes the oscillator length in metres
    #[arg(long = "mass-kg")]
    mass_kg: Option<f64>,
}

impl TemperatureArgs {
    /// Resolves t from either --t or the SI pair, echoing the bridge.
    fn resolve(&self, meta: &mut Meta) -> Result<Option<f64>, CliError> {
        if let Some(t) = self.t {
            if self.t_kelvin.is_some() {
                return Err(CliError::Usage(
                    "give either --t or --T-kelvin, not both".into(),
                ));
            }
            meta_insert_f64(meta, "t", t);
            return Ok(Some(t));
        }
        if let Some(temp_k) = self.t_kelvin {
            let omega = self.omega.ok_or_else(|| {
                CliError::Usage("--T-kelvin needs --omega (rad/s)".into())
            })?;
            let t = trapscat::si::reduced_temperature(temp_k, omega)
                .map_err(|e| CliError::Usage(e.to_string()))?;
            meta_insert_f64(meta, "T_kelvin", temp_k);
            meta_insert_f64(meta, "omega", omega);
            meta_insert_f64(meta, "t", t);
            if let Some(mass) = self.mass_kg {
                let l_m = trapscat::si::oscillator_length_m(mass, omega)
                    .map_err(|e| CliError::Usage(e.to_string()))?;
                meta_insert_f64(meta, "mass_kg", mass);
                meta_insert_f64(meta, "oscillator_length_m", l_m);
            }
            return Ok(Some(t));
        }
        Ok(None)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Profile of a single scatterer in a definite oscillator eigenstate
    Single {
        /// Trap dimensionality (1, 2 or 3)
        #[arg(long, default_value_t = 1)]
        dim: u8,
        /// Quantum number along x
        #[arg(long, default_value_t = 0)]
        n: usize,
        /// Quantum number along y (2-D and 3-D)
        #[arg(long, default_value_t = 0)]
        ny: usize,
        /// Quantum number along z (3-D)
        #[arg(long, default_value_t = 0)]
        nz: usize,
        /// Incident wavenumber times a_s
        #[arg(long = "k-as", default_value_t = 5.0)]
        k_as: f64,
        /// Mass ratio m/M of incident particle to scatterer
        #[arg(long = "m-over-M", default_value_t = 0.1)]
        m_over_m: f64,
        #[command(flatten)]
        geometry: GeometryArgs,
        /// Polar grid lo:hi:count (angles accept pi literals)
        #[arg(long = "theta-grid", default_value = "0:pi:721")]
        theta_grid: String,
        /// Azimuthal angle (accepts pi literals)
        #[arg(long, default_value = "0")]
        phi: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Thermal ensemble: profile at fixed t, or temperature sweep of the
    /// forward/perpendicular/backward cross-sections
    Thermal {
        /// Quantum statistics of the scatterers
        #[arg(long, value_enum, default_value_t = StatsArg::Bose)]
        stats: StatsArg,
        /// Particle number
        #[arg(long = "N", default_value_t = 1e4)]
        n: f64,
        #[command(flatten)]
        temperature: TemperatureArgs,
        /// Temperature grid lo:hi:count → sweep mode at θ ∈ {0, π/2, π}
        #[arg(long = "t-grid")]
        t_grid: Option<String>,
        /// Degenerate-Fermi route at t = 0: exact shell filling or envelope
        #[arg(long = "fermi-ground", value_enum, default_value_t = FermiModeArg::Exact)]
        fermi_ground: FermiModeArg,
        #[arg(long = "k-as", default_value_t = 2.0)]
        k_as: f64,
        #[arg(long = "m-over-M", default_value_t = 0.1)]
        m_over_m: f64,
        #[command(flatten)]
        geometry: GeometryArgs,
        #[arg(long = "theta-grid", default_value = "0:pi:721")]
        theta_grid: String,
        #[arg(long, default_value = "0")]
        phi: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Condensate profiles: single trap, double well, or 1-D lattice
    Condensate {
        #[command(subcommand)]
        mode: CondensateCommand,
    },
    /// Total cross-section of the condensate profile
    Xsection {
        #[arg(long = "k-as", default_value_t = 1e-4)]
        k_as: f64,
        #[arg(long = "m-over-M", default_value_t = 0.1)]
        m_over_m: f64,
        #[arg(long = "N", default_value_t = 1.0)]
        n: f64,
        #[command(flatten)]
        geometry: GeometryArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Randomized oracle suites: closed forms vs quadrature, fast vs direct
    Validate {
        /// RNG seed for the randomized sweeps
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Cases per suite
        #[arg(long, default_value_t = 50)]
        cases: usize,
    },
}

#[derive(Args)]
struct CondensateCommon {
    /// Atoms per condensate
    #[arg(long = "N", default_value_t = 1e4)]
    n: f64,
    /// Inter-scatterer scattering length in units of the mean oscillator length l̄
    #[arg(long = "a-tilde", default_value_t = 0.0056)]
    a_tilde: f64,
    /// Temperature as a fraction of t_c (overridden by --t)
    #[arg(long = "t-over-tc", default_value_t = 0.1)]
    t_over_tc: f64,
    #[command(flatten)]
    temperature: TemperatureArgs,
    /// Finite-size and interaction corrections to the condensate fraction
    #[arg(long, value_enum, default_value_t = Toggle::On)]
    corrections: Toggle,
    #[arg(long = "k-as", default_value_t = 2.0)]
    k_as: f64,
    #[arg(long = "m-over-M", default_value_t = 0.1)]
    m_over_m: f64,
    #[command(flatten)]
    geometry: GeometryArgs,
    #[arg(long = "theta-grid", default_value = "0:pi:721")]
    theta_grid: String,
    #[arg(long, default_value = "0")]
    phi: String,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Subcommand)]
enum CondensateCommand {
    /// Single harmonically trapped condensate
    Bec {
        #[command(flatten)]
        common: CondensateCommon,
    },
    /// Two condensates separated by d along x
    DoubleWell {
        /// Well separation in units of a_s
        #[arg(long, default_value_t = 10.0)]
        d: f64,
        #[command(flatten)]
        common: CondensateCommon,
    },
    /// N' condensates on a 1-D lattice of spacing d along x
    Lattice {
        #[arg(long, default_value_t = 10.0)]
        d: f64,
        /// Number of lattice sites N'
        #[arg(long, default_value_t = 10)]
        wells: u32,
        #[command(flatten)]
        common: CondensateCommon,
    },
}

fn context(k_as: f64, m_over_m: f64, meta: &mut Meta) -> Result<ScatteringContext, CliError> {
    meta_insert_f64(meta, "k_as", k_as);
    meta_insert_f64(meta, "m_over_M", m_over_m);
    ScatteringContext::new(k_as, m_over_m).map_err(|e| CliError::Usage(e.to_string()))
}

fn emit(table: &Table, format: FormatArg, out: &Option<PathBuf>) -> Result<(), CliError> {
    let fmt = match format {
        FormatArg::Csv => Format::Csv,
        FormatArg::Json => Format::Json,
    };
    let io_err = |e: std::io::Error| CliError::Numerical(format!("write failed: {e}"));
    match out {
        Some(path) => {
            let file = std::fs::File::create(path).map_err(io_err)?;
            table.write(fmt, std::io::BufWriter::new(file)).map_err(io_err)
        }
        None => {
            let stdout = std::io::stdout();
            table.write(fmt, stdout.lock()).map_err(io_err)
        }
    }
}

fn usage(msg: String) -> CliError {
    CliError::Usage(msg)
}

fn run_condensate_command(mode_cmd: CondensateCommand) -> Result<(), CliError> {
    let (common, mode, mode_name) = match mode_cmd {
        CondensateCommand::Bec { common } => (common, CondensateMode::Bec, "bec"),
        CondensateCommand::DoubleWell { d, common } => {
            (common, CondensateMode::DoubleWell { spacing: d }, "double-well")
        }
        CondensateCommand::Lattice { d, wells, common } => (
            common,
            CondensateMode::Lattice { spacing: d, wells },
            "lattice",
        ),
    };
    let mut meta = BTreeMap::new();
    meta.insert("mode".into(), mode_name.to_string());
    let ctx = context(common.k_as, common.m_over_m, &mut meta)?;
    let geom = common.geometry.resolve()?;
    common.geometry.echo(&mut meta);
    let t_c = trapscat::condensate::critical_temperature(common.n)
        .map_err(|e| usage(e.to_string()))?;
    let t = match common.temperature.resolve(&mut meta)? {
        Some(t) => t,
        None => {
            let t = common.t_over_tc * t_c;
            meta_insert_f64(&mut meta, "t", t);
            t
        }
    };
    meta_insert_f64(&mut meta, "t_over_tc", t / t_c);
    meta_insert_f64(&mut meta, "N", common.n);
    // the CLI takes ã_s in units of l̄; the library works in a_s units
    let a_tilde_as = common.a_tilde * geom.mean_length();
    meta_insert_f64(&mut meta, "a_tilde_lbar", common.a_tilde);
    let corrections = matches!(common.corrections, Toggle::On);
    meta.insert("corrections".into(), if corrections { "on" } else { "off" }.into());
    if let CondensateMode::DoubleWell { spacing } | CondensateMode::Lattice { spacing, .. } = mode {
        meta_insert_f64(&mut meta, "d", spacing);
    }
    if let CondensateMode::Lattice { wells, .. } = mode {
        meta.insert("wells".into(), wells.to_string());
    }
    let thetas = parse_grid(&common.theta_grid).map_err(usage)?;
    meta.insert("theta_grid".into(), common.theta_grid.clone());
    let phi = parse_angle(&common.phi).map_err(usage)?;
    meta_insert_f64(&mut meta, "phi", phi);
    let table = runs::run_condensate(
        &ctx, &geom, &mode, common.n, t, a_tilde_as, corrections, &thetas, phi, meta,
    )?;
    emit(&table, common.output.format, &common.output.out)
}

fn dispatch(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Single {
            dim,
            n,
            ny,
            nz,
            k_as,
            m_over_m,
            geometry,
            theta_grid,
            phi,
            output,
        } => {
            let mut meta = BTreeMap::new();
            let ctx = context(k_as, m_over_m, &mut meta)?;
            let geom = geometry.resolve()?;
            geometry.echo(&mut meta);
            meta.insert("dim".into(), dim.to_string());
            meta.insert("n_x".into(), n.to_string());
            if dim >= 2 {
                meta.insert("n_y".into(), ny.to_string());
            }
            if dim >= 3 {
                meta.insert("n_z".into(), nz.to_string());
            }
            let thetas = parse_grid(&theta_grid).map_err(usage)?;
            meta.insert("theta_grid".into(), theta_grid.clone());
            let phi = parse_angle(&phi).map_err(usage)?;
            meta_insert_f64(&mut meta, "phi", phi);
            let table = runs::run_single(&ctx, &geom, dim, [n, ny, nz], &thetas, phi, meta)?;
            emit(&table, output.format, &output.out)
        }
        Command::Thermal {
            stats,
            n,
            temperature,
            t_grid,
            fermi_ground,
            k_as,
            m_over_m,
            geometry,
            theta_grid,
            phi,
            output,
        } => {
            let mut meta = BTreeMap::new();
            let ctx = context(k_as, m_over_m, &mut meta)?;
            let geom = geometry.resolve()?;
            geometry.echo(&mut meta);
            let statistics: Statistics = stats.into();
            meta.insert(
                "statistics".into(),
                match statistics {
                    Statistics::Bose => "bose",
                    Statistics::Fermi => "fermi",
                    Statistics::Boltzmann => "boltzmann",
                }
                .into(),
            );
            meta_insert_f64(&mut meta, "N", n);
            let t_fixed = temperature.resolve(&mut meta)?;
            match (t_fixed, t_grid) {
                (Some(_), Some(_)) => Err(usage(
                    "give either a fixed temperature or --t-grid, not both".into(),
                )),
                (Some(t), None) => {
                    let mode = match fermi_ground {
                        FermiModeArg::Exact => FermiGroundMode::Exact,
                        FermiModeArg::Approx => FermiGroundMode::Approximate,
                    };
                    if statistics == Statistics::Fermi && t == 0.0 {
                        meta.insert(
                            "fermi_ground".into(),
                            match mode {
                                FermiGroundMode::Exact => "exact",
                                FermiGroundMode::Approximate => "approx",
                            }
                            .into(),
                        );
                    }
                    let thetas = parse_grid(&theta_grid).map_err(usage)?;
                    meta.insert("theta_grid".into(), theta_grid.clone());
                    let phi = parse_angle(&phi).map_err(usage)?;
                    meta_insert_f64(&mut meta, "phi", phi);
                    let table = runs::run_thermal_profile(
                        &ctx, &geom, statistics, n, t, mode, &thetas, phi, meta,
                    )?;
                    emit(&table, output.format, &output.out)
                }
                (None, grid_spec) => {
                    // sweep mode; default grid spans the condensation point for N = 1e4
                    let spec_str = grid_spec.unwrap_or_else(|| "2:30:141".to_string());
                    let tg = parse_grid(&spec_str).map_err(usage)?;
                    meta.insert("t_grid".into(), spec_str);
                    meta.insert("angles".into(), "0,pi/2,pi".into());
                    let table = runs::run_thermal_sweep(&ctx, &geom, statistics, n, &tg, meta)?;
                    emit(&table, output.format, &output.out)
                }
            }
        }
        Command::Condensate { mode } => run_condensate_command(mode),
        Command::Xsection {
            k_as,
            m_over_m,
            n,
            geometry,
            output,
        } => {
            let mut meta = BTreeMap::new();
            let ctx = context(k_as, m_over_m, &mut meta)?;
            let geom = geometry.resolve()?;
            geometry.echo(&mut meta);
            meta_insert_f64(&mut meta, "N", n);
            let table = runs::run_xsection(&ctx, &geom, n, meta)?;
            emit(&table, output.format, &output.out)
        }
        Command::Validate { seed, cases } => {
            if cases == 0 {
                return Err(usage("--cases must be at least 1".into()));
            }
            let (lines, ok) = runs::run_validate(seed, cases);
            let stdout = std::io::stdout();
            let mut w = stdout.lock();
            for line in &lines {
                writeln!(w, "{line}").map_err(|e| CliError::Numerical(e.to_string()))?;
            }
            if ok {
                writeln!(w, "all validation suites passed")
                    .map_err(|e| CliError::Numerical(e.to_string()))?;
                Ok(())
            } else {
                Err(CliError::Numerical("validation suite failed".into()))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Numerical(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
