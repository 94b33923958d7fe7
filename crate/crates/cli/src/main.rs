use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use bloch_rwa_cli::params::{merge, normalize_key, RawParams};
use bloch_rwa_cli::{load_config_file, run_scenario, Format, Scenario, ScenarioSpec};

/// Two-level system dynamics beyond the rotating wave approximation.
///
/// Each subcommand writes one data table (CSV by default) whose first line
/// records the full parameter set.
#[derive(Parser)]
#[command(name = "bloch-rwa", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact classical-field Bloch path with the RWA path alongside.
    ClassicalPath(Flags),
    /// Rotation speed and axis over time.
    RotationProfile(Flags),
    /// Curvature against rescaled time ωt.
    Curvature(Flags),
    /// Arc length s(t) of the exact and RWA paths.
    Arclength(Flags),
    /// Quantized-field reduced Bloch path with the Jaynes–Cummings path alongside.
    QuantumPath(Flags),
    /// Curvature near the first two cusp times for three field states.
    Table1(Flags),
    /// RMS distance to the RWA evolution against field frequency.
    DeltaScan(Flags),
    /// Cusp times (2k+1)π/(2ω) up to t-end.
    Cusps(Flags),
}

#[derive(Args)]
struct Flags {
    /// `key = value` parameter file; command-line flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Field frequency ω in units of the Rabi frequency.
    #[arg(long, allow_hyphen_values = true)]
    omega: Option<String>,
    /// Detuning Δ = ω − ω_a (classical model only).
    #[arg(long, allow_hyphen_values = true)]
    detuning: Option<String>,
    /// Initial polar angle of the qubit.
    #[arg(long, allow_hyphen_values = true)]
    theta0: Option<String>,
    /// Coherent-state amplitude α.
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,
    /// Fock-space cutoff.
    #[arg(long)]
    n_max: Option<String>,
    /// Qubit–mode coupling λ (default 1/α).
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<String>,
    /// Final time.
    #[arg(long, allow_hyphen_values = true)]
    t_end: Option<String>,
    /// Output samples per drive period 2π/ω.
    #[arg(long)]
    samples_per_period: Option<String>,
    /// Emit the RWA evolution only.
    #[arg(long)]
    rwa: bool,
    /// `classical` or `quantum`.
    #[arg(long)]
    model: Option<String>,
    /// Reference for the quantized-field error: `jaynes-cummings` or `classical-rwa`.
    #[arg(long)]
    reference: Option<String>,
    /// Comma-separated scan frequencies.
    #[arg(long)]
    omegas: Option<String>,
    /// Output file; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format; inferred from the `--out` extension when omitted.
    #[arg(long, value_enum)]
    format: Option<Format>,
}

impl Flags {
    fn raw(&self) -> RawParams {
        let pairs = [
            ("omega", &self.omega),
            ("detuning", &self.detuning),
            ("theta0", &self.theta0),
            ("alpha", &self.alpha),
            ("n-max", &self.n_max),
            ("lambda", &self.lambda),
            ("t-end", &self.t_end),
            ("samples-per-period", &self.samples_per_period),
            ("model", &self.model),
            ("reference", &self.reference),
            ("omegas", &self.omegas),
        ];
        let mut raw: RawParams = pairs
            .into_iter()
            .filter_map(|(k, v)| v.as_ref().map(|v| (normalize_key(k), v.clone())))
            .collect();
        if self.rwa {
            raw.insert("rwa".into(), "true".into());
        }
        raw
    }

    fn format(&self) -> Format {
        self.format.unwrap_or_else(|| {
            let json = self.out.as_ref().and_then(|p| p.extension()).is_some_and(|e| e.eq_ignore_ascii_case("json"));
            if json { Format::Json } else { Format::Csv }
        })
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (scenario, flags) = match cli.command {
        Command::ClassicalPath(f) => (Scenario::ClassicalPath, f),
        Command::RotationProfile(f) => (Scenario::RotationProfile, f),
        Command::Curvature(f) => (Scenario::Curvature, f),
        Command::Arclength(f) => (Scenario::Arclength, f),
        Command::QuantumPath(f) => (Scenario::QuantumPath, f),
        Command::Table1(f) => (Scenario::Table1, f),
        Command::DeltaScan(f) => (Scenario::DeltaScan, f),
        Command::Cusps(f) => (Scenario::Cusps, f),
    };
    let result = flags
        .config
        .as_deref()
        .map(load_config_file)
        .transpose()
        .and_then(|file| {
            let spec = ScenarioSpec {
                scenario,
                params: merge(file.unwrap_or_default(), flags.raw()),
                output: flags.out.clone(),
                format: flags.format(),
            };
            run_scenario(&spec)
        });
    match result {
        Ok(summary) => {
            if let Some(path) = summary.output {
                eprintln!("{scenario}: wrote {} rows to {}", summary.rows, path.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("bloch-rwa {scenario}: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
