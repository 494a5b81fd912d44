#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use eit_soliton::output::{write_chi_csv, write_outputs, write_sidecar, SIDECAR_NAME};
use eit_soliton::presets::{self, EstimateInputs};
use eit_soliton::{
    load_scenario, regime_report, run, sample_probe, split_step_oracle, Error, ScenarioConfig,
    Trajectory,
};

#[derive(Parser)]
#[command(
    name = "eitsol",
    version,
    about = "Probe-beam solitons in a four-level EIT medium with a shaped coupling beam"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Propagate a scenario with the Crank-Nicolson solver and write its outputs.
    Run(RunArgs),
    /// Print the soliton width, amplitude bound and photon-flux estimate.
    Estimate(EstimateArgs),
    /// Tabulate χ⁽¹⁾ and χ⁽³⁾ (normalized) across a range of x.
    ChiScan {
        config: PathBuf,
        /// `start:stop:count` in metres.
        #[arg(long, allow_hyphen_values = true)]
        xs: String,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the scenario and report the validity-regime inequalities.
    Validate { config: PathBuf },
    /// Propagate with the split-step Fourier oracle instead.
    Oracle {
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct RunArgs {
    /// Scenario file.
    #[arg(required_unless_present = "preset", conflicts_with = "preset")]
    config: Option<PathBuf>,
    /// Built-in scenario: fig3, fig4 or fig5.
    #[arg(long)]
    preset: Option<String>,
    /// Directory for relative output paths and the scenario sidecar.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct EstimateArgs {
    /// Atomic density, m⁻³.
    #[arg(long)]
    density: Option<f64>,
    /// Dipole moment, C·m.
    #[arg(long)]
    dipole: Option<f64>,
    /// Decay rate γ, s⁻¹.
    #[arg(long)]
    gamma: Option<f64>,
    /// Probe wavelength, m.
    #[arg(long)]
    lambda: Option<f64>,
    /// Re Γ₄ in units of γ.
    #[arg(long, allow_hyphen_values = true)]
    re_gamma4: Option<f64>,
    /// Coupling amplitude in units of γħ/μ.
    #[arg(long)]
    coupling: Option<f64>,
    /// E_p,max / E_c.
    #[arg(long)]
    ratio: Option<f64>,
}

enum Failure {
    Usage(String),
    Rejected(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Config(_) | Error::Parse { .. } | Error::Io { .. } | Error::Format(_) => {
                Failure::Usage(e.to_string())
            }
            other => Failure::Rejected(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Run(args) => cmd_run(args),
        Command::Estimate(args) => cmd_estimate(args),
        Command::ChiScan { config, xs, out } => cmd_chi_scan(&config, &xs, out.as_deref()),
        Command::Validate { config } => cmd_validate(&config),
        Command::Oracle { config, out } => cmd_oracle(&config, out.as_deref()),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("eitsol: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Rejected(msg)) => {
            eprintln!("eitsol: {msg}");
            ExitCode::from(1)
        }
    }
}

fn cmd_run(args: RunArgs) -> Result<(), Failure> {
    let scenario = match (&args.config, &args.preset) {
        (Some(path), None) => load_scenario(path)?,
        (None, Some(name)) => presets::scenario_preset(name)?,
        _ => {
            return Err(Failure::Usage(
                "give either a scenario file or --preset".into(),
            ))
        }
    };
    let traj = run(&scenario, |_, _| {})?;
    finish(&traj, &scenario, args.out.as_deref())
}

fn cmd_oracle(config: &Path, out: Option<&Path>) -> Result<(), Failure> {
    let scenario = load_scenario(config)?;
    let traj = split_step_oracle(&scenario)?;
    finish(&traj, &scenario, out)
}

fn finish(traj: &Trajectory, scenario: &ScenarioConfig, out: Option<&Path>) -> Result<(), Failure> {
    let mut written = write_outputs(traj, scenario, &scenario.outputs, out)?;
    let sidecar = out.unwrap_or(Path::new(".")).join(SIDECAR_NAME);
    write_sidecar(scenario, &sidecar)?;
    written.push(sidecar);
    if let Some(m) = traj.metrics.last() {
        println!(
            "z = {:.4e} m  power = {:.4e}  peak = {:.4e} V/m at {:.4e} m  peaks = {}",
            m.z, m.power, m.peak_amplitude, m.peak_x, m.n_peaks
        );
    }
    for p in written {
        println!("wrote {}", p.display());
    }
    Ok(())
}

fn cmd_estimate(args: EstimateArgs) -> Result<(), Failure> {
    let mut inputs = EstimateInputs::default();
    if let Some(v) = args.density {
        inputs.density = v;
    }
    if let Some(v) = args.dipole {
        inputs.dipole = v;
    }
    if let Some(v) = args.gamma {
        inputs.gamma = v;
    }
    if let Some(v) = args.lambda {
        inputs.lambda_p = v;
    }
    if let Some(v) = args.ratio {
        inputs.amplitude_ratio = v;
    }
    inputs.re_gamma4 = args.re_gamma4.unwrap_or(-10.0) * inputs.gamma;
    let field_unit = inputs.gamma * eit_soliton::units::HBAR / inputs.dipole;
    inputs.e_c = args.coupling.unwrap_or(1.0) * field_unit;
    let report = presets::estimate(&inputs)?;
    println!("{report}");
    Ok(())
}

fn parse_range(spec: &str) -> Result<Vec<f64>, Failure> {
    let bad = || Failure::Usage(format!("--xs expects start:stop:count, got `{spec}`"));
    let parts: Vec<&str> = spec.split(':').collect();
    let [a, b, n] = parts.as_slice() else {
        return Err(bad());
    };
    let a: f64 = a.trim().parse().map_err(|_| bad())?;
    let b: f64 = b.trim().parse().map_err(|_| bad())?;
    let n: usize = n.trim().parse().map_err(|_| bad())?;
    if n < 2 || !(b > a) {
        return Err(Failure::Usage(
            "--xs needs stop > start and count ≥ 2".into(),
        ));
    }
    Ok((0..n)
        .map(|i| a + (b - a) * i as f64 / (n - 1) as f64)
        .collect())
}

fn cmd_chi_scan(config: &Path, xs: &str, out: Option<&Path>) -> Result<(), Failure> {
    let scenario = load_scenario(config)?;
    let xs = parse_range(xs)?;
    let mut buf = Vec::new();
    write_chi_csv(&mut buf, &scenario, &xs)?;
    match out {
        Some(path) => std::fs::write(path, &buf)
            .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?,
        None => std::io::stdout()
            .write_all(&buf)
            .map_err(|e| Failure::Usage(e.to_string()))?,
    }
    Ok(())
}

fn cmd_validate(config: &Path) -> Result<(), Failure> {
    let scenario = load_scenario(config)?;
    let initial = sample_probe(&scenario)?;
    let report = regime_report(&scenario, &initial);
    print!("{report}");
    if report.all_satisfied() {
        println!("scenario is valid");
        Ok(())
    } else {
        let note = if scenario.solver.regime_override {
            " (the scenario overrides this check for propagation)"
        } else {
            ""
        };
        Err(Failure::Rejected(format!(
            "validity regime violated: {}{note}",
            report
                .failing()
                .map(|c| c.kind.label())
                .collect::<Vec<_>>()
                .join(", ")
        )))
    }
}
