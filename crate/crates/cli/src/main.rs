use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand};
use stcga::cga7::{Event, SpacetimeModel};
use stcga::dynamics::{write_trajectory_csv, RotorForm};
use stcga_cli::exec::{diagnostics, orbit, orbit_states, signature};
use stcga_cli::field::parse_field;
use stcga_cli::output::to_json;
use stcga_cli::{run_scenario_file, CliError, Document, ModelKind, OutputFormat};

#[derive(Parser)]
#[command(name = "stcga", version, about = "Conformal geometric algebra for Euclidean space and Minkowski spacetime")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario file and write its result document.
    Run {
        scenario: PathBuf,
        /// Output directory.
        #[arg(long, default_value = ".")]
        out: PathBuf,
        /// Override the scenario's output format.
        #[arg(long, value_enum)]
        format: Option<OutputFormat>,
    },
    /// Print the metric signature of a model.
    Signature {
        #[arg(long, value_enum)]
        model: ModelKind,
    },
    /// Integrate a particle from rest at the origin through a constant field.
    Orbit {
        /// Field expression, e.g. "a*g1g0" or "0.5*g1g2 + a*g3g0".
        #[arg(long)]
        field: String,
        /// Value substituted for `a` in the field expression.
        #[arg(long)]
        a: Option<f64>,
        #[arg(long)]
        tau: f64,
        #[arg(long, default_value_t = 1000)]
        steps: usize,
        /// standard (dR/dtau = F R / 2) or commutator (dR/dtau = (R F - F R) / 2).
        #[arg(long, default_value = "standard", value_parser = parse_form)]
        form: RotorForm,
        /// csv prints the trajectory table; json prints a result document.
        #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
        format: OutputFormat,
    },
    /// Squared intervals near the two infinities for shrinking deltas.
    Diagnostics {
        /// Comma-separated, strictly decreasing positive values.
        #[arg(long, value_delimiter = ',', required = true)]
        deltas: Vec<f64>,
    },
}

fn parse_form(s: &str) -> Result<RotorForm, String> {
    match s {
        "standard" => Ok(RotorForm::Standard),
        "commutator" => Ok(RotorForm::Commutator),
        other => Err(format!("unknown rotor form `{other}` (expected standard or commutator)")),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("stcga: {err:#}");
            let code = err.downcast_ref::<CliError>().map_or(1, CliError::exit_code);
            ExitCode::from(code)
        }
    }
}

fn dispatch(command: Command) -> anyhow::Result<()> {
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match command {
        Command::Run { scenario, out: dir, format } => {
            let written = run_scenario_file(&scenario, &dir, format)?;
            eprintln!("wrote {}", written.display());
        }
        Command::Signature { model } => {
            let doc = Document::new(model, 0, vec![signature(model)]);
            out.write_all(to_json(&doc).as_bytes())?;
        }
        Command::Orbit { field, a, tau, steps, form, format } => {
            if steps == 0 {
                bail!("--steps must be positive");
            }
            let m = SpacetimeModel::new();
            let f = parse_field(&m, &field, a).map_err(CliError::Validation)?;
            let (u0, x0) = ([1.0, 0.0, 0.0, 0.0], Event::ORIGIN);
            match format {
                OutputFormat::Csv => {
                    let (states, _) = orbit_states(&m, &f, u0, x0, tau, steps, form).map_err(core_error("orbit"))?;
                    write_trajectory_csv(&mut out, &states).context("writing trajectory")?;
                }
                OutputFormat::Json => {
                    let result = orbit(&m, &f, &field, u0, x0, tau, steps, form, 1).map_err(core_error("orbit"))?;
                    out.write_all(to_json(&Document::new(ModelKind::Cga7, 0, vec![result])).as_bytes())?;
                }
            }
        }
        Command::Diagnostics { deltas } => {
            let result = diagnostics(&deltas, None).map_err(core_error("diagnostics"))?;
            out.write_all(to_json(&Document::new(ModelKind::Cga7, 0, vec![result])).as_bytes())?;
        }
    }
    out.flush()?;
    Ok(())
}

fn core_error(op: &'static str) -> impl Fn(stcga::Error) -> CliError {
    move |source| {
        if source.is_degeneracy() {
            CliError::Degeneracy { index: 0, op, source }
        } else {
            CliError::Validation(format!("{op}: {source}"))
        }
    }
}
