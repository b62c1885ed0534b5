//! Command-line front end.
//!
//! Exit codes: 0 on success, 2 when the input is invalid, 1 when a
//! computation fails.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use tunneltime::scenarios::{
    builtin_names, builtin_scenario, emit_csv, emit_hartman_csv, emit_pulse_csv, emit_pulse_summary,
    emit_virtuality, fmt_num, load_scenario, render_table1, run_scenario, table1_report, units, Analysis,
    ScenarioConfig,
};
use tunneltime::{Error, Result};

#[derive(Parser)]
#[command(
    name = "tunneltime",
    version,
    about = "Barrier scattering, phase times and pulse delays"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Transmission and reflection spectrum as CSV.
    Scatter(ScenarioArgs),
    /// Spectrum with unwrapped phase and phase time; summary on stderr.
    Phasetime(ScenarioArgs),
    /// Phase time against barrier length as CSV.
    Hartman(ScenarioArgs),
    /// Transmitted and reflected pulse envelopes as CSV; arrival summary on stderr.
    Pulse(ScenarioArgs),
    /// Virtuality predicates of every layer as key = value blocks.
    Check(ScenarioArgs),
    /// Measured traversal times against 1/ν, with simulated values.
    Table1 {
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Names of the bundled scenarios.
    List,
    /// A scenario rewritten in SI units.
    Dump(ScenarioArgs),
}

#[derive(Args)]
struct ScenarioArgs {
    /// Scenario file (TOML).
    #[arg(long, conflicts_with = "builtin", required_unless_present = "builtin")]
    config: Option<PathBuf>,
    /// Name of a bundled scenario instead of a file.
    #[arg(long)]
    builtin: Option<String>,
    /// Output file; stdout when omitted. Written atomically.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Grid start with unit, e.g. "8 GHz".
    #[arg(long, requires_all = ["grid_stop", "grid_points"])]
    grid_start: Option<String>,
    #[arg(long, requires_all = ["grid_start", "grid_points"])]
    grid_stop: Option<String>,
    #[arg(long, requires_all = ["grid_start", "grid_stop"])]
    grid_points: Option<usize>,
}

impl ScenarioArgs {
    fn load(&self, analysis: Option<Analysis>) -> Result<ScenarioConfig> {
        let mut cfg = match (&self.config, &self.builtin) {
            (Some(path), _) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
                load_scenario(&text)?
            }
            (None, Some(name)) => builtin_scenario(name)?,
            (None, None) => return Err(Error::Config("--config or --builtin is required".into())),
        };
        if let (Some(a), Some(b), Some(n)) = (&self.grid_start, &self.grid_stop, self.grid_points) {
            let dim = cfg.drive_dimension();
            let start = units::parse_quantity("--grid-start", a, dim)?;
            let stop = units::parse_quantity("--grid-stop", b, dim)?;
            cfg = cfg.with_grid(start, stop, n)?;
        }
        if let Some(a) = analysis {
            match a {
                Analysis::Pulse if cfg.pulse.is_none() => {
                    return Err(Error::Config(format!(
                        "scenario `{}` has no [pulse] table",
                        cfg.name
                    )))
                }
                Analysis::Hartman if cfg.hartman.is_none() => {
                    return Err(Error::Config(format!(
                        "scenario `{}` has no [hartman] table",
                        cfg.name
                    )))
                }
                Analysis::Phasetime | Analysis::Hartman if cfg.grid.points < 3 => {
                    return Err(Error::Config(
                        "phase times need a grid of at least 3 points".into(),
                    ))
                }
                _ => {}
            }
            cfg.analyses = vec![a];
        }
        Ok(cfg)
    }
}

fn write_output(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
        }
        Some(path) => {
            let dir = match path.parent() {
                Some(d) if !d.as_os_str().is_empty() => d,
                _ => Path::new("."),
            };
            let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
            tmp.write_all(text.as_bytes())?;
            tmp.as_file().sync_all()?;
            tmp.persist(path)
                .map_err(|e| Error::Io(format!("{}: {}", path.display(), e.error)))?;
        }
    }
    Ok(())
}

fn execute(command: Command) -> Result<()> {
    match command {
        Command::Scatter(args) => {
            let report = run_scenario(&args.load(Some(Analysis::Scatter))?)?;
            write_output(args.output.as_deref(), &emit_csv(&report))
        }
        Command::Phasetime(args) => {
            let report = run_scenario(&args.load(Some(Analysis::Phasetime))?)?;
            if let (Some(x), Some(tau), Some(a)) =
                (report.probe_drive(), report.probe_tau(), report.probe_factor())
            {
                eprintln!("probe_drive_si = {}", fmt_num(x));
                eprintln!("tau_s = {}", fmt_num(tau));
                eprintln!("factor_a = {}", fmt_num(a));
            }
            write_output(args.output.as_deref(), &emit_csv(&report))
        }
        Command::Hartman(args) => {
            let report = run_scenario(&args.load(Some(Analysis::Hartman))?)?;
            let scan = report.hartman.expect("hartman analysis requested");
            eprintln!("tau_saturated_s = {}", fmt_num(scan.tau_saturated));
            eprintln!("saturated_spread = {}", fmt_num(scan.saturated_spread()));
            write_output(args.output.as_deref(), &emit_hartman_csv(&scan))
        }
        Command::Pulse(args) => {
            let report = run_scenario(&args.load(Some(Analysis::Pulse))?)?;
            let run = report.pulse.expect("pulse analysis requested");
            eprint!("{}", emit_pulse_summary(&run));
            write_output(args.output.as_deref(), &emit_pulse_csv(&run))
        }
        Command::Check(args) => {
            let report = run_scenario(&args.load(Some(Analysis::Virtuality))?)?;
            write_output(args.output.as_deref(), &emit_virtuality(&report))
        }
        Command::Table1 { output } => write_output(output.as_deref(), &render_table1(&table1_report())),
        Command::List => {
            let names: Vec<&str> = builtin_names().collect();
            write_output(None, &(names.join("\n") + "\n"))
        }
        Command::Dump(args) => write_output(args.output.as_deref(), &args.load(None)?.to_toml()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_validation() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
