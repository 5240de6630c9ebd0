//! `conic`: configuration-driven runner for the low-energy resolvent
//! studies.
//!
//! Every subcommand reads one TOML configuration (all keys optional, with
//! `--set key.path=value` overrides), runs one study, prints a short
//! summary, and writes `<command>.report.json` into the output directory.
//! Report bodies are byte-deterministic for a fixed configuration; wall
//! clock metadata goes to a separate `<command>.report_meta.json` sidecar.
//! Tabular commands additionally write `<command>.csv`.
//!
//! Exit codes: `0` success, `2` the run completed but verification
//! failed (`pass = false`), `1` configuration or runtime error.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::Result;
use clap::{Parser, Subcommand};

use conic_cli::commands::{self, CommandOutput};
use conic_cli::config::RunConfig;
use conic_cli::report::Report;

#[derive(Parser)]
#[command(
    name = "conic",
    version,
    about = "Low-energy resolvent studies on asymptotically conic spaces",
    long_about = "Low-energy resolvent studies on asymptotically conic spaces.\n\n\
        Each subcommand reads one TOML configuration (defaults apply when no file\n\
        is given), runs one study, and writes <command>.report.json (always),\n\
        <command>.csv (tabular commands, when the csv format is enabled), and a\n\
        <command>.report_meta.json timing sidecar into the output directory.\n\
        Report bodies are byte-deterministic for a fixed configuration.\n\n\
        Exit codes: 0 = pass, 2 = run completed but verification failed,\n\
        1 = configuration or runtime error."
)]
struct Cli {
    /// TOML run configuration (defaults are used when omitted)
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    /// Override one configuration key, e.g. --set weight.beta=2 (repeatable)
    #[arg(long = "set", global = true, value_name = "KEY=VALUE")]
    set: Vec<String>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Certify that the commutator multiplier argument stays in (0, pi)
    ///
    /// Verifies the branch window over the whole (tau, nu) quarter-plane
    /// (sampled lattice plus tail-decay certificate) for the multiplier
    /// parameters of the configured weight family, and cross-checks the
    /// commutator sign on the same lattice. For the incoming branch the
    /// mirrored window (-pi, 0) is certified.
    PositivityCheck,
    /// Search multiplier parameters for the configured weight family
    ///
    /// Runs the automatic regulator-ladder search and certifies the
    /// winning parameters on the configured verification grid.
    ChooseParams,
    /// Randomized uniform-boundedness sweep in the variable-order norms
    ///
    /// Applies the resolvent to seeded random mode bumps across the
    /// configured frequency range and reports the target/source norm
    /// ratio statistics. CSV columns: sigma, seed, source_norm,
    /// target_norm, ratio.
    ResolventSweep,
    /// The same sweep in constant-weight L^2 norms
    ///
    /// Ratio of <r>^-(1+beta) L^2 output norm to <r>^(1+beta) L^2 input
    /// norm. CSV columns: sigma, seed, source_norm, target_norm, ratio.
    ConstantWeightSweep,
    /// Locate a zero-energy threshold coupling
    ///
    /// Finds the coupling strength in the configured bracket at which
    /// the zero-energy regular solution of the configured potential
    /// family loses its growing component in mode j.
    ResonanceFind,
    /// Low-energy structure at critical coupling
    ///
    /// Tunes s- and p-wave square wells to zero-energy criticality and
    /// measures the resonant blow-up exponents, the singular pairing
    /// coefficient, and the second-resolvent identity. CSV columns:
    /// sigma, pairing_s_re, pairing_s_im, pairing_p_re, pairing_p_im,
    /// growth_s, growth_p, regular_norm.
    BlockStructure,
    /// Flat-space contour integral of the spectral jump
    ///
    /// Evaluates the regularized integral at the configured epsilon and
    /// compares with the closed form (limit 2 pi^2 i as epsilon -> 0).
    EuclidIntegral,
    /// Fast end-to-end functionality check (< 60 s)
    ///
    /// Runs a fixed battery of quick checks over every module; ignores
    /// the study sections of the configuration (output settings apply).
    Selftest,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::PositivityCheck => "positivity-check",
            Command::ChooseParams => "choose-params",
            Command::ResolventSweep => "resolvent-sweep",
            Command::ConstantWeightSweep => "constant-weight-sweep",
            Command::ResonanceFind => "resonance-find",
            Command::BlockStructure => "block-structure",
            Command::EuclidIntegral => "euclid-integral",
            Command::Selftest => "selftest",
        }
    }

    /// Whether the command uses the sweep default grid (`r_max = 1e3`,
    /// keeping the fastest outgoing phase below the log grid's Nyquist
    /// rate) rather than the wide default (`r_max = 1e4`).
    fn sweep_grid(&self) -> bool {
        matches!(self, Command::ResolventSweep | Command::ConstantWeightSweep)
    }
}

fn run(cli: &Cli) -> Result<bool> {
    let cfg = RunConfig::load(cli.config.as_deref(), &cli.set)?;
    let started = Instant::now();
    let out: CommandOutput = match cli.command {
        Command::PositivityCheck => commands::run_positivity_check(&cfg)?,
        Command::ChooseParams => commands::run_choose_params(&cfg)?,
        Command::ResolventSweep => commands::run_resolvent_sweep(&cfg)?,
        Command::ConstantWeightSweep => commands::run_constant_weight_sweep(&cfg)?,
        Command::ResonanceFind => commands::run_resonance_find(&cfg)?,
        Command::BlockStructure => commands::run_block_structure(&cfg)?,
        Command::EuclidIntegral => commands::run_euclid_integral(&cfg)?,
        Command::Selftest => commands::run_selftest(&cfg)?,
    };

    let name = cli.command.name();
    let report = Report {
        command: name.to_string(),
        config: cfg.as_json(cli.command.sweep_grid()),
        results: out.results,
        pass: out.pass,
        diagnostics: out.diagnostics.clone(),
        csv: out.csv,
    };
    let dir = PathBuf::from(&cfg.output.directory);
    let written = report.write(&dir, &cfg.output.formats, started.elapsed())?;

    for line in &out.summary {
        println!("{line}");
    }
    const MAX_NOTES: usize = 10;
    for note in out.diagnostics.iter().take(MAX_NOTES) {
        println!("note: {note}");
    }
    if out.diagnostics.len() > MAX_NOTES {
        println!(
            "note: ... and {} more (see the report diagnostics)",
            out.diagnostics.len() - MAX_NOTES
        );
    }
    for path in &written {
        println!("wrote {}", path.display());
    }
    println!("{name}: {}", if out.pass { "PASS" } else { "FAIL" });
    Ok(out.pass)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // --help / --version are successes; bad arguments are config
            // errors (exit 1), never the verification-failure code 2.
            use clap::error::ErrorKind;
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0u8,
                _ => 1u8,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}
