use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use rsp_core::sweep::{
    compare_channels, format_fixture, run_sweep, run_tomography, write_compare_csv, write_sweep_csv, Channel,
    StateSpec, SweepConfig, SweepSummary, TomographyMode, TwoQubitSettings,
};
use rsp_core::{Error, Result};

/// Remote state preparation over noisy entanglement: sweeps, channel
/// comparison and simulated tomography.
#[derive(Parser)]
#[command(name = "rsp", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fidelity sweep over one of the seven target families or explicit points.
    Sweep(SweepArgs),
    /// Dephasing against depolarizing fidelity on an (r, theta) grid.
    CompareChannels(CompareArgs),
    /// Simulated tomography of a named state.
    Tomography(TomographyArgs),
    /// Print the hermitized source matrix.
    Fixture,
}

#[derive(Args)]
struct SweepArgs {
    /// ideal, depolarizing or dephasing
    #[arg(long)]
    channel: Option<Channel>,
    #[arg(long)]
    p: Option<f64>,
    /// Named target family 1-7.
    #[arg(long)]
    set: Option<u8>,
    /// Explicit target "r,theta_deg,phi_deg"; repeatable.
    #[arg(long = "point", value_name = "R,THETA,PHI")]
    points: Vec<String>,
    /// Samples along the swept parameter.
    #[arg(long)]
    resolution: Option<usize>,
    /// exact or monte-carlo
    #[arg(long)]
    mode: Option<String>,
    /// Counts per tomography setting in monte-carlo mode.
    #[arg(long)]
    n_counts: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    /// CSV destination; standard output if omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// TOML file with the same keys; flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct CompareArgs {
    /// Comma-separated noise parameters.
    #[arg(long, value_delimiter = ',', default_value = "0,0.25,0.5,0.75,1")]
    p: Vec<f64>,
    #[arg(long, default_value_t = 21)]
    resolution: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct TomographyArgs {
    /// dephased:P, depolarized:P, bell, fixture or bloch:R,THETA_DEG,PHI_DEG
    #[arg(long, default_value = "dephased:0.9")]
    state: String,
    /// sampled, exact (expected counts) or direct (fixture only)
    #[arg(long, default_value = "sampled")]
    mode: String,
    #[arg(long, default_value_t = 10_000.0)]
    n_counts: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Use the 16-setting two-photon set instead of all 36.
    #[arg(long)]
    minimal: bool,
    /// JSON destination; standard output if omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).map_err(|e| {
            Error::Io(io::Error::new(e.kind(), format!("{}: {e}", p.display())))
        })?)),
        None => Box::new(io::stdout().lock()),
    })
}

fn parse_point(s: &str) -> Result<[f64; 3]> {
    let v: Vec<f64> = s
        .split(',')
        .map(|x| x.trim().parse::<f64>().map_err(|_| Error::Parse(format!("bad point '{s}'"))))
        .collect::<Result<_>>()?;
    <[f64; 3]>::try_from(v).map_err(|_| Error::Parse(format!("point '{s}' needs r,theta,phi")))
}

fn sweep(args: SweepArgs) -> Result<()> {
    let file = match &args.config {
        Some(path) => SweepConfig::from_toml(&std::fs::read_to_string(path)?)?,
        None => SweepConfig::default(),
    };
    let points = if args.points.is_empty() {
        None
    } else {
        Some(args.points.iter().map(|s| parse_point(s)).collect::<Result<Vec<_>>>()?)
    };
    let flags = SweepConfig {
        channel: args.channel,
        p: args.p,
        set: args.set,
        points,
        resolution: args.resolution,
        mode: args.mode,
        n_counts: args.n_counts,
        seed: args.seed,
    };
    let spec = file.overridden_by(flags).into_spec()?;
    let rows = run_sweep(&spec)?;
    let mut out = output(args.out.as_deref())?;
    write_sweep_csv(&rows, &mut out)?;
    out.flush()?;
    let summary = SweepSummary::of(&rows);
    if args.out.is_some() {
        println!("{summary}");
    } else {
        eprintln!("{summary}");
    }
    Ok(())
}

fn compare(args: CompareArgs) -> Result<()> {
    if args.resolution == 0 {
        return Err(Error::Domain("resolution must be at least 1".into()));
    }
    let rows = compare_channels(&args.p, args.resolution)?;
    let mut out = output(args.out.as_deref())?;
    write_compare_csv(&rows, &mut out)?;
    out.flush()?;
    let violations = rows.iter().filter(|r| r.is_violation()).count();
    let min = rows.iter().map(|r| r.difference).fold(f64::INFINITY, f64::min);
    let msg = format!("rows {}  violations {violations}  min difference {min:.3e}", rows.len());
    if args.out.is_some() {
        println!("{msg}");
    } else {
        eprintln!("{msg}");
    }
    if violations > 0 {
        return Err(Error::Numeric(format!("{violations} rows with dephasing below depolarizing")));
    }
    Ok(())
}

fn tomography(args: TomographyArgs) -> Result<()> {
    let spec: StateSpec = args.state.parse()?;
    if !(args.n_counts > 0.0 && args.n_counts.is_finite()) {
        return Err(Error::Domain(format!("n-counts {} must be positive", args.n_counts)));
    }
    let mode = match args.mode.as_str() {
        "sampled" | "monte-carlo" => TomographyMode::Sampled { n_counts: args.n_counts, seed: args.seed },
        "exact" => TomographyMode::ExactProbabilities { n_counts: args.n_counts },
        "direct" => TomographyMode::Direct,
        other => return Err(Error::Parse(format!("unknown mode '{other}' (sampled, exact, direct)"))),
    };
    let settings = if args.minimal { TwoQubitSettings::Minimal } else { TwoQubitSettings::Full };
    let report = run_tomography(&spec, mode, settings)?;
    let mut out = output(args.out.as_deref())?;
    serde_json::to_writer_pretty(&mut out, &report).map_err(|e| Error::Io(e.into()))?;
    writeln!(out)?;
    out.flush()?;
    if args.out.is_some() {
        println!("fidelity {:.6}", report.fidelity);
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let result = match cli.command {
        Command::Sweep(a) => sweep(a),
        Command::CompareChannels(a) => compare(a),
        Command::Tomography(a) => tomography(a),
        Command::Fixture => {
            print!("{}", format_fixture());
            Ok(())
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
