//! Command-line front end: `run` executes suites and emits a JSON report,
//! `trace` writes a flow trajectory as CSV.
//!
//! Exit codes: 0 when everything passes, 2 for usage, config or I/O errors,
//! 3 when a check fails or a numerical error occurs.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::flows::{
    trace_iter, ChordalBackend, ChordalDriver, ChordalFlowSpec, LoewnerFlow, RadialBackend, RadialDriver,
    RadialFlowSpec,
};
use crate::json::format_f64;
use crate::ode::OdeConfig;
use crate::suite::{run, SuiteConfig, SuiteName, Tolerances};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_FAIL: i32 = 3;

pub const TRACE_HEADER: &str = "t,re,im";

#[derive(Debug, Parser)]
#[command(
    name = "loewner-verify",
    version,
    about = "Seeded numerical checks for Loewner flows and their kernels"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run verification suites and write a JSON report.
    Run(RunArgs),
    /// Sample a flow trajectory and write it as CSV.
    Trace(TraceArgs),
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// Suite to run; `all` runs every suite in alphabetical order.
    #[arg(long)]
    pub suite: Option<SuiteName>,
    /// Seed for every sample set
    #[arg(long)]
    pub seed: Option<u64>,
    /// JSON config file; flags given on the command line take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Report path; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Gauss-Legendre nodes per driver segment.
    #[arg(long)]
    pub nodes: Option<usize>,
    /// Tolerance applied to every identity.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Flow start time
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<f64>,
    /// Flow end time
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FlowKind {
    /// Radial flow driven by the point mass at -1.
    Koebe,
    /// Chordal vertical slit flow.
    Slit,
}

#[derive(Debug, Args)]
pub struct TraceArgs {
    #[arg(long, value_enum)]
    pub flow: FlowKind,
    /// Flow start time
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub a: f64,
    /// Flow end time
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub b: f64,
    /// Start point as `re,im` (or just `re`).
    #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
    pub z: Complex64,
    /// Number of equally spaced samples, endpoints included.
    #[arg(long, default_value_t = 11)]
    pub n: usize,
    /// Integrate with RK4 at this step instead of the closed form.
    #[arg(long)]
    pub ode_step: Option<f64>,
    /// CSV path; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn parse_complex(s: &str) -> std::result::Result<Complex64, String> {
    let mut parts = s.split(',').map(|p| p.trim().parse::<f64>());
    let bad = || format!("expected `re,im`, got {s:?}");
    let re = parts.next().ok_or_else(bad)?.map_err(|_| bad())?;
    let im = match parts.next() {
        Some(p) => p.map_err(|_| bad())?,
        None => 0.0,
    };
    if parts.next().is_some() {
        return Err(bad());
    }
    Ok(Complex64::new(re, im))
}

/// Config file (or defaults) overridden by flags, then validated.
pub fn resolve_config(args: &RunArgs) -> Result<SuiteConfig> {
    let mut cfg = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))?;
            serde_json::from_str(&text).map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))?
        }
        None => SuiteConfig::default(),
    };
    if let Some(s) = args.suite {
        cfg.suite = s;
    }
    if let Some(s) = args.seed {
        cfg.seed = s;
    }
    if let Some(n) = args.nodes {
        cfg.nodes = n;
    }
    if let Some(t) = args.tol {
        cfg.tol = Tolerances::uniform(t);
    }
    if let Some(a) = args.a {
        cfg.interval[0] = a;
    }
    if let Some(b) = args.b {
        cfg.interval[1] = b;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn open_out(path: Option<&Path>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

pub fn run_command(args: &RunArgs) -> i32 {
    let cfg = match resolve_config(args) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("loewner-verify: {e}");
            return EXIT_CONFIG;
        }
    };
    let report = match run(&cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("loewner-verify: {e}");
            return EXIT_CONFIG;
        }
    };
    let written = open_out(args.out.as_deref()).and_then(|mut w| {
        report.write_json(&mut w)?;
        writeln!(w)?;
        w.flush()
    });
    if let Err(e) = written {
        eprintln!("loewner-verify: cannot write report: {e}");
        return EXIT_CONFIG;
    }
    for entry in report.entries.iter().filter(|e| !e.pass()) {
        eprintln!("loewner-verify: FAIL in {}", entry.suite());
    }
    if report.pass {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

/// Writes `t,re,im` rows. On a numerical failure the rows written so far are
/// kept, an `error,<message>` row is appended and the error is returned.
pub fn write_trace<W: Write, F: LoewnerFlow + ?Sized>(
    mut w: W,
    flow: &F,
    z: Complex64,
    n: usize,
) -> io::Result<Result<()>> {
    let rows = match trace_iter(flow, z, n) {
        Ok(rows) => rows,
        Err(e) => return Ok(Err(e)),
    };
    writeln!(w, "{TRACE_HEADER}")?;
    for row in rows {
        match row {
            Ok((t, b)) => writeln!(w, "{},{},{}", format_f64(t), format_f64(b.re), format_f64(b.im))?,
            Err(e) => {
                writeln!(w, "error,{}", e.to_string().replace(',', ";"))?;
                w.flush()?;
                return Ok(Err(e));
            }
        }
    }
    w.flush()?;
    Ok(Ok(()))
}

fn build_flow(args: &TraceArgs) -> Result<Box<dyn LoewnerFlow>> {
    let ode = args.ode_step.map(OdeConfig::new).transpose()?;
    Ok(match (args.flow, ode) {
        (FlowKind::Koebe, None) => Box::new(RadialFlowSpec::koebe(args.a, args.b)?),
        (FlowKind::Koebe, Some(ode)) => Box::new(RadialFlowSpec::new(
            RadialDriver::koebe(),
            args.a,
            args.b,
            RadialBackend::RungeKutta(ode),
        )?),
        (FlowKind::Slit, None) => Box::new(ChordalFlowSpec::basic_slit(args.a, args.b)?),
        (FlowKind::Slit, Some(ode)) => Box::new(ChordalFlowSpec::new(
            ChordalDriver::BasicSlit,
            args.a,
            args.b,
            ChordalBackend::RungeKutta(ode),
        )?),
    })
}

pub fn trace_command(args: &TraceArgs) -> i32 {
    let flow = match build_flow(args) {
        Ok(f) => f,
        Err(e) => {
            eprintln!("loewner-verify: {e}");
            return EXIT_CONFIG;
        }
    };
    if let Err(e) = flow.domain().check(args.z) {
        eprintln!("loewner-verify: {e}");
        return EXIT_CONFIG;
    }
    if args.n < 2 {
        eprintln!("loewner-verify: --n must be at least 2");
        return EXIT_CONFIG;
    }
    let result = open_out(args.out.as_deref()).and_then(|w| write_trace(w, flow.as_ref(), args.z, args.n));
    match result {
        Ok(Ok(())) => EXIT_PASS,
        Ok(Err(e)) => {
            eprintln!("loewner-verify: {e}");
            EXIT_FAIL
        }
        Err(e) => {
            eprintln!("loewner-verify: cannot write trace: {e}");
            EXIT_CONFIG
        }
    }
}

/// Parses `args` (program name first) and runs the command; returns the
/// process exit code.
pub fn main<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_CONFIG } else { EXIT_PASS };
        }
    };
    match &cli.command {
        Command::Run(a) => run_command(a),
        Command::Trace(a) => trace_command(a),
    }
}
