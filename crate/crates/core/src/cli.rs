//! Command-line front end of the `qdd` binary.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::bench::{self, Family, Knobs};
use crate::circuit::{parse_qasm, Circuit};
use crate::engine::{Engine, Mode};
use crate::error::{Error, Result};
use crate::sim::{self, SimKind};

#[derive(Parser, Debug)]
#[command(name = "qdd", version, about = "Decision-diagram quantum circuit simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Simulate one circuit.
    Simulate(SimulateArgs),
    /// Simulate one circuit in both modes and check that they agree.
    Compare(CompareArgs),
    /// Sweep a benchmark family over several sizes in both modes.
    Bench(BenchArgs),
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false, id = "source")]
struct Source {
    /// OpenQASM 2.0 input file.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Generated benchmark family (requires --qubits).
    #[arg(long, value_enum, requires = "qubits")]
    benchmark: Option<Family>,
}

#[derive(Args, Debug)]
struct FamilyKnobs {
    /// Total number of qubits of the generated benchmark.
    #[arg(long)]
    qubits: Option<usize>,
    /// Bernstein-Vazirani secret, most significant bit first.
    #[arg(long)]
    secret: Option<String>,
    /// Phase-estimation numerator k (eigenphase k / 2^p).
    #[arg(long)]
    phase: Option<u64>,
    /// Grover marked element, most significant bit first.
    #[arg(long)]
    marked: Option<String>,
    /// Emit multi-controlled Z gates directly in Grover circuits.
    #[arg(long)]
    native_mcz: bool,
}

impl FamilyKnobs {
    fn knobs(&self) -> Result<Knobs> {
        Ok(Knobs {
            secret: self.secret.as_deref().map(bench::parse_bits).transpose()?,
            phase: self.phase,
            marked: self.marked.as_deref().map(bench::parse_bits).transpose()?,
            native_mcz: self.native_mcz,
        })
    }
}

#[derive(Args, Debug)]
struct SimulateArgs {
    #[command(flatten)]
    source: Source,
    #[command(flatten)]
    family: FamilyKnobs,
    #[arg(long, value_enum, default_value = "statevector")]
    kind: SimKind,
    #[arg(long, default_value = "new", value_parser = parse_mode)]
    mode: Mode,
    /// Write the run statistics as JSON.
    #[arg(long)]
    stats_json: Option<PathBuf>,
    /// Write the final diagram in Graphviz DOT format.
    #[arg(long)]
    dot: Option<PathBuf>,
    /// Comma-separated basis indices whose amplitudes are printed.
    #[arg(long, value_delimiter = ',')]
    amplitudes: Vec<u64>,
    /// Reserved; simulation is deterministic.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args, Debug)]
struct CompareArgs {
    #[command(flatten)]
    source: Source,
    #[command(flatten)]
    family: FamilyKnobs,
    #[arg(long, value_enum, default_value = "statevector")]
    kind: SimKind,
    /// Largest accepted deviation between the two modes.
    #[arg(long, default_value_t = 1e-10)]
    tolerance: f64,
    #[arg(long, value_delimiter = ',')]
    amplitudes: Vec<u64>,
    /// Write the JSON report here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct BenchArgs {
    #[arg(long, value_enum)]
    benchmark: Family,
    /// Comma-separated list of total qubit counts.
    #[arg(long, value_delimiter = ',', required = true)]
    qubits: Vec<usize>,
    #[arg(long)]
    secret: Option<String>,
    #[arg(long)]
    phase: Option<u64>,
    #[arg(long)]
    marked: Option<String>,
    #[arg(long)]
    native_mcz: bool,
    #[arg(long, value_enum, default_value = "statevector")]
    kind: SimKind,
    #[arg(long)]
    csv: Option<PathBuf>,
    #[arg(long)]
    json: Option<PathBuf>,
}

fn parse_mode(s: &str) -> std::result::Result<Mode, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn load(source: &Source, family: &FamilyKnobs) -> Result<Circuit> {
    if let Some(path) = &source.input {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        let mut circuit = parse_qasm(&text)?;
        if let Some(stem) = path.file_stem() {
            circuit.name = stem.to_string_lossy().into_owned();
        }
        return Ok(circuit);
    }
    let family_kind = source.benchmark.expect("clap enforces a source");
    let qubits = family.qubits.expect("clap enforces --qubits");
    bench::generate(family_kind, qubits, &family.knobs()?)
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn simulate(args: SimulateArgs, out: &mut dyn Write) -> Result<()> {
    let circuit = load(&args.source, &args.family)?;
    let mut engine = Engine::new(args.mode);
    let (report, dot) = match args.kind {
        SimKind::Statevector => {
            let (state, mut report) = sim::simulate_statevector(&mut engine, &circuit)?;
            report.sample(&engine, state, &args.amplitudes)?;
            let dot = args.dot.as_ref().map(|_| sim::export_dot(&engine, state));
            (report, dot)
        }
        SimKind::Unitary => {
            if !args.amplitudes.is_empty() {
                return Err(Error::Argument("--amplitudes applies to statevector runs".into()));
            }
            let (u, report) = sim::simulate_unitary(&mut engine, &circuit)?;
            let dot = args.dot.as_ref().map(|_| sim::export_dot(&engine, u));
            (report, dot)
        }
    };
    writeln!(
        out,
        "{} ({} qubits, {} gates, {} mode): {} matrix nodes, {} vector nodes, {} gc runs, {:.3}s",
        report.benchmark,
        report.n,
        report.gates,
        report.mode,
        report.matrix_nodes_created,
        report.vector_nodes_created,
        report.gc_runs,
        report.wall_time_seconds
    )?;
    for a in &report.amplitudes {
        writeln!(out, "amplitude[{}] = {} {:+}i", a.index, a.re, a.im)?;
    }
    if let Some(path) = &args.stats_json {
        let json = serde_json::to_string_pretty(&report.to_json()).map_err(|e| Error::Serialization(e.to_string()))?;
        write_file(path, &json)?;
    }
    if let (Some(path), Some(dot)) = (&args.dot, dot) {
        write_file(path, &dot)?;
    }
    Ok(())
}

fn compare(args: CompareArgs, out: &mut dyn Write) -> Result<bool> {
    let circuit = load(&args.source, &args.family)?;
    let cmp = sim::compare(&circuit, args.kind, &args.amplitudes)?;
    let mut json = cmp.to_json();
    let agree = cmp.max_deviation <= args.tolerance;
    json["tolerance"] = args.tolerance.into();
    json["agree"] = agree.into();
    let text = serde_json::to_string_pretty(&json).map_err(|e| Error::Serialization(e.to_string()))?;
    match &args.output {
        Some(path) => write_file(path, &text)?,
        None => writeln!(out, "{text}")?,
    }
    Ok(agree)
}

fn bench_cmd(args: BenchArgs, out: &mut dyn Write) -> Result<()> {
    let knobs = Knobs {
        secret: args.secret.as_deref().map(bench::parse_bits).transpose()?,
        phase: args.phase,
        marked: args.marked.as_deref().map(bench::parse_bits).transpose()?,
        native_mcz: args.native_mcz,
    };
    let rows = sim::bench_sweep(args.benchmark, &args.qubits, &knobs, args.kind)?;
    let csv = sim::rows_to_csv(&rows)?;
    if let Some(path) = &args.csv {
        write_file(path, &csv)?;
    }
    if let Some(path) = &args.json {
        let json = serde_json::to_string_pretty(&rows).map_err(|e| Error::Serialization(e.to_string()))?;
        write_file(path, &json)?;
    }
    if args.csv.is_none() && args.json.is_none() {
        write!(out, "{csv}")?;
    }
    Ok(())
}

/// Runs the CLI and returns the process exit code: 0 on success, 1 on an
/// engine error (or a failed comparison), 2 on a usage error.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = write!(err, "{}", e.render());
            if code == 0 {
                let _ = write!(out, "{}", e.render());
            }
            return if code == 0 { 0 } else { 2 };
        }
    };
    let result = match cli.command {
        Command::Simulate(args) => simulate(args, out).map(|_| true),
        Command::Compare(args) => compare(args, out),
        Command::Bench(args) => bench_cmd(args, out).map(|_| true),
    };
    match result {
        Ok(true) => 0,
        Ok(false) => {
            let _ = writeln!(err, "error: modes disagree beyond the tolerance");
            1
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if matches!(e, Error::Argument(_)) {
                2
            } else {
                1
            }
        }
    }
}
