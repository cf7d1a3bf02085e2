//! Command-line front end. [`dispatch`] does all the work and returns the
//! exit code with the captured output, so tests can drive it in-process.
//!
//! Exit codes: 0 pass, 1 verification or equivalence failure, 2 parse,
//! validation or I/O error, 3 size cap exceeded.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};

use crate::circuit::IcmCircuit;
use crate::compile::{compile, Flavour};
use crate::error::Error;
use crate::gates::GateList;
use crate::oracle::{self, sample::sample_verify};
use crate::spec::Specification;
use crate::transform::{demote_rotated_measurement, dual_rewrite};
use crate::verify::{spec_equiv, verify};

#[derive(Parser, Debug)]
#[command(
    name = "icmspec",
    version,
    about = "Specify and verify ICM-form quantum circuits"
)]
struct Cli {
    /// Report style.
    #[arg(long, value_enum, global = true, default_value = "text")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Text,
    /// One `key: value` per line.
    Records,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum FlavourArg {
    RotatedInit,
    RotatedMeas,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate a circuit and print it in canonical form.
    Parse { circuit: PathBuf },
    /// Derive the specification of a reference circuit.
    DeriveSpec {
        circuit: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check a candidate circuit against a specification.
    Verify { circuit: PathBuf, spec: PathBuf },
    /// Compare two specifications.
    SpecDiff { a: PathBuf, b: PathBuf },
    /// Compare the channels of two small circuits by simulation.
    Equiv { a: PathBuf, b: PathBuf },
    /// Rewrite a circuit.
    #[command(group(ArgGroup::new("rewrite").required(true).args(["dual", "demote"])))]
    Transform {
        circuit: PathBuf,
        /// Swap rotated initialisations and rotated measurements.
        #[arg(long)]
        dual: bool,
        /// Move the rotated measurement of this ancilla onto a new one.
        #[arg(long, value_name = "QUBIT")]
        demote: Option<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Compile a Clifford+T gate list.
    Compile {
        gates: PathBuf,
        #[arg(long, value_enum)]
        flavour: FlavourArg,
        /// Emit bare T gadgets without correction logic.
        #[arg(long)]
        uncorrected: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Sample each specification row on a simulated candidate.
    SampleVerify {
        circuit: PathBuf,
        spec: PathBuf,
        #[arg(long, default_value_t = 100)]
        shots: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Exit code and captured streams of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

const TOL: f64 = 1e-9;

struct Failure(i32, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if matches!(e, Error::SizeCap { .. }) {
            3
        } else {
            2
        };
        Failure(code, e.to_string())
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure(2, format!("{}: {e}", path.display())))
}

fn load<T: std::str::FromStr>(path: &Path) -> Result<T, Failure>
where
    T::Err: std::fmt::Display,
{
    read(path)?
        .parse()
        .map_err(|e| Failure(2, format!("{}: {e}", path.display())))
}

fn emit(text: &str, output: &Option<PathBuf>, out: &mut String) -> Result<(), Failure> {
    match output {
        Some(p) => fs::write(p, text).map_err(|e| Failure(2, format!("{}: {e}", p.display()))),
        None => {
            out.push_str(text);
            Ok(())
        }
    }
}

fn records(pairs: &[(&str, String)]) -> String {
    pairs.iter().map(|(k, v)| format!("{k}: {v}\n")).collect()
}

fn destination(output: &Option<PathBuf>) -> String {
    output
        .as_ref()
        .map_or("-".into(), |p| p.display().to_string())
}

/// Parses `argv` (program name first) and runs the subcommand.
pub fn dispatch<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let mut stdout = String::new();
    match run(&cli, &mut stdout) {
        Ok(code) => Outcome {
            code,
            stdout,
            stderr: String::new(),
        },
        Err(Failure(code, msg)) => Outcome {
            code,
            stdout,
            stderr: format!("error: {msg}\n"),
        },
    }
}

fn run(cli: &Cli, out: &mut String) -> Result<i32, Failure> {
    let rec = cli.format == Format::Records;
    match &cli.command {
        Command::Parse { circuit } => {
            let c: IcmCircuit = load(circuit)?;
            let v = c.validate();
            if !v.is_empty() {
                return Err(Error::Invalid(v).into());
            }
            if rec {
                out.push_str(&records(&[
                    ("valid", "true".into()),
                    ("qubits", c.n().to_string()),
                    ("cnots", c.cnots.len().to_string()),
                    ("rules", c.rules.len().to_string()),
                ]));
            } else {
                out.push_str(&c.to_text());
            }
            Ok(0)
        }
        Command::DeriveSpec { circuit, output } => {
            let c: IcmCircuit = load(circuit)?;
            let spec = Specification::derive(&c)?;
            if rec {
                let text = spec.to_string();
                if let Some(p) = output {
                    emit(&text, &Some(p.clone()), out)?;
                }
                out.push_str(&records(&[
                    ("roster", spec.n().to_string()),
                    ("rows", spec.table().len().to_string()),
                    ("rules", spec.rules().len().to_string()),
                    ("output", destination(output)),
                ]));
            } else {
                emit(&spec.to_string(), output, out)?;
            }
            Ok(0)
        }
        Command::Verify { circuit, spec } => {
            let c: IcmCircuit = load(circuit)?;
            let s: Specification = load(spec)?;
            let report = verify(&c, &s);
            out.push_str(&if rec {
                records(&report.records())
            } else {
                report.to_string()
            });
            Ok(if report.passed() { 0 } else { 1 })
        }
        Command::SpecDiff { a, b } => {
            let (sa, sb): (Specification, Specification) = (load(a)?, load(b)?);
            let d = spec_equiv(&sa, &sb);
            if rec {
                out.push_str(&records(&[
                    ("roster_issues", d.roster_issues.len().to_string()),
                    ("init_differences", d.init_differences.len().to_string()),
                    ("tables_equal", d.tables_equal.to_string()),
                    (
                        "rule_divergence",
                        d.rule_divergence.map_or("none".into(), |i| i.to_string()),
                    ),
                    ("equivalent", d.equal().to_string()),
                ]));
            } else {
                out.push_str(&d.to_string());
            }
            Ok(if d.equal() { 0 } else { 1 })
        }
        Command::Equiv { a, b } => equiv(&load(a)?, &load(b)?, rec, out),
        Command::Transform {
            circuit,
            dual,
            demote,
            output,
        } => {
            let c: IcmCircuit = load(circuit)?;
            let t = match (dual, demote) {
                (true, _) => dual_rewrite(&c)?,
                (false, Some(q)) => demote_rotated_measurement(&c, q)?,
                (false, None) => unreachable!("clap requires one rewrite"),
            };
            if rec {
                if let Some(p) = output {
                    emit(&t.to_text(), &Some(p.clone()), out)?;
                }
                out.push_str(&records(&[
                    ("qubits", t.n().to_string()),
                    ("cnots", t.cnots.len().to_string()),
                    ("rules", t.rules.len().to_string()),
                    ("output", destination(output)),
                ]));
            } else {
                emit(&t.to_text(), output, out)?;
            }
            Ok(0)
        }
        Command::Compile {
            gates,
            flavour,
            uncorrected,
            output,
        } => {
            let g: GateList = load(gates)?;
            let flavour = match flavour {
                FlavourArg::RotatedInit => Flavour::RotatedInit,
                FlavourArg::RotatedMeas => Flavour::RotatedMeas,
            };
            let compiled = compile(&g, flavour, !uncorrected)?;
            let mut text = compiled.circuit.to_text();
            for line in compiled.frame_lines() {
                writeln!(text, "# {line}").expect("string write");
            }
            if rec {
                if let Some(p) = output {
                    emit(&text, &Some(p.clone()), out)?;
                }
                out.push_str(&records(&[
                    ("qubits", compiled.circuit.n().to_string()),
                    ("ancillae", compiled.circuit.ancillae().len().to_string()),
                    ("cnots", compiled.circuit.cnots.len().to_string()),
                    ("corrected", compiled.frame.is_some().to_string()),
                    ("output", destination(output)),
                ]));
            } else {
                emit(&text, output, out)?;
            }
            Ok(0)
        }
        Command::SampleVerify {
            circuit,
            spec,
            shots,
            seed,
        } => {
            let c: IcmCircuit = load(circuit)?;
            let s: Specification = load(spec)?;
            let report = sample_verify(&c, &s, *shots, *seed)?;
            out.push_str(&if rec {
                records(&report.records())
            } else {
                report.to_string()
            });
            Ok(if report.passed() { 0 } else { 1 })
        }
    }
}

/// Equal when every outcome history has the same Choi matrix; the averaged
/// channel alone cannot see a CNOT whose effect only shows in outcomes.
fn equiv(a: &IcmCircuit, b: &IcmCircuit, rec: bool, out: &mut String) -> Result<i32, Failure> {
    let ports = |c: &IcmCircuit| {
        c.io_qubits()
            .into_iter()
            .map(|q| c.id(q).to_string())
            .collect::<Vec<_>>()
    };
    let (pa, pb) = (ports(a), ports(b));
    let (sa, sb) = (oracle::simulate(a)?, oracle::simulate(b)?);
    let outs = |c: &IcmCircuit, s: &oracle::Simulation| {
        s.outputs
            .iter()
            .map(|&q| c.id(q).to_string())
            .collect::<Vec<_>>()
    };
    let same_ports = pa == pb && outs(a, &sa) == outs(b, &sb);
    let diff = same_ports.then(|| oracle::max_diff(&sa.choi(), &sb.choi()));
    let channel = diff.is_some_and(|d| d <= TOL);
    let instrument =
        same_ports && oracle::instruments_equal(&sa.instrument(a), &sb.instrument(b), TOL);
    let verdict = |ok: bool| if ok { "equal" } else { "different" };
    if rec {
        out.push_str(&records(&[
            ("ports_match", same_ports.to_string()),
            (
                "max_diff",
                diff.map_or("n/a".into(), |d| format!("{d:.3e}")),
            ),
            ("channel", verdict(channel).into()),
            ("instrument", verdict(instrument).into()),
            ("equivalent", instrument.to_string()),
        ]));
    } else {
        if !same_ports {
            writeln!(
                out,
                "ports differ: [{}] vs [{}]",
                pa.join(", "),
                pb.join(", ")
            )
            .expect("string write");
        } else {
            let d = diff.expect("ports match");
            writeln!(
                out,
                "averaged channel: {} (max Choi difference {d:.3e})",
                verdict(channel)
            )
            .expect("string write");
            writeln!(out, "per-outcome instrument: {}", verdict(instrument)).expect("string write");
        }
        writeln!(
            out,
            "{}",
            if instrument {
                "equivalent"
            } else {
                "not equivalent"
            }
        )
        .expect("string write");
    }
    Ok(if instrument { 0 } else { 1 })
}
