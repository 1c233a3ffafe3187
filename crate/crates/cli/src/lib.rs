//! The `entlab` command line.
//!
//! Exit codes: 0 success, 2 usage error, 3 input or output file error,
//! 4 a checked invariant failed (always a bug, never a valid result).

mod args;
mod output;

use std::ffi::OsString;
use std::io::Write;

use clap::error::ErrorKind;
use clap::Parser;
use entlab::channels::{contraction_channel, depolarizing, unitary_channel};
use entlab::experiments::{
    bound_check, choi_bound, diagram_scan, example1_curves, example1_pair, example2_run,
    find_ordering_inversion, isoentangled_image_check, Ensemble, Family, SearchMode,
};
use entlab::io::{load_channel, ChannelRecord, StateRecord};
use entlab::linalg::pauli;
use entlab::measures::concurrence;
use entlab::{Error, PureState, QuantumChannel};
use serde_json::{json, Value};

pub use args::{Cli, Command, Format};
pub use output::{CSV_HEADER, SCHEMA};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INPUT: i32 = 3;
pub const EXIT_INVARIANT: i32 = 4;

#[derive(Debug)]
enum Failure {
    Usage(String),
    Input(String),
    Invariant(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Input(_) => EXIT_INPUT,
            Failure::Invariant(_) => EXIT_INVARIANT,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Input(m) | Failure::Invariant(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::ParamOutOfRange { .. } | Error::DimensionUnsupported(_) => Failure::Usage(e.to_string()),
            Error::Io(_) | Error::Format(_) | Error::NotTracePreserving { .. } => {
                Failure::Input(e.to_string())
            }
            _ => Failure::Invariant(e.to_string()),
        }
    }
}

/// What a command produced: bytes to emit and whether an invariant failed.
struct Outcome {
    data: Vec<u8>,
    violation: Option<String>,
}

impl Outcome {
    fn ok(data: Vec<u8>) -> Self {
        Self {
            data,
            violation: None,
        }
    }
}

/// Runs the CLI with process stdio.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(argv, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}

/// Runs the CLI writing data to `out` and diagnostics to `err`.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };

    let result = execute(&cli).and_then(|outcome| {
        emit(&cli, out, &outcome.data)?;
        Ok(outcome.violation)
    });
    match result {
        Ok(None) => EXIT_OK,
        Ok(Some(violation)) => {
            let _ = writeln!(err, "entlab: invariant violated: {violation}");
            EXIT_INVARIANT
        }
        Err(f) => {
            let _ = writeln!(err, "entlab: {}", f.message());
            f.code()
        }
    }
}

fn emit(cli: &Cli, out: &mut dyn Write, data: &[u8]) -> Result<(), Failure> {
    match &cli.out {
        Some(path) => std::fs::write(path, data)
            .map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display()))),
        None => out
            .write_all(data)
            .map_err(|e| Failure::Input(format!("cannot write output: {e}"))),
    }
}

fn format_for(cli: &Cli, default: Format, csv_ok: bool) -> Result<Format, Failure> {
    let format = cli.format.unwrap_or(default);
    if format == Format::Csv && !csv_ok {
        return Err(Failure::Usage("this command only writes json".into()));
    }
    Ok(format)
}

fn gate_matrix(gate: args::Gate) -> entlab::ComplexMatrix {
    match gate {
        args::Gate::I => pauli(0),
        args::Gate::X => pauli(1),
        args::Gate::Y => pauli(2),
        args::Gate::Z => pauli(3),
        args::Gate::H => (&pauli(1) + &pauli(3)).scale_real(std::f64::consts::FRAC_1_SQRT_2),
    }
}

fn basis_qubit(target: usize) -> Result<PureState, Failure> {
    if target > 1 {
        return Err(Failure::Usage(format!("--target must be 0 or 1, got {target}")));
    }
    Ok(PureState::basis(&[2], target)?)
}

fn resolve_channel(a: &args::ChannelArgs) -> Result<QuantumChannel, Failure> {
    use args::ChannelKind;

    if let Some(path) = &a.channel_file {
        if a.param.is_some() || a.gate.is_some() || a.target.is_some() {
            return Err(Failure::Usage(
                "--channel-file takes no --param, --gate or --target".into(),
            ));
        }
        return load_channel(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())));
    }
    let kind = a
        .channel
        .ok_or_else(|| Failure::Usage("a channel is required: --channel or --channel-file".into()))?;
    let stray = match kind {
        ChannelKind::Depolarizing => a.gate.is_some() || a.target.is_some(),
        ChannelKind::Unitary => a.param.is_some() || a.target.is_some(),
        ChannelKind::Contraction => a.param.is_some() || a.gate.is_some(),
    };
    if stray {
        return Err(Failure::Usage(format!(
            "options do not match --channel {}",
            format!("{kind:?}").to_lowercase()
        )));
    }
    let ch = match kind {
        ChannelKind::Depolarizing => {
            let p = a
                .param
                .ok_or_else(|| Failure::Usage("depolarizing needs --param".into()))?;
            depolarizing(p)?
        }
        ChannelKind::Unitary => {
            let gate = a
                .gate
                .ok_or_else(|| Failure::Usage("unitary needs --gate".into()))?;
            unitary_channel(&gate_matrix(gate))?.with_label(format!("unitary({gate:?})"))
        }
        ChannelKind::Contraction => {
            let target = a.target.unwrap_or(0);
            contraction_channel(&basis_qubit(target)?)?.with_label(format!("contraction({target})"))
        }
    };
    Ok(ch)
}

fn execute(cli: &Cli) -> Result<Outcome, Failure> {
    let seed = cli.seed;
    match &cli.command {
        Command::Diagram {
            channel,
            families,
            grid,
            no_reference,
        } => {
            let format = format_for(cli, Format::Csv, true)?;
            let ch = resolve_channel(channel)?;
            let families: Vec<Family> = families
                .iter()
                .map(|f| match f {
                    args::FamilyArg::Werner => Family::Werner,
                    args::FamilyArg::Schmidt => Family::Schmidt,
                })
                .collect();
            let rows = diagram_scan(&ch, &families, *grid, !no_reference)?;
            let data = match format {
                Format::Csv => output::rows_to_csv(&rows).map_err(|e| Failure::Input(e.to_string()))?,
                Format::Json => output::to_json_bytes(&output::envelope(
                    "diagram",
                    None,
                    json!({ "channel": ch.label(), "bound": choi_bound(&ch)?, "rows": rows }),
                )),
            };
            Ok(Outcome::ok(data))
        }
        Command::TheoremCheck {
            channel,
            samples,
            ensemble,
        } => {
            format_for(cli, Format::Json, false)?;
            let ch = resolve_channel(channel)?;
            let ensemble = match ensemble {
                args::EnsembleArg::Mixed => Ensemble::Mixed,
                args::EnsembleArg::Pure => Ensemble::Pure,
            };
            let report = bound_check(&ch, *samples, seed, ensemble)?;
            let violation = (!report.holds()).then(|| {
                format!(
                    "{} of {} outputs exceed the bound {}",
                    report.violations, report.n_samples, report.bound
                )
            });
            let body = output::envelope("theorem-check", Some(seed), to_value(&report));
            Ok(Outcome {
                data: output::to_json_bytes(&body),
                violation,
            })
        }
        Command::IsoCheck { channel, samples } => {
            format_for(cli, Format::Json, false)?;
            let ch = resolve_channel(channel)?;
            let report = isoentangled_image_check(&ch, *samples, seed)?;
            let violation = (!report.holds()).then(|| format!("concurrence spread {}", report.spread));
            let body = output::envelope("iso-check", Some(seed), to_value(&report));
            Ok(Outcome {
                data: output::to_json_bytes(&body),
                violation,
            })
        }
        Command::Example1 { p, epsilon, grid } => {
            let format = format_for(cli, Format::Json, true)?;
            let rows = example1_curves(*p, *grid)?;
            let data = match format {
                Format::Csv => output::rows_to_csv(&rows).map_err(|e| Failure::Input(e.to_string()))?,
                Format::Json => {
                    let mut body = to_value(&example1_pair(*p, *epsilon)?);
                    body["grid_points_checked"] = rows.len().into();
                    output::to_json_bytes(&output::envelope("example1", None, body))
                }
            };
            Ok(Outcome::ok(data))
        }
        Command::Example2 { alpha2, target } => {
            format_for(cli, Format::Json, false)?;
            let xi = basis_qubit(*target)?;
            let report = example2_run(*alpha2, Some(&xi))?;
            let mut body = to_value(&report);
            body["contraction_target"] = (*target).into();
            body["measure"] = "log_negativity".into();
            Ok(Outcome::ok(output::to_json_bytes(&output::envelope(
                "example2", None, body,
            ))))
        }
        Command::InvertSearch {
            channel,
            mode,
            delta,
            samples,
        } => {
            format_for(cli, Format::Json, false)?;
            let ch = resolve_channel(channel)?;
            let mode = match mode {
                args::ModeArg::Families => SearchMode::Families,
                args::ModeArg::Random => SearchMode::Random,
            };
            let found = find_ordering_inversion(&ch, mode, *delta, *samples, seed)?;
            let body = json!({
                "channel": ch.label(),
                "mode": mode,
                "delta": delta,
                "samples": samples,
                "witness": found.as_ref().map(output::witness_json),
            });
            let seed = (mode == SearchMode::Random).then_some(seed);
            Ok(Outcome::ok(output::to_json_bytes(&output::envelope(
                "invert-search",
                seed,
                body,
            ))))
        }
        Command::ValidateChannel { channel } => {
            format_for(cli, Format::Json, false)?;
            let ch = resolve_channel(channel)?;
            let mut body = json!({
                "channel": ch.label(),
                "dim": ch.d_in(),
                "kraus_count": ch.kraus().len(),
                "trace_preservation_defect": ch.trace_preservation_defect(),
                "kraus": ChannelRecord::from(&ch),
            });
            if ch.d_in() == 2 {
                let choi = ch.choi();
                body["choi_concurrence"] = concurrence(choi.state())?.into();
                body["entanglement_breaking"] = ch.is_entanglement_breaking()?.into();
                body["choi_state"] = to_value(&StateRecord::from(choi.state()));
            }
            Ok(Outcome::ok(output::to_json_bytes(&output::envelope(
                "validate-channel",
                None,
                body,
            ))))
        }
    }
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports always serialize")
}
