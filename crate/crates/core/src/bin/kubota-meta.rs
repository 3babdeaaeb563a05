use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use kubota_meta::branching::{orbit_invariant, NilpotentSl2};
use kubota_meta::cli::{
    default_fields, hilbert_table, indices_report, multiplicity_csv, omega_report,
    parse_field_spec, selftest_all, suite_checks, weil_table, OutputFormat, Report, RunConfig,
    Suite,
};
use kubota_meta::weil::AdditiveChar;
use kubota_meta::{hilbert, FieldElement, LocalField};
use serde::Serialize;

#[derive(Parser)]
#[command(
    name = "kubota-meta",
    version,
    about = "Self-tests for the metaplectic double cover of GL2 over p-adic fields"
)]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct Opts {
    /// Field spec: Qp(p), Qp(p)[unram:d] or Qp(p)[ram:d].
    #[arg(long, global = true)]
    field: Option<String>,
    #[arg(long, global = true, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
    trials: u64,
    #[arg(long, global = true, env = "KUBOTA_META_SEED", default_value_t = 0)]
    seed: u64,
    /// Bound on numerators and denominators of random entries.
    #[arg(long, global = true, default_value_t = 50, value_parser = clap::value_parser!(u64).range(1..))]
    height: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Include per-check wall-clock times (makes output nondeterministic).
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand)]
enum Cmd {
    /// Hilbert symbol of two elements, the class table, or the law checks.
    Hilbert {
        field_spec: Option<String>,
        /// Elements `a` or `a:b` (meaning a + b sqrt d).
        #[arg(allow_hyphen_values = true, requires = "y")]
        x: Option<String>,
        #[arg(allow_hyphen_values = true)]
        y: Option<String>,
        #[arg(long)]
        table: bool,
        /// The two elements as an option instead of positionals.
        #[arg(num_args = 2, long = "pair", value_names = ["X", "Y"], conflicts_with = "x")]
        pair: Option<Vec<String>>,
    },
    /// Cocycle identity, Borel formula and cover arithmetic checks.
    Cocycle {
        #[arg(value_parser = ["selftest"])]
        action: String,
        field_spec: Option<String>,
    },
    /// Triviality of the cocycle on GL2 of the base field.
    SplitCheck { field_spec: Option<String> },
    /// The genuine characters over a fixed central character.
    Omega { field_spec: Option<String> },
    /// Square-class indices of an extension.
    Indices { field_spec: Option<String> },
    /// Weil indices on the square classes and the product relation.
    Weil {
        field_spec: Option<String>,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        psi_scale: String,
    },
    /// CSV of multiplicities and packet sizes for every self-twist group.
    MultiplicityTable { field_spec: Option<String> },
    /// Packet, Whittaker and root-number checks.
    PacketCheck { field_spec: Option<String> },
    /// Orbit class of a nilpotent matrix `a,b;c,d`.
    Orbit {
        field_spec: String,
        #[arg(allow_hyphen_values = true)]
        matrix: String,
    },
    /// Every suite, over the given field or a default list of nine fields.
    SelftestAll,
}

fn config(opts: &Opts, field: &LocalField) -> RunConfig {
    RunConfig {
        field_spec: field.to_string(),
        trials: opts.trials,
        seed: opts.seed,
        height_bound: opts.height,
        output: match opts.format {
            Format::Json => OutputFormat::Json,
            Format::Csv => OutputFormat::Csv,
            Format::Text => OutputFormat::Text,
        },
        timing: opts.timing,
    }
}

fn field_of(opts: &Opts, positional: &Option<String>) -> kubota_meta::Result<LocalField> {
    let spec = positional
        .as_deref()
        .or(opts.field.as_deref())
        .unwrap_or("Qp(5)");
    parse_field_spec(spec)
}

/// Write to stdout; a closed pipe is not an error.
fn emit(s: &str) {
    let _ = std::io::stdout().lock().write_all(s.as_bytes());
}

fn print_json<T: Serialize>(v: &T) {
    emit(&format!(
        "{}\n",
        serde_json::to_string_pretty(v).expect("payload serializes")
    ));
}

fn suite(opts: &Opts, field: LocalField, name: &str, s: Suite) -> kubota_meta::Result<ExitCode> {
    let cfg = config(opts, &field);
    let report = Report::new(name, &cfg, &[field], suite_checks(field, &cfg, s)?);
    emit(&report.render(cfg.output));
    Ok(ExitCode::from(report.exit_code() as u8))
}

fn run(cli: Cli) -> kubota_meta::Result<ExitCode> {
    let opts = &cli.opts;
    match &cli.cmd {
        Cmd::Hilbert {
            field_spec,
            x,
            y,
            table,
            pair,
        } => {
            let field = field_of(opts, field_spec)?;
            let xy = match (x, y, pair) {
                (Some(x), Some(y), _) => Some([x.as_str(), y.as_str()]),
                (_, _, Some(p)) => Some([p[0].as_str(), p[1].as_str()]),
                _ => None,
            };
            if *table {
                print_json(&hilbert_table(field));
            } else if let Some([x, y]) = xy {
                let x = FieldElement::parse(field, x)?;
                let y = FieldElement::parse(field, y)?;
                emit(&format!("{}\n", hilbert(&x, &y)?.value()));
            } else {
                return suite(opts, field, "hilbert", Suite::Hilbert);
            }
        }
        Cmd::Cocycle { field_spec, .. } => {
            return suite(opts, field_of(opts, field_spec)?, "cocycle", Suite::Cocycle)
        }
        Cmd::SplitCheck { field_spec } => {
            return suite(
                opts,
                field_of(opts, field_spec)?,
                "split-check",
                Suite::Split,
            )
        }
        Cmd::Omega { field_spec } => print_json(&omega_report(field_of(opts, field_spec)?)),
        Cmd::Indices { field_spec } => print_json(&indices_report(field_of(opts, field_spec)?)?),
        Cmd::Weil {
            field_spec,
            psi_scale,
        } => {
            let field = field_of(opts, field_spec)?;
            let psi = AdditiveChar::with_scale(FieldElement::parse(field, psi_scale)?)?;
            let table = weil_table(field, &psi)?;
            let ok = table.relation.failures == 0;
            print_json(&table);
            return Ok(if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            });
        }
        Cmd::MultiplicityTable { field_spec } => {
            emit(&multiplicity_csv(field_of(opts, field_spec)?))
        }
        Cmd::PacketCheck { field_spec } => {
            return suite(
                opts,
                field_of(opts, field_spec)?,
                "packet-check",
                Suite::Packets,
            )
        }
        Cmd::Orbit { field_spec, matrix } => {
            let field = parse_field_spec(field_spec)?;
            let y = NilpotentSl2::parse(field, matrix)?;
            let class = orbit_invariant(&y);
            emit(&format!("{} (rep {})\n", class.name(), class.rep()));
        }
        Cmd::SelftestAll => {
            let fields = match &opts.field {
                Some(spec) => vec![parse_field_spec(spec)?],
                None => default_fields(),
            };
            let cfg = config(opts, &fields[0]);
            let report = selftest_all(&cfg, &fields)?;
            emit(&report.render(cfg.output));
            return Ok(ExitCode::from(report.exit_code() as u8));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
