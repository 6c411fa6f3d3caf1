//! `pointlike`: checks Novikov arithmetic, A∞ structures, idempotents,
//! Mukai lattices, tropical curves and flux data from JSON inputs.
//!
//! Exit status: 0 pass, 1 fail, 2 malformed input, I/O error or a
//! computation that is undecidable at the requested truncation.

mod cmd;
mod io;
mod outcome;
mod repro;
mod scenario;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::io::read_json;
use crate::outcome::{exit_code, CliError, Outcome};
use crate::scenario::{parse_truncation, run_scenario, Overrides};

#[derive(Parser)]
#[command(
    name = "pointlike",
    version,
    about = "Exact checks for point-like objects and their invariants"
)]
struct Cli {
    /// Novikov truncation exponent, e.g. `8` or `15/2`.
    #[arg(long, global = true)]
    truncation: Option<String>,
    /// Seed for every randomized step.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Coordinate bound for lattice enumeration.
    #[arg(long, global = true)]
    bound: Option<i64>,
    /// Order for versal matching, arity for relation checks, size for windows.
    #[arg(long, global = true)]
    order: Option<u32>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    #[arg(long)]
    input: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Novikov series arithmetic.
    Novikov {
        #[command(subcommand)]
        action: NovikovCmd,
    },
    /// A∞ categories: relations, Maurer–Cartan, versal matching.
    Ainf {
        #[command(subcommand)]
        action: AinfCmd,
    },
    /// Twisted complexes and homotopy idempotents.
    Tw {
        #[command(subcommand)]
        action: TwCmd,
    },
    /// Square -2 classes in `U ⊕ ⟨2n⟩`.
    Lattice {
        #[command(subcommand)]
        action: LatticeCmd,
    },
    /// Planar tropical geometry.
    Trop {
        #[command(subcommand)]
        action: TropCmd,
    },
    /// Flux restriction data of cobordisms.
    Flux {
        #[command(subcommand)]
        action: FluxCmd,
    },
    /// Runs a scenario file `{kind, action, payload, ...}`.
    Run { scenario: PathBuf },
    /// Runs the bundled scenarios.
    Repro {
        #[arg(long)]
        module: Option<String>,
    },
}

#[derive(Subcommand)]
enum NovikovCmd {
    Eval(Input),
}

#[derive(Subcommand)]
enum AinfCmd {
    Check(Input),
    Mc(Input),
    Versal(Input),
}

#[derive(Subcommand)]
enum TwCmd {
    Check(Input),
    Window(Input),
}

#[derive(Subcommand)]
enum LatticeCmd {
    Verify {
        #[arg(long)]
        n: i64,
    },
    Member(Input),
}

#[derive(Subcommand)]
enum TropCmd {
    Surface {
        #[arg(long)]
        poly: PathBuf,
        #[arg(long)]
        polytope: PathBuf,
        /// Where to write the picture.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    Escape {
        /// A JSON file holding a list of complexes, or a directory of complex files.
        #[arg(long)]
        complexes: PathBuf,
        #[arg(long)]
        polytope: PathBuf,
    },
}

#[derive(Subcommand)]
enum FluxCmd {
    Check {
        #[arg(long)]
        scenario: PathBuf,
        /// Where to write the projection of the restriction images.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
}

fn overrides(cli: &Cli) -> Result<Overrides, CliError> {
    let truncation = cli
        .truncation
        .as_deref()
        .map(|t| parse_truncation(&Value::String(t.to_string())))
        .transpose()?;
    Ok(Overrides {
        truncation,
        seed: cli.seed,
        bound: cli.bound,
        order: cli.order,
    })
}

/// The payload of `trop escape`: a list file or every `*.json` in a directory, sorted by name.
fn read_complexes(path: &Path) -> Result<Value, CliError> {
    if !path.is_dir() {
        return read_json(path);
    }
    let io_err = |source| CliError::Io {
        path: path.display().to_string(),
        source,
    };
    let mut files: Vec<PathBuf> = std::fs::read_dir(path)
        .map_err(io_err)?
        .map(|e| e.map(|e| e.path()))
        .collect::<Result<_, _>>()
        .map_err(io_err)?;
    files.retain(|p| p.extension().is_some_and(|x| x == "json"));
    files.sort();
    Ok(Value::Array(
        files
            .iter()
            .map(|p| read_json(p))
            .collect::<Result<_, _>>()?,
    ))
}

fn write_svg(path: Option<&Path>, out: &Outcome) -> Result<(), CliError> {
    if let (Some(path), Some(text)) = (path, &out.svg) {
        std::fs::write(path, text).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?;
    }
    Ok(())
}

fn execute(cli: &Cli) -> Result<(String, Outcome, Value), CliError> {
    let o = overrides(cli)?;
    let simple =
        |kind: &str, action: &str, payload: Value| -> Result<(String, Outcome, Value), CliError> {
            let g = o.globals(None)?;
            let out = cmd::dispatch(kind, action, &payload, &g)?;
            let stamp = g.stamp(json!({}));
            Ok((format!("{kind} {action}"), out, stamp))
        };
    match &cli.command {
        Command::Novikov {
            action: NovikovCmd::Eval(i),
        } => simple("novikov", "eval", read_json(&i.input)?),
        Command::Ainf { action } => {
            let (a, i) = match action {
                AinfCmd::Check(i) => ("check", i),
                AinfCmd::Mc(i) => ("mc", i),
                AinfCmd::Versal(i) => ("versal", i),
            };
            simple("ainf", a, read_json(&i.input)?)
        }
        Command::Tw { action } => {
            let (a, i) = match action {
                TwCmd::Check(i) => ("check", i),
                TwCmd::Window(i) => ("window", i),
            };
            simple("tw", a, read_json(&i.input)?)
        }
        Command::Lattice {
            action: LatticeCmd::Verify { n },
        } => simple("lattice", "verify", json!({ "n": n })),
        Command::Lattice {
            action: LatticeCmd::Member(i),
        } => simple("lattice", "member", read_json(&i.input)?),
        Command::Trop {
            action:
                TropCmd::Surface {
                    poly,
                    polytope,
                    svg,
                },
        } => {
            let payload = json!({ "poly": read_json(poly)?, "polytope": read_json(polytope)? });
            let r = simple("trop", "surface", payload)?;
            write_svg(svg.as_deref(), &r.1)?;
            Ok(r)
        }
        Command::Trop {
            action:
                TropCmd::Escape {
                    complexes,
                    polytope,
                },
        } => {
            let payload = json!({ "complexes": read_complexes(complexes)?, "polytope": read_json(polytope)? });
            simple("trop", "escape", payload)
        }
        Command::Flux {
            action: FluxCmd::Check { scenario, svg },
        } => {
            let r = simple("flux", "check", read_json(scenario)?)?;
            write_svg(svg.as_deref(), &r.1)?;
            Ok(r)
        }
        Command::Run { scenario } => {
            let v = read_json(scenario)?;
            let (out, g) = run_scenario(&v, &o)?;
            let name = format!(
                "{} {}",
                v.get("kind").and_then(Value::as_str).unwrap_or(""),
                v.get("action").and_then(Value::as_str).unwrap_or("")
            );
            Ok((name, out, g.stamp(json!({}))))
        }
        Command::Repro { module } => {
            let out = repro::repro(module.as_deref(), &o)?;
            let g = o.globals(None)?;
            Ok(("repro".into(), out, g.stamp(json!({}))))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = execute(&cli);
    let code = exit_code(result.as_ref().map(|(_, out, _)| out));
    let doc = match result {
        Ok((command, out, stamp)) => {
            let mut doc = json!({ "command": command, "verdict": out.verdict.as_str(), "report": out.report });
            if let (Value::Object(d), Value::Object(s)) = (&mut doc, stamp) {
                d.extend(s);
            }
            doc
        }
        Err(e) => {
            eprintln!("error: {e}");
            let kind = match e {
                CliError::Undecidable(_) => "undecidable",
                CliError::Malformed(_) => "malformed",
                CliError::Io { .. } => "io",
            };
            json!({ "verdict": "error", "error": kind, "message": e.to_string() })
        }
    };
    // A closed pipe downstream is not an error of ours.
    let _ = writeln!(
        std::io::stdout().lock(),
        "{}",
        serde_json::to_string_pretty(&doc).expect("JSON values serialize")
    );
    ExitCode::from(code)
}
