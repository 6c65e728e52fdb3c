//! The `semigroup-forge` command line.
//!
//! Every subcommand prints one JSON object with sorted keys (or a short
//! text rendering with `--format text`). Exit codes: 0 on success, 1 on an
//! internal failure, 2 on bad input, 3 when the answer is only a bound or
//! the oracle gave up.

pub mod parse;
pub mod svg;

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::honest::{self, HonestError, MeOptions};
use crate::kunz::{self, FaceClass, KunzPoint};
use crate::oracle::{self, OracleConfig, OracleError, DEFAULT_TRUNC_MAX};
use crate::puiseux::{self, PlanarityVerdict, PuiseuxCharacteristic};
use crate::semigroup::{NumericalSemigroup, DEFAULT_MAX_GENERATOR};

pub use parse::{parse_curve, parse_generators, parse_list, ParseError};
pub use svg::{emit_kite_svg, render_kite_svg};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "semigroup-forge", version, about = "Numerical semigroups, plane branches and embedding dimension")]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Largest truncation order the curve oracle may use.
    #[arg(long, global = true, env = "SEMIGROUP_FORGE_TRUNC_MAX", default_value_t = DEFAULT_TRUNC_MAX)]
    pub trunc_max: usize,
    /// Largest generator accepted in --gens.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_GENERATOR)]
    pub max_generator: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Standard invariants of a semigroup.
    Info {
        #[arg(long)]
        gens: String,
    },
    /// Minimal embedding dimension.
    Me {
        #[arg(long)]
        gens: String,
        /// Do not build witness curves.
        #[arg(long)]
        no_witness: bool,
    },
    /// Whether the semigroup is that of a plane branch.
    Planar {
        #[arg(long)]
        gens: String,
    },
    /// Semigroup of a Puiseux characteristic.
    #[command(name = "puiseux2sg")]
    Puiseux2Sg { characteristic: String },
    /// Puiseux characteristic of a planar semigroup.
    #[command(name = "sg2puiseux")]
    Sg2Puiseux { gens: String },
    /// Value semigroup of a parameterized curve.
    CurveSg {
        #[arg(long)]
        curve: String,
    },
    /// Face of the multiplicity-4 Kunz cone containing an Apéry point.
    KunzClassify {
        /// x1,x2,x3 with x_i congruent to i mod 4.
        #[arg(long)]
        point: String,
    },
    /// All Apéry points with coordinates up to a bound.
    KunzEnumerate {
        #[arg(long)]
        bound: u64,
    },
    /// Kite diagram of the enumerated points.
    KiteSvg {
        #[arg(long)]
        bound: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Witness curve for a multiplicity-4 semigroup with me = 3.
    Witness {
        #[arg(long)]
        gens: String,
    },
}

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn input(e: impl std::fmt::Display) -> Self {
        CliError {
            code: 2,
            message: e.to_string(),
        }
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::input(e)
    }
}

impl From<crate::semigroup::SemigroupError> for CliError {
    fn from(e: crate::semigroup::SemigroupError) -> Self {
        CliError::input(e)
    }
}

impl From<puiseux::PuiseuxError> for CliError {
    fn from(e: puiseux::PuiseuxError) -> Self {
        CliError::input(e)
    }
}

impl From<kunz::KunzError> for CliError {
    fn from(e: kunz::KunzError) -> Self {
        CliError::input(e)
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        let code = match e {
            OracleError::Divergence { .. } => 3,
            _ => 2,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

impl From<HonestError> for CliError {
    fn from(e: HonestError) -> Self {
        match e {
            HonestError::Oracle(o) => o.into(),
            HonestError::WitnessVerificationFailed(_) => CliError {
                code: 1,
                message: e.to_string(),
            },
            _ => CliError::input(e),
        }
    }
}

impl From<svg::SvgError> for CliError {
    fn from(e: svg::SvgError) -> Self {
        match e {
            svg::SvgError::Honest(h) => h.into(),
            svg::SvgError::Io { .. } => CliError::input(e),
        }
    }
}

/// What a subcommand produced.
pub struct Report {
    pub json: Value,
    pub text: String,
    /// The answer is a bound rather than a value.
    pub advisory: bool,
}

impl Report {
    fn new(json: Value, text: impl Into<String>) -> Self {
        Report {
            json,
            text: text.into(),
            advisory: false,
        }
    }
}

/// Runs one command, writing the report to `out` and errors to `err`.
/// Returns the process exit code.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match execute(cli) {
        Ok(report) => {
            let body = match cli.format {
                Format::Json => report.json.to_string(),
                Format::Text => report.text,
            };
            if writeln!(out, "{body}").is_err() {
                return 1;
            }
            if report.advisory {
                3
            } else {
                0
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message);
            e.code
        }
    }
}

fn semigroup(cli: &Cli, gens: &str) -> Result<NumericalSemigroup, CliError> {
    let gens = parse_generators(gens)?;
    Ok(NumericalSemigroup::with_cap(&gens, cli.max_generator)?)
}

fn oracle_config(cli: &Cli) -> OracleConfig {
    OracleConfig {
        trunc_max: cli.trunc_max,
    }
}

fn bracket(v: &[u64]) -> String {
    let items: Vec<String> = v.iter().map(u64::to_string).collect();
    format!("[{}]", items.join(", "))
}

pub fn execute(cli: &Cli) -> Result<Report, CliError> {
    match &cli.command {
        Command::Info { gens } => info(&semigroup(cli, gens)?),
        Command::Me { gens, no_witness } => {
            let s = semigroup(cli, gens)?;
            let options = MeOptions {
                skip_witness: *no_witness,
                oracle: oracle_config(cli),
            };
            let v = honest::minimal_embedding_dimension_with(&s, &options)?;
            let mut json = serde_json::to_value(&v).expect("serializable");
            json["me"] = json!(v.me());
            json["min_gens"] = json!(s.minimal_generators());
            let mut text = match v.me() {
                Some(me) => format!("me{s} = {me} ({:?})", v.method),
                None => format!("{} <= me{s} <= {} ({:?})", v.lower, v.upper, v.method),
            };
            if let Some(w) = &v.witness {
                text.push_str(&format!(
                    "\nwitness: {}\ncertificate: {} has order {}",
                    w.curve,
                    w.certificate.display_with(w.curve.names()),
                    w.order
                ));
            }
            Ok(Report {
                advisory: !v.exact,
                ..Report::new(json, text)
            })
        }
        Command::Planar { gens } => {
            let s = semigroup(cli, gens)?;
            let b = s.minimal_generators();
            let verdict = puiseux::teissier_planarity(b)?;
            let mut json = json!({
                "planar": verdict.is_planar(),
                "min_gens": b,
                "e_bound": puiseux::planar_e_bound(b),
            });
            let text = match &verdict {
                PlanarityVerdict::Planar => format!("{s} is planar"),
                PlanarityVerdict::NotPlanar(why) => {
                    let fields = serde_json::to_value(why).expect("serializable");
                    for (k, v) in fields.as_object().expect("tagged struct") {
                        json[k] = v.clone();
                    }
                    format!("{s} is not planar: {why}")
                }
            };
            Ok(Report::new(json, text))
        }
        Command::Puiseux2Sg { characteristic } => {
            let lambda = PuiseuxCharacteristic::new(parse_list(characteristic)?)?;
            let b = puiseux::puiseux_to_generators(&lambda);
            Ok(Report::new(
                json!({ "characteristic": lambda, "min_gens": b }),
                bracket(&b),
            ))
        }
        Command::Sg2Puiseux { gens } => {
            let s = semigroup(cli, gens)?;
            let lambda = puiseux::generators_to_puiseux(s.minimal_generators())?;
            Ok(Report::new(
                json!({ "characteristic": lambda, "min_gens": s.minimal_generators() }),
                lambda.to_string(),
            ))
        }
        Command::CurveSg { curve } => {
            let c = parse_curve(curve)?;
            let s = oracle::semigroup_of_curve(&c, &oracle_config(cli))?;
            Ok(Report::new(
                json!({
                    "curve": c.to_string(),
                    "min_gens": s.minimal_generators(),
                    "conductor": s.conductor(),
                    "genus": s.genus(),
                }),
                format!("{s}"),
            ))
        }
        Command::KunzClassify { point } => kunz_classify(point),
        Command::KunzEnumerate { bound } => {
            let records = svg::kite_records(*bound)?;
            let mut counts = serde_json::Map::new();
            for name in ["interior", "facet", "ray"] {
                let n = records.iter().filter(|r| r.face == name).count();
                counts.insert(name.into(), json!(n));
            }
            let text: Vec<String> = records
                .iter()
                .map(|r| format!("({}, {}, {}) {} e={} me={}", r.x[0], r.x[1], r.x[2], r.face, r.e, r.me))
                .collect();
            Ok(Report::new(
                json!({ "bound": bound, "count": records.len(), "counts": counts, "points": records }),
                text.join("\n"),
            ))
        }
        Command::KiteSvg { bound, out } => {
            let records = svg::emit_kite_svg(*bound, out)?;
            let per_me: Vec<usize> = (2..=4)
                .map(|me| records.iter().filter(|r| r.me == me).count())
                .collect();
            Ok(Report::new(
                json!({
                    "out": out.display().to_string(),
                    "points": records.len(),
                    "me2": per_me[0],
                    "me3": per_me[1],
                    "me4": per_me[2],
                }),
                format!("wrote {} points to {}", records.len(), out.display()),
            ))
        }
        Command::Witness { gens } => {
            let s = semigroup(cli, gens)?;
            let w = honest::witness_curve(&s, &oracle_config(cli))?;
            let mut json = serde_json::to_value(&w).expect("serializable");
            json["min_gens"] = json!(s.minimal_generators());
            let text = format!(
                "{}\n{} has order {}",
                w.curve,
                w.certificate.display_with(w.curve.names()),
                w.order
            );
            Ok(Report::new(json, text))
        }
    }
}

fn info(s: &NumericalSemigroup) -> Result<Report, CliError> {
    let (frobenius, conductor) = s.frobenius_and_conductor();
    let apery = s.apery_set(s.multiplicity())?;
    let json = json!({
        "gens": s.generators(),
        "min_gens": s.minimal_generators(),
        "multiplicity": s.multiplicity(),
        "e": s.embedding_dimension(),
        "frobenius": frobenius,
        "conductor": conductor,
        "gaps": s.gaps(),
        "genus": s.genus(),
        "self_dual": s.is_self_dual(),
        "apery": apery,
    });
    let text = format!(
        "semigroup: {s}\nmultiplicity: {}\nembedding dimension: {}\nfrobenius: {frobenius}\nconductor: {conductor}\ngenus: {}\ngaps: {}\nself-dual: {}\napery: {}",
        s.multiplicity(),
        s.embedding_dimension(),
        s.genus(),
        bracket(&s.gaps()),
        s.is_self_dual(),
        bracket(&apery),
    );
    Ok(Report::new(json, text))
}

fn kunz_classify(point: &str) -> Result<Report, CliError> {
    let [x1, x2, x3] = parse_list(point)?[..] else {
        return Err(CliError::input("a point needs exactly three coordinates x1,x2,x3"));
    };
    let p = KunzPoint::new(x1, x2, x3)?;
    let face = kunz::classify_face(&p);
    let (u, v) = kunz::kite_projection(p.coords());
    let mut json = json!({
        "x": p.coords(),
        "face": face.name(),
        "kite": { "u": u.to_string(), "v": v.to_string() },
    });
    let labels: Vec<&str> = face.constraints().iter().map(|c| c.label()).collect();
    let mut text = format!("{p}: {}", face.name());
    if !labels.is_empty() {
        text.push_str(&format!(" [{}]", labels.join(", ")));
    }
    if let FaceClass::Outside(_) = face {
        json["violated"] = json!(labels);
        return Ok(Report::new(json, text));
    }
    json["binding"] = json!(labels);
    let record = honest::point_record(&p, &face)?;
    json["e"] = json!(record.e);
    json["me"] = json!(record.me);
    json["min_gens"] = json!(kunz::semigroup_of_point(&p)?.minimal_generators());
    text.push_str(&format!("\ne = {}, me = {}", record.e, record.me));
    if face == FaceClass::Interior {
        json["ordering"] = json!(honest::ordering_case(&p));
        json["theorem1"] = json!(honest::theorem1_test(&p)?);
    }
    Ok(Report::new(json, text))
}
