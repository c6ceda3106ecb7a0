//! `cagekit` command-line tool.
//!
//! Exit status: 0 when every check passes, 1 when a check fails, 2 on any
//! error (bad input, unknown node, malformed JSON).

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use cagekit::cage::{axis_cage, random_cage, simplicial_indices, supra_simplicial_indices};
use cagekit::demos::{run_demo, DEMO_NAMES};
use cagekit::field::parse_rational;
use cagekit::inscribe::{inscribe_with_tangent, tangent_at_node};
use cagekit::json::{self, SCHEMA};
use cagekit::verify::{
    counterexample_cage, hilbert_table, independence_counterexample, verify_cage, verify_cage_basic, CageSummary,
};
use cagekit::viete::coefficient_cage;
use cagekit::{Cage, Field, FieldElement, LambdaMatrix, MultiIndex, NodeSelection, TangentSubspace, VerificationReport};
use clap::{Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "cagekit", version, about = "Exact computations with hyperplane cages")]
struct Cli {
    /// Write the result here instead of standard output.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Random,
    Axis,
    Viete,
}

#[derive(Clone, Copy, ValueEnum)]
enum Selection {
    All,
    Simplicial,
    Supra,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a cage.
    Gen {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        d: Option<usize>,
        /// Field JSON for random cages (default: the rationals).
        #[arg(long)]
        field: Option<PathBuf>,
        /// Configuration JSON: `{"points": [[...], ...]}`, one point per hyperplane.
        #[arg(long)]
        points: Option<PathBuf>,
    },
    /// Check the cage axioms and list any failures.
    Validate { cage: PathBuf },
    /// Compute and print all nodes.
    Nodes { cage: PathBuf },
    /// Run the verification suite.
    Verify {
        cage: PathBuf,
        /// Omit timing so that output is reproducible.
        #[arg(long)]
        no_timestamp: bool,
        /// Skip the Hilbert-function identities.
        #[arg(long)]
        quick: bool,
    },
    /// Hilbert function of a node set.
    Hilbert {
        cage: PathBuf,
        #[arg(long, value_enum, default_value = "all")]
        selection: Selection,
        /// Largest degree (default: number of points).
        #[arg(long)]
        max_k: Option<u32>,
    },
    /// Inscribe the complete intersection with a given tangent space at a node.
    Inscribe {
        cage: PathBuf,
        /// Node index, e.g. "1,2".
        #[arg(long)]
        node: String,
        /// Tangent basis in the node's affine chart: vectors separated by ';',
        /// entries by ','. Empty for a zero-dimensional tangent space.
        #[arg(long, default_value = "")]
        tangent: String,
        /// Expected codimension; checked against the tangent basis.
        #[arg(long)]
        s: Option<usize>,
    },
    /// Tangent spaces of an inscribed variety at every node.
    Propagate { variety: PathBuf },
    /// The 13-node counterexample on the 4x4 grid.
    Counterexample {
        #[arg(long)]
        no_timestamp: bool,
    },
    /// Run a number-field demo.
    Demo {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(DEMO_NAMES))]
        name: String,
        #[arg(long)]
        no_timestamp: bool,
    },
    /// Sample the defining function of a variety on a grid; prints CSV (floating point).
    SampleGrid {
        variety: PathBuf,
        /// Box bounds "lo,hi", used on every axis; rationals allowed.
        #[arg(long = "box", default_value = "-2,2", allow_hyphen_values = true)]
        bounds: String,
        /// Samples per axis.
        #[arg(long, default_value_t = 21)]
        resolution: usize,
        /// Real value of the field generator, required for extension fields.
        #[arg(long, allow_hyphen_values = true)]
        embedding: Option<f64>,
    },
}

enum Outcome {
    Pass,
    Fail,
}

fn read_json(path: &Path) -> Result<Value> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn read_cage(path: &Path) -> Result<Cage> {
    Ok(json::cage_from_json(&read_json(path)?)?)
}

fn read_validated(path: &Path) -> Result<Cage> {
    let mut cage = read_cage(path)?;
    if let Some(f) = cage.validate().failures.first() {
        bail!("{} is not a valid cage: {f}", path.display());
    }
    Ok(cage)
}

fn emit(output: Option<&Path>, text: &str) -> Result<()> {
    match output {
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            if !text.ends_with('\n') {
                out.write_all(b"\n")?;
            }
        }
        Some(path) => {
            let mut tmp = path.as_os_str().to_owned();
            tmp.push(".tmp");
            fs::write(&tmp, text).with_context(|| format!("writing {}", path.display()))?;
            fs::rename(&tmp, path).with_context(|| format!("writing {}", path.display()))?;
        }
    }
    Ok(())
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn parse_vectors(text: &str, field: &Field) -> Result<Vec<Vec<FieldElement>>> {
    text.split(';')
        .map(str::trim)
        .filter(|v| !v.is_empty())
        .map(|v| {
            v.split(',')
                .map(|x| Ok(field.from_rational(parse_rational(x.trim())?)))
                .collect::<Result<Vec<_>>>()
        })
        .collect()
}

fn report(output: Option<&Path>, r: &VerificationReport, cage: Option<&Cage>, timing: bool) -> Result<Outcome> {
    emit(output, &pretty(&json::report_to_json(r, cage, timing)))?;
    for c in r.checks.iter().filter(|c| !c.pass) {
        eprintln!("failed: {}: {}", c.name, c.detail.as_deref().unwrap_or(""));
    }
    Ok(if r.pass() { Outcome::Pass } else { Outcome::Fail })
}

fn generate(kind: Kind, seed: u64, n: Option<usize>, d: Option<usize>, field: Option<&Path>, points: Option<&Path>) -> Result<Cage> {
    match kind {
        Kind::Random => {
            let (Some(n), Some(d)) = (n, d) else {
                bail!("--kind random needs --n and --d");
            };
            let field = match field {
                Some(p) => json::field_from_json(&read_json(p)?, "$")?,
                None => Field::rationals(),
            };
            Ok(random_cage(seed, d, n, &field)?.cage)
        }
        Kind::Axis | Kind::Viete => {
            let path = points.context("--kind axis and --kind viete need --points")?;
            let config = json::configuration_from_json(&read_json(path)?)?;
            if n.is_some_and(|n| n != config.n()) || d.is_some_and(|d| d != config.d()) {
                bail!("--n/--d disagree with the configuration ({} x {})", config.n(), config.d());
            }
            Ok(match kind {
                Kind::Axis => axis_cage(config.field(), config.points())?,
                _ => coefficient_cage(&config)?,
            })
        }
    }
}

fn sample_grid(variety: &Path, bounds: &str, resolution: usize, embedding: Option<f64>) -> Result<String> {
    let (cage, lambda) = json::variety_from_json(&read_json(variety)?)?;
    let n = cage.n();
    if !(2..=3).contains(&n) {
        bail!("sample-grid needs n = 2 or n = 3, got n = {n}");
    }
    if resolution < 2 {
        bail!("--resolution must be at least 2");
    }
    let field = cage.field().clone();
    if !field.is_rationals() && embedding.is_none() {
        bail!("field {} needs --embedding for the generator", field.descriptor().label());
    }
    let (lo, hi) = bounds.split_once(',').context("--box must be \"lo,hi\"")?;
    let lo = field.from_rational(parse_rational(lo.trim())?);
    let hi = field.from_rational(parse_rational(hi.trim())?);
    let step = (&hi - &lo).checked_div(&field.from_int(resolution as i64 - 1))?;
    let samples: Vec<FieldElement> = (0..resolution)
        .map(|i| &lo + &(&step * &field.from_int(i as i64)))
        .collect();
    let polys = lambda.pencils(&cage)?;
    let to_f64 = |x: &FieldElement| -> f64 {
        let t = embedding.unwrap_or(0.0);
        x.coeffs()
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * t + c.to_f64().unwrap_or(f64::NAN))
    };

    let mut out = String::from("x,y,z,value\n");
    let zs: Vec<Option<&FieldElement>> = if n == 3 { samples.iter().map(Some).collect() } else { vec![None] };
    for x in &samples {
        for y in &samples {
            for z in &zs {
                let mut point = vec![x.clone(), y.clone()];
                point.extend(z.cloned());
                point.push(field.one());
                let values = polys.iter().map(|f| f.evaluate(&point)).collect::<cagekit::Result<Vec<_>>>()?;
                let value = if values.len() == 1 {
                    values[0].clone()
                } else {
                    values.iter().fold(field.zero(), |acc, v| &acc + &(v * v))
                };
                let zf = z.map_or(0.0, to_f64);
                out.push_str(&format!("{},{},{},{}\n", to_f64(x), to_f64(y), zf, to_f64(&value)));
            }
        }
    }
    Ok(out)
}

fn run(cli: Cli) -> Result<Outcome> {
    let output = cli.output.as_deref();
    match cli.command {
        Command::Gen { kind, seed, n, d, field, points } => {
            let cage = generate(kind, seed, n, d, field.as_deref(), points.as_deref())?;
            emit(output, &pretty(&json::cage_to_json(&cage)))?;
            Ok(Outcome::Pass)
        }
        Command::Validate { cage } => {
            let mut cage = read_cage(&cage)?;
            let v = cage.validate();
            let failures: Vec<String> = v.failures.iter().map(ToString::to_string).collect();
            for f in &failures {
                eprintln!("failed: {f}");
            }
            let doc = json!({"schema": SCHEMA, "valid": v.is_valid(), "nodes": v.node_count, "failures": failures});
            emit(output, &pretty(&doc))?;
            Ok(if v.is_valid() { Outcome::Pass } else { Outcome::Fail })
        }
        Command::Nodes { cage } => {
            let cage = read_validated(&cage)?;
            emit(output, &pretty(&json::nodes_to_json(&cage)?))?;
            Ok(Outcome::Pass)
        }
        Command::Verify { cage, no_timestamp, quick } => {
            let cage = read_cage(&cage)?;
            let r = if quick { verify_cage_basic(&cage)? } else { verify_cage(&cage)? };
            report(output, &r, Some(&cage), !no_timestamp)
        }
        Command::Hilbert { cage, selection, max_k } => {
            let cage = read_validated(&cage)?;
            let (d, n) = (cage.d(), cage.n());
            let (label, sel) = match selection {
                Selection::All => ("all", NodeSelection::all(d, n)),
                Selection::Simplicial => ("simplicial", simplicial_indices(d, n)),
                Selection::Supra => ("supra", supra_simplicial_indices(d, n)),
            };
            let points = cage.select(&sel)?;
            let table = hilbert_table(&points, max_k.unwrap_or(points.len() as u32))?;
            let doc = json!({"schema": SCHEMA, "selection": label, "points": points.len(), "h": table});
            emit(output, &pretty(&doc))?;
            Ok(Outcome::Pass)
        }
        Command::Inscribe { cage, node, tangent, s } => {
            let cage = read_validated(&cage)?;
            let index: MultiIndex = node.parse()?;
            let p = cage.node(&index)?;
            let tau = TangentSubspace::new(p, parse_vectors(&tangent, cage.field())?)?;
            if let Some(s) = s {
                if s != tau.codim() {
                    bail!("--s {s} does not match a tangent space of dimension {}", tau.dim());
                }
            }
            let lambda = inscribe_with_tangent(&cage, p, &tau)?;
            emit(output, &pretty(&json::variety_to_json(&cage, &lambda)))?;
            Ok(Outcome::Pass)
        }
        Command::Propagate { variety } => {
            let (cage, lambda): (Cage, LambdaMatrix) = json::variety_from_json(&read_json(&variety)?)?;
            let tangents = cage
                .nodes()?
                .iter()
                .map(|q| Ok(json::tangent_to_json(&tangent_at_node(&lambda, &cage, q)?)))
                .collect::<Result<Vec<_>>>()?;
            let doc = json!({"schema": SCHEMA, "s": lambda.s(), "tangents": tangents});
            emit(output, &pretty(&doc))?;
            Ok(Outcome::Pass)
        }
        Command::Counterexample { no_timestamp } => {
            let start = std::time::Instant::now();
            let cage = counterexample_cage();
            let check = independence_counterexample()?;
            let r = VerificationReport {
                cage: CageSummary::of(&cage),
                checks: vec![check],
                timing_ms: Some(start.elapsed().as_millis()),
            };
            report(output, &r, Some(&cage), !no_timestamp)
        }
        Command::Demo { name, no_timestamp } => {
            let r = run_demo(&name)?;
            report(output, &r, None, !no_timestamp)
        }
        Command::SampleGrid { variety, bounds, resolution, embedding } => {
            eprintln!("note: sample-grid values are floating-point approximations");
            emit(output, &sample_grid(&variety, &bounds, resolution, embedding)?)?;
            Ok(Outcome::Pass)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
