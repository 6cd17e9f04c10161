//! Command-line front end. Every command reads its inputs from files, runs
//! one library operation and renders a deterministic report.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::constructions::{exponential, product, quotient, tensor, Caps};
use crate::error::Error;
use crate::io::{
    json, matrix_table, parse_path, parse_relation, parse_space, preorder_to_json, report_to_json, space_to_json,
    topology_to_json, PathFile,
};
use crate::paths::{LineKind, PathLike};
use crate::properties::{run_all, DEFAULT_SEED};
use crate::space::{classify, FiniteRhoSpace};
use crate::symmetry::{coreflective_preorder, coreflective_sym, reflective_preorder, reflective_sym};
use crate::topology::{
    coreflective_topology, future_topology_capped, past_topology, reflective_topology, FiniteTopology,
    DEFAULT_OPEN_CAP,
};

pub const EXIT_OTHER: i32 = 1;
pub const EXIT_PARSE: i32 = 3;
pub const EXIT_INVALID: i32 = 4;
pub const EXIT_CAP: i32 = 5;
pub const EXIT_PROPERTY: i32 = 6;

/// Environment variable holding the default for `--cap`.
pub const CAP_ENV: &str = "RHOSPACE_CAP";

#[derive(Debug, Parser)]
#[command(name = "rhospace", version, about = "Finite extended-real metric spaces: constructions, symmetrizations, topologies and path valuations")]
pub struct Cli {
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Upper bound on generated structures: product carriers, exponential
    /// candidates and open-set families.
    #[arg(long, global = true, env = CAP_ENV)]
    pub cap: Option<u64>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Reflective,
    Coreflective,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the axioms and list every violation.
    Validate {
        #[arg(long)]
        space: PathBuf,
    },
    /// Report which standard properties a space has.
    Classify {
        #[arg(long)]
        space: PathBuf,
    },
    /// Reflective or coreflective symmetrization.
    Symmetrize {
        #[arg(long)]
        space: PathBuf,
        #[arg(long, value_enum)]
        mode: Mode,
    },
    /// Quotient by an equivalence relation given as classes of labels.
    Quotient {
        #[arg(long)]
        space: PathBuf,
        #[arg(long)]
        rel: PathBuf,
    },
    /// Cartesian product (max metric) of the given spaces.
    Product {
        #[arg(long = "space", required = true)]
        spaces: Vec<PathBuf>,
    },
    /// Tensor product (sum metric) of the given spaces.
    Tensor {
        #[arg(long = "space", required = true)]
        spaces: Vec<PathBuf>,
    },
    /// Space of 1-Lipschitz maps from the first space to the second.
    Exponential {
        #[arg(long = "space", required = true, num_args = 1)]
        spaces: Vec<PathBuf>,
    },
    /// Future topology, the past topology with `--past`, or the topology of a
    /// symmetrization with `--mode`.
    Topology {
        #[arg(long)]
        space: PathBuf,
        #[arg(long, value_enum)]
        mode: Option<Mode>,
        #[arg(long, conflicts_with = "mode")]
        past: bool,
    },
    /// Affordability (reflective) or null-cost (coreflective) preorder.
    Preorder {
        #[arg(long)]
        space: PathBuf,
        #[arg(long, value_enum)]
        mode: Mode,
    },
    /// Valuation report of a path file.
    Valuate {
        #[arg(long)]
        path: PathBuf,
        /// Space of a step path (`t,point` header).
        #[arg(long)]
        space: Option<PathBuf>,
        /// Target line of a piecewise-linear path (`t,y` header).
        #[arg(long, default_value = "rho")]
        kind: LineKind,
    },
    /// Run the acceptance suite.
    Properties {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Append wall-clock times; the report is then no longer reproducible.
        #[arg(long)]
        timings: bool,
    },
}

/// A finished command: text for stdout and the process exit status.
#[derive(Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, code: 0 }
    }
}

/// A command that could not produce a report.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Parse(_) | Error::Structural(_) => EXIT_PARSE,
            Error::CapExceeded { .. } => EXIT_CAP,
            Error::Property(_) => EXIT_PROPERTY,
            _ => EXIT_INVALID,
        };
        Failure { code, message: e.to_string() }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| Failure { code: EXIT_OTHER, message: format!("cannot read {}: {e}", path.display()) })
}

fn load_space(path: &Path) -> Result<FiniteRhoSpace, Failure> {
    parse_space(&read(path)?).map_err(|e| {
        let mut f = Failure::from(e);
        f.message = format!("{}: {}", path.display(), f.message);
        f
    })
}

fn load_spaces(paths: &[PathBuf]) -> Result<Vec<FiniteRhoSpace>, Failure> {
    paths.iter().map(|p| load_space(p)).collect()
}

fn caps(cli: &Cli) -> (Caps, usize) {
    match cli.cap {
        Some(n) => (
            Caps { product_points: n.into(), exponential_candidates: n.into() },
            usize::try_from(n).unwrap_or(usize::MAX),
        ),
        None => (Caps::default(), DEFAULT_OPEN_CAP),
    }
}

fn render_space(space: &FiniteRhoSpace, as_json: bool) -> String {
    if as_json {
        space_to_json(space)
    } else {
        matrix_table(space)
    }
}

#[derive(Serialize)]
struct ValidateReport {
    valid: bool,
    points: usize,
    violations: Vec<String>,
}

fn validate_cmd(path: &Path, as_json: bool) -> Result<Outcome, Failure> {
    let (points, violations) = match parse_space(&read(path)?) {
        Ok(s) => (s.len(), Vec::new()),
        Err(Error::Axioms(v)) => (0, v.iter().map(ToString::to_string).collect()),
        Err(e) => return Err(e.into()),
    };
    let valid = violations.is_empty();
    let stdout = if as_json {
        json(&ValidateReport { valid, points, violations })
    } else if valid {
        format!("valid: {points} points\n")
    } else {
        let mut s = format!("invalid: {} violations\n", violations.len());
        for v in &violations {
            let _ = writeln!(s, "  {v}");
        }
        s
    };
    Ok(Outcome { stdout, code: if valid { 0 } else { EXIT_INVALID } })
}

#[derive(Serialize)]
struct ClassifyReport {
    points: usize,
    positive: bool,
    finite_valued: bool,
    symmetric: bool,
    linear: bool,
    affordable: bool,
    flat_points: Vec<String>,
    regular_points: Vec<String>,
}

fn classify_cmd(space: &FiniteRhoSpace, as_json: bool) -> String {
    let p = classify(space);
    let names = |v: &[usize]| v.iter().map(|&i| space.label(i).to_string()).collect::<Vec<_>>();
    let r = ClassifyReport {
        points: space.len(),
        positive: p.positive,
        finite_valued: p.finite_valued,
        symmetric: p.symmetric,
        linear: p.linear,
        affordable: p.affordable,
        flat_points: names(&p.flat_points),
        regular_points: names(&p.regular_points),
    };
    if as_json {
        return json(&r);
    }
    format!(
        "points: {}\npositive: {}\nfinite_valued: {}\nsymmetric: {}\nlinear: {}\naffordable: {}\nflat_points: {}\nregular_points: {}\n",
        r.points,
        r.positive,
        r.finite_valued,
        r.symmetric,
        r.linear,
        r.affordable,
        r.flat_points.join(" "),
        r.regular_points.join(" ")
    )
}

fn render_topology(t: &FiniteTopology, as_json: bool) -> String {
    if as_json {
        topology_to_json(t)
    } else {
        format!("{} open sets\n{t}", t.opens().len())
    }
}

#[derive(Serialize)]
struct PropertyLine {
    id: usize,
    name: &'static str,
    passed: bool,
    cases: usize,
    detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    seconds: Option<String>,
}

fn properties_cmd(seed: u64, timings: bool, as_json: bool) -> Outcome {
    let results = run_all(seed);
    let failed = results.iter().filter(|r| !r.passed).count();
    let stdout = if as_json {
        let lines: Vec<PropertyLine> = results
            .iter()
            .map(|r| PropertyLine {
                id: r.id,
                name: r.name,
                passed: r.passed,
                cases: r.cases,
                detail: r.detail.clone(),
                seconds: timings.then(|| format!("{:.3}", r.elapsed.as_secs_f64())),
            })
            .collect();
        json(&lines)
    } else {
        let mut s = format!("seed {seed}\n");
        for r in &results {
            s.push_str(&r.line());
            if timings {
                let _ = write!(s, "  [{:.3} s]", r.elapsed.as_secs_f64());
            }
            s.push('\n');
        }
        let _ = writeln!(s, "{} passed, {} failed", results.len() - failed, failed);
        s
    };
    Outcome { stdout, code: if failed == 0 { 0 } else { EXIT_PROPERTY } }
}

/// Executes a parsed command line.
pub fn run(cli: &Cli) -> Result<Outcome, Failure> {
    let as_json = cli.json;
    let (caps, open_cap) = caps(cli);
    match &cli.command {
        Command::Validate { space } => validate_cmd(space, as_json),
        Command::Classify { space } => Ok(Outcome::ok(classify_cmd(&load_space(space)?, as_json))),
        Command::Symmetrize { space, mode } => {
            let s = load_space(space)?;
            let out = match mode {
                Mode::Reflective => reflective_sym(&s),
                Mode::Coreflective => coreflective_sym(&s),
            };
            Ok(Outcome::ok(render_space(&out, as_json)))
        }
        Command::Quotient { space, rel } => {
            let s = load_space(space)?;
            let r = parse_relation(&read(rel)?, &s)?;
            let q = quotient(&s, &r)?;
            if as_json {
                return Ok(Outcome::ok(space_to_json(&q.space)));
            }
            let mut out = matrix_table(&q.space);
            out.push_str("projection:\n");
            for (i, &c) in q.projection.iter().enumerate() {
                let _ = writeln!(out, "  {} -> {}", s.label(i), q.space.label(c));
            }
            Ok(Outcome::ok(out))
        }
        Command::Product { spaces } | Command::Tensor { spaces } => {
            let loaded = load_spaces(spaces)?;
            let refs: Vec<&FiniteRhoSpace> = loaded.iter().collect();
            let out = if matches!(cli.command, Command::Product { .. }) {
                product(&refs, &caps)?
            } else {
                tensor(&refs, &caps)?
            };
            Ok(Outcome::ok(render_space(&out, as_json)))
        }
        Command::Exponential { spaces } => {
            if spaces.len() != 2 {
                return Err(Failure {
                    code: EXIT_PARSE,
                    message: format!("exponential takes exactly two --space files, got {}", spaces.len()),
                });
            }
            let mut loaded = load_spaces(spaces)?.into_iter().map(Arc::new);
            let (y, z) = (loaded.next().expect("two spaces"), loaded.next().expect("two spaces"));
            let e = exponential(&y, &z, &caps)?;
            Ok(Outcome::ok(render_space(&e.space, as_json)))
        }
        Command::Topology { space, mode, past } => {
            let s = load_space(space)?;
            let t = match (mode, past) {
                (Some(Mode::Reflective), _) => reflective_topology(&s)?,
                (Some(Mode::Coreflective), _) => coreflective_topology(&s)?,
                (None, true) => past_topology(&s)?,
                (None, false) => future_topology_capped(&s, open_cap)?,
            };
            Ok(Outcome::ok(render_topology(&t, as_json)))
        }
        Command::Preorder { space, mode } => {
            let s = load_space(space)?;
            let p = match mode {
                Mode::Reflective => reflective_preorder(&s),
                Mode::Coreflective => coreflective_preorder(&s),
            };
            Ok(Outcome::ok(if as_json { preorder_to_json(&p) } else { p.to_string() }))
        }
        Command::Valuate { path, space, kind } => {
            let s = space.as_deref().map(load_space).transpose()?.map(Arc::new);
            let report = match parse_path(&read(path)?, s.as_ref(), *kind)? {
                PathFile::Linear(p) => p.valuation(),
                PathFile::Step(p) => p.valuation(),
            };
            if !report.is_consistent() {
                return Err(Error::Property("valuation report is inconsistent".into()).into());
            }
            Ok(Outcome::ok(if as_json { report_to_json(&report) } else { report.render_text() }))
        }
        Command::Properties { seed, timings } => Ok(properties_cmd(*seed, *timings, as_json)),
    }
}

/// Parses `args`, runs the command and returns the exit status, writing the
/// report to stdout and diagnostics to stderr.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match run(&cli) {
        Ok(out) => {
            print!("{}", out.stdout);
            out.code
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn command_line_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn error_codes_are_distinct() {
        let codes = [EXIT_OTHER, EXIT_PARSE, EXIT_INVALID, EXIT_CAP, EXIT_PROPERTY];
        let set: std::collections::BTreeSet<i32> = codes.into_iter().collect();
        assert_eq!(set.len(), codes.len());
        assert_eq!(Failure::from(Error::Parse("x".into())).code, EXIT_PARSE);
        assert_eq!(Failure::from(Error::CapExceeded { what: "p", size: 2, cap: 1 }).code, EXIT_CAP);
        assert_eq!(Failure::from(Error::Axioms(vec![])).code, EXIT_INVALID);
        assert_eq!(Failure::from(Error::Property("x".into())).code, EXIT_PROPERTY);
    }

    #[test]
    fn flags_parse() {
        let cli = Cli::try_parse_from(["rhospace", "tensor", "--space", "a.json", "--space", "b.json", "--json"]).unwrap();
        assert!(cli.json);
        match cli.command {
            Command::Tensor { spaces } => assert_eq!(spaces.len(), 2),
            other => panic!("parsed {other:?}"),
        }
        let cli = Cli::try_parse_from(["rhospace", "valuate", "--path", "p.csv", "--kind", "delta0"]).unwrap();
        assert!(matches!(cli.command, Command::Valuate { kind: LineKind::Delta0, .. }));
        assert!(Cli::try_parse_from(["rhospace", "symmetrize", "--space", "a", "--mode", "sideways"]).is_err());
        assert!(Cli::try_parse_from(["rhospace", "topology", "--space", "a", "--mode", "reflective", "--past"]).is_err());
    }
}
