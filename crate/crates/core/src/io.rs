//! File formats: JSON for spaces, relations, preorders and topologies, CSV
//! for paths. Every emitted value re-parses to an equal value.

use std::sync::Arc;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::constructions::EquivRelation;
use crate::error::{Error, Result};
use crate::extended::{parse_rational, ExtReal};
use crate::paths::{LineKind, PLPath, StepPath, ValuationReport};
use crate::space::{CostMatrix, FiniteRhoSpace};
use crate::symmetry::Preorder;
use crate::topology::{FiniteTopology, Subset};

fn json_err(e: serde_json::Error) -> Error {
    Error::Parse(format!("invalid JSON: {e}"))
}

fn to_pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

fn index_by_label(labels: &[String], label: &str) -> Result<usize> {
    labels
        .iter()
        .position(|l| l == label)
        .ok_or_else(|| Error::Structural(format!("unknown point '{label}'")))
}

#[derive(Serialize, Deserialize)]
struct SpaceFile {
    points: Vec<String>,
    rho: Vec<Vec<Value>>,
}

fn parse_entry(v: &Value) -> Result<ExtReal> {
    match v {
        Value::String(s) => s.parse(),
        Value::Number(n) => n.to_string().parse(),
        other => Err(Error::Parse(format!("matrix entry {other} is neither a number nor a string"))),
    }
}

/// `{"points": [...], "rho": [[...], ...]}` with numeric or string entries.
pub fn parse_space(text: &str) -> Result<FiniteRhoSpace> {
    let file: SpaceFile = serde_json::from_str(text).map_err(json_err)?;
    let rows = file
        .rho
        .iter()
        .map(|r| r.iter().map(parse_entry).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    FiniteRhoSpace::new(file.points, CostMatrix::from_rows(rows)?)
}

/// Entries are written as strings through the exact renderer.
pub fn space_to_json(space: &FiniteRhoSpace) -> String {
    let rho = space
        .matrix()
        .rows()
        .into_iter()
        .map(|r| r.into_iter().map(|e| Value::String(e.to_string())).collect())
        .collect();
    to_pretty(&SpaceFile { points: space.labels().to_vec(), rho })
}

/// Aligned text table of a matrix, for human-readable reports.
pub fn matrix_table(space: &FiniteRhoSpace) -> String {
    let n = space.len();
    let cells: Vec<Vec<String>> = (0..n).map(|i| (0..n).map(|j| space.rho(i, j).to_string()).collect()).collect();
    let head_w = space.labels().iter().map(|l| l.len()).max().unwrap_or(0);
    let col_w: Vec<usize> = (0..n)
        .map(|j| cells.iter().map(|r| r[j].len()).chain([space.label(j).len()]).max().unwrap_or(0))
        .collect();
    let mut out = format!("{:head_w$}", "");
    for j in 0..n {
        out.push_str(&format!("  {:>w$}", space.label(j), w = col_w[j]));
    }
    out.push('\n');
    for i in 0..n {
        out.push_str(&format!("{:head_w$}", space.label(i)));
        for j in 0..n {
            out.push_str(&format!("  {:>w$}", cells[i][j], w = col_w[j]));
        }
        out.push('\n');
    }
    out
}

/// A JSON list of classes of labels. Points not mentioned form singleton
/// classes.
pub fn parse_relation(text: &str, space: &FiniteRhoSpace) -> Result<EquivRelation> {
    let listed: Vec<Vec<String>> = serde_json::from_str(text).map_err(json_err)?;
    let mut classes = Vec::new();
    let mut seen = vec![false; space.len()];
    for class in &listed {
        let mut members = Vec::new();
        for label in class {
            let i = space
                .index_of(label)
                .ok_or_else(|| Error::InvalidRelation(format!("unknown point '{label}'")))?;
            if seen[i] {
                return Err(Error::InvalidRelation(format!("point '{label}' is listed twice")));
            }
            seen[i] = true;
            members.push(i);
        }
        classes.push(members);
    }
    classes.extend((0..space.len()).filter(|&i| !seen[i]).map(|i| vec![i]));
    EquivRelation::new(space.len(), classes)
}

pub fn relation_to_json(rel: &EquivRelation, labels: &[String]) -> String {
    let classes: Vec<Vec<&str>> =
        rel.classes().iter().map(|c| c.iter().map(|&i| labels[i].as_str()).collect()).collect();
    to_pretty(&classes)
}

#[derive(Serialize, Deserialize)]
struct PreorderFile {
    points: Vec<String>,
    successors: Vec<Vec<String>>,
}

/// `{"points": [...], "successors": [[...], ...]}`, one list per point.
pub fn parse_preorder(text: &str) -> Result<Preorder> {
    let file: PreorderFile = serde_json::from_str(text).map_err(json_err)?;
    let succ = file
        .successors
        .iter()
        .map(|s| s.iter().map(|l| index_by_label(&file.points, l)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Preorder::from_successors(file.points, &succ)
}

pub fn preorder_to_json(p: &Preorder) -> String {
    let successors = (0..p.len())
        .map(|i| p.successors(i).into_iter().map(|j| p.labels()[j].clone()).collect())
        .collect();
    to_pretty(&PreorderFile { points: p.labels().to_vec(), successors })
}

#[derive(Serialize, Deserialize)]
struct TopologyFile {
    points: Vec<String>,
    opens: Vec<Vec<String>>,
}

pub fn parse_topology(text: &str) -> Result<FiniteTopology> {
    let file: TopologyFile = serde_json::from_str(text).map_err(json_err)?;
    if file.points.len() > crate::topology::MAX_POINTS {
        return Err(Error::CapExceeded {
            what: "topology carrier",
            size: file.points.len() as u128,
            cap: crate::topology::MAX_POINTS as u128,
        });
    }
    let opens = file
        .opens
        .iter()
        .map(|set| {
            set.iter()
                .map(|l| index_by_label(&file.points, l))
                .try_fold(0 as Subset, |acc, i| i.map(|i| acc | 1 << i))
        })
        .collect::<Result<Vec<_>>>()?;
    FiniteTopology::from_opens(file.points, opens)
}

/// Open sets as sorted label lists, smallest first.
pub fn topology_to_json(t: &FiniteTopology) -> String {
    to_pretty(&TopologyFile { points: t.labels().to_vec(), opens: t.render_sets() })
}

/// A path read from CSV.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PathFile {
    /// Header `t,y`: breakpoints of a piecewise-linear path.
    Linear(PLPath),
    /// Header `t,point`: the first row at `t = 0`, then one row per switch.
    Step(StepPath),
}

fn csv_rows(text: &str) -> Result<(Vec<String>, Vec<Vec<String>>)> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(text.as_bytes());
    let header = rdr
        .headers()
        .map_err(|e| Error::Parse(format!("invalid CSV header: {e}")))?
        .iter()
        .map(str::to_string)
        .collect();
    let mut rows = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| Error::Parse(format!("invalid CSV row: {e}")))?;
        rows.push(rec.iter().map(str::to_string).collect());
    }
    Ok((header, rows))
}

/// Reads a path. Step paths need the space they live in; linear paths take
/// their target line from `kind`.
pub fn parse_path(text: &str, space: Option<&Arc<FiniteRhoSpace>>, kind: LineKind) -> Result<PathFile> {
    let (header, rows) = csv_rows(text)?;
    let header: Vec<&str> = header.iter().map(String::as_str).collect();
    let times = rows.iter().map(|r| parse_rational(&r[0])).collect::<Result<Vec<BigRational>>>()?;
    match header.as_slice() {
        ["t", "y"] => {
            let ys = rows.iter().map(|r| parse_rational(&r[1])).collect::<Result<Vec<_>>>()?;
            Ok(PathFile::Linear(PLPath::new(times, ys, kind)?))
        }
        ["t", "point"] => {
            let space = space.ok_or_else(|| Error::Parse("a step path needs a space".into()))?;
            if times.first().map(|t| *t != BigRational::from_integer(0.into())).unwrap_or(true) {
                return Err(Error::InvalidPath("the first row must be at t = 0".into()));
            }
            let visits = rows
                .iter()
                .map(|r| index_by_label(space.labels(), &r[1]))
                .collect::<Result<Vec<_>>>()
                .map_err(|e| Error::InvalidPath(e.to_string()))?;
            Ok(PathFile::Step(StepPath::new(space.clone(), visits, times[1..].to_vec())?))
        }
        other => Err(Error::Parse(format!("unknown path header {other:?}; expected t,y or t,point"))),
    }
}

pub fn path_to_csv(path: &PathFile) -> String {
    let mut out = String::new();
    match path {
        PathFile::Linear(p) => {
            out.push_str("t,y\n");
            for (t, y) in p.times().iter().zip(p.values()) {
                out.push_str(&format!("{},{}\n", ExtReal::Finite(t.clone()), ExtReal::Finite(y.clone())));
            }
        }
        PathFile::Step(p) => {
            out.push_str("t,point\n");
            out.push_str(&format!("0,{}\n", p.space().label(p.start())));
            for (t, &x) in p.switches().iter().zip(&p.visits()[1..]) {
                out.push_str(&format!("{},{}\n", ExtReal::Finite(t.clone()), p.space().label(x)));
            }
        }
    }
    out
}

#[derive(Serialize)]
struct ReportFile {
    v: String,
    v_plus: String,
    v_minus: String,
    total_variation: Option<String>,
    lipschitz_weight: String,
}

pub fn report_to_json(r: &ValuationReport) -> String {
    to_pretty(&ReportFile {
        v: r.v.to_string(),
        v_plus: r.v_plus.to_string(),
        v_minus: r.v_minus.to_string(),
        total_variation: r.total_variation.as_ref().map(|w| w.to_string()),
        lipschitz_weight: r.lipschitz_weight.to_string(),
    })
}

/// Serializes any plain value as pretty JSON with a trailing newline.
pub fn json<T: Serialize>(value: &T) -> String {
    to_pretty(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen;
    use crate::symmetry::reflective_preorder;
    use crate::topology::future_topology;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn space_parsing() {
        let s = parse_space(r#"{"points":["a","b"],"rho":[[0, 1.5],["-inf","7/2"]]}"#);
        assert!(matches!(s, Err(Error::Axioms(_))));
        let s = parse_space(r#"{"points":["a","b"],"rho":[[0, 1.5],["inf",0]]}"#).unwrap();
        assert_eq!(*s.rho(0, 1), ExtReal::ratio(3, 2));
        assert!(matches!(parse_space("{"), Err(Error::Parse(_))));
        assert!(matches!(parse_space(r#"{"points":["a"],"rho":[[true]]}"#), Err(Error::Parse(_))));
        assert!(matches!(parse_space(r#"{"points":["a","b"],"rho":[[0]]}"#), Err(Error::Structural(_))));
        assert!(parse_space(r#"{"points":["a"],"rho":[[1e-400]]}"#).is_err());
        let tiny = parse_space(r#"{"points":["a","b"],"rho":[[0,-1e-40],[1e-40,0]]}"#).unwrap();
        assert!(*tiny.rho(0, 1) < ExtReal::zero());
        assert_eq!(tiny.rho(0, 1).clone(), -tiny.rho(1, 0).clone());
    }

    #[test]
    fn relation_parsing() {
        let s = gen::close(&CostMatrix::filled(3, ExtReal::zero()));
        let r = parse_relation(r#"[["p0","p2"]]"#, &s).unwrap();
        assert!(r.related(0, 2) && !r.related(0, 1));
        assert!(parse_relation(r#"[["p0","p0"]]"#, &s).is_err());
        assert!(parse_relation(r#"[["zz"]]"#, &s).is_err());
        let back = parse_relation(&relation_to_json(&r, s.labels()), &s).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn path_parsing() {
        let p = parse_path("t,y\n0,0\n1/3,3\n2/3,1\n1,2\n", None, LineKind::Rho).unwrap();
        assert_eq!(parse_path(&path_to_csv(&p), None, LineKind::Rho).unwrap(), p);
        let s = Arc::new(gen::close(&CostMatrix::filled(2, ExtReal::int(1))));
        let q = parse_path("t,point\n0,p0\n0.5,p1\n", Some(&s), LineKind::Rho).unwrap();
        assert_eq!(parse_path(&path_to_csv(&q), Some(&s), LineKind::Rho).unwrap(), q);
        assert!(parse_path("t,point\n0.1,p0\n", Some(&s), LineKind::Rho).is_err());
        assert!(parse_path("t,point\n0,p9\n", Some(&s), LineKind::Rho).is_err());
        assert!(parse_path("t,point\n0,p0\n", None, LineKind::Rho).is_err());
        assert!(parse_path("a,b\n0,1\n", None, LineKind::Rho).is_err());
        assert!(parse_path("t,y\n0,x\n1,2\n", None, LineKind::Rho).is_err());
    }

    proptest! {
        #[test]
        fn round_trips(seed in any::<u64>()) {
            let s = gen::random_space(&mut ChaCha8Rng::seed_from_u64(seed), 6);
            prop_assert_eq!(&parse_space(&space_to_json(&s)).unwrap(), &s);
            let p = reflective_preorder(&s);
            prop_assert_eq!(&parse_preorder(&preorder_to_json(&p)).unwrap(), &p);
            let t = future_topology(&s).unwrap();
            prop_assert_eq!(&parse_topology(&topology_to_json(&t)).unwrap(), &t);
        }
    }
}
