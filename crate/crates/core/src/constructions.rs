//! Limits, colimits, tensor product and exponential of finite ρ-spaces.
//!
//! Products carry the l∞-type metric (pointwise max), tensor products the
//! l1-type metric (extended sum). Quotients take the infimum over chains
//! that alternate metric steps with free jumps inside a class, computed by
//! the shared min-plus closure.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::closure::MinPlusClosure;
use crate::error::{Error, Result};
use crate::extended::{esum_all, join_all, Coeff, ExtReal};
use crate::space::{delta_singleton, terminal, CostMatrix, FiniteRhoSpace, PointMap};

/// Size limits for constructions whose output grows multiplicatively.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Maximum carrier size of a product or tensor product.
    pub product_points: u128,
    /// Maximum number of candidate maps `|Z|^|Y|` an exponential enumerates.
    pub exponential_candidates: u128,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { product_points: 4096, exponential_candidates: 1_000_000 }
    }
}

/// Decomposes a product index into per-factor coordinates (first factor most
/// significant).
pub fn product_coords(sizes: &[usize], mut index: usize) -> Vec<usize> {
    let mut out = vec![0; sizes.len()];
    for (slot, &s) in out.iter_mut().zip(sizes).rev() {
        *slot = index % s;
        index /= s;
    }
    out
}

/// Inverse of [`product_coords`].
pub fn product_index(sizes: &[usize], coords: &[usize]) -> usize {
    coords.iter().zip(sizes).fold(0, |acc, (&c, &s)| acc * s + c)
}

fn carrier_size(spaces: &[&FiniteRhoSpace], caps: &Caps) -> Result<usize> {
    let mut total: u128 = 1;
    for s in spaces {
        total = total.saturating_mul(s.len() as u128);
    }
    if total > caps.product_points {
        return Err(Error::CapExceeded { what: "product carrier", size: total, cap: caps.product_points });
    }
    Ok(total as usize)
}

fn tuple_label(spaces: &[&FiniteRhoSpace], coords: &[usize]) -> String {
    let parts: Vec<&str> = spaces.iter().zip(coords).map(|(s, &c)| s.label(c)).collect();
    format!("({})", parts.join(","))
}

fn combine(
    spaces: &[&FiniteRhoSpace],
    caps: &Caps,
    fold: impl Fn(&[ExtReal]) -> ExtReal,
) -> Result<FiniteRhoSpace> {
    let n = carrier_size(spaces, caps)?;
    let sizes: Vec<usize> = spaces.iter().map(|s| s.len()).collect();
    let coords: Vec<Vec<usize>> = (0..n).map(|i| product_coords(&sizes, i)).collect();
    let labels = coords.iter().map(|c| tuple_label(spaces, c)).collect();
    let mut parts = Vec::with_capacity(spaces.len());
    let rho = CostMatrix::from_fn(n, |i, j| {
        parts.clear();
        parts.extend(spaces.iter().enumerate().map(|(k, s)| s.rho(coords[i][k], coords[j][k]).clone()));
        fold(&parts)
    });
    FiniteRhoSpace::new(labels, rho)
}

/// Cartesian product with the l∞-type metric. The empty product is [`terminal`].
pub fn product(spaces: &[&FiniteRhoSpace], caps: &Caps) -> Result<FiniteRhoSpace> {
    if spaces.is_empty() {
        return Ok(terminal());
    }
    combine(spaces, caps, |parts| join_all(parts))
}

/// Cartesian product with the l1-type metric. The empty tensor is the unit
/// [`delta_singleton`].
pub fn tensor(spaces: &[&FiniteRhoSpace], caps: &Caps) -> Result<FiniteRhoSpace> {
    if spaces.is_empty() {
        return Ok(delta_singleton());
    }
    combine(spaces, caps, |parts| esum_all(parts))
}

/// Disjoint union; entries across components are `+inf`.
pub fn sum(spaces: &[&FiniteRhoSpace]) -> Result<FiniteRhoSpace> {
    let mut owner = Vec::new();
    let mut labels = Vec::new();
    for (k, s) in spaces.iter().enumerate() {
        for i in 0..s.len() {
            owner.push((k, i));
            labels.push(format!("{k}:{}", s.label(i)));
        }
    }
    let rho = CostMatrix::from_fn(owner.len(), |a, b| {
        let (ka, ia) = owner[a];
        let (kb, ib) = owner[b];
        if ka == kb {
            spaces[ka].rho(ia, ib).clone()
        } else {
            ExtReal::PosInf
        }
    });
    FiniteRhoSpace::new(labels, rho)
}

/// The subspace where two parallel 1-Lipschitz maps agree, with its inclusion.
pub fn equalizer(f: &PointMap, g: &PointMap) -> Result<(FiniteRhoSpace, PointMap)> {
    if f.source() != g.source() || f.target() != g.target() {
        return Err(Error::InvalidMap("equalizer of non-parallel maps".into()));
    }
    for (name, m) in [("first", f), ("second", g)] {
        if !m.is_lipschitz(&Coeff::one()) {
            return Err(Error::NotLipschitz(format!("1 ({name} map)")));
        }
    }
    let points: Vec<usize> = (0..f.source().len()).filter(|&x| f.apply(x) == g.apply(x)).collect();
    let sub = f.source().subspace(&points);
    let inclusion = PointMap::new(Arc::new(sub.clone()), f.source().clone(), points)?;
    Ok((sub, inclusion))
}

/// An equivalence relation given as a partition of `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivRelation {
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
}

impl EquivRelation {
    /// Classes must be nonempty, disjoint and cover `0..n`.
    pub fn new(n: usize, classes: Vec<Vec<usize>>) -> Result<Self> {
        let mut class_of = vec![usize::MAX; n];
        for (c, members) in classes.iter().enumerate() {
            if members.is_empty() {
                return Err(Error::InvalidRelation(format!("class {c} is empty")));
            }
            for &p in members {
                if p >= n {
                    return Err(Error::InvalidRelation(format!("point {p} out of range")));
                }
                if class_of[p] != usize::MAX {
                    return Err(Error::InvalidRelation(format!("point {p} is in two classes")));
                }
                class_of[p] = c;
            }
        }
        if let Some(p) = class_of.iter().position(|&c| c == usize::MAX) {
            return Err(Error::InvalidRelation(format!("point {p} is in no class")));
        }
        Ok(EquivRelation { classes, class_of })
    }

    /// The identity relation: every point its own class.
    pub fn identity(n: usize) -> Self {
        EquivRelation { classes: (0..n).map(|i| vec![i]).collect(), class_of: (0..n).collect() }
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_of(&self, p: usize) -> usize {
        self.class_of[p]
    }

    pub fn related(&self, a: usize, b: usize) -> bool {
        self.class_of[a] == self.class_of[b]
    }

    pub fn num_points(&self) -> usize {
        self.class_of.len()
    }
}

/// A minimizing chain `x1, x2, ..., x2n`: metric steps `(x_{2j-1}, x_{2j})`
/// joined by jumps `x_{2j} R x_{2j+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainWitness {
    pub points: Vec<usize>,
    pub total: ExtReal,
}

impl ChainWitness {
    pub fn steps(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.points.chunks(2).map(|p| (p[0], p[1]))
    }

    /// Renders as `a -> b ~ c -> d = total` using the given labels.
    pub fn render(&self, labels: &[String]) -> String {
        let steps: Vec<String> =
            self.steps().map(|(a, b)| format!("{} -> {}", labels[a], labels[b])).collect();
        format!("{} = {}", steps.join(" ~ "), self.total)
    }
}

impl fmt::Display for ChainWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let steps: Vec<String> = self.steps().map(|(a, b)| format!("{a} -> {b}")).collect();
        write!(f, "{} = {}", steps.join(" ~ "), self.total)
    }
}

/// The quotient space together with its projection and chain witnesses.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub space: FiniteRhoSpace,
    pub projection: Vec<usize>,
    source: FiniteRhoSpace,
    relation: EquivRelation,
    closure: MinPlusClosure,
}

impl Quotient {
    /// A chain attaining the finite value between two classes.
    pub fn witness(&self, from: usize, to: usize) -> Option<ChainWitness> {
        let value = self.space.rho(from, to);
        if !value.is_finite() {
            return None;
        }
        let classes = self.relation.classes();
        let (u, v) = classes[from]
            .iter()
            .flat_map(|&u| classes[to].iter().map(move |&v| (u, v)))
            .find(|&(u, v)| self.closure.value(u, v) == value)?;
        let walk = self.closure.walk(u, v)?;
        let mut points = Vec::new();
        for pair in walk.windows(2) {
            let (a, b) = (pair[0], pair[1]);
            let jump = self.relation.related(a, b) && *self.source.rho(a, b) >= ExtReal::zero();
            if !jump {
                points.push(a);
                points.push(b);
            }
        }
        if points.is_empty() {
            points = vec![v, v];
        }
        let steps: Vec<ExtReal> =
            points.chunks(2).map(|p| self.source.rho(p[0], p[1]).clone()).collect();
        Some(ChainWitness { points, total: esum_all(&steps) })
    }

    pub fn source(&self) -> &FiniteRhoSpace {
        &self.source
    }

    pub fn relation(&self) -> &EquivRelation {
        &self.relation
    }
}

/// The greatest ρ-metric on the classes making the projection 1-Lipschitz.
pub fn quotient(space: &FiniteRhoSpace, rel: &EquivRelation) -> Result<Quotient> {
    let n = space.len();
    if rel.num_points() != n {
        return Err(Error::InvalidRelation(format!(
            "relation on {} points for a space of {n}",
            rel.num_points()
        )));
    }
    let zero = ExtReal::zero();
    let arcs = CostMatrix::from_fn(n, |u, v| {
        let r = space.rho(u, v);
        if rel.related(u, v) && *r > zero {
            zero.clone()
        } else {
            r.clone()
        }
    });
    let closure = MinPlusClosure::compute(&arcs);
    let classes = rel.classes();
    let k = classes.len();
    let rho = CostMatrix::from_fn(k, |a, b| {
        let mut best = ExtReal::PosInf;
        for &u in &classes[a] {
            for &v in &classes[b] {
                if *closure.value(u, v) < best {
                    best = closure.value(u, v).clone();
                }
            }
        }
        best
    });
    let labels = classes
        .iter()
        .map(|c| {
            if c.len() == 1 {
                space.label(c[0]).to_string()
            } else {
                let names: Vec<&str> = c.iter().map(|&p| space.label(p)).collect();
                format!("{{{}}}", names.join(","))
            }
        })
        .collect();
    Ok(Quotient {
        space: FiniteRhoSpace::new(labels, rho)?,
        projection: (0..n).map(|p| rel.class_of(p)).collect(),
        source: space.clone(),
        relation: rel.clone(),
        closure,
    })
}

/// The space of 1-Lipschitz maps `Y -> Z` with the sup metric.
#[derive(Clone, Debug)]
pub struct Exponential {
    pub space: Arc<FiniteRhoSpace>,
    pub maps: Vec<Vec<usize>>,
    domain: Arc<FiniteRhoSpace>,
    codomain: Arc<FiniteRhoSpace>,
    index: HashMap<Vec<usize>, usize>,
}

impl Exponential {
    pub fn index_of(&self, map: &[usize]) -> Option<usize> {
        self.index.get(map).copied()
    }

    pub fn domain(&self) -> &Arc<FiniteRhoSpace> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<FiniteRhoSpace> {
        &self.codomain
    }
}

fn is_one_lipschitz(y: &FiniteRhoSpace, z: &FiniteRhoSpace, h: &[usize]) -> bool {
    (0..y.len()).all(|a| (0..y.len()).all(|b| y.rho(a, b) >= z.rho(h[a], h[b])))
}

/// Enumerates the 1-Lipschitz maps `Y -> Z`; distance is the max over `y`.
pub fn exponential(y: &Arc<FiniteRhoSpace>, z: &Arc<FiniteRhoSpace>, caps: &Caps) -> Result<Exponential> {
    let candidates = (z.len() as u128).checked_pow(y.len() as u32).unwrap_or(u128::MAX);
    if candidates > caps.exponential_candidates {
        return Err(Error::CapExceeded {
            what: "exponential candidates",
            size: candidates,
            cap: caps.exponential_candidates,
        });
    }
    let maps: Vec<Vec<usize>> = crate::gen::all_assignments(y.len(), z.len())
        .filter(|h| is_one_lipschitz(y, z, h))
        .collect();
    let labels = maps
        .iter()
        .map(|h| {
            let names: Vec<&str> = h.iter().map(|&t| z.label(t)).collect();
            format!("[{}]", names.join(","))
        })
        .collect();
    let rho = CostMatrix::from_fn(maps.len(), |i, j| {
        join_all((0..y.len()).map(|p| z.rho(maps[i][p], maps[j][p])))
    });
    let index = maps.iter().enumerate().map(|(i, h)| (h.clone(), i)).collect();
    Ok(Exponential {
        space: Arc::new(FiniteRhoSpace::new(labels, rho)?),
        maps,
        domain: y.clone(),
        codomain: z.clone(),
        index,
    })
}

/// `f: X ⊗ Y -> Z` to `g: X -> Z^Y` with `g(x)(y) = f(x, y)`.
pub fn curry(f: &PointMap, x: &Arc<FiniteRhoSpace>, exp: &Exponential) -> Result<PointMap> {
    let y = exp.domain();
    if f.source().len() != x.len() * y.len() || f.target() != exp.codomain() {
        return Err(Error::InvalidMap("curry: map does not match X ⊗ Y -> Z".into()));
    }
    if !f.is_lipschitz(&Coeff::one()) {
        return Err(Error::NotLipschitz("1".into()));
    }
    let sizes = [x.len(), y.len()];
    let mut assignment = Vec::with_capacity(x.len());
    for a in 0..x.len() {
        let h: Vec<usize> = (0..y.len()).map(|b| f.apply(product_index(&sizes, &[a, b]))).collect();
        let idx = exp
            .index_of(&h)
            .ok_or_else(|| Error::NotLipschitz("1 (a partial map is not)".into()))?;
        assignment.push(idx);
    }
    PointMap::new(x.clone(), exp.space.clone(), assignment)
}

/// `g: X -> Z^Y` to `f: X ⊗ Y -> Z`; `tensor_xy` must be `tensor(X, Y)`.
pub fn uncurry(g: &PointMap, exp: &Exponential, tensor_xy: &Arc<FiniteRhoSpace>) -> Result<PointMap> {
    let x = g.source();
    let y = exp.domain();
    if g.target() != &exp.space || tensor_xy.len() != x.len() * y.len() {
        return Err(Error::InvalidMap("uncurry: map does not match X -> Z^Y".into()));
    }
    if !g.is_lipschitz(&Coeff::one()) {
        return Err(Error::NotLipschitz("1".into()));
    }
    let sizes = [x.len(), y.len()];
    let assignment = (0..tensor_xy.len())
        .map(|i| {
            let c = product_coords(&sizes, i);
            exp.maps[g.apply(c[0])][c[1]]
        })
        .collect();
    PointMap::new(tensor_xy.clone(), exp.codomain().clone(), assignment)
}

/// Entrywise comparison helper: `a <= b` for spaces on the same carrier size.
pub fn entrywise_le(a: &FiniteRhoSpace, b: &FiniteRhoSpace) -> bool {
    a.matrix().le(b.matrix())
}
