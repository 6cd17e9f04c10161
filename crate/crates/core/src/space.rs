//! Finite ρ-metric spaces: a labelled point set with an extended-real cost
//! matrix satisfying the triangle inequality and `rho(x, x) in {0, -inf}`.
//!
//! A [`FiniteRhoSpace`] can only be built through validation, so every value
//! of the type satisfies the axioms.

use std::collections::HashSet;
use std::fmt;
use std::ops::{Index, IndexMut};
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::extended::{esum, positive_part, scale, Coeff, ExtReal, Weight};

/// Largest space for which [`is_reversive`] runs its permutation search.
pub const REVERSIVE_MAX_POINTS: usize = 6;

/// A square matrix of extended reals, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CostMatrix {
    n: usize,
    entries: Vec<ExtReal>,
}

impl CostMatrix {
    pub fn filled(n: usize, value: ExtReal) -> Self {
        CostMatrix { n, entries: vec![value; n * n] }
    }

    /// Builds from rows; fails unless every row has length `rows.len()`.
    pub fn from_rows(rows: Vec<Vec<ExtReal>>) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(Error::Structural(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            entries.extend(row);
        }
        Ok(CostMatrix { n, entries })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> ExtReal) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j));
            }
        }
        CostMatrix { n, entries }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &ExtReal {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: ExtReal) {
        self.entries[i * self.n + j] = value;
    }

    pub fn rows(&self) -> Vec<Vec<ExtReal>> {
        self.entries.chunks(self.n.max(1)).take(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = &ExtReal> {
        self.entries.iter()
    }

    pub fn transpose(&self) -> CostMatrix {
        CostMatrix::from_fn(self.n, |i, j| self.get(j, i).clone())
    }

    pub fn map(&self, f: impl Fn(&ExtReal) -> ExtReal) -> CostMatrix {
        CostMatrix { n: self.n, entries: self.entries.iter().map(f).collect() }
    }

    /// Entrywise `self <= other`; matrices of different size compare false.
    pub fn le(&self, other: &CostMatrix) -> bool {
        self.n == other.n && self.entries.iter().zip(&other.entries).all(|(a, b)| a <= b)
    }
}

impl Index<(usize, usize)> for CostMatrix {
    type Output = ExtReal;
    fn index(&self, (i, j): (usize, usize)) -> &ExtReal {
        self.get(i, j)
    }
}

impl IndexMut<(usize, usize)> for CostMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut ExtReal {
        &mut self.entries[i * self.n + j]
    }
}

/// A failed axiom instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// `rho(point, point)` is neither `0` nor `-inf`.
    Diagonal { point: String, value: ExtReal },
    /// `rho(x, y) + rho(y, z) = lhs < rhs = rho(x, z)`.
    Triangle { x: String, y: String, z: String, lhs: ExtReal, rhs: ExtReal },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Diagonal { point, value } => {
                write!(f, "diagonal at {point}: rho({point},{point}) = {value}, expected 0 or -inf")
            }
            Violation::Triangle { x, y, z, lhs, rhs } => write!(
                f,
                "triangle ({x},{y},{z}): rho({x},{y}) + rho({y},{z}) = {lhs} < {rhs} = rho({x},{z})"
            ),
        }
    }
}

fn check_structure(labels: &[String], rho: &CostMatrix) -> Result<()> {
    if labels.len() != rho.size() {
        return Err(Error::Structural(format!(
            "{} labels for a {}x{} matrix",
            labels.len(),
            rho.size(),
            rho.size()
        )));
    }
    let mut seen = HashSet::new();
    for l in labels {
        if !seen.insert(l.as_str()) {
            return Err(Error::Structural(format!("duplicate label {l:?}")));
        }
    }
    Ok(())
}

/// Lists every axiom violation. Structural problems (label count mismatch,
/// duplicate labels) are reported as an error instead.
pub fn validate(labels: &[String], rho: &CostMatrix) -> Result<Vec<Violation>> {
    check_structure(labels, rho)?;
    let n = rho.size();
    let mut out = Vec::new();
    for x in 0..n {
        let d = rho.get(x, x);
        if !(d.is_zero() || d.is_neg_inf()) {
            out.push(Violation::Diagonal { point: labels[x].clone(), value: d.clone() });
        }
    }
    for x in 0..n {
        for y in 0..n {
            let xy = rho.get(x, y);
            if xy.is_pos_inf() {
                continue;
            }
            for z in 0..n {
                let lhs = esum(xy, rho.get(y, z));
                let rhs = rho.get(x, z);
                if lhs < *rhs {
                    out.push(Violation::Triangle {
                        x: labels[x].clone(),
                        y: labels[y].clone(),
                        z: labels[z].clone(),
                        lhs,
                        rhs: rhs.clone(),
                    });
                }
            }
        }
    }
    Ok(out)
}

/// A finite ρ-metric space. Immutable; always satisfies the axioms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteRhoSpace {
    labels: Vec<String>,
    rho: CostMatrix,
}

impl FiniteRhoSpace {
    /// Validates and wraps. Fails with [`Error::Structural`] or [`Error::Axioms`].
    pub fn new(labels: Vec<String>, rho: CostMatrix) -> Result<Self> {
        let violations = validate(&labels, &rho)?;
        if !violations.is_empty() {
            return Err(Error::Axioms(violations));
        }
        Ok(FiniteRhoSpace { labels, rho })
    }

    pub fn from_rows<S: Into<String>>(labels: Vec<S>, rows: Vec<Vec<ExtReal>>) -> Result<Self> {
        let labels = labels.into_iter().map(Into::into).collect();
        FiniteRhoSpace::new(labels, CostMatrix::from_rows(rows)?)
    }

    /// Builds from textual entries such as `"0"`, `"1/2"`, `"-inf"`.
    pub fn from_text_rows(labels: &[&str], rows: &[&[&str]]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|s| s.parse::<ExtReal>()).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        FiniteRhoSpace::from_rows(labels.to_vec(), rows)
    }

    /// Skips validation; only for constructions whose output is valid by proof
    /// and is re-checked in tests.
    pub(crate) fn new_unchecked(labels: Vec<String>, rho: CostMatrix) -> Self {
        debug_assert!(
            labels.len() > 24 || validate(&labels, &rho).map(|v| v.is_empty()).unwrap_or(false)
        );
        FiniteRhoSpace { labels, rho }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn rho(&self, i: usize, j: usize) -> &ExtReal {
        self.rho.get(i, j)
    }

    pub fn matrix(&self) -> &CostMatrix {
        &self.rho
    }

    pub fn is_flat(&self, i: usize) -> bool {
        self.rho.get(i, i).is_neg_inf()
    }

    pub fn is_positive(&self) -> bool {
        self.rho.entries().all(|e| *e >= ExtReal::zero())
    }

    pub fn is_symmetric(&self) -> bool {
        self.rho == self.rho.transpose()
    }

    /// Same labels, matrix replaced; validated.
    pub fn with_matrix(&self, rho: CostMatrix) -> Result<Self> {
        FiniteRhoSpace::new(self.labels.clone(), rho)
    }

    /// Restriction to the given points, in the given order.
    pub fn subspace(&self, points: &[usize]) -> FiniteRhoSpace {
        let labels = points.iter().map(|&i| self.labels[i].clone()).collect();
        let rho = CostMatrix::from_fn(points.len(), |a, b| self.rho(points[a], points[b]).clone());
        FiniteRhoSpace::new_unchecked(labels, rho)
    }
}

/// Which of the standard properties a space has.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpaceProfile {
    pub positive: bool,
    pub finite_valued: bool,
    pub symmetric: bool,
    pub linear: bool,
    /// No entry equals `+inf`.
    pub affordable: bool,
    pub flat_points: Vec<usize>,
    pub regular_points: Vec<usize>,
}

pub fn classify(space: &FiniteRhoSpace) -> SpaceProfile {
    let n = space.len();
    let m = space.matrix();
    let finite_valued = m.entries().all(ExtReal::is_finite);
    let linear = finite_valued
        && (0..n).all(|x| {
            (0..n).all(|y| (0..n).all(|z| esum(m.get(x, y), m.get(y, z)) == *m.get(x, z)))
        });
    let (flat_points, regular_points) = (0..n).partition(|&i| space.is_flat(i));
    SpaceProfile {
        positive: space.is_positive(),
        finite_valued,
        symmetric: space.is_symmetric(),
        linear,
        affordable: !m.entries().any(ExtReal::is_pos_inf),
        flat_points,
        regular_points,
    }
}

/// The opposite space, `rho_op(x, y) = rho(y, x)`.
pub fn opposite(space: &FiniteRhoSpace) -> FiniteRhoSpace {
    FiniteRhoSpace::new_unchecked(space.labels.clone(), space.rho.transpose())
}

/// Entrywise positive part: the least δ-metric above `rho`.
pub fn positive_coreflection(space: &FiniteRhoSpace) -> FiniteRhoSpace {
    let rho = space.rho.map(|e| positive_part(e).into_inner());
    FiniteRhoSpace::new_unchecked(space.labels.clone(), rho)
}

fn owned_labels<S: AsRef<str>>(labels: &[S]) -> Vec<String> {
    labels.iter().map(|s| s.as_ref().to_string()).collect()
}

/// `0` on the diagonal, `+inf` elsewhere: the greatest ρ-metric.
pub fn discrete<S: AsRef<str>>(labels: &[S]) -> Result<FiniteRhoSpace> {
    let n = labels.len();
    let rho = CostMatrix::from_fn(n, |i, j| if i == j { ExtReal::zero() } else { ExtReal::PosInf });
    FiniteRhoSpace::new(owned_labels(labels), rho)
}

/// `-inf` everywhere: the least ρ-metric.
pub fn chaotic<S: AsRef<str>>(labels: &[S]) -> Result<FiniteRhoSpace> {
    let n = labels.len();
    FiniteRhoSpace::new(owned_labels(labels), CostMatrix::filled(n, ExtReal::NegInf))
}

/// The one-point space with `rho = 0`; unit of the tensor product.
pub fn delta_singleton() -> FiniteRhoSpace {
    FiniteRhoSpace::new_unchecked(vec!["*".into()], CostMatrix::filled(1, ExtReal::zero()))
}

/// The one-point space with `rho = -inf`; terminal object.
pub fn terminal() -> FiniteRhoSpace {
    FiniteRhoSpace::new_unchecked(vec!["*".into()], CostMatrix::filled(1, ExtReal::NegInf))
}

/// Entrywise `l * rho`, with `0 * inf = inf` and `0 * -inf = -inf`.
pub fn scale_space(l: &Coeff, space: &FiniteRhoSpace) -> FiniteRhoSpace {
    FiniteRhoSpace::new_unchecked(space.labels.clone(), space.rho.map(|e| scale(l, e)))
}

/// The linear space `rho(x, y) = phi(y) - phi(x)`.
pub fn potential_space<S: AsRef<str>>(labels: &[S], phi: &[BigRational]) -> Result<FiniteRhoSpace> {
    if labels.len() != phi.len() {
        return Err(Error::Structural(format!(
            "{} labels but {} potential values",
            labels.len(),
            phi.len()
        )));
    }
    let rho = CostMatrix::from_fn(phi.len(), |i, j| ExtReal::Finite(&phi[j] - &phi[i]));
    FiniteRhoSpace::new(owned_labels(labels), rho)
}

/// A potential of a linear space, normalised to vanish at `base`.
pub fn recover_potential(space: &FiniteRhoSpace, base: usize) -> Result<Vec<BigRational>> {
    if base >= space.len() {
        return Err(Error::Domain(format!("base point {base} out of range")));
    }
    if !classify(space).linear {
        return Err(Error::NotLinear);
    }
    Ok((0..space.len())
        .map(|x| space.rho(base, x).finite().cloned().expect("linear spaces are finite"))
        .collect())
}

/// Entrywise absolute value of a linear space: a finite symmetric δ-space.
pub fn abs_space(space: &FiniteRhoSpace) -> Result<FiniteRhoSpace> {
    if !classify(space).linear {
        return Err(Error::NotLinear);
    }
    Ok(FiniteRhoSpace::new_unchecked(space.labels.clone(), space.rho.map(ExtReal::abs)))
}

/// A finite abelian group given by its addition table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CayleyTable {
    labels: Vec<String>,
    table: Vec<Vec<usize>>,
    zero: usize,
}

impl CayleyTable {
    /// Checks closure, associativity, commutativity, identity and inverses.
    pub fn new(labels: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty carrier".into()));
        }
        if table.len() != n || table.iter().any(|r| r.len() != n || r.iter().any(|&v| v >= n)) {
            return Err(Error::InvalidGroup("table is not an n x n table over the carrier".into()));
        }
        let add = |a: usize, b: usize| table[a][b];
        for a in 0..n {
            for b in 0..n {
                if add(a, b) != add(b, a) {
                    return Err(Error::InvalidGroup(format!("{} + {} is not commutative", labels[a], labels[b])));
                }
                for c in 0..n {
                    if add(add(a, b), c) != add(a, add(b, c)) {
                        return Err(Error::InvalidGroup(format!(
                            "associativity fails on ({}, {}, {})",
                            labels[a], labels[b], labels[c]
                        )));
                    }
                }
            }
        }
        let zero = (0..n)
            .find(|&e| (0..n).all(|a| add(e, a) == a))
            .ok_or_else(|| Error::InvalidGroup("no identity element".into()))?;
        for a in 0..n {
            if !(0..n).any(|b| add(a, b) == zero) {
                return Err(Error::InvalidGroup(format!("{} has no inverse", labels[a])));
            }
        }
        Ok(CayleyTable { labels, table, zero })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn neg(&self, a: usize) -> usize {
        (0..self.len()).find(|&b| self.add(a, b) == self.zero).expect("validated inverses")
    }

    /// `b - a`.
    pub fn sub(&self, b: usize, a: usize) -> usize {
        self.add(b, self.neg(a))
    }
}

/// The cyclic group `Z/n`, labelled `0..n-1`.
pub fn cyclic_group(n: usize) -> Result<CayleyTable> {
    let labels = (0..n).map(|i| i.to_string()).collect();
    let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
    CayleyTable::new(labels, table)
}

/// The invariant space `rho(x, y) = mu(y - x)` of a ρ-norm.
///
/// `mu` must satisfy `mu(x) + mu(y) >= mu(x + y)` and `mu(0) <= 0`.
pub fn norm_space(group: &CayleyTable, mu: &[ExtReal]) -> Result<FiniteRhoSpace> {
    let n = group.len();
    if mu.len() != n {
        return Err(Error::InvalidNorm(format!("{} values for a group of order {n}", mu.len())));
    }
    let z = group.zero();
    if mu[z] > ExtReal::zero() {
        return Err(Error::InvalidNorm(format!("mu(0) = {} is positive", mu[z])));
    }
    for a in 0..n {
        for b in 0..n {
            let s = group.add(a, b);
            if esum(&mu[a], &mu[b]) < mu[s] {
                return Err(Error::InvalidNorm(format!(
                    "mu({}) + mu({}) = {} < {} = mu({})",
                    group.labels[a],
                    group.labels[b],
                    esum(&mu[a], &mu[b]),
                    mu[s],
                    group.labels[s]
                )));
            }
        }
    }
    let rho = CostMatrix::from_fn(n, |x, y| mu[group.sub(y, x)].clone());
    FiniteRhoSpace::new(group.labels.clone(), rho)
}

/// Whether the space is isometric to its opposite. Exhaustive permutation
/// search, so limited to [`REVERSIVE_MAX_POINTS`] points.
pub fn is_reversive(space: &FiniteRhoSpace) -> Result<bool> {
    let n = space.len();
    if n > REVERSIVE_MAX_POINTS {
        return Err(Error::CapExceeded {
            what: "reversive check",
            size: n as u128,
            cap: REVERSIVE_MAX_POINTS as u128,
        });
    }
    // sigma is an isometry X -> X^op: rho(sigma x, sigma y) = rho(y, x)
    fn search(space: &FiniteRhoSpace, perm: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        let k = perm.len();
        let n = space.len();
        if k == n {
            return true;
        }
        for c in 0..n {
            if used[c] {
                continue;
            }
            let ok = (0..=k).all(|j| {
                let cj = if j == k { c } else { perm[j] };
                space.rho(c, cj) == space.rho(j, k) && space.rho(cj, c) == space.rho(k, j)
            });
            if ok {
                perm.push(c);
                used[c] = true;
                if search(space, perm, used) {
                    return true;
                }
                perm.pop();
                used[c] = false;
            }
        }
        false
    }
    Ok(search(space, &mut Vec::with_capacity(n), &mut vec![false; n]))
}

/// A function between the carriers of two spaces. Lipschitz properties are
/// computed on demand, never assumed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointMap {
    source: Arc<FiniteRhoSpace>,
    target: Arc<FiniteRhoSpace>,
    assignment: Vec<usize>,
}

impl PointMap {
    pub fn new(
        source: Arc<FiniteRhoSpace>,
        target: Arc<FiniteRhoSpace>,
        assignment: Vec<usize>,
    ) -> Result<Self> {
        if assignment.len() != source.len() {
            return Err(Error::InvalidMap(format!(
                "assignment has {} entries for a source of {} points",
                assignment.len(),
                source.len()
            )));
        }
        if let Some(&bad) = assignment.iter().find(|&&y| y >= target.len()) {
            return Err(Error::InvalidMap(format!("image index {bad} is outside the target")));
        }
        Ok(PointMap { source, target, assignment })
    }

    pub fn identity(space: Arc<FiniteRhoSpace>) -> Self {
        let assignment = (0..space.len()).collect();
        PointMap { source: space.clone(), target: space, assignment }
    }

    pub fn source(&self) -> &Arc<FiniteRhoSpace> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteRhoSpace> {
        &self.target
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn apply(&self, x: usize) -> usize {
        self.assignment[x]
    }

    /// `g . self`.
    pub fn then(&self, g: &PointMap) -> Result<PointMap> {
        if *self.target != *g.source {
            return Err(Error::InvalidMap("composition of non-composable maps".into()));
        }
        let assignment = self.assignment.iter().map(|&y| g.apply(y)).collect();
        Ok(PointMap { source: self.source.clone(), target: g.target.clone(), assignment })
    }

    pub fn is_lipschitz(&self, l: &Coeff) -> bool {
        lipschitz_status(self, l)
    }
}

/// `l * rho_X(x, x') >= rho_Y(f x, f x')` for all pairs.
pub fn lipschitz_status(f: &PointMap, l: &Coeff) -> bool {
    let n = f.source.len();
    (0..n).all(|x| {
        (0..n).all(|x2| scale(l, f.source.rho(x, x2)) >= *f.target.rho(f.apply(x), f.apply(x2)))
    })
}

/// The exact set of finite constants `l >= 0` for which a map is Lipschitz.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AdmissibleSet {
    Empty,
    /// Closed interval `[lo, hi]`; `hi = None` means unbounded above.
    Interval { lo: BigRational, hi: Option<BigRational> },
}

impl AdmissibleSet {
    pub fn contains(&self, l: &BigRational) -> bool {
        match self {
            AdmissibleSet::Empty => false,
            AdmissibleSet::Interval { lo, hi } => l >= lo && hi.as_ref().is_none_or(|h| l <= h),
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, AdmissibleSet::Empty)
    }
}

impl fmt::Display for AdmissibleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AdmissibleSet::Empty => f.write_str("{}"),
            AdmissibleSet::Interval { lo, hi: Some(h) } if lo == h => {
                write!(f, "{{{}}}", ExtReal::Finite(lo.clone()))
            }
            AdmissibleSet::Interval { lo, hi } => write!(
                f,
                "[{}, {}]",
                ExtReal::Finite(lo.clone()),
                hi.clone().map(ExtReal::Finite).unwrap_or(ExtReal::PosInf)
            ),
        }
    }
}

/// Intersects the per-pair constraints `l * a >= b` over all source pairs.
pub fn admissible_constants(f: &PointMap) -> AdmissibleSet {
    let mut lo = BigRational::zero();
    let mut hi: Option<BigRational> = None;
    let n = f.source.len();
    for x in 0..n {
        for x2 in 0..n {
            let a = f.source.rho(x, x2);
            let b = f.target.rho(f.apply(x), f.apply(x2));
            match (a, b) {
                (ExtReal::PosInf, _) | (_, ExtReal::NegInf) => {}
                (ExtReal::NegInf, _) | (_, ExtReal::PosInf) => return AdmissibleSet::Empty,
                (ExtReal::Finite(a), ExtReal::Finite(b)) => {
                    if a.is_zero() {
                        if b.is_positive() {
                            return AdmissibleSet::Empty;
                        }
                    } else if a.is_positive() {
                        let bound = b / a;
                        if bound > lo {
                            lo = bound;
                        }
                    } else {
                        let bound = b / a;
                        if hi.as_ref().is_none_or(|h| bound < *h) {
                            hi = Some(bound);
                        }
                    }
                }
            }
        }
    }
    match hi {
        Some(h) if h < lo => AdmissibleSet::Empty,
        hi => AdmissibleSet::Interval { lo, hi },
    }
}

/// The least admissible constant, `+inf` if none exists. Only defined for
/// positive sources, where admissible constants are upward closed.
pub fn lipschitz_weight(f: &PointMap) -> Result<Weight> {
    if !f.source.is_positive() {
        return Err(Error::NotPositive);
    }
    Ok(match admissible_constants(f) {
        AdmissibleSet::Empty => Weight::infinite(),
        AdmissibleSet::Interval { lo, .. } => Weight::new(ExtReal::Finite(lo))?,
    })
}

/// Labels rendering each rational exactly.
pub fn rational_labels(values: &[BigRational]) -> Vec<String> {
    values.iter().map(|v| ExtReal::Finite(v.clone()).to_string()).collect()
}

#[cfg(test)]
pub(crate) fn int_rational(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}
