//! Line models, step paths in finite spaces, piecewise-linear paths into the
//! lines, and their valuations.
//!
//! All times are exact rationals. A step path is right-continuous and
//! piecewise constant: visit `k` occupies `[s_k, s_{k+1})`, the last visit
//! occupies `[s_m, 1]`. A switch time may equal `1`, meaning the final visit
//! happens only at the end instant; restrictions by non-surjective time maps
//! need this.
//!
//! For a step path the supremum over partitions is attained by sampling each
//! visit once (triangle inequality), so `v` is the extended sum of the
//! transition costs, and `rho(x, x)` for a constant path. For a
//! piecewise-linear path the supremum is attained at the breakpoints.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::constructions::{product_index, tensor, Caps};
use crate::error::{Error, Result};
use crate::extended::{ediff, esum, esum_all, positive_part, Coeff, ExtReal, Weight};
use crate::space::{classify, rational_labels, CostMatrix, FiniteRhoSpace, PointMap};

/// Which cost a grid line carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LineKind {
    /// `y - x` forward, `+inf` backward.
    Delta,
    /// `y - x`.
    Rho,
    /// `max(y - x, 0)`.
    Delta0,
}

impl LineKind {
    pub const ALL: [LineKind; 3] = [LineKind::Delta, LineKind::Rho, LineKind::Delta0];

    pub fn cost(self, x: &BigRational, y: &BigRational) -> ExtReal {
        let d = y - x;
        match self {
            LineKind::Rho => ExtReal::Finite(d),
            LineKind::Delta if d.is_negative() => ExtReal::PosInf,
            LineKind::Delta => ExtReal::Finite(d),
            LineKind::Delta0 => ExtReal::Finite(if d.is_negative() { BigRational::zero() } else { d }),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            LineKind::Delta => "delta",
            LineKind::Rho => "rho",
            LineKind::Delta0 => "delta0",
        }
    }
}

impl fmt::Display for LineKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LineKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "delta" => Ok(LineKind::Delta),
            "rho" => Ok(LineKind::Rho),
            "delta0" => Ok(LineKind::Delta0),
            other => Err(Error::Parse(format!("unknown line kind '{other}'"))),
        }
    }
}

/// The line of the given kind restricted to strictly increasing sample values.
pub fn grid_line(kind: LineKind, values: &[BigRational]) -> Result<FiniteRhoSpace> {
    if values.is_empty() {
        return Err(Error::Domain("a grid line needs at least one value".into()));
    }
    if values.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Domain("grid values must be strictly increasing".into()));
    }
    let rho = CostMatrix::from_fn(values.len(), |i, j| kind.cost(&values[i], &values[j]));
    FiniteRhoSpace::new(rational_labels(values), rho)
}

/// Grid on `0, 1, ..., n - 1`.
pub fn integer_grid(kind: LineKind, n: usize) -> Result<FiniteRhoSpace> {
    let values: Vec<BigRational> = (0..n as i64).map(|k| BigRational::from_integer(k.into())).collect();
    grid_line(kind, &values)
}

/// Valuation data of one path. `v_minus` is `+inf` whenever `v_plus = +inf`
/// or `v = -inf`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValuationReport {
    pub v: ExtReal,
    pub v_plus: Weight,
    pub v_minus: Weight,
    /// Only reported for linear targets.
    pub total_variation: Option<Weight>,
    pub lipschitz_weight: Weight,
}

impl ValuationReport {
    fn from_parts(v: ExtReal, v_plus: Weight, total_variation: Option<Weight>, lipschitz_weight: Weight) -> Self {
        let v_minus = descent(&v, &v_plus);
        ValuationReport { v, v_plus, v_minus, total_variation, lipschitz_weight }
    }

    /// `v <= v+`, and `v = v+ - v-` when both are finite.
    pub fn is_consistent(&self) -> bool {
        if self.v > *self.v_plus.value() {
            return false;
        }
        match (self.v.finite(), self.v_plus.value().finite(), self.v_minus.value().finite()) {
            (Some(v), Some(p), Some(m)) => *v == p - m,
            (Some(_), Some(_), None) => false,
            _ => true,
        }
    }

    /// `key: value` lines in a fixed order.
    pub fn render_text(&self) -> String {
        let tv = self.total_variation.as_ref().map(|w| w.to_string()).unwrap_or_else(|| "n/a".into());
        format!(
            "v: {}\nv_plus: {}\nv_minus: {}\ntotal_variation: {}\nlipschitz_weight: {}\n",
            self.v, self.v_plus, self.v_minus, tv, self.lipschitz_weight
        )
    }
}

fn descent(v: &ExtReal, v_plus: &Weight) -> Weight {
    if v_plus.is_infinite() || v.is_neg_inf() {
        return Weight::infinite();
    }
    Weight::new(ediff(v_plus.value(), v)).expect("v <= v+ keeps the descent nonnegative")
}

fn half() -> BigRational {
    BigRational::new(1.into(), 2.into())
}

/// Shared behaviour of the two path models.
pub trait PathLike: Sized {
    fn valuation(&self) -> ValuationReport;
    /// Runs `self` on `[0, 1/2]` and `other` on `[1/2, 1]`.
    fn concat(&self, other: &Self) -> Result<Self>;
}

pub fn concat<P: PathLike>(a: &P, b: &P) -> Result<P> {
    a.concat(b)
}

/// A piecewise-constant path in a finite space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepPath {
    space: Arc<FiniteRhoSpace>,
    visits: Vec<usize>,
    switches: Vec<BigRational>,
}

impl StepPath {
    /// `switches[k]` is when visit `k + 1` begins; strictly increasing in
    /// `]0, 1]`. Consecutive repeated visits are merged.
    pub fn new(space: Arc<FiniteRhoSpace>, visits: Vec<usize>, switches: Vec<BigRational>) -> Result<Self> {
        if visits.is_empty() {
            return Err(Error::InvalidPath("a step path needs at least one visit".into()));
        }
        if switches.len() + 1 != visits.len() {
            return Err(Error::InvalidPath(format!(
                "{} visits need {} switch times, got {}",
                visits.len(),
                visits.len() - 1,
                switches.len()
            )));
        }
        if let Some(&bad) = visits.iter().find(|&&x| x >= space.len()) {
            return Err(Error::InvalidPath(format!("visit {bad} is outside the space")));
        }
        if switches.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidPath("switch times must be strictly increasing".into()));
        }
        if switches.iter().any(|s| !s.is_positive() || *s > BigRational::one()) {
            return Err(Error::InvalidPath("switch times must lie in ]0, 1]".into()));
        }
        let mut out_visits = vec![visits[0]];
        let mut out_switches = Vec::new();
        for (x, s) in visits[1..].iter().zip(switches) {
            if *out_visits.last().unwrap() != *x {
                out_visits.push(*x);
                out_switches.push(s);
            }
        }
        Ok(StepPath { space, visits: out_visits, switches: out_switches })
    }

    pub fn constant(space: Arc<FiniteRhoSpace>, x: usize) -> Result<Self> {
        StepPath::new(space, vec![x], Vec::new())
    }

    /// Visits at evenly spaced switch times `k / (m + 1)`.
    pub fn evenly(space: Arc<FiniteRhoSpace>, visits: Vec<usize>) -> Result<Self> {
        let m = visits.len().saturating_sub(1) as i64;
        let switches = (1..=m).map(|k| BigRational::new(k.into(), (m + 1).into())).collect();
        StepPath::new(space, visits, switches)
    }

    pub fn space(&self) -> &Arc<FiniteRhoSpace> {
        &self.space
    }

    pub fn visits(&self) -> &[usize] {
        &self.visits
    }

    pub fn switches(&self) -> &[BigRational] {
        &self.switches
    }

    pub fn start(&self) -> usize {
        self.visits[0]
    }

    pub fn end(&self) -> usize {
        *self.visits.last().unwrap()
    }

    /// Start time of visit `k` (`0` for the first).
    pub fn piece_start(&self, k: usize) -> BigRational {
        if k == 0 {
            BigRational::zero()
        } else {
            self.switches[k - 1].clone()
        }
    }

    /// The point occupied at time `t` in `[0, 1]`.
    pub fn at(&self, t: &BigRational) -> usize {
        let k = self.switches.iter().take_while(|s| *s <= t).count();
        self.visits[k]
    }

    pub fn value(&self) -> ExtReal {
        step_value(&self.space, &self.visits)
    }
}

/// Extended sum of transition costs, or `rho(x, x)` for a single visit.
pub fn step_value(space: &FiniteRhoSpace, visits: &[usize]) -> ExtReal {
    if visits.len() == 1 {
        return space.rho(visits[0], visits[0]).clone();
    }
    let steps: Vec<ExtReal> = visits.windows(2).map(|w| space.rho(w[0], w[1]).clone()).collect();
    esum_all(&steps)
}

fn step_ascent(space: &FiniteRhoSpace, visits: &[usize]) -> Weight {
    visits
        .windows(2)
        .map(|w| positive_part(space.rho(w[0], w[1])))
        .fold(Weight::zero(), |acc, p| acc.add(&p))
}

/// Least `l` with `rho(a(t), a(t')) <= l (t' - t)` for all `t <= t'`.
///
/// Touching pieces force every transition cost to be `<= 0`; the triangle
/// inequality then bounds every later pair by `0` as well, so the weight is
/// either `0` or `+inf`.
pub fn step_lipschitz_weight(p: &StepPath) -> Weight {
    let rising = p.visits.windows(2).any(|w| *p.space.rho(w[0], w[1]) > ExtReal::zero());
    if rising {
        Weight::infinite()
    } else {
        Weight::zero()
    }
}

/// Full valuation report of a step path. Total variation is given when the
/// space is linear, as the sum of absolute transition costs.
pub fn step_valuation(p: &StepPath) -> ValuationReport {
    let v = p.value();
    let v_plus = step_ascent(&p.space, &p.visits);
    let tv = if classify(&p.space).linear {
        let abs: Vec<ExtReal> = p.visits.windows(2).map(|w| p.space.rho(w[0], w[1]).abs()).collect();
        Some(Weight::new(esum_all(&abs).join(&ExtReal::zero())).expect("sum of absolute values"))
    } else {
        None
    };
    ValuationReport::from_parts(v, v_plus, tv, step_lipschitz_weight(p))
}

impl PathLike for StepPath {
    fn valuation(&self) -> ValuationReport {
        step_valuation(self)
    }

    fn concat(&self, other: &Self) -> Result<Self> {
        if *self.space != *other.space {
            return Err(Error::InvalidPath("concatenated paths live in different spaces".into()));
        }
        if self.end() != other.start() {
            return Err(Error::InvalidPath(format!(
                "first path ends at {} but second starts at {}",
                self.space.label(self.end()),
                self.space.label(other.start())
            )));
        }
        // the shared endpoint's piece runs across 1/2
        let h = half();
        let mut visits = self.visits.clone();
        visits.extend_from_slice(&other.visits[1..]);
        let switches = self
            .switches
            .iter()
            .map(|s| s * &h)
            .chain(other.switches.iter().map(|s| &h + s * &h))
            .collect();
        StepPath::new(self.space.clone(), visits, switches)
    }
}

impl StepPath {
    /// `t -> a(1 - t)`, with the visit order reversed. The mirror of a
    /// right-continuous path is left-continuous, so values at the switch
    /// instants are moved to the neighbouring piece; the visit sequence, and
    /// hence the valuation, is that of the mirrored path. Fails when the
    /// final visit lasts only an instant.
    pub fn reversed(&self) -> Result<Self> {
        let one = BigRational::one();
        let visits: Vec<usize> = self.visits.iter().rev().copied().collect();
        let switches: Vec<BigRational> = self.switches.iter().rev().map(|s| &one - s).collect();
        StepPath::new(self.space.clone(), visits, switches)
    }
}
/// A nondecreasing piecewise-linear time map `[0, 1] -> [0, 1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TimeMap {
    times: Vec<BigRational>,
    values: Vec<BigRational>,
}

impl TimeMap {
    pub fn new(times: Vec<BigRational>, values: Vec<BigRational>) -> Result<Self> {
        check_breakpoints(&times, values.len())?;
        if values.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidPath("time map must be nondecreasing".into()));
        }
        if values.iter().any(|v| v.is_negative() || *v > BigRational::one()) {
            return Err(Error::InvalidPath("time map values must lie in [0, 1]".into()));
        }
        Ok(TimeMap { times, values })
    }

    pub fn identity() -> Self {
        let ends = vec![BigRational::zero(), BigRational::one()];
        TimeMap { times: ends.clone(), values: ends }
    }

    pub fn is_surjective(&self) -> bool {
        self.values[0].is_zero() && self.values.last().unwrap().is_one()
    }

    pub fn eval(&self, u: &BigRational) -> BigRational {
        interpolate(&self.times, &self.values, u)
    }

    /// Least `u` with `phi(u) >= s`, if any.
    fn first_reaching(&self, s: &BigRational) -> Option<BigRational> {
        if self.values[0] >= *s {
            return Some(BigRational::zero());
        }
        for j in 0..self.times.len() - 1 {
            let (y0, y1) = (&self.values[j], &self.values[j + 1]);
            if y1 >= s {
                let (t0, t1) = (&self.times[j], &self.times[j + 1]);
                return Some(t0 + (s - y0) * (t1 - t0) / (y1 - y0));
            }
        }
        None
    }
}

/// `t -> a(phi(t))`.
pub fn reparametrize(a: &StepPath, phi: &TimeMap) -> Result<StepPath> {
    let one = BigRational::one();
    let lo = &phi.values[0];
    let hi = phi.values.last().unwrap();
    let m = a.visits.len();
    let mut visits = Vec::new();
    let mut switches = Vec::new();
    for k in 0..m {
        let start = a.piece_start(k);
        let end = if k + 1 < m { a.piece_start(k + 1) } else { one.clone() };
        let survives = if k + 1 < m { *lo < end && *hi >= start } else { *hi >= start };
        if !survives {
            continue;
        }
        if !visits.is_empty() {
            switches.push(phi.first_reaching(&start).expect("surviving pieces are reached"));
        }
        visits.push(a.visits[k]);
    }
    StepPath::new(a.space.clone(), visits, switches)
}

/// Image of a step path under an `l`-Lipschitz map.
pub fn map_path(f: &PointMap, l: &Coeff, p: &StepPath) -> Result<StepPath> {
    if **f.source() != *p.space {
        return Err(Error::InvalidPath("path does not live in the map's source".into()));
    }
    if !f.is_lipschitz(l) {
        return Err(Error::NotLipschitz(l.to_string()));
    }
    let visits = p.visits.iter().map(|&x| f.apply(x)).collect();
    StepPath::new(f.target().clone(), visits, p.switches.clone())
}

/// The paired path `t -> (a(t), b(t))` in a given tensor (or product) space
/// of `a`'s and `b`'s spaces, first factor most significant.
pub fn pair_paths(a: &StepPath, b: &StepPath, target: Arc<FiniteRhoSpace>) -> Result<StepPath> {
    let sizes = [a.space.len(), b.space.len()];
    if target.len() != sizes[0] * sizes[1] {
        return Err(Error::InvalidPath("pairing target has the wrong size".into()));
    }
    let mut times: Vec<BigRational> = a.switches.iter().chain(&b.switches).cloned().collect();
    times.sort();
    times.dedup();
    let mut visits = vec![product_index(&sizes, &[a.start(), b.start()])];
    for t in &times {
        visits.push(product_index(&sizes, &[a.at(t), b.at(t)]));
    }
    StepPath::new(target, visits, times)
}

/// Valuation of the paired path in the tensor space, checked against the
/// extended sum of the component valuations.
pub fn tensor_path_valuation(a: &StepPath, b: &StepPath, caps: &Caps) -> Result<ExtReal> {
    let t = Arc::new(tensor(&[&a.space, &b.space], caps)?);
    let direct = pair_paths(a, b, t)?.value();
    let split = esum(&a.value(), &b.value());
    if direct != split {
        return Err(Error::Property(format!("paired valuation {direct} differs from component sum {split}")));
    }
    Ok(direct)
}

fn check_breakpoints(times: &[BigRational], n_values: usize) -> Result<()> {
    if times.len() < 2 {
        return Err(Error::InvalidPath("need at least two breakpoints".into()));
    }
    if times.len() != n_values {
        return Err(Error::InvalidPath(format!("{} times but {} values", times.len(), n_values)));
    }
    if !times[0].is_zero() || !times.last().unwrap().is_one() {
        return Err(Error::InvalidPath("breakpoint times must run from 0 to 1".into()));
    }
    if times.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidPath("breakpoint times must be strictly increasing".into()));
    }
    Ok(())
}

fn interpolate(times: &[BigRational], values: &[BigRational], t: &BigRational) -> BigRational {
    let j = times.iter().skip(1).take_while(|s| *s < t).count().min(times.len() - 2);
    let (t0, t1) = (&times[j], &times[j + 1]);
    &values[j] + (&values[j + 1] - &values[j]) * (t - t0) / (t1 - t0)
}

/// A piecewise-linear path into a line, by breakpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PLPath {
    times: Vec<BigRational>,
    values: Vec<BigRational>,
    kind: LineKind,
}

impl PLPath {
    pub fn new(times: Vec<BigRational>, values: Vec<BigRational>, kind: LineKind) -> Result<Self> {
        check_breakpoints(&times, values.len())?;
        Ok(PLPath { times, values, kind })
    }

    /// Breakpoints at evenly spaced times.
    pub fn from_profile(values: Vec<BigRational>, kind: LineKind) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::InvalidPath("need at least two breakpoints".into()));
        }
        let m = values.len() as i64 - 1;
        let times = (0..=m).map(|k| BigRational::new(k.into(), m.into())).collect();
        PLPath::new(times, values, kind)
    }

    pub fn times(&self) -> &[BigRational] {
        &self.times
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    pub fn kind(&self) -> LineKind {
        self.kind
    }

    pub fn with_kind(&self, kind: LineKind) -> PLPath {
        PLPath { kind, ..self.clone() }
    }

    pub fn at(&self, t: &BigRational) -> BigRational {
        interpolate(&self.times, &self.values, t)
    }

    fn increments(&self) -> impl Iterator<Item = BigRational> + '_ {
        self.values.windows(2).map(|w| &w[1] - &w[0])
    }

    fn slopes(&self) -> impl Iterator<Item = BigRational> + '_ {
        self.increments().zip(self.times.windows(2)).map(|(d, w)| d / (&w[1] - &w[0]))
    }
}

/// Exact valuation of a piecewise-linear path in its line.
pub fn pl_valuation(p: &PLPath) -> ValuationReport {
    let net = p.values.last().unwrap() - &p.values[0];
    let rises: BigRational = p.increments().filter(|d| d.is_positive()).sum();
    let decreasing = p.increments().any(|d| d.is_negative());
    let weight = pl_lipschitz_weight(p);
    let fin = |q: BigRational| Weight::new(ExtReal::Finite(q)).expect("nonnegative");
    match p.kind {
        LineKind::Rho => {
            let falls = &rises - &net;
            let tv = fin(&rises + &falls);
            ValuationReport::from_parts(ExtReal::Finite(net), fin(rises), Some(tv), weight)
        }
        LineKind::Delta if decreasing => {
            ValuationReport::from_parts(ExtReal::PosInf, Weight::infinite(), None, weight)
        }
        LineKind::Delta => ValuationReport::from_parts(ExtReal::Finite(net.clone()), fin(net), None, weight),
        LineKind::Delta0 => ValuationReport::from_parts(ExtReal::Finite(rises.clone()), fin(rises), None, weight),
    }
}

/// Least `l` with `c(a(t), a(t')) <= l (t' - t)` for all `t <= t'`.
pub fn pl_lipschitz_weight(p: &PLPath) -> Weight {
    let max_slope = p.slopes().max().expect("at least one segment");
    let w = match p.kind {
        LineKind::Delta if p.slopes().any(|s| s.is_negative()) => return Weight::infinite(),
        _ if max_slope.is_negative() => BigRational::zero(),
        _ => max_slope,
    };
    Weight::new(ExtReal::Finite(w)).expect("nonnegative")
}

impl PathLike for PLPath {
    fn valuation(&self) -> ValuationReport {
        pl_valuation(self)
    }

    fn concat(&self, other: &Self) -> Result<Self> {
        if self.kind != other.kind {
            return Err(Error::InvalidPath("concatenated paths target different lines".into()));
        }
        if self.values.last() != other.values.first() {
            return Err(Error::InvalidPath("first path does not end where the second starts".into()));
        }
        let h = half();
        let mut times: Vec<BigRational> = self.times.iter().map(|t| t * &h).collect();
        times.extend(other.times[1..].iter().map(|t| &h + t * &h));
        let mut values = self.values.clone();
        values.extend_from_slice(&other.values[1..]);
        PLPath::new(times, values, self.kind)
    }
}

impl PLPath {
    /// `t -> a(1 - t)`.
    pub fn reversed(&self) -> Self {
        let one = BigRational::one();
        PLPath {
            times: self.times.iter().rev().map(|t| &one - t).collect(),
            values: self.values.iter().rev().cloned().collect(),
            kind: self.kind,
        }
    }
}

fn positive(name: &str, v: &BigRational) -> Result<()> {
    if v.is_positive() {
        Ok(())
    } else {
        Err(Error::Domain(format!("{name} must be positive, got {v}")))
    }
}

/// `k x / (1 + x)` at altitude ratio `x >= 0`.
pub fn gravitational_potential(x: &BigRational, k: &BigRational) -> Result<BigRational> {
    positive("k", k)?;
    if x.is_negative() {
        return Err(Error::Domain(format!("altitude ratio must be nonnegative, got {x}")));
    }
    Ok(k * x / (BigRational::one() + x))
}

fn exact_sqrt(q: &BigRational) -> Option<BigRational> {
    let (n, d) = (q.numer(), q.denom());
    let (rn, rd) = (n.sqrt(), d.sqrt());
    (&rn * &rn == *n && &rd * &rd == *d).then(|| BigRational::new(rn, rd))
}

/// Potential `k (1 - r0 / |p|)` of a spherical mass of radius `r0` at a point
/// `p` of space with `|p| >= r0`, shifted to vanish on the surface. The norm
/// must be rational.
pub fn gravitational_potential_3d(p: &[BigRational; 3], r0: &BigRational, k: &BigRational) -> Result<BigRational> {
    positive("k", k)?;
    positive("r0", r0)?;
    let n2: BigRational = p.iter().map(|c| c * c).sum();
    let r = exact_sqrt(&n2).ok_or_else(|| Error::Domain(format!("norm of the point is irrational (squared norm {n2})")))?;
    if r < *r0 {
        return Err(Error::Domain(format!("point lies inside the mass: |p| = {r} < {r0}")));
    }
    Ok(k * (BigRational::one() - r0 / r))
}

/// `lam (x^2 + y^2)`.
pub fn elastic_potential(x: &BigRational, y: &BigRational, lam: &BigRational) -> Result<BigRational> {
    positive("lambda", lam)?;
    Ok(lam * (x * x + y * y))
}
