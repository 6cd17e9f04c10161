//! Seeded generators of random valid spaces, paths and relations.
//!
//! Random matrices are made valid by taking their min-plus closure (with the
//! empty walk), which always satisfies the triangle inequality and has
//! diagonal in `{0, -inf}`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::closure::MinPlusClosure;
use crate::paths::{LineKind, PLPath, StepPath, TimeMap};
use crate::extended::ExtReal;
use crate::space::{CostMatrix, FiniteRhoSpace};

fn half(k: i64) -> ExtReal {
    ExtReal::Finite(BigRational::new(BigInt::from(k), BigInt::from(2)))
}

fn labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("p{i}")).collect()
}

/// Closes an arbitrary matrix into a valid space.
pub fn close(matrix: &CostMatrix) -> FiniteRhoSpace {
    let closed = MinPlusClosure::compute(matrix).into_matrix();
    FiniteRhoSpace::new(labels(closed.size()), closed).expect("closures satisfy the axioms")
}

fn random_matrix<R: Rng>(rng: &mut R, n: usize, mut entry: impl FnMut(&mut R) -> ExtReal) -> CostMatrix {
    let mut m = CostMatrix::filled(n, ExtReal::zero());
    for i in 0..n {
        for j in 0..n {
            if i != j {
                m.set(i, j, entry(rng));
            }
        }
    }
    m
}

fn mixed_entry<R: Rng>(rng: &mut R) -> ExtReal {
    match rng.gen_range(0..20) {
        0 => ExtReal::NegInf,
        1..=4 => ExtReal::PosInf,
        5..=7 => half(rng.gen_range(-4..0)),
        _ => half(rng.gen_range(0..9)),
    }
}

fn positive_entry<R: Rng>(rng: &mut R, allow_inf: bool) -> ExtReal {
    if allow_inf && rng.gen_range(0..5) == 0 {
        ExtReal::PosInf
    } else {
        half(rng.gen_range(0..9))
    }
}

/// A random nonnegative space with up to `max_points` points.
pub fn random_positive_space<R: Rng>(rng: &mut R, max_points: usize) -> FiniteRhoSpace {
    let n = rng.gen_range(1..=max_points.max(1));
    let m = random_matrix(rng, n, |r| positive_entry(r, true));
    close(&m)
}

/// A random space with no `+inf` entry and some strictly negative entry.
pub fn random_affordable_nonpositive<R: Rng>(rng: &mut R, max_points: usize) -> FiniteRhoSpace {
    loop {
        let n = rng.gen_range(1..=max_points.max(1));
        let phi: Vec<i64> = (0..n).map(|_| rng.gen_range(-4..5)).collect();
        let m = CostMatrix::from_fn(n, |i, j| {
            if i == j {
                ExtReal::zero()
            } else {
                let pos = rng.gen_range(0..5);
                half(2 * (phi[j] - phi[i]) + pos)
            }
        });
        let s = close(&m);
        let aff = !s.matrix().entries().any(ExtReal::is_pos_inf);
        let neg = s.matrix().entries().any(|e| *e < ExtReal::zero());
        if aff && neg {
            return s;
        }
    }
}

/// A random valid space with up to `max_points` points, drawn from several
/// families: closures of mixed matrices (both infinities and negative
/// values), positive closures, and potentials plus a positive part.
pub fn random_space<R: Rng>(rng: &mut R, max_points: usize) -> FiniteRhoSpace {
    let n = rng.gen_range(1..=max_points.max(1));
    match rng.gen_range(0..4) {
        0 => close(&random_matrix(rng, n, mixed_entry)),
        1 => close(&random_matrix(rng, n, |r| positive_entry(r, true))),
        2 => {
            let phi: Vec<i64> = (0..n).map(|_| rng.gen_range(-3..4)).collect();
            let extra = random_matrix(rng, n, |r| positive_entry(r, true));
            let m = CostMatrix::from_fn(n, |i, j| {
                let base = half(2 * (phi[j] - phi[i]));
                crate::extended::esum(&base, &extra[(i, j)])
            });
            close(&m)
        }
        _ => {
            // sparse: mostly infinite, a few finite arcs
            close(&random_matrix(rng, n, |r| match r.gen_range(0..6) {
                0 => half(r.gen_range(-2..5)),
                1 => ExtReal::NegInf,
                _ => ExtReal::PosInf,
            }))
        }
    }
}

/// All functions `{0..n} -> {0..m}` as assignment vectors, in lexicographic order.
pub fn all_assignments(n: usize, m: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = if m == 0 && n > 0 { 0 } else { m.pow(n as u32) };
    (0..total).map(move |mut k| {
        let mut a = vec![0; n];
        for slot in a.iter_mut().rev() {
            *slot = k % m;
            k /= m;
        }
        a
    })
}

/// A random partition of `0..n` into classes.
pub fn random_partition<R: Rng>(rng: &mut R, n: usize) -> Vec<Vec<usize>> {
    let k = rng.gen_range(1..=n.max(1));
    let mut classes = vec![Vec::new(); k];
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    for (idx, p) in order.into_iter().enumerate() {
        let c = if idx < k { idx } else { rng.gen_range(0..k) };
        classes[c].push(p);
    }
    classes.retain(|c| !c.is_empty());
    for c in classes.iter_mut() {
        c.sort_unstable();
    }
    classes.sort();
    classes
}

/// `k` strictly increasing rationals in `]0, 1[` with small denominators.
pub fn random_times<R: Rng>(rng: &mut R, k: usize) -> Vec<BigRational> {
    let den = 4 * (k as i64 + 1);
    let mut nums: Vec<i64> = (1..den).collect();
    nums.shuffle(rng);
    let mut chosen: Vec<i64> = nums.into_iter().take(k).collect();
    chosen.sort_unstable();
    chosen.into_iter().map(|a| BigRational::new(BigInt::from(a), BigInt::from(den))).collect()
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// A step path with fewer than `max_visits` switches at random times.
pub fn random_step_path<R: Rng>(rng: &mut R, space: Arc<FiniteRhoSpace>, max_visits: usize) -> StepPath {
    let m = rng.gen_range(0..max_visits.max(1));
    let visits: Vec<usize> = (0..=m).map(|_| rng.gen_range(0..space.len())).collect();
    let switches = random_times(rng, m);
    StepPath::new(space, visits, switches).expect("generated paths are valid")
}

/// A nondecreasing piecewise-linear time map; endpoint-fixing when `surjective`.
pub fn random_time_map<R: Rng>(rng: &mut R, surjective: bool) -> TimeMap {
    let k = rng.gen_range(0..4);
    let mut times = vec![q(0, 1)];
    times.extend(random_times(rng, k));
    times.push(q(1, 1));
    let mut vals: Vec<BigRational> = (0..times.len()).map(|_| q(rng.gen_range(0..=12), 12)).collect();
    vals.sort();
    if surjective {
        vals[0] = q(0, 1);
        *vals.last_mut().unwrap() = q(1, 1);
    }
    TimeMap::new(times, vals).expect("generated time maps are valid")
}

/// A piecewise-linear path with 1 to 6 segments and small rational values.
pub fn random_profile<R: Rng>(rng: &mut R, kind: LineKind) -> PLPath {
    let m = rng.gen_range(1..7);
    let mut times = vec![q(0, 1)];
    times.extend(random_times(rng, m - 1));
    times.push(q(1, 1));
    let vals = (0..=m).map(|_| q(rng.gen_range(-8..9), rng.gen_range(1..4))).collect();
    PLPath::new(times, vals, kind).expect("generated profiles are valid")
}
