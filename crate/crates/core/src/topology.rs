//! Future, past, reflective and coreflective topologies of finite spaces.
//!
//! Subsets are bitmasks over at most 64 points. A topology is stored as its
//! full family of open sets. On a finite carrier the future balls at `x0` form
//! a local base whose smallest member is `{x | rho(x0, x) <= 0}`, so the open
//! sets are exactly the sets containing that neighbourhood of each member.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::extended::ExtReal;
use crate::space::{opposite, FiniteRhoSpace};
use crate::symmetry::{coreflective_sym, reflective_sym};

/// Largest carrier a bitmask subset can describe.
pub const MAX_POINTS: usize = 64;

/// Default cap on the number of open sets materialized.
pub const DEFAULT_OPEN_CAP: usize = 1 << 16;

/// A subset of the carrier as a bitmask.
pub type Subset = u64;

fn full(n: usize) -> Subset {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn members(s: Subset) -> impl Iterator<Item = usize> {
    (0..64).filter(move |i| s >> i & 1 == 1)
}

/// A finite topology as an explicit family of open sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteTopology {
    labels: Vec<String>,
    opens: BTreeSet<Subset>,
}

/// Result of comparing two topologies on one carrier.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TopologyOrder {
    Equal,
    /// The first has strictly more open sets.
    Finer,
    Coarser,
    Incomparable,
}

impl fmt::Display for TopologyOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TopologyOrder::Equal => "equal",
            TopologyOrder::Finer => "finer",
            TopologyOrder::Coarser => "coarser",
            TopologyOrder::Incomparable => "incomparable",
        })
    }
}

impl FiniteTopology {
    /// The topology generated by a family of subsets, enumerated as all
    /// unions of minimal neighbourhoods. Fails past `cap` open sets.
    pub fn generated_by(labels: Vec<String>, subbasis: &[Subset], cap: usize) -> Result<Self> {
        let n = labels.len();
        if n > MAX_POINTS {
            return Err(Error::CapExceeded { what: "topology carrier", size: n as u128, cap: MAX_POINTS as u128 });
        }
        let all = full(n);
        let minimal: Vec<Subset> = (0..n)
            .map(|x| subbasis.iter().filter(|s| *s >> x & 1 == 1).fold(all, |acc, s| acc & s))
            .collect();
        let mut opens: HashSet<Subset> = HashSet::from([0]);
        let mut distinct: Vec<Subset> = minimal.clone();
        distinct.sort_unstable();
        distinct.dedup();
        for u in distinct {
            let grown: Vec<Subset> = opens.iter().map(|s| s | u).collect();
            opens.extend(grown);
            if opens.len() > cap {
                return Err(Error::CapExceeded { what: "open sets", size: opens.len() as u128, cap: cap as u128 });
            }
        }
        opens.insert(all);
        Ok(FiniteTopology { labels, opens: opens.into_iter().collect() })
    }

    /// Validates an explicit family: must contain the empty set and the
    /// carrier and be closed under pairwise union and intersection.
    pub fn from_opens(labels: Vec<String>, opens: impl IntoIterator<Item = Subset>) -> Result<Self> {
        let n = labels.len();
        if n > MAX_POINTS {
            return Err(Error::CapExceeded { what: "topology carrier", size: n as u128, cap: MAX_POINTS as u128 });
        }
        let t = FiniteTopology { labels, opens: opens.into_iter().collect() };
        if t.opens.iter().any(|s| s & !full(n) != 0) {
            return Err(Error::Structural("open set outside the carrier".into()));
        }
        if !t.is_topology() {
            return Err(Error::Property("family is not a topology".into()));
        }
        Ok(t)
    }

    pub fn discrete(labels: Vec<String>) -> Result<Self> {
        let n = labels.len();
        let singletons: Vec<Subset> = (0..n).map(|i| 1 << i).collect();
        FiniteTopology::generated_by(labels, &singletons, DEFAULT_OPEN_CAP)
    }

    pub fn chaotic(labels: Vec<String>) -> Self {
        let all = full(labels.len());
        FiniteTopology { labels, opens: [0, all].into_iter().collect() }
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn opens(&self) -> &BTreeSet<Subset> {
        &self.opens
    }

    pub fn is_open(&self, s: Subset) -> bool {
        self.opens.contains(&s)
    }

    /// Smallest open set containing point `x`.
    pub fn minimal_neighbourhood(&self, x: usize) -> Subset {
        self.opens.iter().filter(|s| *s >> x & 1 == 1).fold(full(self.labels.len()), |a, s| a & s)
    }

    pub fn is_topology(&self) -> bool {
        let all = full(self.labels.len());
        self.opens.contains(&0)
            && self.opens.contains(&all)
            && self
                .opens
                .iter()
                .all(|a| self.opens.iter().all(|b| self.opens.contains(&(a | b)) && self.opens.contains(&(a & b))))
    }

    /// Open sets as sorted label lists, ordered by size then by members.
    pub fn render_sets(&self) -> Vec<Vec<String>> {
        let mut sets: Vec<Vec<usize>> = self.opens.iter().map(|&s| members(s).collect()).collect();
        sets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        sets.into_iter().map(|s| s.into_iter().map(|i| self.labels[i].clone()).collect()).collect()
    }
}

impl fmt::Display for FiniteTopology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for set in self.render_sets() {
            writeln!(f, "{{{}}}", set.join(", "))?;
        }
        Ok(())
    }
}

/// Containment verdict between the open-set families of two topologies.
pub fn compare(t1: &FiniteTopology, t2: &FiniteTopology) -> Result<TopologyOrder> {
    if t1.labels != t2.labels {
        return Err(Error::Structural("topologies on different carriers".into()));
    }
    let sub = t2.opens.is_subset(&t1.opens);
    let sup = t1.opens.is_subset(&t2.opens);
    Ok(match (sub, sup) {
        (true, true) => TopologyOrder::Equal,
        (true, false) => TopologyOrder::Finer,
        (false, true) => TopologyOrder::Coarser,
        (false, false) => TopologyOrder::Incomparable,
    })
}

fn check_carrier(space: &FiniteRhoSpace) -> Result<()> {
    if space.len() > MAX_POINTS {
        return Err(Error::CapExceeded { what: "topology carrier", size: space.len() as u128, cap: MAX_POINTS as u128 });
    }
    Ok(())
}

/// `{x | rho(x0, x) < eps}` for a finite `eps > 0`.
pub fn future_ball(space: &FiniteRhoSpace, x0: usize, eps: &BigRational) -> Result<Subset> {
    check_carrier(space)?;
    if !eps.is_positive() {
        return Err(Error::Domain(format!("ball radius must be positive, got {eps}")));
    }
    let e = ExtReal::Finite(eps.clone());
    Ok((0..space.len()).filter(|&x| *space.rho(x0, x) < e).fold(0, |acc, x| acc | 1 << x))
}

/// `{x | rho(x, x0) < eps}`.
pub fn past_ball(space: &FiniteRhoSpace, x0: usize, eps: &BigRational) -> Result<Subset> {
    future_ball(&opposite(space), x0, eps)
}

/// Radii at which the future balls around `x0` change: one just above `0`
/// and one just above each positive finite distance from `x0`.
pub fn ball_radii(space: &FiniteRhoSpace, x0: usize) -> Vec<BigRational> {
    let mut attained: Vec<BigRational> = vec![BigRational::zero()];
    for x in 0..space.len() {
        if let Some(q) = space.rho(x0, x).finite() {
            if q.is_positive() {
                attained.push(q.clone());
            }
        }
    }
    attained.sort();
    attained.dedup();
    let two = BigRational::from_integer(2.into());
    (0..attained.len())
        .map(|k| {
            let gap = attained.get(k + 1).map(|next| next - &attained[k]).unwrap_or_else(BigRational::one);
            &attained[k] + gap / &two
        })
        .collect()
}

/// The distinct future balls at `x0`, smallest first.
pub fn future_local_base(space: &FiniteRhoSpace, x0: usize) -> Result<Vec<Subset>> {
    let mut out = Vec::new();
    for eps in ball_radii(space, x0) {
        let b = future_ball(space, x0, &eps)?;
        if out.last() != Some(&b) {
            out.push(b);
        }
    }
    Ok(out)
}

/// Topology generated by the future balls, with an explicit open-set cap.
pub fn future_topology_capped(space: &FiniteRhoSpace, cap: usize) -> Result<FiniteTopology> {
    check_carrier(space)?;
    let mut balls = Vec::new();
    for x0 in 0..space.len() {
        balls.extend(future_local_base(space, x0)?);
    }
    FiniteTopology::generated_by(space.labels().to_vec(), &balls, cap)
}

pub fn future_topology(space: &FiniteRhoSpace) -> Result<FiniteTopology> {
    future_topology_capped(space, DEFAULT_OPEN_CAP)
}

pub fn past_topology(space: &FiniteRhoSpace) -> Result<FiniteTopology> {
    future_topology(&opposite(space))
}

/// Topology of the reflective symmetrization.
pub fn reflective_topology(space: &FiniteRhoSpace) -> Result<FiniteTopology> {
    future_topology(&reflective_sym(space))
}

/// Topology of the coreflective symmetrization.
pub fn coreflective_topology(space: &FiniteRhoSpace) -> Result<FiniteTopology> {
    future_topology(&coreflective_sym(space))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen;
    use crate::space::{chaotic, discrete, potential_space, CostMatrix};
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn grid(n: usize, f: impl Fn(i64, i64) -> ExtReal) -> FiniteRhoSpace {
        let labels = (0..n).map(|i| i.to_string()).collect();
        FiniteRhoSpace::new(labels, CostMatrix::from_fn(n, |i, j| f(i as i64, j as i64))).unwrap()
    }

    fn delta_grid(n: usize) -> FiniteRhoSpace {
        grid(n, |x, y| if x <= y { ExtReal::int(y - x) } else { ExtReal::PosInf })
    }

    fn rho_grid(n: usize) -> FiniteRhoSpace {
        grid(n, |x, y| ExtReal::int(y - x))
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn labels(n: usize) -> Vec<String> {
        (0..n).map(|i| i.to_string()).collect()
    }

    #[test]
    fn ball_examples() {
        let d = delta_grid(5);
        assert_eq!(future_ball(&d, 2, &q(1, 2)).unwrap(), 1 << 2);
        let r = rho_grid(5);
        assert_eq!(future_ball(&r, 2, &q(1, 2)).unwrap(), 0b00111);
        let c = chaotic(&["a", "b", "c"]).unwrap();
        for e in [q(1, 10), q(5, 1)] {
            assert_eq!(future_ball(&c, 1, &e).unwrap(), 0b111);
        }
        assert!(future_ball(&r, 0, &q(0, 1)).is_err());
        assert_eq!(past_ball(&r, 2, &q(1, 2)).unwrap(), 0b11100);
    }

    #[test]
    fn generated_topologies() {
        let d = discrete(&["a", "b", "c"]).unwrap();
        let t = future_topology(&d).unwrap();
        assert_eq!(t.opens().len(), 8);
        let names = vec!["a".to_string(), "b".to_string(), "c".to_string()];
        assert_eq!(compare(&t, &FiniteTopology::discrete(names).unwrap()).unwrap(), TopologyOrder::Equal);

        // lower sets of the grid order
        let r = rho_grid(4);
        let t = future_topology(&r).unwrap();
        let lower: BTreeSet<Subset> = (0..=4).map(|k| (1u64 << k) - 1).collect();
        assert_eq!(t.opens(), &lower);
    }

    #[test]
    fn reflective_and_coreflective_on_rho_grid() {
        let r = rho_grid(5);
        assert_eq!(reflective_topology(&r).unwrap(), FiniteTopology::chaotic(labels(5)));
        assert_eq!(coreflective_topology(&r).unwrap(), FiniteTopology::discrete(labels(5)).unwrap());
    }

    #[test]
    fn compare_examples() {
        let d = FiniteTopology::discrete(labels(3)).unwrap();
        let c = FiniteTopology::chaotic(labels(3));
        assert_eq!(compare(&d, &d).unwrap(), TopologyOrder::Equal);
        assert_eq!(compare(&d, &c).unwrap(), TopologyOrder::Finer);
        assert_eq!(compare(&c, &d).unwrap(), TopologyOrder::Coarser);
        let a = FiniteTopology::from_opens(labels(2), [0, 1, 3]).unwrap();
        let b = FiniteTopology::from_opens(labels(2), [0, 2, 3]).unwrap();
        assert_eq!(compare(&a, &b).unwrap(), TopologyOrder::Incomparable);
        assert!(compare(&a, &FiniteTopology::chaotic(labels(3))).is_err());
        assert!(FiniteTopology::from_opens(labels(2), [0, 1, 2, 3]).is_ok());
        assert!(FiniteTopology::from_opens(labels(3), [0, 1, 2, 7]).is_err());
    }

    #[test]
    fn potential_topologies() {
        let phi: Vec<BigRational> = [0, 3, 1, 7].iter().map(|&v| q(v, 2)).collect();
        let s = potential_space(&labels(4), &phi).unwrap();
        let core = coreflective_topology(&s).unwrap();
        let disc = FiniteTopology::discrete(labels(4)).unwrap();
        assert!(matches!(compare(&disc, &core).unwrap(), TopologyOrder::Equal | TopologyOrder::Finer));
        let flat = potential_space(&labels(3), &vec![q(2, 1); 3]).unwrap();
        assert_eq!(
            compare(&FiniteTopology::discrete(labels(3)).unwrap(), &coreflective_topology(&flat).unwrap()).unwrap(),
            TopologyOrder::Finer
        );
    }

    #[test]
    fn open_cap_is_enforced() {
        let d = discrete(&labels(20)).unwrap();
        assert!(matches!(future_topology_capped(&d, 1000), Err(Error::CapExceeded { .. })));
    }

    fn seeded(seed: u64, max: usize) -> FiniteRhoSpace {
        gen::random_space(&mut ChaCha8Rng::seed_from_u64(seed), max)
    }

    proptest! {
        #[test]
        fn families_are_topologies(seed in any::<u64>()) {
            let x = seeded(seed, 6);
            for t in [future_topology(&x), past_topology(&x), reflective_topology(&x), coreflective_topology(&x)] {
                prop_assert!(t.unwrap().is_topology());
            }
        }

        #[test]
        fn balls_are_open(seed in any::<u64>()) {
            let x = seeded(seed, 6);
            let t = future_topology(&x).unwrap();
            for x0 in 0..x.len() {
                for k in 1..8 {
                    prop_assert!(t.is_open(future_ball(&x, x0, &q(k, 2)).unwrap()));
                }
            }
        }

        #[test]
        fn symmetric_future_equals_past(seed in any::<u64>()) {
            let x = coreflective_sym(&seeded(seed, 6));
            prop_assert_eq!(future_topology(&x).unwrap(), past_topology(&x).unwrap());
        }

        #[test]
        fn ordering_of_the_four(seed in any::<u64>()) {
            let x = seeded(seed, 6);
            let core = coreflective_topology(&x).unwrap();
            let refl = reflective_topology(&x).unwrap();
            for t in [future_topology(&x).unwrap(), past_topology(&x).unwrap()] {
                prop_assert!(matches!(compare(&core, &t).unwrap(), TopologyOrder::Equal | TopologyOrder::Finer));
                prop_assert!(matches!(compare(&t, &refl).unwrap(), TopologyOrder::Equal | TopologyOrder::Finer));
            }
        }

        #[test]
        fn finer_metric_finer_topology(seed in any::<u64>(), sseed in any::<u64>()) {
            let x = seeded(seed, 5);
            let mut rng = ChaCha8Rng::seed_from_u64(sseed);
            let y = gen::random_space(&mut rng, 5);
            // pointwise max of two metrics on the same carrier is a metric above both
            if x.len() == y.len() {
                let m = CostMatrix::from_fn(x.len(), |i, j| x.rho(i, j).join(y.rho(i, j)));
                let bigger = x.with_matrix(m).unwrap();
                let tb = future_topology(&bigger).unwrap();
                let tx = future_topology(&x).unwrap();
                prop_assert!(matches!(compare(&tb, &tx).unwrap(), TopologyOrder::Equal | TopologyOrder::Finer));
            }
        }

        #[test]
        fn potential_preimage_balls_are_coreflective_open(vals in proptest::collection::vec(-6i64..6, 1..7), k in 1i64..10) {
            let phi: Vec<BigRational> = vals.iter().map(|&v| q(v, 2)).collect();
            let s = potential_space(&labels(phi.len()), &phi).unwrap();
            let core = coreflective_topology(&s).unwrap();
            let eps = q(k, 3);
            for x0 in 0..phi.len() {
                let ball = (0..phi.len())
                    .filter(|&x| (&phi[x] - &phi[x0]).abs() < eps)
                    .fold(0u64, |acc, x| acc | 1 << x);
                prop_assert!(core.is_open(ball));
            }
        }
    }
}
