//! Symmetrizations and the two preorders induced by a ρ-metric.
//!
//! The reflective symmetrization is the greatest symmetric metric below
//! `rho` (a step-path infimum of `min(rho(x, y), rho(y, x))`); the coreflective
//! one is the least symmetric metric above it (pointwise max).
//!
//! The coreflective preorder is `x <0 x'` iff `rho(x', x) <= 0`, and the
//! embedding [`mt_0`] puts `0` at `(y, y')` when `y' < y`. Both reverse
//! variables relative to the reflective side; they are implemented exactly so.

use std::fmt;

use crate::closure::MinPlusClosure;
use crate::error::{Error, Result};
use crate::extended::ExtReal;
use crate::space::{CostMatrix, FiniteRhoSpace};

/// Greatest symmetric ρ-metric below `rho`.
pub fn reflective_sym(space: &FiniteRhoSpace) -> FiniteRhoSpace {
    let n = space.len();
    let mins = CostMatrix::from_fn(n, |i, j| space.rho(i, j).meet(space.rho(j, i)));
    let closed = MinPlusClosure::compute(&mins).into_matrix();
    space.with_matrix(closed).expect("closures satisfy the axioms")
}

/// Least symmetric ρ-metric above `rho`.
pub fn coreflective_sym(space: &FiniteRhoSpace) -> FiniteRhoSpace {
    let n = space.len();
    let maxs = CostMatrix::from_fn(n, |i, j| space.rho(i, j).join(space.rho(j, i)));
    space.with_matrix(maxs).expect("pointwise max of metrics is a metric")
}

/// A reflexive transitive relation on labelled points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Preorder {
    labels: Vec<String>,
    rel: Vec<bool>,
}

impl Preorder {
    /// Checks reflexivity and transitivity.
    pub fn new(labels: Vec<String>, rel: Vec<Vec<bool>>) -> Result<Self> {
        let n = labels.len();
        if rel.len() != n || rel.iter().any(|r| r.len() != n) {
            return Err(Error::Structural(format!("relation is not {n} x {n}")));
        }
        let p = Preorder { labels, rel: rel.concat() };
        for i in 0..n {
            if !p.related(i, i) {
                return Err(Error::InvalidRelation(format!("not reflexive at {}", p.labels[i])));
            }
            for j in 0..n {
                for k in 0..n {
                    if p.related(i, j) && p.related(j, k) && !p.related(i, k) {
                        return Err(Error::InvalidRelation(format!(
                            "not transitive on ({}, {}, {})",
                            p.labels[i], p.labels[j], p.labels[k]
                        )));
                    }
                }
            }
        }
        Ok(p)
    }

    /// Builds from successor lists.
    pub fn from_successors(labels: Vec<String>, successors: &[Vec<usize>]) -> Result<Self> {
        let n = labels.len();
        if successors.len() != n {
            return Err(Error::Structural(format!("{} successor lists for {n} points", successors.len())));
        }
        let mut rel = vec![vec![false; n]; n];
        for (i, succ) in successors.iter().enumerate() {
            for &j in succ {
                if j >= n {
                    return Err(Error::Structural(format!("successor {j} out of range")));
                }
                rel[i][j] = true;
            }
        }
        Preorder::new(labels, rel)
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

    pub fn related(&self, i: usize, j: usize) -> bool {
        self.rel[i * self.labels.len() + j]
    }

    pub fn successors(&self, i: usize) -> Vec<usize> {
        (0..self.len()).filter(|&j| self.related(i, j)).collect()
    }

    /// Whether every pair is related.
    pub fn is_chaotic(&self) -> bool {
        self.rel.iter().all(|&b| b)
    }

    /// Whether only the diagonal is related.
    pub fn is_discrete(&self) -> bool {
        let n = self.len();
        (0..n).all(|i| (0..n).all(|j| self.related(i, j) == (i == j)))
    }
}

impl fmt::Display for Preorder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len() {
            let succ: Vec<&str> = self.successors(i).iter().map(|&j| self.labels[j].as_str()).collect();
            writeln!(f, "{} -> {}", self.labels[i], succ.join(" "))?;
        }
        Ok(())
    }
}

fn preorder_from(space: &FiniteRhoSpace, pred: impl Fn(usize, usize) -> bool) -> Preorder {
    let n = space.len();
    let rel = (0..n).map(|i| (0..n).map(|j| pred(i, j)).collect()).collect();
    Preorder::new(space.labels().to_vec(), rel).expect("induced relations are preorders")
}

/// `x <inf x'` iff the transition is affordable: `rho(x, x') < inf`.
pub fn reflective_preorder(space: &FiniteRhoSpace) -> Preorder {
    preorder_from(space, |i, j| !space.rho(i, j).is_pos_inf())
}

/// `x <0 x'` iff `rho(x', x) <= 0`.
pub fn coreflective_preorder(space: &FiniteRhoSpace) -> Preorder {
    let zero = ExtReal::zero();
    preorder_from(space, |i, j| *space.rho(j, i) <= zero)
}

/// `rho(y, y') = -inf` if `y < y'`, else `inf`. Always flat.
pub fn mt_inf(p: &Preorder) -> FiniteRhoSpace {
    let m = CostMatrix::from_fn(p.len(), |i, j| if p.related(i, j) { ExtReal::NegInf } else { ExtReal::PosInf });
    FiniteRhoSpace::new(p.labels.clone(), m).expect("preorders embed as flat spaces")
}

/// `d(y, y') = 0` if `y' < y`, else `inf`. Always positive.
pub fn mt_0(p: &Preorder) -> FiniteRhoSpace {
    let m = CostMatrix::from_fn(p.len(), |i, j| if p.related(j, i) { ExtReal::zero() } else { ExtReal::PosInf });
    FiniteRhoSpace::new(p.labels.clone(), m).expect("preorders embed as δ-spaces")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{tensor, Caps};
    use crate::extended::Coeff;
    use crate::gen;
    use crate::oracle;
    use crate::space::{classify, discrete, PointMap};
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::sync::Arc;

    fn sp(labels: &[&str], rows: &[&[&str]]) -> FiniteRhoSpace {
        FiniteRhoSpace::from_text_rows(labels, rows).unwrap()
    }

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

    fn seeded(seed: u64, max: usize) -> FiniteRhoSpace {
        gen::random_space(&mut ChaCha8Rng::seed_from_u64(seed), max)
    }

    #[test]
    fn reflective_examples() {
        let d = reflective_sym(&delta_grid(5));
        assert_eq!(d.matrix(), grid(5, |x, y| ExtReal::int((y - x).abs())).matrix());
        assert!(reflective_sym(&rho_grid(5)).matrix().entries().all(ExtReal::is_neg_inf));
        let s = reflective_sym(&sp(&["a", "b"], &[&["0", "1"], &["4", "0"]]));
        assert_eq!(*s.rho(0, 1), ExtReal::int(1));
        assert_eq!(*s.rho(1, 0), ExtReal::int(1));
    }

    #[test]
    fn coreflective_examples() {
        let r = coreflective_sym(&rho_grid(4));
        assert_eq!(r.matrix(), grid(4, |x, y| ExtReal::int((y - x).abs())).matrix());
        let d = coreflective_sym(&delta_grid(4));
        assert_eq!(d, discrete(&["0", "1", "2", "3"]).unwrap());
    }

    #[test]
    fn preorder_examples() {
        let le = |n: usize| {
            let labels = (0..n).map(|i| i.to_string()).collect();
            let rel = (0..n).map(|i| (0..n).map(|j| i <= j).collect()).collect();
            Preorder::new(labels, rel).unwrap()
        };
        assert_eq!(reflective_preorder(&delta_grid(4)), le(4));
        assert!(reflective_preorder(&rho_grid(4)).is_chaotic());
        assert!(reflective_preorder(&discrete(&["a", "b"]).unwrap()).is_discrete());
        assert_eq!(coreflective_preorder(&rho_grid(4)), le(4));
        assert!(coreflective_preorder(&delta_grid(4)).is_discrete());
    }

    #[test]
    fn embeddings() {
        let p = Preorder::new(vec!["0".into(), "1".into()], vec![vec![true, true], vec![false, true]]).unwrap();
        assert_eq!(mt_inf(&p), sp(&["0", "1"], &[&["-inf", "-inf"], &["inf", "-inf"]]));
        assert_eq!(mt_0(&p), sp(&["0", "1"], &[&["0", "inf"], &["0", "0"]]));
    }

    #[test]
    fn embedding_round_trips_on_small_preorders() {
        for n in 0..=3usize {
            let pairs = n * n;
            for mask in 0u32..(1 << pairs) {
                let rel: Vec<Vec<bool>> =
                    (0..n).map(|i| (0..n).map(|j| mask >> (i * n + j) & 1 == 1).collect()).collect();
                let labels: Vec<String> = (0..n).map(|i| format!("y{i}")).collect();
                if let Ok(p) = Preorder::new(labels, rel) {
                    assert_eq!(reflective_preorder(&mt_inf(&p)), p);
                    assert_eq!(coreflective_preorder(&mt_0(&p)), p);
                    assert_eq!(classify(&mt_inf(&p)).flat_points.len(), n);
                    assert!(mt_0(&p).is_positive());
                }
            }
        }
    }

    #[test]
    fn preorder_validation() {
        let labels = vec!["a".to_string(), "b".to_string(), "c".to_string()];
        let not_refl = vec![vec![false, false, false], vec![false, true, false], vec![false, false, true]];
        assert!(Preorder::new(labels.clone(), not_refl).is_err());
        let not_trans = vec![vec![true, true, false], vec![false, true, true], vec![false, false, true]];
        assert!(Preorder::new(labels, not_trans).is_err());
    }

    proptest! {
        #[test]
        fn reflective_matches_oracle(seed in any::<u64>()) {
            let x = seeded(seed, 6);
            let r = reflective_sym(&x);
            prop_assert_eq!(r.matrix(), &oracle::reflective_oracle(&x));
        }

        #[test]
        fn sandwich_and_symmetry(seed in any::<u64>()) {
            let x = seeded(seed, 6);
            let lo = reflective_sym(&x);
            let hi = coreflective_sym(&x);
            prop_assert!(lo.is_symmetric() && hi.is_symmetric());
            prop_assert!(lo.matrix().le(x.matrix()) && x.matrix().le(hi.matrix()));
            prop_assert_eq!(reflective_sym(&lo), lo);
            prop_assert_eq!(coreflective_sym(&hi), hi);
        }

        #[test]
        fn reflective_is_maximal(seed in any::<u64>(), sseed in any::<u64>()) {
            let x = seeded(seed, 5);
            let mut rng = ChaCha8Rng::seed_from_u64(sseed);
            let other = gen::random_space(&mut rng, x.len());
            let n = x.len();
            let m = CostMatrix::from_fn(n, |i, j| {
                let o = if i < other.len() && j < other.len() {
                    other.rho(i, j).meet(other.rho(j, i))
                } else {
                    ExtReal::PosInf
                };
                o.meet(x.rho(i, j)).meet(x.rho(j, i))
            });
            let sigma = gen::close(&m);
            prop_assert!(sigma.is_symmetric());
            prop_assert!(sigma.matrix().le(x.matrix()));
            prop_assert!(sigma.matrix().le(reflective_sym(&x).matrix()));
        }

        #[test]
        fn shortcut_when_min_is_a_metric(seed in any::<u64>()) {
            let x = seeded(seed, 5);
            let n = x.len();
            let mins = CostMatrix::from_fn(n, |i, j| x.rho(i, j).meet(x.rho(j, i)));
            if let Ok(s) = x.with_matrix(mins) {
                prop_assert_eq!(reflective_sym(&x), s);
            }
        }

        #[test]
        fn affordable_nonpositive_is_chaotic(seed in any::<u64>()) {
            let x = gen::random_affordable_nonpositive(&mut ChaCha8Rng::seed_from_u64(seed), 5);
            prop_assert!(reflective_sym(&x).matrix().entries().all(ExtReal::is_neg_inf));
        }

        #[test]
        fn symmetrizations_are_functorial(s1 in any::<u64>(), s2 in any::<u64>()) {
            let x = Arc::new(seeded(s1, 3));
            let y = Arc::new(seeded(s2, 3));
            let (xl, yl) = (Arc::new(reflective_sym(&x)), Arc::new(reflective_sym(&y)));
            let (xh, yh) = (Arc::new(coreflective_sym(&x)), Arc::new(coreflective_sym(&y)));
            for a in gen::all_assignments(x.len(), y.len()) {
                if PointMap::new(x.clone(), y.clone(), a.clone()).unwrap().is_lipschitz(&Coeff::one()) {
                    prop_assert!(PointMap::new(xl.clone(), yl.clone(), a.clone()).unwrap().is_lipschitz(&Coeff::one()));
                    prop_assert!(PointMap::new(xh.clone(), yh.clone(), a).unwrap().is_lipschitz(&Coeff::one()));
                }
            }
        }

        #[test]
        fn preorder_reversal(seed in any::<u64>()) {
            let x = seeded(seed, 6);
            let inf = reflective_preorder(&x);
            let zero = coreflective_preorder(&x);
            for i in 0..x.len() {
                for j in 0..x.len() {
                    if zero.related(i, j) {
                        prop_assert!(inf.related(j, i));
                    }
                }
            }
        }

        #[test]
        fn tensor_preorders(s1 in any::<u64>(), s2 in any::<u64>()) {
            let x = seeded(s1, 4);
            let y = seeded(s2, 4);
            let t = tensor(&[&x, &y], &Caps::default()).unwrap();
            let (px, py, pt) = (reflective_preorder(&x), reflective_preorder(&y), reflective_preorder(&t));
            let (qx, qy, qt) = (coreflective_preorder(&x), coreflective_preorder(&y), coreflective_preorder(&t));
            let m = y.len();
            for i in 0..t.len() {
                for j in 0..t.len() {
                    let (a, b, a2, b2) = (i / m, i % m, j / m, j % m);
                    prop_assert_eq!(px.related(a, a2) && py.related(b, b2), pt.related(i, j));
                    if qx.related(a, a2) && qy.related(b, b2) {
                        prop_assert!(qt.related(i, j));
                    }
                }
            }
        }
    }
}
