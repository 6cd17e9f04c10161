//! Min-plus closure over extended reals with negative-cycle semantics.
//!
//! `value(i, j)` is the infimum, over all walks from `i` to `j` (including the
//! empty walk when `i == j`), of the extended sum of arc weights. Walks that can
//! pass through a negative closed walk have infimum `-inf`; a `-inf` arc counts
//! as such a cycle on its own. `+inf` arcs never lower an infimum and are
//! treated as absent.

use crate::extended::{esum, ExtReal};
use crate::space::CostMatrix;

/// Result of [`MinPlusClosure::compute`]: closed distances plus next-hop
/// pointers for reconstructing minimizing walks.
#[derive(Clone, Debug)]
pub struct MinPlusClosure {
    dist: CostMatrix,
    next: Vec<Option<usize>>,
}

impl MinPlusClosure {
    /// Floyd-Warshall with a final pass that sends every pair routed through a
    /// negative cycle to `-inf`.
    pub fn compute(arcs: &CostMatrix) -> Self {
        let n = arcs.size();
        let zero = ExtReal::zero();
        let mut dist = arcs.clone();
        let mut next = vec![None; n * n];
        for i in 0..n {
            for j in 0..n {
                if i != j && !arcs[(i, j)].is_pos_inf() {
                    next[i * n + j] = Some(j);
                }
            }
            if dist[(i, i)] > zero {
                // the empty walk
                dist[(i, i)] = zero.clone();
            } else if dist[(i, i)] < zero {
                dist[(i, i)] = ExtReal::NegInf;
            }
        }
        for k in 0..n {
            for i in 0..n {
                let ik = dist[(i, k)].clone();
                if ik.is_pos_inf() {
                    continue;
                }
                for j in 0..n {
                    let kj = &dist[(k, j)];
                    if kj.is_pos_inf() {
                        continue;
                    }
                    let through = esum(&ik, kj);
                    if through < dist[(i, j)] {
                        // a negative closed walk repeats without bound
                        let value = if i == j { ExtReal::NegInf } else { through };
                        dist[(i, j)] = value;
                        next[i * n + j] = next[i * n + k];
                    }
                }
            }
        }
        let cyclic: Vec<usize> = (0..n).filter(|&k| dist[(k, k)].is_neg_inf()).collect();
        for &k in &cyclic {
            for i in 0..n {
                if dist[(i, k)].is_pos_inf() {
                    continue;
                }
                for j in 0..n {
                    if !dist[(k, j)].is_pos_inf() {
                        dist[(i, j)] = ExtReal::NegInf;
                    }
                }
            }
        }
        MinPlusClosure { dist, next }
    }

    pub fn value(&self, i: usize, j: usize) -> &ExtReal {
        &self.dist[(i, j)]
    }

    pub fn into_matrix(self) -> CostMatrix {
        self.dist
    }

    pub fn matrix(&self) -> &CostMatrix {
        &self.dist
    }

    /// A walk `i = w0, w1, ..., wk = j` attaining a finite `value(i, j)`.
    /// Returns `[i]` for the empty walk; `None` when the value is infinite.
    pub fn walk(&self, i: usize, j: usize) -> Option<Vec<usize>> {
        if !self.dist[(i, j)].is_finite() {
            return None;
        }
        let n = self.dist.size();
        let mut out = vec![i];
        if i == j && self.dist[(i, i)].is_zero() {
            return Some(out);
        }
        let mut cur = i;
        while cur != j {
            cur = self.next[cur * n + j]?;
            out.push(cur);
            if out.len() > n + 1 {
                return None;
            }
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extended::esum_all;

    fn m(rows: &[&[&str]]) -> CostMatrix {
        CostMatrix::from_rows(
            rows.iter().map(|r| r.iter().map(|s| s.parse().unwrap()).collect()).collect(),
        )
        .unwrap()
    }

    fn walk_value(arcs: &CostMatrix, w: &[usize]) -> ExtReal {
        let steps: Vec<ExtReal> = w.windows(2).map(|p| arcs[(p[0], p[1])].clone()).collect();
        esum_all(&steps)
    }

    #[test]
    fn shortest_paths_without_cycles() {
        let a = m(&[&["0", "4", "1"], &["inf", "0", "inf"], &["inf", "2", "0"]]);
        let c = MinPlusClosure::compute(&a);
        assert_eq!(*c.value(0, 1), ExtReal::int(3));
        assert_eq!(c.walk(0, 1).unwrap(), vec![0, 2, 1]);
        assert_eq!(*c.value(1, 0), ExtReal::PosInf);
        assert_eq!(c.walk(0, 0).unwrap(), vec![0]);
    }

    #[test]
    fn negative_cycle_spreads() {
        // 1 <-> 2 has total -1; 0 reaches it, 3 is reached from it
        let a = m(&[
            &["0", "1", "inf", "inf"],
            &["inf", "0", "1", "inf"],
            &["inf", "-2", "0", "5"],
            &["inf", "inf", "inf", "0"],
        ]);
        let c = MinPlusClosure::compute(&a);
        assert!(c.value(0, 3).is_neg_inf());
        assert!(c.value(1, 1).is_neg_inf());
        assert_eq!(*c.value(3, 0), ExtReal::PosInf);
        assert_eq!(*c.value(3, 3), ExtReal::zero());
        assert!(c.walk(0, 3).is_none());
    }

    #[test]
    fn neg_inf_arc_acts_as_cycle() {
        let a = m(&[&["0", "-inf", "inf"], &["inf", "0", "3"], &["inf", "inf", "0"]]);
        let c = MinPlusClosure::compute(&a);
        assert!(c.value(0, 2).is_neg_inf());
        assert_eq!(*c.value(1, 2), ExtReal::int(3));
    }

    #[test]
    fn walks_attain_values() {
        let a = m(&[
            &["0", "5", "2", "inf"],
            &["1", "0", "inf", "1"],
            &["inf", "1", "0", "7"],
            &["inf", "inf", "-1", "0"],
        ]);
        let c = MinPlusClosure::compute(&a);
        for i in 0..4 {
            for j in 0..4 {
                if let Some(w) = c.walk(i, j) {
                    let v = if w.len() == 1 { ExtReal::zero() } else { walk_value(&a, &w) };
                    assert_eq!(v, *c.value(i, j), "walk {w:?}");
                }
            }
        }
    }
}
