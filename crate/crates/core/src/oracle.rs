//! Brute-force reference computations, deliberately independent of the
//! closure kernel. Used by the property suite to cross-check the fast paths.

use num_rational::BigRational;
use num_traits::Zero;

use crate::extended::{esum, ExtReal};
use crate::space::{CostMatrix, FiniteRhoSpace};

/// Infimum of `sum w(v_{k-1}, v_k)` over walks `src = v0, ..., vL = dst` with
/// `1 <= L <= max_len`, computed by a layered dynamic program.
pub fn bounded_walk_infimum(w: &CostMatrix, src: usize, dst: usize, max_len: usize) -> ExtReal {
    let n = w.size();
    let mut layer: Vec<ExtReal> = (0..n).map(|v| w[(src, v)].clone()).collect();
    let mut best = layer[dst].clone();
    for _ in 1..max_len {
        let mut next = vec![ExtReal::PosInf; n];
        for u in 0..n {
            if layer[u].is_pos_inf() {
                continue;
            }
            for (v, slot) in next.iter_mut().enumerate() {
                let cand = esum(&layer[u], &w[(u, v)]);
                if cand < *slot {
                    *slot = cand;
                }
            }
        }
        layer = next;
        if layer[dst] < best {
            best = layer[dst].clone();
        }
    }
    best
}

/// Points reachable from `src` by a walk of finite total (length >= 0).
fn reachable(w: &CostMatrix, src: usize) -> Vec<bool> {
    let n = w.size();
    let mut seen = vec![false; n];
    let mut stack = vec![src];
    seen[src] = true;
    while let Some(u) = stack.pop() {
        for v in 0..n {
            if !seen[v] && !w[(u, v)].is_pos_inf() {
                seen[v] = true;
                stack.push(v);
            }
        }
    }
    seen
}

/// Whether some walk from `src` to `dst` can visit a point lying on a closed
/// walk of negative total (of length at most `n`).
pub fn negative_cycle_between(w: &CostMatrix, src: usize, dst: usize) -> bool {
    let n = w.size();
    let from_src = reachable(w, src);
    (0..n).any(|c| {
        from_src[c]
            && reachable(w, c)[dst]
            && bounded_walk_infimum(w, c, c, n) < ExtReal::zero()
    })
}

/// Infimum over all walks of length >= 1: the bounded search plus the
/// negative-cycle flag.
pub fn walk_infimum(w: &CostMatrix, src: usize, dst: usize, max_len: usize) -> ExtReal {
    if negative_cycle_between(w, src, dst) {
        ExtReal::NegInf
    } else {
        bounded_walk_infimum(w, src, dst, max_len)
    }
}

/// Step-path infimum of `min(rho(x, y), rho(y, x))`, by walks up to `2|X|`.
pub fn reflective_oracle(space: &FiniteRhoSpace) -> CostMatrix {
    let n = space.len();
    let w = CostMatrix::from_fn(n, |i, j| space.rho(i, j).meet(space.rho(j, i)));
    CostMatrix::from_fn(n, |i, j| walk_infimum(&w, i, j, 2 * n))
}

/// Chain infimum for a quotient: a chain alternates steps with free jumps
/// inside a class, which is a walk in the class graph whose arc weight is the
/// least entry between the two classes.
pub fn quotient_oracle(space: &FiniteRhoSpace, classes: &[Vec<usize>]) -> CostMatrix {
    let k = classes.len();
    let w = CostMatrix::from_fn(k, |a, b| {
        let mut best = ExtReal::PosInf;
        for &u in &classes[a] {
            for &v in &classes[b] {
                if *space.rho(u, v) < best {
                    best = space.rho(u, v).clone();
                }
            }
        }
        best
    });
    let max_len = 2 * space.len();
    CostMatrix::from_fn(k, |a, b| walk_infimum(&w, a, b, max_len))
}

/// Supremum over partitions of a step path's sampled sum, by enumerating
/// which visits a partition samples (with repeats at each sampled visit
/// bounded by `max_repeat`). The first and last visits are always sampled.
pub fn step_partition_supremum(space: &FiniteRhoSpace, visits: &[usize], max_repeat: usize) -> ExtReal {
    let m = visits.len();
    if m == 1 {
        // partitions of a constant path: (k+1) samples of the same point
        let x = visits[0];
        let mut best = ExtReal::NegInf;
        for k in 1..=max_repeat.max(1) {
            let v = (0..k).fold(ExtReal::zero(), |acc, _| esum(&acc, space.rho(x, x)));
            best = best.join(&v);
        }
        return best;
    }
    let inner = m - 2;
    let mut best = ExtReal::NegInf;
    for mask in 0u64..(1u64 << inner) {
        let mut seq = vec![visits[0]];
        for (b, &v) in visits[1..m - 1].iter().enumerate() {
            if mask >> b & 1 == 1 {
                seq.push(v);
            }
        }
        seq.push(visits[m - 1]);
        for rep in 0..=max_repeat {
            let mut s = ExtReal::zero();
            for (idx, pair) in seq.windows(2).enumerate() {
                if idx == 0 {
                    for _ in 0..rep {
                        s = esum(&s, space.rho(pair[0], pair[0]));
                    }
                }
                s = esum(&s, space.rho(pair[0], pair[1]));
            }
            best = best.join(&s);
        }
    }
    best
}

/// `(v, ascent, descent, variation)` of a profile, by splitting it into
/// maximal monotone runs and summing the rise or fall of each run.
pub fn monotone_run_oracle(values: &[BigRational]) -> (BigRational, BigRational, BigRational, BigRational) {
    let mut ascent = BigRational::zero();
    let mut descent = BigRational::zero();
    let mut run_start = values[0].clone();
    let mut dir = 0i8;
    let mut prev = values[0].clone();
    let close = |dir: i8, from: &BigRational, to: &BigRational, up: &mut BigRational, down: &mut BigRational| {
        if dir > 0 {
            *up += to - from;
        } else if dir < 0 {
            *down += from - to;
        }
    };
    for y in &values[1..] {
        let step = if *y > prev { 1 } else if *y < prev { -1 } else { 0 };
        if step != 0 && dir != 0 && step != dir {
            close(dir, &run_start, &prev, &mut ascent, &mut descent);
            run_start = prev.clone();
        }
        if step != 0 {
            if dir == 0 {
                run_start = prev.clone();
            }
            dir = step;
        }
        prev = y.clone();
    }
    close(dir, &run_start, &prev, &mut ascent, &mut descent);
    let v = values.last().unwrap() - &values[0];
    let tv = &ascent + &descent;
    (v, ascent, descent, tv)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_point_reflective() {
        let s = FiniteRhoSpace::from_text_rows(&["a", "b"], &[&["0", "1"], &["4", "0"]]).unwrap();
        let r = reflective_oracle(&s);
        assert_eq!(r[(0, 1)], ExtReal::int(1));
        assert_eq!(r[(1, 0)], ExtReal::int(1));
        assert_eq!(r[(0, 0)], ExtReal::zero());
    }

    #[test]
    fn loop_through_class_is_chaotic() {
        let s = FiniteRhoSpace::from_text_rows(
            &["0", "1", "2"],
            &[&["0", "1", "2"], &["-1", "0", "1"], &["-2", "-1", "0"]],
        )
        .unwrap();
        let q = quotient_oracle(&s, &[vec![0, 2], vec![1]]);
        assert!(q.entries().all(ExtReal::is_neg_inf));
    }

    #[test]
    fn partition_supremum_is_full_visit_sum() {
        let s = FiniteRhoSpace::from_text_rows(
            &["a", "b", "c"],
            &[&["0", "1", "5"], &["2", "0", "4"], &["3", "1", "0"]],
        )
        .unwrap();
        assert_eq!(step_partition_supremum(&s, &[0, 1, 2], 2), ExtReal::int(5));
        assert_eq!(step_partition_supremum(&s, &[0, 2, 1], 2), ExtReal::int(6));
    }
}
