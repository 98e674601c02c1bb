//! Berger–Shor randomized feedback arc set.
//!
//! Vertices are visited in a seeded uniformly random order. At each vertex,
//! among the arrows that are still present, the smaller of the incoming and
//! outgoing sets is sacrificed (incoming on a tie) and both sets leave the
//! working set. Every surviving arrow is claimed at whichever endpoint was
//! visited first, and all arrows claimed at a vertex point the same way
//! relative to it, so arrows only run forward or backward along the visit
//! order consistently and the kept quiver is acyclic. Loops are sacrificed
//! before the main pass.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::quiver::WeightedQuiver;

/// Outcome of one feedback-arc-set run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FasResult {
    /// Removed arrows, ascending original index.
    pub feedback: Vec<usize>,
    /// Surviving arrows, ascending original index.
    pub kept_arrows: Vec<usize>,
    /// The input with only the surviving arrows. Arrow `i` of `kept` is
    /// `kept_arrows[i]` of the input.
    pub kept: WeightedQuiver,
    /// Vertex visit order.
    pub permutation: Vec<usize>,
    pub seed: u64,
}

impl FasResult {
    /// Fraction of input arrows kept; 1 for an arrowless input.
    pub fn kept_fraction(&self) -> f64 {
        let total = self.feedback.len() + self.kept_arrows.len();
        if total == 0 {
            1.0
        } else {
            self.kept_arrows.len() as f64 / total as f64
        }
    }
}

/// Seeded uniform permutation of `0..n` (ChaCha8 stream, Fisher–Yates).
pub fn seeded_permutation(n: usize, seed: u64) -> Vec<usize> {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    order
}

/// Runs the heuristic with a seeded random visit order.
pub fn berger_shor(wq: &WeightedQuiver, seed: u64) -> FasResult {
    let order = seeded_permutation(wq.quiver().vertex_count(), seed);
    let mut result = berger_shor_with_order(wq, &order);
    result.seed = seed;
    result
}

/// Runs the heuristic with an explicit visit order, which must be a
/// permutation of the vertices. The reported seed is 0.
pub fn berger_shor_with_order(wq: &WeightedQuiver, order: &[usize]) -> FasResult {
    let q = wq.quiver();
    assert_eq!(order.len(), q.vertex_count(), "visit order must cover every vertex");
    let mut present = vec![true; q.arrow_count()];
    let mut in_feedback = vec![false; q.arrow_count()];
    for (a, arrow) in q.arrows().iter().enumerate() {
        if arrow.is_loop() {
            present[a] = false;
            in_feedback[a] = true;
        }
    }

    let mut incoming = Vec::new();
    let mut outgoing = Vec::new();
    for &v in order {
        incoming.clear();
        outgoing.clear();
        incoming.extend(q.incoming(v).iter().copied().filter(|&a| present[a]));
        outgoing.extend(q.outgoing(v).iter().copied().filter(|&a| present[a]));
        let lost = if incoming.len() > outgoing.len() {
            &outgoing
        } else {
            &incoming
        };
        for &a in lost {
            in_feedback[a] = true;
        }
        for &a in incoming.iter().chain(&outgoing) {
            present[a] = false;
        }
    }

    let (feedback, kept_arrows): (Vec<usize>, Vec<usize>) =
        (0..q.arrow_count()).partition(|&a| in_feedback[a]);
    let kept = wq.with_arrows(&kept_arrows);
    debug_assert!(kept.quiver().is_acyclic());
    FasResult {
        feedback,
        kept_arrows,
        kept,
        permutation: order.to_vec(),
        seed: 0,
    }
}

/// The acyclic quiver left after removing a seeded feedback arc set.
pub fn to_dag(wq: &WeightedQuiver, seed: u64) -> WeightedQuiver {
    berger_shor(wq, seed).kept
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{Quiver, WeightedQuiver};

    fn unweighted(n: usize, pairs: &[(usize, usize)]) -> WeightedQuiver {
        WeightedQuiver::unweighted(Quiver::from_pairs(n, pairs).unwrap())
    }

    #[test]
    fn single_arrow_survives_any_seed() {
        let wq = unweighted(2, &[(0, 1)]);
        for seed in 0..20 {
            let r = berger_shor(&wq, seed);
            assert!(r.feedback.is_empty());
            assert_eq!(r.kept_arrows, vec![0]);
        }
    }

    #[test]
    fn two_cycle_tie_drops_incoming() {
        let wq = unweighted(2, &[(0, 1), (1, 0)]);
        let r = berger_shor_with_order(&wq, &[0, 1]);
        assert_eq!(r.feedback, vec![1]);
        assert_eq!(r.kept_arrows, vec![0]);
        assert!(r.kept.quiver().is_acyclic());
        let r = berger_shor_with_order(&wq, &[1, 0]);
        assert_eq!(r.feedback, vec![0]);
    }

    #[test]
    fn loops_are_always_dropped() {
        let wq = unweighted(2, &[(0, 0), (0, 1)]);
        for seed in 0..10 {
            let r = berger_shor(&wq, seed);
            assert_eq!(r.feedback, vec![0]);
            assert_eq!(r.kept_arrows, vec![1]);
        }
    }

    #[test]
    fn majority_side_is_kept() {
        // Two arrows into 0, one out of it: visiting 0 first keeps the inputs.
        let wq = unweighted(4, &[(1, 0), (2, 0), (0, 3)]);
        let r = berger_shor_with_order(&wq, &[0, 1, 2, 3]);
        assert_eq!(r.feedback, vec![2]);
    }

    #[test]
    fn tournament_keeps_half() {
        let mut pairs = Vec::new();
        for i in 0..4 {
            for j in i + 1..4 {
                pairs.push(if (i + j) % 2 == 0 { (i, j) } else { (j, i) });
            }
        }
        let wq = unweighted(4, &pairs);
        for seed in 0..50 {
            let r = berger_shor(&wq, seed);
            assert!(r.kept_arrows.len() >= 3);
            assert!(r.kept.quiver().is_acyclic());
        }
    }

    #[test]
    fn empty_quiver() {
        let r = berger_shor(&WeightedQuiver::default(), 7);
        assert!(r.feedback.is_empty() && r.kept_arrows.is_empty());
        assert_eq!(r.kept_fraction(), 1.0);
        assert_eq!(r.seed, 7);
        assert_eq!(to_dag(&WeightedQuiver::default(), 7).quiver().arrow_count(), 0);
    }

    #[test]
    fn weights_follow_kept_arrows() {
        let wq = WeightedQuiver::from_integer_triples(3, &[(0, 1, 2), (1, 2, 3), (2, 0, 5)]).unwrap();
        let r = berger_shor(&wq, 3);
        for (i, &a) in r.kept_arrows.iter().enumerate() {
            assert_eq!(r.kept.weight(i), wq.weight(a));
            assert_eq!(r.kept.quiver().arrow(i), wq.quiver().arrow(a));
        }
    }

    #[test]
    fn permutation_is_deterministic() {
        assert_eq!(seeded_permutation(30, 11), seeded_permutation(30, 11));
        let mut p = seeded_permutation(30, 11);
        p.sort_unstable();
        assert_eq!(p, (0..30).collect::<Vec<_>>());
    }
}
