//! Quivers, their free categories, and neighbourhood extraction.
//!
//! Vertices and arrows are dense indices. Parallel arrows are distinct
//! objects; nothing in this module ever identifies an arrow by its endpoint
//! pair. Paths are the non-identity morphisms of the free category, and an
//! [`NChain`] is a composable tuple of them, stored in the order the
//! morphisms are traversed.

use std::collections::{HashMap, VecDeque};

use num_traits::Zero;

use crate::algebra::Rational;
use crate::error::{Error, Result};

/// An arrow `source -> target`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub source: usize,
    pub target: usize,
}

impl Arrow {
    pub fn new(source: usize, target: usize) -> Self {
        Arrow { source, target }
    }

    pub fn is_loop(&self) -> bool {
        self.source == self.target
    }
}

/// A finite quiver on the vertices `0..vertex_count`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    vertex_count: usize,
    arrows: Vec<Arrow>,
    outgoing: Vec<Vec<usize>>,
    incoming: Vec<Vec<usize>>,
}

impl Quiver {
    pub fn new(vertex_count: usize, arrows: Vec<Arrow>) -> Result<Self> {
        let mut outgoing = vec![Vec::new(); vertex_count];
        let mut incoming = vec![Vec::new(); vertex_count];
        for (i, a) in arrows.iter().enumerate() {
            for vertex in [a.source, a.target] {
                if vertex >= vertex_count {
                    return Err(Error::VertexOutOfRange {
                        arrow: i,
                        vertex,
                        vertex_count,
                    });
                }
            }
            outgoing[a.source].push(i);
            incoming[a.target].push(i);
        }
        Ok(Quiver {
            vertex_count,
            arrows,
            outgoing,
            incoming,
        })
    }

    /// Builds a quiver from `(source, target)` pairs.
    pub fn from_pairs(vertex_count: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        Self::new(
            vertex_count,
            pairs.iter().map(|&(s, t)| Arrow::new(s, t)).collect(),
        )
    }

    pub fn empty() -> Self {
        Quiver::default()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, index: usize) -> Arrow {
        self.arrows[index]
    }

    /// Arrow indices leaving `v`, ascending.
    pub fn outgoing(&self, v: usize) -> &[usize] {
        &self.outgoing[v]
    }

    /// Arrow indices entering `v`, ascending.
    pub fn incoming(&self, v: usize) -> &[usize] {
        &self.incoming[v]
    }

    /// Topological order of the vertices, or `None` if the quiver has an
    /// oriented cycle (loops included).
    ///
    /// Ties are broken by the order vertices become ready, seeded with the
    /// sources in ascending index order, so the result is deterministic.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let mut indegree: Vec<usize> = self.incoming.iter().map(Vec::len).collect();
        let mut ready: VecDeque<usize> = (0..self.vertex_count)
            .filter(|&v| indegree[v] == 0)
            .collect();
        let mut order = Vec::with_capacity(self.vertex_count);
        while let Some(v) = ready.pop_front() {
            order.push(v);
            for &a in &self.outgoing[v] {
                let t = self.arrows[a].target;
                indegree[t] -= 1;
                if indegree[t] == 0 {
                    ready.push_back(t);
                }
            }
        }
        (order.len() == self.vertex_count).then_some(order)
    }

    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_some()
    }

    /// Arrow indices of some oriented cycle, in traversal order.
    pub fn find_cycle(&self) -> Option<Vec<usize>> {
        #[derive(Clone, Copy, PartialEq)]
        enum Mark {
            New,
            Active,
            Done,
        }
        let mut mark = vec![Mark::New; self.vertex_count];
        // Arrow used to enter each active vertex.
        let mut via = vec![usize::MAX; self.vertex_count];
        for root in 0..self.vertex_count {
            if mark[root] != Mark::New {
                continue;
            }
            let mut stack: Vec<(usize, usize)> = vec![(root, 0)];
            mark[root] = Mark::Active;
            while let Some(&mut (v, ref mut next)) = stack.last_mut() {
                if let Some(&a) = self.outgoing[v].get(*next) {
                    *next += 1;
                    let t = self.arrows[a].target;
                    match mark[t] {
                        Mark::New => {
                            mark[t] = Mark::Active;
                            via[t] = a;
                            stack.push((t, 0));
                        }
                        Mark::Active => {
                            let mut cycle = vec![a];
                            let mut cur = v;
                            while cur != t {
                                let back = via[cur];
                                cycle.push(back);
                                cur = self.arrows[back].source;
                            }
                            cycle.reverse();
                            return Some(cycle);
                        }
                        Mark::Done => {}
                    }
                } else {
                    mark[v] = Mark::Done;
                    stack.pop();
                }
            }
        }
        None
    }

    fn require_acyclic(&self) -> Result<()> {
        match self.find_cycle() {
            Some(cycle) => Err(Error::Cyclic { cycle }),
            None => Ok(()),
        }
    }

    /// All paths of length `1..=max_length` (every path when `None`), in
    /// lexicographic order of their arrow-index sequences.
    ///
    /// Unbounded enumeration is refused on a cyclic quiver.
    pub fn enumerate_paths(&self, max_length: Option<usize>) -> Result<Vec<Path>> {
        if max_length.is_none() {
            self.require_acyclic()?;
        }
        let limit = max_length.unwrap_or(usize::MAX);
        let mut out = Vec::new();
        if limit == 0 {
            return Ok(out);
        }
        let mut prefix = Vec::new();
        for a in 0..self.arrows.len() {
            prefix.push(a);
            self.extend_paths(&mut prefix, limit, &mut out);
            prefix.pop();
        }
        Ok(out)
    }

    fn extend_paths(&self, prefix: &mut Vec<usize>, limit: usize, out: &mut Vec<Path>) {
        let last = self.arrows[*prefix.last().expect("nonempty prefix")];
        out.push(Path {
            arrows: prefix.clone(),
            source: self.arrows[prefix[0]].source,
            target: last.target,
        });
        if prefix.len() == limit {
            return;
        }
        for &b in &self.outgoing[last.target] {
            prefix.push(b);
            self.extend_paths(prefix, limit, out);
            prefix.pop();
        }
    }

    /// Nondegenerate `n`-chains of the free category, optionally restricted
    /// to chains whose composite has length at most `ell`.
    ///
    /// The order is lexicographic in the tuple of path positions within
    /// [`Quiver::enumerate_paths`].
    pub fn enumerate_nchains(&self, n: usize, ell: Option<usize>) -> Result<Vec<NChain>> {
        self.require_acyclic()?;
        if n == 0 {
            return Err(Error::Config("chain degree must be positive".into()));
        }
        let paths = self.enumerate_paths(ell)?;
        let mut by_source: Vec<Vec<usize>> = vec![Vec::new(); self.vertex_count];
        for (i, p) in paths.iter().enumerate() {
            by_source[p.source].push(i);
        }
        let limit = ell.unwrap_or(usize::MAX);
        let mut out = Vec::new();
        let mut current: Vec<usize> = Vec::with_capacity(n);
        for first in 0..paths.len() {
            current.push(first);
            collect_chains(
                &paths,
                &by_source,
                n,
                limit,
                paths[first].len(),
                &mut current,
                &mut out,
            );
            current.pop();
        }
        Ok(out)
    }

    /// Number of `n`-chains for each degree `1..=n_max` without materialising
    /// them. Saturates at `u128::MAX`.
    pub fn count_nchains(&self, n_max: usize, ell: Option<usize>) -> Result<Vec<u128>> {
        let order = self.topological_order().ok_or_else(|| Error::Cyclic {
            cycle: self.find_cycle().unwrap_or_default(),
        })?;
        // paths_by_length[L] = number of paths of length L.
        let longest = self.vertex_count.saturating_sub(1);
        let max_len = ell.map_or(longest, |l| l.min(longest));
        let mut ending_at = vec![1u128; self.vertex_count];
        let mut paths_by_length = vec![0u128; max_len + 1];
        for slot in paths_by_length.iter_mut().skip(1) {
            let mut next = vec![0u128; self.vertex_count];
            for &v in &order {
                for &a in &self.outgoing[v] {
                    let t = self.arrows[a].target;
                    next[t] = next[t].saturating_add(ending_at[v]);
                }
            }
            *slot = next.iter().fold(0u128, |acc, &x| acc.saturating_add(x));
            ending_at = next;
        }
        // Each n-chain is a composition of its composite path into n pieces.
        Ok((1..=n_max)
            .map(|n| {
                paths_by_length
                    .iter()
                    .enumerate()
                    .skip(1)
                    .fold(0u128, |acc, (len, &count)| {
                        acc.saturating_add(count.saturating_mul(binomial(len - 1, n - 1)))
                    })
            })
            .collect())
    }

    /// Vertices reachable from `v` by a directed path of length at most `k`,
    /// ascending. `v` itself is always included.
    pub fn k_hop_vertices(&self, v: usize, k: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.vertex_count];
        dist[v] = 0;
        let mut queue = VecDeque::from([v]);
        while let Some(u) = queue.pop_front() {
            if dist[u] == k {
                continue;
            }
            for &a in &self.outgoing[u] {
                let t = self.arrows[a].target;
                if dist[t] == usize::MAX {
                    dist[t] = dist[u] + 1;
                    queue.push_back(t);
                }
            }
        }
        (0..self.vertex_count)
            .filter(|&u| dist[u] != usize::MAX)
            .collect()
    }
}

impl Default for Quiver {
    fn default() -> Self {
        Quiver {
            vertex_count: 0,
            arrows: Vec::new(),
            outgoing: Vec::new(),
            incoming: Vec::new(),
        }
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}

fn collect_chains(
    paths: &[Path],
    by_source: &[Vec<usize>],
    n: usize,
    limit: usize,
    total: usize,
    current: &mut Vec<usize>,
    out: &mut Vec<NChain>,
) {
    if current.len() == n {
        out.push(NChain {
            morphisms: current.iter().map(|&i| paths[i].clone()).collect(),
        });
        return;
    }
    let end = paths[*current.last().expect("nonempty chain")].target;
    for &next in &by_source[end] {
        let len = total + paths[next].len();
        if len > limit {
            continue;
        }
        current.push(next);
        collect_chains(paths, by_source, n, limit, len, current, out);
        current.pop();
    }
}

/// A non-identity morphism of the free category: a nonempty sequence of
/// composable arrows, first arrow first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    arrows: Vec<usize>,
    source: usize,
    target: usize,
}

impl Path {
    pub fn new(q: &Quiver, arrows: Vec<usize>) -> Result<Self> {
        let (&first, &last) = match (arrows.first(), arrows.last()) {
            (Some(f), Some(l)) => (f, l),
            _ => return Err(Error::NotComposable(arrows)),
        };
        if arrows.iter().any(|&a| a >= q.arrow_count())
            || arrows
                .windows(2)
                .any(|w| q.arrow(w[0]).target != q.arrow(w[1]).source)
        {
            return Err(Error::NotComposable(arrows));
        }
        Ok(Path {
            source: q.arrow(first).source,
            target: q.arrow(last).target,
            arrows,
        })
    }

    pub fn arrows(&self) -> &[usize] {
        &self.arrows
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    /// Always false; paths have at least one arrow.
    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    /// `next ∘ self`. Panics if the paths do not meet.
    pub fn then(&self, next: &Path) -> Path {
        assert_eq!(self.target, next.source, "paths do not compose");
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&next.arrows);
        Path {
            arrows,
            source: self.source,
            target: next.target,
        }
    }

    /// Image under an arrow map that is known to preserve incidence.
    pub(crate) fn map_arrows(&self, arrow_map: &[usize], vertex_map: &[usize]) -> Path {
        Path {
            arrows: self.arrows.iter().map(|&a| arrow_map[a]).collect(),
            source: vertex_map[self.source],
            target: vertex_map[self.target],
        }
    }
}

/// A composable tuple of non-identity morphisms, first-traversed first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NChain {
    morphisms: Vec<Path>,
}

impl NChain {
    pub fn new(morphisms: Vec<Path>) -> Result<Self> {
        if morphisms.is_empty()
            || morphisms
                .windows(2)
                .any(|w| w[0].target() != w[1].source())
        {
            return Err(Error::NotComposable(
                morphisms.iter().flat_map(|p| p.arrows.clone()).collect(),
            ));
        }
        Ok(NChain { morphisms })
    }

    pub(crate) fn from_parts(morphisms: Vec<Path>) -> Self {
        NChain { morphisms }
    }

    pub fn morphisms(&self) -> &[Path] {
        &self.morphisms
    }

    pub fn degree(&self) -> usize {
        self.morphisms.len()
    }

    pub fn total_length(&self) -> usize {
        self.morphisms.iter().map(Path::len).sum()
    }

    pub fn source(&self) -> usize {
        self.morphisms[0].source()
    }

    pub fn target(&self) -> usize {
        self.morphisms[self.morphisms.len() - 1].target()
    }

    /// Composite path of the whole chain.
    pub fn composite(&self) -> Path {
        let mut arrows = Vec::with_capacity(self.total_length());
        for p in &self.morphisms {
            arrows.extend_from_slice(&p.arrows);
        }
        Path {
            arrows,
            source: self.source(),
            target: self.target(),
        }
    }
}

/// A quiver with an invertible rational weight on every arrow.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct WeightedQuiver {
    quiver: Quiver,
    weights: Vec<Rational>,
}

impl WeightedQuiver {
    pub fn new(quiver: Quiver, weights: Vec<Rational>) -> Result<Self> {
        if weights.len() != quiver.arrow_count() {
            return Err(Error::WeightCount {
                expected: quiver.arrow_count(),
                got: weights.len(),
            });
        }
        if let Some(arrow) = weights.iter().position(Zero::is_zero) {
            return Err(Error::ZeroWeight { arrow });
        }
        Ok(WeightedQuiver { quiver, weights })
    }

    /// Every arrow weighted 1.
    pub fn unweighted(quiver: Quiver) -> Self {
        let weights = vec![Rational::from_integer(1.into()); quiver.arrow_count()];
        WeightedQuiver { quiver, weights }
    }

    /// Convenience constructor from `(source, target, weight)` triples with
    /// integer weights.
    pub fn from_integer_triples(vertex_count: usize, triples: &[(usize, usize, i64)]) -> Result<Self> {
        let quiver = Quiver::new(
            vertex_count,
            triples.iter().map(|&(s, t, _)| Arrow::new(s, t)).collect(),
        )?;
        let weights = triples
            .iter()
            .map(|&(_, _, w)| Rational::from_integer(w.into()))
            .collect();
        Self::new(quiver, weights)
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn weight(&self, arrow: usize) -> &Rational {
        &self.weights[arrow]
    }

    /// Product of the arrow weights along a path.
    pub fn path_weight(&self, path: &Path) -> Rational {
        path.arrows()
            .iter()
            .fold(Rational::from_integer(1.into()), |acc, &a| acc * &self.weights[a])
    }

    /// The subquiver on `vertices` containing every arrow with both endpoints
    /// among them. New vertex indices follow ascending original index and
    /// arrows keep their relative order.
    pub fn induced_subquiver(&self, vertices: &[usize]) -> (WeightedQuiver, Subquiver) {
        let mut kept_vertices: Vec<usize> = vertices.to_vec();
        kept_vertices.sort_unstable();
        kept_vertices.dedup();
        let mut new_index = HashMap::with_capacity(kept_vertices.len());
        for (i, &v) in kept_vertices.iter().enumerate() {
            new_index.insert(v, i);
        }
        let mut arrows = Vec::new();
        let mut weights = Vec::new();
        let mut arrow_origin = Vec::new();
        for (i, a) in self.quiver.arrows().iter().enumerate() {
            if let (Some(&s), Some(&t)) = (new_index.get(&a.source), new_index.get(&a.target)) {
                arrows.push(Arrow::new(s, t));
                weights.push(self.weights[i].clone());
                arrow_origin.push(i);
            }
        }
        let quiver = Quiver::new(kept_vertices.len(), arrows).expect("induced arrows are in range");
        (
            WeightedQuiver { quiver, weights },
            Subquiver {
                vertices: kept_vertices,
                arrows: arrow_origin,
            },
        )
    }

    /// Keeps only the listed arrows (all vertices stay).
    pub fn with_arrows(&self, keep: &[usize]) -> WeightedQuiver {
        let arrows = keep.iter().map(|&a| self.quiver.arrow(a)).collect();
        let weights = keep.iter().map(|&a| self.weights[a].clone()).collect();
        WeightedQuiver {
            quiver: Quiver::new(self.quiver.vertex_count(), arrows).expect("arrows already validated"),
            weights,
        }
    }
}

/// Index maps from an induced subquiver back into its parent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subquiver {
    /// `vertices[new] = old`.
    pub vertices: Vec<usize>,
    /// `arrows[new] = old`.
    pub arrows: Vec<usize>,
}

impl Subquiver {
    /// The inclusion morphism into the parent quiver.
    pub fn inclusion(&self) -> QuiverMorphism {
        QuiverMorphism {
            vertex_map: self.vertices.clone(),
            arrow_map: self.arrows.clone(),
        }
    }
}

/// A morphism of quivers given by vertex and arrow maps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuiverMorphism {
    pub vertex_map: Vec<usize>,
    pub arrow_map: Vec<usize>,
}

impl QuiverMorphism {
    pub fn identity(q: &Quiver) -> Self {
        QuiverMorphism {
            vertex_map: (0..q.vertex_count()).collect(),
            arrow_map: (0..q.arrow_count()).collect(),
        }
    }

    /// Checks that the maps have the right domains and preserve sources and
    /// targets.
    pub fn validate(&self, source: &Quiver, target: &Quiver) -> Result<()> {
        if self.vertex_map.len() != source.vertex_count() || self.arrow_map.len() != source.arrow_count() {
            return Err(Error::Morphism("map lengths do not match the source quiver".into()));
        }
        if let Some(&v) = self.vertex_map.iter().find(|&&v| v >= target.vertex_count()) {
            return Err(Error::Morphism(format!("vertex image {v} out of range")));
        }
        for (a, &image) in self.arrow_map.iter().enumerate() {
            if image >= target.arrow_count() {
                return Err(Error::Morphism(format!("arrow image {image} out of range")));
            }
            let (from, to) = (source.arrow(a), target.arrow(image));
            if self.vertex_map[from.source] != to.source || self.vertex_map[from.target] != to.target {
                return Err(Error::Morphism(format!(
                    "arrow {a} is not mapped compatibly with its endpoints"
                )));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line() -> Quiver {
        Quiver::from_pairs(3, &[(0, 1), (1, 2)]).unwrap()
    }

    /// x0 -> x1 (arrow 0), x1 -> x2 (arrow 1), x0 -> x2 (arrow 2).
    fn triangle() -> Quiver {
        Quiver::from_pairs(3, &[(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    /// x1 -> x2, x2 -> x4, x1 -> x3, x3 -> x4 with x1..x4 as 0..3.
    fn square() -> Quiver {
        Quiver::from_pairs(4, &[(0, 1), (1, 3), (0, 2), (2, 3)]).unwrap()
    }

    #[test]
    fn acyclicity() {
        assert_eq!(line().topological_order(), Some(vec![0, 1, 2]));
        let two_cycle = Quiver::from_pairs(2, &[(0, 1), (1, 0)]).unwrap();
        assert!(!two_cycle.is_acyclic());
        assert_eq!(two_cycle.find_cycle(), Some(vec![0, 1]));
        let self_loop = Quiver::from_pairs(1, &[(0, 0)]).unwrap();
        assert!(!self_loop.is_acyclic());
        assert_eq!(self_loop.find_cycle(), Some(vec![0]));
        assert_eq!(line().find_cycle(), None);
    }

    #[test]
    fn rejects_out_of_range_vertices() {
        assert!(matches!(
            Quiver::from_pairs(2, &[(0, 2)]),
            Err(Error::VertexOutOfRange { vertex: 2, .. })
        ));
    }

    #[test]
    fn triangle_paths() {
        let paths = triangle().enumerate_paths(None).unwrap();
        let seqs: Vec<&[usize]> = paths.iter().map(Path::arrows).collect();
        assert_eq!(seqs, vec![&[0][..], &[0, 1], &[1], &[2]]);
        assert_eq!(paths.iter().filter(|p| p.len() == 2).count(), 1);
        assert_eq!((paths[1].source(), paths[1].target()), (0, 2));
    }

    #[test]
    fn square_paths() {
        let paths = square().enumerate_paths(None).unwrap();
        assert_eq!(paths.iter().filter(|p| p.len() == 1).count(), 4);
        assert_eq!(paths.iter().filter(|p| p.len() == 2).count(), 2);
        assert_eq!(paths.len(), 6);
    }

    #[test]
    fn single_arrow_has_one_path() {
        let q = Quiver::from_pairs(2, &[(0, 1)]).unwrap();
        assert_eq!(q.enumerate_paths(None).unwrap().len(), 1);
    }

    #[test]
    fn unbounded_paths_on_cycle_is_an_error() {
        let q = Quiver::from_pairs(2, &[(0, 1), (1, 0)]).unwrap();
        assert!(matches!(q.enumerate_paths(None), Err(Error::Cyclic { .. })));
        // Bounded enumeration is fine and revisits vertices.
        assert_eq!(q.enumerate_paths(Some(3)).unwrap().len(), 6);
    }

    #[test]
    fn triangle_two_chains() {
        let chains = triangle().enumerate_nchains(2, None).unwrap();
        assert_eq!(chains.len(), 1);
        let m = chains[0].morphisms();
        assert_eq!((m[0].arrows(), m[1].arrows()), (&[0][..], &[1][..]));
        assert!(triangle().enumerate_nchains(2, Some(1)).unwrap().is_empty());
    }

    #[test]
    fn one_chains_of_length_one_are_arrows() {
        let chains = square().enumerate_nchains(1, Some(1)).unwrap();
        let arrows: Vec<usize> = chains.iter().map(|c| c.morphisms()[0].arrows()[0]).collect();
        assert_eq!(arrows, vec![0, 1, 2, 3]);
    }

    #[test]
    fn chain_counts_match_enumeration() {
        for ell in [None, Some(1), Some(2)] {
            let counts = square().count_nchains(3, ell).unwrap();
            for (n, &count) in counts.iter().enumerate() {
                let listed = square().enumerate_nchains(n + 1, ell).unwrap().len();
                assert_eq!(count, listed as u128);
            }
        }
    }

    #[test]
    fn k_hop() {
        let q = line();
        assert_eq!(q.k_hop_vertices(0, 0), vec![0]);
        assert_eq!(q.k_hop_vertices(0, 1), vec![0, 1]);
        assert_eq!(q.k_hop_vertices(0, 2), vec![0, 1, 2]);
        assert_eq!(q.k_hop_vertices(2, 5), vec![2]);
    }

    #[test]
    fn induced_subquivers() {
        let wq = WeightedQuiver::from_integer_triples(3, &[(0, 1, 2), (1, 2, 3), (0, 2, 6)]).unwrap();
        let (whole, map) = wq.induced_subquiver(&[0, 1, 2]);
        assert_eq!(whole, wq);
        assert_eq!(map.arrows, vec![0, 1, 2]);

        let (sub, map) = wq.induced_subquiver(&[2, 0]);
        assert_eq!(sub.quiver().vertex_count(), 2);
        assert_eq!(sub.quiver().arrows(), &[Arrow::new(0, 1)]);
        assert_eq!(sub.weight(0), &Rational::from_integer(6.into()));
        assert_eq!(map.vertices, vec![0, 2]);
        assert_eq!(map.arrows, vec![2]);
        map.inclusion().validate(sub.quiver(), wq.quiver()).unwrap();

        let (empty, _) = wq.induced_subquiver(&[]);
        assert_eq!(empty.quiver().vertex_count(), 0);
        assert_eq!(empty.quiver().arrow_count(), 0);
    }

    #[test]
    fn zero_weight_is_rejected() {
        assert!(matches!(
            WeightedQuiver::from_integer_triples(2, &[(0, 1, 0)]),
            Err(Error::ZeroWeight { arrow: 0 })
        ));
    }

    #[test]
    fn path_and_chain_validation() {
        let q = triangle();
        assert!(Path::new(&q, vec![0, 1]).is_ok());
        assert!(Path::new(&q, vec![1, 0]).is_err());
        assert!(Path::new(&q, vec![]).is_err());
        let p = Path::new(&q, vec![0]).unwrap();
        let r = Path::new(&q, vec![1]).unwrap();
        let chain = NChain::new(vec![p.clone(), r.clone()]).unwrap();
        assert_eq!(chain.total_length(), 2);
        assert_eq!(chain.composite(), p.then(&r));
        assert!(NChain::new(vec![r, p]).is_err());
    }
}
