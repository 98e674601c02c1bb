#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use wqh_core::{Arrow, Quiver, Rational, WeightedQuiver};

pub fn rational(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Nonzero rational weight. Small pools make commuting cycles (and so
/// nonzero weighted homology) common.
pub fn random_weight(rng: &mut ChaCha8Rng, pool: u8) -> Rational {
    match pool {
        0 => rational(1, 1),
        1 => [rational(1, 1), rational(2, 1), rational(1, 2), rational(-1, 1)]
            .choose(rng)
            .unwrap()
            .clone(),
        _ => {
            let n = loop {
                let n = rng.gen_range(-5i64..=5);
                if n != 0 {
                    break n;
                }
            };
            rational(n, rng.gen_range(1..=4))
        }
    }
}

/// Random acyclic quiver: arrows go forward along a random vertex order and
/// parallel arrows are allowed.
pub fn random_acyclic(rng: &mut ChaCha8Rng, max_vertices: usize, max_arrows: usize) -> WeightedQuiver {
    let n = rng.gen_range(1..=max_vertices);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let m = if n < 2 { 0 } else { rng.gen_range(0..=max_arrows) };
    let pool = rng.gen_range(0..3u8);
    let mut arrows = Vec::with_capacity(m);
    let mut weights = Vec::with_capacity(m);
    for _ in 0..m {
        let i = rng.gen_range(0..n - 1);
        let j = rng.gen_range(i + 1..n);
        arrows.push(Arrow::new(order[i], order[j]));
        weights.push(random_weight(rng, pool));
    }
    WeightedQuiver::new(Quiver::new(n, arrows).unwrap(), weights).unwrap()
}

/// Random digraph without loops; cycles and parallel arcs are allowed.
pub fn random_digraph(rng: &mut ChaCha8Rng, n: usize, m: usize) -> WeightedQuiver {
    let mut arrows = Vec::with_capacity(m);
    let mut weights = Vec::with_capacity(m);
    if n >= 2 {
        while arrows.len() < m {
            let (s, t) = (rng.gen_range(0..n), rng.gen_range(0..n));
            if s != t {
                arrows.push(Arrow::new(s, t));
                weights.push(random_weight(rng, 2));
            }
        }
    }
    WeightedQuiver::new(Quiver::new(n, arrows).unwrap(), weights).unwrap()
}

/// Weakly connected components by union–find.
pub fn weak_components(q: &Quiver) -> usize {
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut parent: Vec<usize> = (0..q.vertex_count()).collect();
    let mut components = q.vertex_count();
    for a in q.arrows() {
        let (x, y) = (find(&mut parent, a.source), find(&mut parent, a.target));
        if x != y {
            parent[x] = y;
            components -= 1;
        }
    }
    components
}

/// Independent acyclicity check by repeatedly peeling sink vertices.
pub fn is_acyclic_by_peeling(q: &Quiver) -> bool {
    let mut out_degree = vec![0usize; q.vertex_count()];
    for a in q.arrows() {
        out_degree[a.source] += 1;
    }
    let mut removed = vec![false; q.vertex_count()];
    loop {
        let Some(v) = (0..q.vertex_count()).find(|&v| !removed[v] && out_degree[v] == 0) else {
            return removed.iter().all(|&r| r);
        };
        removed[v] = true;
        for a in q.arrows().iter().filter(|a| a.target == v) {
            out_degree[a.source] -= 1;
        }
    }
}
