//! Seeded generators for random covers and outerplane graphs.
//!
//! The stream is ChaCha8 (`rand_chacha::ChaCha8Rng`) seeded with
//! `seed_from_u64(seed)`; iteration `i` of a fuzz run uses stream number `i`
//! of that generator. Integers below `n` come from `next_u64` by rejection
//! of the top partial block, and shuffles are Fisher-Yates from the last
//! position down. Nothing else draws from the stream, so a (seed,
//! iteration) pair reproduces the same instance on any platform.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cover::{Cover, Matchings};
use crate::graph::{Graph, VertexId};

pub struct DetRng(ChaCha8Rng);

impl DetRng {
    pub fn new(seed: u64) -> Self {
        DetRng(ChaCha8Rng::seed_from_u64(seed))
    }

    /// The generator for iteration `i` of a run seeded with `seed`.
    pub fn for_iteration(seed: u64, i: u64) -> Self {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        r.set_stream(i);
        DetRng(r)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    /// Uniform in `0..n`. Panics on `n == 0`.
    pub fn below(&mut self, n: usize) -> usize {
        assert!(n > 0, "below(0)");
        let n = n as u64;
        let zone = u64::MAX - (u64::MAX % n + 1) % n;
        loop {
            let x = self.0.next_u64();
            if x <= zone {
                return (x % n) as usize;
            }
        }
    }

    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.below(i + 1);
            items.swap(i, j);
        }
    }

    pub fn permutation(&mut self, n: usize) -> Vec<usize> {
        let mut p: Vec<usize> = (0..n).collect();
        self.shuffle(&mut p);
        p
    }
}

/// One uniformly random maximal matching per edge, edges in sorted order.
pub fn random_maximal_cover(graph: Graph, sizes: Vec<usize>, rng: &mut DetRng) -> Cover {
    let mut m = Matchings::new();
    for &(a, b) in graph.edges() {
        let (p, q) = (sizes[a], sizes[b]);
        let pairs = if p <= q {
            let perm = rng.permutation(q);
            (0..p).map(|i| (i, perm[i])).collect()
        } else {
            let perm = rng.permutation(p);
            (0..q).map(|j| (perm[j], j)).collect()
        };
        m.insert((a, b), pairs);
    }
    Cover::new(graph, sizes, m).expect("random matchings are valid")
}

/// A random maximal cover with each cover edge then kept with probability
/// one half, so matchings are arbitrary partial ones.
pub fn random_cover(graph: Graph, sizes: Vec<usize>, rng: &mut DetRng) -> Cover {
    let full = random_maximal_cover(graph, sizes, rng);
    let mut m = Matchings::new();
    for (&e, pairs) in full.matchings() {
        m.insert(e, pairs.iter().copied().filter(|_| rng.below(2) == 1).collect());
    }
    Cover::new(full.graph().clone(), full.list_sizes().to_vec(), m).expect("sub-matchings are valid")
}

/// G(n, p) with `p = num / den`.
pub fn random_graph(n: usize, num: usize, den: usize, rng: &mut DetRng) -> Graph {
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.below(den) < num {
                edges.push((a, b));
            }
        }
    }
    Graph::from_edges(n, &edges).expect("simple by construction")
}

/// A random near triangulation on `n >= 3` vertices: the outer cycle is a
/// random ordering of the ids and the polygon is split by random triangles.
pub fn random_near_triangulation(n: usize, rng: &mut DetRng) -> (Graph, Vec<VertexId>) {
    assert!(n >= 3);
    let outer = rng.permutation(n);
    let mut edges: Vec<(VertexId, VertexId)> = (0..n).map(|i| (outer[i], outer[(i + 1) % n])).collect();
    let mut stack = vec![outer.clone()];
    while let Some(poly) = stack.pop() {
        let m = poly.len();
        if m <= 3 {
            continue;
        }
        let k = 1 + rng.below(m - 2);
        if k != 1 {
            edges.push((poly[0], poly[k]));
        }
        if k != m - 2 {
            edges.push((poly[k], poly[m - 1]));
        }
        stack.push(poly[..=k].to_vec());
        stack.push(poly[k..].to_vec());
    }
    (Graph::from_edges(n, &edges).expect("triangulation is simple"), outer)
}
