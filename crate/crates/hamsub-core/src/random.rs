//! Seeded random graph models used by the verification harness and the
//! structure fixtures: G(n, p) and uniform-ish random regular graphs via
//! the pairing model.

use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::graph::{Graph, Vertex};

/// Erdos-Renyi G(n, p); deterministic for a given seed.
pub fn gnp(n: usize, p: f64, seed: u64) -> Graph {
    assert!((0.0..=1.0).contains(&p), "probability in [0, 1]");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let threshold = (p * u32::MAX as f64) as u64;
    let mut edges: Vec<(Vertex, Vertex)> = Vec::new();
    for i in 0..n as Vertex {
        for j in i + 1..n as Vertex {
            if (rng.next_u32() as u64) < threshold {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(n, &edges).expect("generated edges are in range")
}

/// Random `k`-regular graph: a circulant seed randomised by double edge
/// swaps (degree-preserving), long enough to forget the start. `n * k`
/// must be even and `k < n`.
pub fn random_regular(n: usize, k: usize, seed: u64) -> Result<Graph, &'static str> {
    if n * k % 2 != 0 {
        return Err("n * k must be even");
    }
    if k >= n {
        return Err("degree must be below the order");
    }
    if k == 0 {
        return Ok(Graph::from_edges(n, &[]).expect("edgeless"));
    }
    let mut edges: alloc::collections::BTreeSet<(Vertex, Vertex)> = alloc::collections::BTreeSet::new();
    let key = |a: Vertex, b: Vertex| (a.min(b), a.max(b));
    for v in 0..n as Vertex {
        for off in 1..=(k / 2) as Vertex {
            edges.insert(key(v, (v + off) % n as Vertex));
        }
    }
    if k % 2 == 1 {
        // n is even here; add the antipodal matching
        for v in 0..(n / 2) as Vertex {
            edges.insert(key(v, v + (n / 2) as Vertex));
        }
    }
    let mut list: Vec<(Vertex, Vertex)> = edges.iter().copied().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let swaps = 20 * list.len();
    let mut done = 0usize;
    let mut guard = 0usize;
    while done < swaps && guard < 100 * swaps {
        guard += 1;
        let i = (rng.next_u64() % list.len() as u64) as usize;
        let j = (rng.next_u64() % list.len() as u64) as usize;
        if i == j {
            continue;
        }
        let (a, b) = list[i];
        let (c, d) = list[j];
        // swap to (a, c), (b, d), keeping the graph simple
        if a == c || a == d || b == c || b == d {
            continue;
        }
        let (e1, e2) = (key(a, c), key(b, d));
        if edges.contains(&e1) || edges.contains(&e2) {
            continue;
        }
        edges.remove(&key(a, b));
        edges.remove(&key(c, d));
        edges.insert(e1);
        edges.insert(e2);
        list[i] = e1;
        list[j] = e2;
        done += 1;
    }
    let final_edges: Vec<(Vertex, Vertex)> = edges.into_iter().collect();
    Graph::from_edges(n, &final_edges).map_err(|_| "internal: swap broke simplicity")
}
