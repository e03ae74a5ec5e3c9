//! Test-only oracles, deliberately independent of the DP code paths:
//! per-subset Hamiltonicity by backtracking, cycle enumeration by anchored
//! DFS, and brute-force canonical forms over all vertex permutations.
//! Compiled only under the `testing` feature.

use alloc::vec;
use alloc::vec::Vec;

use crate::graph::{Graph, Vertex};

/// Does `G[verts]` contain a spanning cycle? Backtracking over orderings
/// anchored at the least vertex.
pub fn is_hamiltonian_subset(g: &Graph, verts: &[Vertex]) -> bool {
    let k = verts.len();
    if k < 3 {
        return false;
    }
    let mut sorted = verts.to_vec();
    sorted.sort_unstable();
    let inset = |v: Vertex| sorted.binary_search(&v).is_ok();
    let anchor = sorted[0];
    let mut used: Vec<bool> = vec![false; g.n()];
    used[anchor as usize] = true;
    let mut path = vec![anchor];
    fn dfs(
        g: &Graph,
        inset: &dyn Fn(Vertex) -> bool,
        anchor: Vertex,
        k: usize,
        path: &mut Vec<Vertex>,
        used: &mut Vec<bool>,
    ) -> bool {
        if path.len() == k {
            return g.has_edge(*path.last().expect("nonempty"), anchor);
        }
        let last = *path.last().expect("nonempty");
        for &u in g.neighbors(last) {
            if inset(u) && !used[u as usize] {
                used[u as usize] = true;
                path.push(u);
                if dfs(g, inset, anchor, k, path, used) {
                    return true;
                }
                path.pop();
                used[u as usize] = false;
            }
        }
        false
    }
    dfs(g, &inset, anchor, k, &mut path, &mut used)
}

/// Hamiltonian-subset count by testing every subset independently.
pub fn ham_count(g: &Graph) -> u64 {
    let n = g.n();
    assert!(n <= 20, "oracle is exponential");
    let mut count = 0;
    for mask in 0usize..1 << n {
        if mask.count_ones() < 3 {
            continue;
        }
        let verts: Vec<Vertex> = (0..n as Vertex).filter(|&v| mask >> v & 1 == 1).collect();
        if is_hamiltonian_subset(g, &verts) {
            count += 1;
        }
    }
    count
}

/// Total number of cycles by DFS path enumeration anchored at each cycle's
/// least vertex; each undirected cycle is seen twice and halved.
pub fn cycle_count(g: &Graph) -> u64 {
    let n = g.n();
    let mut doubled = 0u64;
    let mut used = vec![false; n];
    fn dfs(g: &Graph, anchor: Vertex, last: Vertex, len: usize, used: &mut Vec<bool>, total: &mut u64) {
        for &u in g.neighbors(last) {
            if u == anchor && len >= 3 {
                *total += 1;
            }
            if u > anchor && !used[u as usize] {
                used[u as usize] = true;
                dfs(g, anchor, u, len + 1, used, total);
                used[u as usize] = false;
            }
        }
    }
    for a in 0..n as Vertex {
        used[a as usize] = true;
        dfs(g, a, a, 1, &mut used, &mut doubled);
        used[a as usize] = false;
    }
    doubled / 2
}

/// Upper-triangle edge bits of `g` under the given vertex relabeling
/// (`perm[v]` is the new index of `v`), packed column-major.
fn relabeled_bits(g: &Graph, perm: &[usize]) -> u64 {
    let mut bits = 0u64;
    for (u, v) in g.edge_list() {
        let (a, b) = (perm[u as usize], perm[v as usize]);
        let (i, j) = (a.min(b), a.max(b));
        bits |= 1 << (j * (j - 1) / 2 + i);
    }
    bits
}

/// Brute-force canonical form: the minimum edge-bit pattern over all `n!`
/// relabelings. Usable to n = 8 or so.
pub fn canonical_bits(g: &Graph) -> u64 {
    let n = g.n();
    assert!(n <= 10, "factorial oracle");
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best = relabeled_bits(g, &perm);
    // Heap's algorithm
    let mut c = vec![0usize; n];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            best = best.min(relabeled_bits(g, &perm));
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    best
}
