//! Exact vertex connectivity via unit-capacity max-flow on the split graph
//! (Menger). A minimum cut either misses some fixed vertex `v0`, in which
//! case a flow from `v0` to a non-neighbour finds it, or contains `v0`, in
//! which case a flow between two non-adjacent neighbours of `v0` does.

use alloc::vec;
use alloc::vec::Vec;

use crate::graph::{Graph, GraphError, Vertex};

struct FlowNet {
    // forward-star arcs: to[], cap[], head/next adjacency
    to: Vec<u32>,
    cap: Vec<u8>,
    next: Vec<u32>,
    head: Vec<u32>,
}

const NIL: u32 = u32::MAX;

impl FlowNet {
    fn new(nodes: usize) -> Self {
        FlowNet { to: Vec::new(), cap: Vec::new(), next: Vec::new(), head: vec![NIL; nodes] }
    }

    fn arc(&mut self, from: u32, to: u32, cap: u8) {
        let id = self.to.len() as u32;
        self.to.push(to);
        self.cap.push(cap);
        self.next.push(self.head[from as usize]);
        self.head[from as usize] = id;
        // residual
        self.to.push(from);
        self.cap.push(0);
        self.next.push(self.head[to as usize]);
        self.head[to as usize] = id + 1;
    }

    /// BFS augmenting paths; returns the max flow, stopping early once the
    /// flow reaches `limit`.
    fn max_flow(&mut self, s: u32, t: u32, limit: usize) -> usize {
        let n = self.head.len();
        let mut flow = 0;
        let mut parent_arc = vec![NIL; n];
        let mut queue = alloc::collections::VecDeque::new();
        while flow < limit {
            parent_arc.iter_mut().for_each(|p| *p = NIL);
            queue.clear();
            queue.push_back(s);
            parent_arc[s as usize] = NIL - 1;
            let mut reached = false;
            'bfs: while let Some(v) = queue.pop_front() {
                let mut a = self.head[v as usize];
                while a != NIL {
                    let u = self.to[a as usize];
                    if self.cap[a as usize] > 0 && parent_arc[u as usize] == NIL {
                        parent_arc[u as usize] = a;
                        if u == t {
                            reached = true;
                            break 'bfs;
                        }
                        queue.push_back(u);
                    }
                    a = self.next[a as usize];
                }
            }
            if !reached {
                break;
            }
            let mut v = t;
            while v != s {
                let a = parent_arc[v as usize];
                self.cap[a as usize] -= 1;
                self.cap[(a ^ 1) as usize] += 1;
                v = self.to[(a ^ 1) as usize];
            }
            flow += 1;
        }
        flow
    }
}

/// Max number of internally vertex-disjoint `s,t`-paths (`s != t`,
/// non-adjacent or not). Splits every vertex into in/out halves.
fn vertex_flow(g: &Graph, s: Vertex, t: Vertex, limit: usize) -> usize {
    let n = g.n();
    // node 2v = v_in, 2v+1 = v_out
    let mut net = FlowNet::new(2 * n);
    for v in 0..n as u32 {
        let cap = if v == s || v == t { 2 } else { 1 };
        net.arc(2 * v, 2 * v + 1, cap);
    }
    for (u, v) in g.edge_list() {
        net.arc(2 * u + 1, 2 * v, 1);
        net.arc(2 * v + 1, 2 * u, 1);
    }
    net.max_flow(2 * s + 1, 2 * t, limit)
}

/// Exact vertex connectivity; `n - 1` for complete graphs.
pub fn vertex_connectivity(g: &Graph) -> Result<usize, GraphError> {
    let n = g.n();
    if n < 2 {
        return Err(GraphError::TooSmall { need: 2, have: n });
    }
    if g.is_complete() {
        return Ok(n - 1);
    }
    if !g.is_connected() {
        return Ok(0);
    }
    let v0 = (0..n as Vertex).min_by_key(|&v| g.degree(v)).expect("nonempty");
    let mut best = g.degree(v0);
    for t in 0..n as Vertex {
        if t != v0 && !g.has_edge(v0, t) {
            best = best.min(vertex_flow(g, v0, t, best));
        }
    }
    let nbrs = g.neighbors(v0);
    for (i, &a) in nbrs.iter().enumerate() {
        for &b in &nbrs[i + 1..] {
            if !g.has_edge(a, b) {
                best = best.min(vertex_flow(g, a, b, best));
            }
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct;

    #[test]
    fn complete_and_cycles() {
        assert_eq!(vertex_connectivity(&construct::complete(5)).unwrap(), 4);
        assert_eq!(vertex_connectivity(&construct::cycle(6).unwrap()).unwrap(), 2);
        assert_eq!(vertex_connectivity(&construct::path(5).unwrap()).unwrap(), 1);
    }

    #[test]
    fn cut_vertex_means_connectivity_one() {
        let g = construct::glue_at_vertex(&construct::complete(4), 0, &construct::complete(3), 0)
            .unwrap();
        assert_eq!(vertex_connectivity(&g).unwrap(), 1);
    }

    #[test]
    fn bipartite_connectivity_is_min_side() {
        assert_eq!(vertex_connectivity(&construct::complete_bipartite(3, 5)).unwrap(), 3);
    }

    #[test]
    fn disconnected_is_zero() {
        let g = construct::disjoint_union(&construct::complete(3), &construct::complete(3));
        assert_eq!(vertex_connectivity(&g).unwrap(), 0);
    }

    #[test]
    fn matches_brute_force_on_small_graphs() {
        use rand::prelude::*;
        let mut rng = rand::rngs::StdRng::seed_from_u64(11);
        for _ in 0..200 {
            let n = rng.random_range(2..8usize);
            let mut edges = Vec::new();
            for i in 0..n as u32 {
                for j in i + 1..n as u32 {
                    if rng.random_bool(0.5) {
                        edges.push((i, j));
                    }
                }
            }
            let g = Graph::from_edges(n, &edges).unwrap();
            let kappa = vertex_connectivity(&g).unwrap();
            // brute force: smallest vertex set whose removal disconnects or
            // empties the graph
            let mut brute = n - 1;
            for mask in 0..1u32 << n {
                let keep: Vec<Vertex> =
                    (0..n as u32).filter(|&v| mask >> v & 1 == 0).collect();
                let removed = n - keep.len();
                if removed >= brute {
                    continue;
                }
                let (h, _) = g.induced(&keep);
                if h.n() >= 2 && !h.is_connected() {
                    brute = removed;
                }
            }
            assert_eq!(kappa, brute, "{:?}", g.edge_list());
        }
    }
}
