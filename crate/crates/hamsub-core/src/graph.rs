//! Immutable simple graphs with sorted adjacency lists and, for small orders,
//! dense `u64` bit rows used by the subset DP and the exact expander check.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use num_rational::Ratio;

pub type Vertex = u32;

/// Largest order accepted by the graph6 codec and the constructors.
pub const MAX_ORDER: usize = 1 << 18;

/// Orders up to this get dense bit rows attached at construction.
pub const BIT_ROW_LIMIT: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("vertex {0} out of range for order {1}")]
    VertexOutOfRange(Vertex, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("order {0} exceeds the supported maximum {MAX_ORDER}")]
    TooLarge(usize),
    #[error("operation requires a nonempty graph")]
    Empty,
    #[error("operation requires at least {need} vertices, graph has {have}")]
    TooSmall { need: usize, have: usize },
}

/// An immutable simple undirected graph on vertices `0..n`.
///
/// Adjacency lists are sorted and deduplicated; the structure is symmetric
/// and loop-free by construction. Orders up to [`BIT_ROW_LIMIT`] also carry
/// one `u64` neighbourhood row per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<Vertex>>,
    edges: usize,
    rows: Option<Vec<u64>>,
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate edges collapse.
    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self, GraphError> {
        if n > MAX_ORDER {
            return Err(GraphError::TooLarge(n));
        }
        let mut adj: Vec<BTreeSet<Vertex>> = vec![BTreeSet::new(); n];
        for &(u, v) in edges {
            if u as usize >= n {
                return Err(GraphError::VertexOutOfRange(u, n));
            }
            if v as usize >= n {
                return Err(GraphError::VertexOutOfRange(v, n));
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adj[u as usize].insert(v);
            adj[v as usize].insert(u);
        }
        let adj: Vec<Vec<Vertex>> = adj.into_iter().map(|s| s.into_iter().collect()).collect();
        Ok(Self::from_sorted_adj(n, adj))
    }

    /// Internal: assumes `adj` is sorted, symmetric and loop-free.
    pub(crate) fn from_sorted_adj(n: usize, adj: Vec<Vec<Vertex>>) -> Self {
        let edges = adj.iter().map(|a| a.len()).sum::<usize>() / 2;
        let rows = if n <= BIT_ROW_LIMIT {
            let mut rows = vec![0u64; n];
            for (v, nbrs) in adj.iter().enumerate() {
                for &u in nbrs {
                    rows[v] |= 1u64 << u;
                }
            }
            Some(rows)
        } else {
            None
        };
        Graph { n, adj, edges, rows }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn e(&self) -> usize {
        self.edges
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v as usize].len()
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v as usize]
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.n as Vertex).into_iter()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        if let Some(rows) = &self.rows {
            return rows[u as usize] >> v & 1 == 1;
        }
        self.adj[u as usize].binary_search(&v).is_ok()
    }

    /// Dense `u64` neighbourhood row, present when `n <= 64`.
    pub fn row(&self, v: Vertex) -> Option<u64> {
        self.rows.as_ref().map(|r| r[v as usize])
    }

    pub fn rows(&self) -> Option<&[u64]> {
        self.rows.as_deref()
    }

    pub fn edge_list(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::with_capacity(self.edges);
        for v in 0..self.n as Vertex {
            for &u in self.neighbors(v) {
                if v < u {
                    out.push((v, u));
                }
            }
        }
        out
    }

    pub fn is_complete(&self) -> bool {
        self.n >= 1 && self.edges == self.n * (self.n - 1) / 2
    }

    /// Exact degree statistics; the average is a rational, never a float.
    pub fn degree_stats(&self) -> Result<DegreeStats, GraphError> {
        if self.n == 0 {
            return Err(GraphError::Empty);
        }
        let mut degs: Vec<usize> = (0..self.n).map(|v| self.adj[v].len()).collect();
        degs.sort_unstable();
        Ok(DegreeStats {
            average: Ratio::new(2 * self.edges as i64, self.n as i64),
            min: degs[0],
            second_min: if self.n >= 2 { degs[1] } else { degs[0] },
            max: degs[self.n - 1],
            edges: self.edges,
        })
    }

    /// Average degree `2e/n` as an exact rational.
    pub fn average_degree(&self) -> Ratio<i64> {
        if self.n == 0 {
            return Ratio::new(0, 1);
        }
        Ratio::new(2 * self.edges as i64, self.n as i64)
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.adj[v].len()).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.adj[v].len()).max().unwrap_or(0)
    }

    /// Induced subgraph on `verts` (need not be sorted; duplicates are an
    /// error in debug builds). Returns the subgraph and the new->old map.
    pub fn induced(&self, verts: &[Vertex]) -> (Graph, Vec<Vertex>) {
        let mut map = verts.to_vec();
        map.sort_unstable();
        debug_assert!(map.windows(2).all(|w| w[0] < w[1]), "duplicate vertices");
        let mut back = vec![u32::MAX; self.n];
        for (i, &v) in map.iter().enumerate() {
            back[v as usize] = i as u32;
        }
        let adj = map
            .iter()
            .map(|&v| {
                self.neighbors(v)
                    .iter()
                    .filter_map(|&u| {
                        let nu = back[u as usize];
                        (nu != u32::MAX).then_some(nu)
                    })
                    .collect()
            })
            .collect();
        (Graph::from_sorted_adj(map.len(), adj), map)
    }

    /// Graph with the vertices of `drop` removed, plus the new->old map.
    pub fn remove(&self, drop: &[Vertex]) -> (Graph, Vec<Vertex>) {
        let dropset: BTreeSet<Vertex> = drop.iter().copied().collect();
        let keep: Vec<Vertex> = (0..self.n as Vertex).filter(|v| !dropset.contains(v)).collect();
        self.induced(&keep)
    }

    /// Connected components as sorted vertex lists, ordered by least vertex.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        let mut queue = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            queue.clear();
            queue.push(s as Vertex);
            let mut comp = vec![s as Vertex];
            while let Some(v) = queue.pop() {
                for &u in self.neighbors(v) {
                    if !seen[u as usize] {
                        seen[u as usize] = true;
                        comp.push(u);
                        queue.push(u);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }

    /// BFS distances from the set `from`; `u32::MAX` marks unreachable.
    /// Vertices flagged in `blocked` are never entered (sources may be
    /// blocked, in which case they are unreachable too).
    pub fn bfs_distances(&self, from: &[Vertex], blocked: &[bool]) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.n];
        let mut queue = alloc::collections::VecDeque::new();
        for &s in from {
            if !blocked.get(s as usize).copied().unwrap_or(false) && dist[s as usize] == u32::MAX {
                dist[s as usize] = 0;
                queue.push_back(s);
            }
        }
        while let Some(v) = queue.pop_front() {
            let dv = dist[v as usize];
            for &u in self.neighbors(v) {
                if dist[u as usize] == u32::MAX && !blocked[u as usize] {
                    dist[u as usize] = dv + 1;
                    queue.push_back(u);
                }
            }
        }
        dist
    }

    /// Shortest path between `from` and `to` avoiding `blocked`, as a vertex
    /// sequence. BFS with lowest-index tie-breaking, so the result is
    /// deterministic. `None` when no path exists.
    pub fn shortest_path_avoiding(
        &self,
        from: &[Vertex],
        to: &[Vertex],
        blocked: &[bool],
    ) -> Option<Vec<Vertex>> {
        let mut target = vec![false; self.n];
        for &t in to {
            target[t as usize] = true;
        }
        for &s in from {
            if target[s as usize] && !blocked[s as usize] {
                return Some(vec![s]);
            }
        }
        let mut parent = vec![u32::MAX; self.n];
        let mut dist = vec![u32::MAX; self.n];
        let mut queue = alloc::collections::VecDeque::new();
        let mut sources: Vec<Vertex> = from.to_vec();
        sources.sort_unstable();
        for &s in &sources {
            if !blocked[s as usize] && dist[s as usize] == u32::MAX {
                dist[s as usize] = 0;
                queue.push_back(s);
            }
        }
        while let Some(v) = queue.pop_front() {
            for &u in self.neighbors(v) {
                if dist[u as usize] != u32::MAX || blocked[u as usize] {
                    continue;
                }
                dist[u as usize] = dist[v as usize] + 1;
                parent[u as usize] = v;
                if target[u as usize] {
                    let mut path = vec![u];
                    let mut cur = u;
                    while parent[cur as usize] != u32::MAX {
                        cur = parent[cur as usize];
                        path.push(cur);
                    }
                    path.reverse();
                    return Some(path);
                }
                queue.push_back(u);
            }
        }
        None
    }

    /// Ball of radius `r` around the set `x`: members at distance <= r and
    /// the sphere at distance exactly r.
    pub fn ball(&self, x: &[Vertex], r: usize) -> Result<Ball, GraphError> {
        if x.is_empty() {
            return Err(GraphError::Empty);
        }
        for &v in x {
            if v as usize >= self.n {
                return Err(GraphError::VertexOutOfRange(v, self.n));
            }
        }
        let blocked = vec![false; self.n];
        let dist = self.bfs_distances(x, &blocked);
        let mut members = Vec::new();
        let mut sphere = Vec::new();
        for v in 0..self.n {
            let d = dist[v];
            if d != u32::MAX && d as usize <= r {
                members.push(v as Vertex);
                if d as usize == r {
                    sphere.push(v as Vertex);
                }
            }
        }
        let mut center = x.to_vec();
        center.sort_unstable();
        center.dedup();
        Ok(Ball { center, radius: r, members, sphere })
    }

    /// External neighbourhood of `x`: vertices outside `x` with a neighbour
    /// inside.
    pub fn external_neighborhood(&self, x: &[Vertex]) -> Vec<Vertex> {
        let mut inx = vec![false; self.n];
        for &v in x {
            inx[v as usize] = true;
        }
        let mut out = vec![false; self.n];
        for &v in x {
            for &u in self.neighbors(v) {
                if !inx[u as usize] {
                    out[u as usize] = true;
                }
            }
        }
        (0..self.n as Vertex).filter(|&v| out[v as usize]).collect()
    }
}

/// The five degree statistics of a graph, with the average kept exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeStats {
    pub average: Ratio<i64>,
    pub min: usize,
    pub second_min: usize,
    pub max: usize,
    pub edges: usize,
}

/// `B^r(X)` with its outer sphere `Gamma^r(X)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ball {
    pub center: Vec<Vertex>,
    pub radius: usize,
    pub members: Vec<Vertex>,
    pub sphere: Vec<Vertex>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct;

    #[test]
    fn degree_stats_complete() {
        let g = construct::complete(4);
        let s = g.degree_stats().unwrap();
        assert_eq!(s.average, Ratio::new(3, 1));
        assert_eq!((s.min, s.second_min, s.max, s.edges), (3, 3, 3, 6));
    }

    #[test]
    fn degree_stats_cycle() {
        let g = construct::cycle(5).unwrap();
        let s = g.degree_stats().unwrap();
        assert_eq!(s.average, Ratio::new(2, 1));
        assert_eq!((s.min, s.second_min, s.max, s.edges), (2, 2, 2, 5));
    }

    #[test]
    fn glued_average_degree_is_exactly_d() {
        // K_4 * K_3 has average degree exactly 3.
        let g = construct::glue_at_vertex(&construct::complete(4), 0, &construct::complete(3), 0)
            .unwrap();
        assert_eq!(g.n(), 6);
        assert_eq!(g.e(), 9);
        assert_eq!(g.degree_stats().unwrap().average, Ratio::new(3, 1));
    }

    #[test]
    fn ball_on_cycle() {
        let g = construct::cycle(6).unwrap();
        let b0 = g.ball(&[0], 0).unwrap();
        assert_eq!(b0.members, vec![0]);
        assert_eq!(b0.sphere, vec![0]);
        let b2 = g.ball(&[0], 2).unwrap();
        assert_eq!(b2.members.len(), 5);
        assert_eq!(b2.sphere.len(), 2);
        let bk4 = construct::complete(4).ball(&[1], 1).unwrap();
        assert_eq!(bk4.members.len(), 4);
    }

    #[test]
    fn ball_rejects_empty_center() {
        let g = construct::cycle(6).unwrap();
        assert!(g.ball(&[], 1).is_err());
    }

    #[test]
    fn removing_vertex_drops_its_degree_from_edges() {
        let g = construct::complete(5);
        let (h, _) = g.remove(&[2]);
        assert_eq!(h.e(), g.e() - g.degree(2));
    }

    #[test]
    fn self_loop_rejected() {
        assert_eq!(Graph::from_edges(3, &[(1, 1)]), Err(GraphError::SelfLoop(1)));
    }
}
