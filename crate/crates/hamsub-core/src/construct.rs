//! Named graphs and the clique-gluing constructions behind the extremal
//! family: `K_{d+1} * K_d` and its relatives, all with average degree
//! exactly `d`.

use alloc::vec;
use alloc::vec::Vec;

use crate::graph::{Graph, GraphError, Vertex};
use crate::structures::Sun;

pub fn complete(n: usize) -> Graph {
    let adj = (0..n as Vertex)
        .map(|v| (0..n as Vertex).filter(|&u| u != v).collect())
        .collect();
    Graph::from_sorted_adj(n, adj)
}

pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let n = a + b;
    let adj = (0..n)
        .map(|v| {
            if v < a {
                (a as Vertex..n as Vertex).collect()
            } else {
                (0..a as Vertex).collect()
            }
        })
        .collect();
    Graph::from_sorted_adj(n, adj)
}

pub fn cycle(n: usize) -> Result<Graph, GraphError> {
    if n < 3 {
        return Err(GraphError::TooSmall { need: 3, have: n });
    }
    let edges: Vec<(Vertex, Vertex)> =
        (0..n as Vertex).map(|v| (v, (v + 1) % n as Vertex)).collect();
    Graph::from_edges(n, &edges)
}

pub fn path(n: usize) -> Result<Graph, GraphError> {
    if n < 1 {
        return Err(GraphError::Empty);
    }
    let edges: Vec<(Vertex, Vertex)> = (1..n as Vertex).map(|v| (v - 1, v)).collect();
    Graph::from_edges(n, &edges)
}

pub fn edgeless(n: usize) -> Graph {
    Graph::from_sorted_adj(n, vec![Vec::new(); n])
}

/// Disjoint union; vertices of `g2` are shifted past those of `g1`.
pub fn disjoint_union(g1: &Graph, g2: &Graph) -> Graph {
    let shift = g1.n() as Vertex;
    let mut adj: Vec<Vec<Vertex>> = (0..g1.n() as Vertex).map(|v| g1.neighbors(v).to_vec()).collect();
    adj.extend(
        (0..g2.n() as Vertex).map(|v| g2.neighbors(v).iter().map(|&u| u + shift).collect()),
    );
    Graph::from_sorted_adj(g1.n() + g2.n(), adj)
}

/// Identifies `v1` of `g1` with `v2` of `g2`. The merged vertex keeps
/// `g1`'s index; the remaining vertices of `g2` follow `g1`'s in their
/// original order, so fixtures built by repeated gluing are stable.
pub fn glue_at_vertex(
    g1: &Graph,
    v1: Vertex,
    g2: &Graph,
    v2: Vertex,
) -> Result<Graph, GraphError> {
    if v1 as usize >= g1.n() {
        return Err(GraphError::VertexOutOfRange(v1, g1.n()));
    }
    if v2 as usize >= g2.n() {
        return Err(GraphError::VertexOutOfRange(v2, g2.n()));
    }
    let n = g1.n() + g2.n() - 1;
    // relabel g2: v2 -> v1, others -> g1.n() + rank among g2's non-v2 vertices
    let relabel = |u: Vertex| -> Vertex {
        use core::cmp::Ordering::*;
        match u.cmp(&v2) {
            Equal => v1,
            Less => g1.n() as Vertex + u,
            Greater => g1.n() as Vertex + u - 1,
        }
    };
    let mut edges = g1.edge_list();
    edges.extend(g2.edge_list().into_iter().map(|(a, b)| (relabel(a), relabel(b))));
    Graph::from_edges(n, &edges)
}

/// A sequence of cliques glued vertex-to-vertex, applied left to right.
///
/// `attachments[i]` identifies a vertex of the graph built so far with a
/// vertex of clique `i + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlueSpec {
    pub cliques: Vec<usize>,
    pub attachments: Vec<(Vertex, Vertex)>,
}

impl GlueSpec {
    pub fn build(&self) -> Result<Graph, GraphError> {
        let mut iter = self.cliques.iter();
        let first = *iter.next().ok_or(GraphError::Empty)?;
        let mut g = complete(first);
        for (&order, &(host, incoming)) in iter.zip(&self.attachments) {
            g = glue_at_vertex(&g, host, &complete(order), incoming)?;
        }
        Ok(g)
    }
}

/// The four graphs with average degree exactly `d` from the extremal
/// family: two disjoint `K_{d+1}`; `K_{d+1}` with two `K_d` hung on one of
/// its vertices; the chains `K_{d+1}*K_d*K_d` and `K_d*K_{d+1}*K_d`.
pub fn figure1_family(d: usize) -> Vec<Graph> {
    assert!(d >= 2, "family needs d >= 2");
    let kd1 = complete(d + 1);
    let two_cliques = disjoint_union(&kd1, &kd1);
    // both K_d glued at vertex 0 of the K_{d+1}
    let two_pendants = GlueSpec {
        cliques: vec![d + 1, d, d],
        attachments: vec![(0, 0), (0, 0)],
    }
    .build()
    .expect("valid glue spec");
    // chain: the second K_d hangs off the far end of the first K_d
    let chain_end = GlueSpec {
        cliques: vec![d + 1, d, d],
        attachments: vec![(0, 0), (d as Vertex + 1, 0)],
    }
    .build()
    .expect("valid glue spec");
    // K_d * K_{d+1} * K_d: both K_d's on distinct vertices of the K_{d+1}
    let chain_mid = GlueSpec {
        cliques: vec![d + 1, d, d],
        attachments: vec![(0, 0), (1, 0)],
    }
    .build()
    .expect("valid glue spec");
    vec![two_cliques, two_pendants, chain_end, chain_mid]
}

/// Builds the `(a, b)`-sun on vertices `0..a + b`: an `a`-cycle
/// `x_1..x_a = 0..a` plus, for the `j`-th index `i` in `ray_indices`
/// (1-based positions on the cycle), a ray vertex `a + j` adjacent to
/// `x_{i-1}` and `x_{i+1}`. Returns the host graph and the [`Sun`] witness.
pub fn sun(a: usize, ray_indices: &[usize]) -> Result<(Graph, Sun), GraphError> {
    if a < 3 {
        return Err(GraphError::TooSmall { need: 3, have: a });
    }
    let b = ray_indices.len();
    assert!(
        ray_indices.windows(2).all(|w| w[0] < w[1]),
        "ray indices must be strictly increasing"
    );
    if b > 0 {
        assert!(ray_indices[0] >= 1 && ray_indices[b - 1] <= a, "indices are 1-based on [a]");
        assert!(
            ray_indices.windows(2).all(|w| w[1] - w[0] >= 2)
                && (b < 2 || ray_indices[0] + a - ray_indices[b - 1] >= 2),
            "consecutive ray indices must differ by at least 2 cyclically"
        );
        assert!(2 * b <= a, "a sun has at most a/2 rays");
    }
    let mut edges: Vec<(Vertex, Vertex)> =
        (0..a as Vertex).map(|v| (v, (v + 1) % a as Vertex)).collect();
    for (j, &i) in ray_indices.iter().enumerate() {
        let y = (a + j) as Vertex;
        let prev = ((i + a - 2) % a) as Vertex; // x_{i-1}, 0-based
        let next = (i % a) as Vertex; // x_{i+1}, 0-based
        edges.push((prev, y));
        edges.push((y, next));
    }
    let g = Graph::from_edges(a + b, &edges)?;
    let witness = Sun {
        cycle: (0..a as Vertex).collect(),
        ray_indices: ray_indices.to_vec(),
        rays: ray_indices.iter().enumerate().map(|(j, &i)| (i, (a + j) as Vertex)).collect(),
    };
    Ok((g, witness))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Ratio;

    #[test]
    fn basic_constructors() {
        assert_eq!(complete(4).e(), 6);
        let c4 = complete_bipartite(2, 2);
        assert_eq!((c4.n(), c4.e()), (4, 4));
        assert!(c4.vertices().all(|v| c4.degree(v) == 2));
        assert!(cycle(2).is_err());
        let u = disjoint_union(&complete(4), &complete(4));
        assert_eq!((u.n(), u.e()), (8, 12));
        assert_eq!(u.average_degree(), Ratio::new(3, 1));
    }

    #[test]
    fn glue_counts() {
        let g = glue_at_vertex(&complete(4), 0, &complete(3), 0).unwrap();
        assert_eq!((g.n(), g.e()), (6, 9));
        let p3 = glue_at_vertex(&complete(2), 1, &complete(2), 0).unwrap();
        assert_eq!((p3.n(), p3.e()), (3, 2));
        assert_eq!(p3.degree(1), 2);
        // Fig 1(ii): two K_{d+1} glued, d = 3
        let h = glue_at_vertex(&complete(4), 0, &complete(4), 0).unwrap();
        assert_eq!((h.n(), h.e()), (7, 12));
        assert_eq!(h.average_degree(), Ratio::new(24, 7));
        assert!(h.average_degree() < Ratio::new(7, 2));
    }

    #[test]
    fn family_has_average_degree_exactly_d() {
        for d in 2..=12usize {
            for g in figure1_family(d) {
                assert_eq!(g.average_degree(), Ratio::new(d as i64, 1), "d={d}");
            }
        }
    }

    #[test]
    fn family_shapes_at_d3() {
        let fam = figure1_family(3);
        assert_eq!(fam[1].n(), 8);
        assert_eq!(fam[1].e(), 12);
        // d=2: everything degenerates to triangle gluings, average still 2
        for g in figure1_family(2) {
            assert_eq!(g.average_degree(), Ratio::new(2, 1));
        }
    }

    #[test]
    fn sun_construction() {
        let (g, s) = sun(8, &[1, 4]).unwrap();
        assert_eq!(g.n(), 10);
        assert_eq!(g.e(), 8 + 4);
        assert_eq!(s.corona().len(), 4);
        // ray at i=1 joins x_0 (index a-1 = 7) and x_2 (index 1)
        assert!(g.has_edge(8, 7));
        assert!(g.has_edge(8, 1));
    }
}
