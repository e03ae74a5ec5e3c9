//! Isomorph-free enumeration of small graphs by canonical augmentation:
//! extend each class on n-1 vertices by one vertex with every possible
//! neighbourhood, canonicalise, deduplicate. Degree staging prunes levels
//! when a minimum-degree floor is requested (deleting any vertex lowers the
//! minimum degree by at most one, so ancestors survive the staged floors).

use std::collections::BTreeSet;

use canonical_form::Canonize;
use hamsub_core::graph::{Graph, Vertex};

/// Dense little graph on up to 11 vertices: upper-triangle edge bits packed
/// column-major, the same order graph6 uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct SmallGraph {
    pub n: usize,
    pub bits: u64,
}

const fn pair_index(i: usize, j: usize) -> usize {
    // requires i < j
    j * (j - 1) / 2 + i
}

impl SmallGraph {
    pub const MAX_N: usize = 11;

    pub fn empty(n: usize) -> Self {
        assert!(n <= Self::MAX_N);
        SmallGraph { n, bits: 0 }
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        let (i, j) = (i.min(j), i.max(j));
        self.bits >> pair_index(i, j) & 1 == 1
    }

    pub fn with_edge(mut self, i: usize, j: usize) -> Self {
        let (i, j) = (i.min(j), i.max(j));
        self.bits |= 1 << pair_index(i, j);
        self
    }

    pub fn degree(&self, v: usize) -> usize {
        (0..self.n).filter(|&u| u != v && self.has_edge(u, v)).count()
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    /// Appends vertex `n` joined to the set in `neighbors` (bit i = vertex i).
    pub fn extend(&self, neighbors: u64) -> Self {
        let mut g = SmallGraph { n: self.n + 1, bits: self.bits };
        for i in 0..self.n {
            if neighbors >> i & 1 == 1 {
                g = g.with_edge(i, self.n);
            }
        }
        g
    }

    pub fn to_graph(&self) -> Graph {
        let mut edges = Vec::new();
        for j in 1..self.n {
            for i in 0..j {
                if self.has_edge(i, j) {
                    edges.push((i as Vertex, j as Vertex));
                }
            }
        }
        Graph::from_edges(self.n, &edges).expect("indices in range")
    }

    pub fn from_graph(g: &Graph) -> Self {
        assert!(g.n() <= Self::MAX_N);
        let mut s = SmallGraph::empty(g.n());
        for (u, v) in g.edge_list() {
            s = s.with_edge(u as usize, v as usize);
        }
        s
    }
}

impl Canonize for SmallGraph {
    fn size(&self) -> usize {
        self.n
    }

    fn apply_morphism(&self, p: &[usize]) -> Self {
        let mut out = SmallGraph::empty(self.n);
        for j in 1..self.n {
            for i in 0..j {
                if self.has_edge(i, j) {
                    out = out.with_edge(p[i], p[j]);
                }
            }
        }
        out
    }

    fn invariant_neighborhood(&self, u: usize) -> Vec<Vec<usize>> {
        vec![(0..self.n).filter(|&v| v != u && self.has_edge(u, v)).collect()]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EnumerateError {
    #[error("tiny_generate handles n <= {max}, requested {n}; larger orders come from recorded streams")]
    TooLarge { n: usize, max: usize },
    #[error("order must be at least 1")]
    Zero,
}

/// Cap for the public generator; the stream writer goes one further.
pub const TINY_CAP: usize = 8;
pub const STREAM_CAP: usize = 9;

/// One canonical representative per isomorphism class on `n` vertices with
/// minimum degree at least `min_degree`.
fn staged_classes(n: usize, min_degree: usize) -> Vec<SmallGraph> {
    let floor_at = |level: usize| min_degree.saturating_sub(n - level);
    let mut level: Vec<SmallGraph> = vec![SmallGraph::empty(1)];
    for l in 2..=n {
        let floor = floor_at(l);
        let mut classes: BTreeSet<SmallGraph> = BTreeSet::new();
        for parent in &level {
            for nb in 0u64..1 << (l - 1) {
                let child = parent.extend(nb);
                if child.min_degree() >= floor {
                    classes.insert(child.canonical());
                }
            }
        }
        level = classes.into_iter().collect();
    }
    if n == 1 && min_degree > 0 {
        return Vec::new();
    }
    level
}

/// Isomorph-free graphs on `n <= 8` vertices with `delta >= min_degree`,
/// one representative per class, canonically ordered.
pub fn tiny_generate(n: usize, min_degree: usize) -> Result<Vec<Graph>, EnumerateError> {
    if n == 0 {
        return Err(EnumerateError::Zero);
    }
    if n > TINY_CAP {
        return Err(EnumerateError::TooLarge { n, max: TINY_CAP });
    }
    Ok(staged_classes(n, min_degree).iter().map(SmallGraph::to_graph).collect())
}

/// Stream-writer variant reaching n = 9, for producing the recorded
/// graph6 stream files. Slow at the top level; run once and commit.
pub fn isomorph_free_stream(n: usize, min_degree: usize) -> Result<Vec<Graph>, EnumerateError> {
    if n == 0 {
        return Err(EnumerateError::Zero);
    }
    if n > STREAM_CAP {
        return Err(EnumerateError::TooLarge { n, max: STREAM_CAP });
    }
    Ok(staged_classes(n, min_degree).iter().map(SmallGraph::to_graph).collect())
}
