//! Block (2-connected component) decomposition by one lowpoint DFS.
//!
//! Blocks partition the edge set; two blocks share at most one vertex, and
//! that vertex is a cut vertex. Isolated vertices are reported separately
//! since they carry no edges.

use alloc::vec;
use alloc::vec::Vec;

use crate::graph::{Graph, Vertex};

/// Decomposition of a graph into blocks plus the block-cut tree.
///
/// `tree` is the bipartite incidence structure between blocks and cut
/// vertices: node `i < blocks.len()` is block `i`, node `blocks.len() + j`
/// is `cut_vertices[j]`. (The "blocks adjacent iff they share a vertex"
/// graph is not a forest when three blocks meet at one vertex; the
/// block-cut tree always is.)
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockDecomposition {
    /// Sorted vertex set of each block.
    pub blocks: Vec<Vec<Vertex>>,
    pub cut_vertices: Vec<Vertex>,
    pub isolated_vertices: Vec<Vertex>,
    /// Adjacency of the block-cut tree over `blocks.len() + cut_vertices.len()` nodes.
    pub tree: Vec<Vec<usize>>,
    /// Indices of blocks containing exactly one cut vertex.
    pub leaf_blocks: Vec<usize>,
}

impl BlockDecomposition {
    /// Number of cut vertices contained in block `i`.
    pub fn cut_count(&self, i: usize) -> usize {
        self.tree[i].len()
    }
}

pub fn blocks(g: &Graph) -> BlockDecomposition {
    let n = g.n();
    let mut disc = vec![u32::MAX; n];
    let mut low = vec![0u32; n];
    let mut is_cut = vec![false; n];
    let mut timer = 0u32;
    let mut edge_stack: Vec<(Vertex, Vertex)> = Vec::new();
    let mut block_edge_sets: Vec<Vec<(Vertex, Vertex)>> = Vec::new();
    let mut isolated = Vec::new();

    // iterative DFS: (vertex, parent, next neighbor index)
    let mut stack: Vec<(Vertex, Vertex, usize)> = Vec::new();
    for root in 0..n as Vertex {
        if disc[root as usize] != u32::MAX {
            continue;
        }
        if g.degree(root) == 0 {
            disc[root as usize] = timer;
            timer += 1;
            isolated.push(root);
            continue;
        }
        disc[root as usize] = timer;
        low[root as usize] = timer;
        timer += 1;
        let mut root_children = 0usize;
        stack.push((root, u32::MAX, 0));
        while let Some(&mut (v, parent, ref mut idx)) = stack.last_mut() {
            if *idx < g.degree(v) {
                let u = g.neighbors(v)[*idx];
                *idx += 1;
                if disc[u as usize] == u32::MAX {
                    if v == root {
                        root_children += 1;
                    }
                    edge_stack.push((v, u));
                    disc[u as usize] = timer;
                    low[u as usize] = timer;
                    timer += 1;
                    stack.push((u, v, 0));
                } else if u != parent && disc[u as usize] < disc[v as usize] {
                    edge_stack.push((v, u));
                    low[v as usize] = low[v as usize].min(disc[u as usize]);
                }
            } else {
                stack.pop();
                if let Some(&mut (p, _, _)) = stack.last_mut() {
                    low[p as usize] = low[p as usize].min(low[v as usize]);
                    if low[v as usize] >= disc[p as usize] {
                        // p closes a block through v
                        if p != root || root_children > 1 {
                            is_cut[p as usize] = true;
                        }
                        let mut block = Vec::new();
                        while let Some(&(a, b)) = edge_stack.last() {
                            if disc[a as usize] >= disc[v as usize] {
                                block.push((a, b));
                                edge_stack.pop();
                            } else {
                                break;
                            }
                        }
                        debug_assert_eq!(edge_stack.last(), Some(&(p, v)));
                        block.push(edge_stack.pop().expect("tree edge present"));
                        block_edge_sets.push(block);
                    }
                }
            }
        }
    }

    let mut blocks: Vec<Vec<Vertex>> = block_edge_sets
        .iter()
        .map(|es| {
            let mut vs: Vec<Vertex> = es.iter().flat_map(|&(a, b)| [a, b]).collect();
            vs.sort_unstable();
            vs.dedup();
            vs
        })
        .collect();
    blocks.sort();
    let cut_vertices: Vec<Vertex> = (0..n as Vertex).filter(|&v| is_cut[v as usize]).collect();

    let mut cut_index = vec![usize::MAX; n];
    for (j, &v) in cut_vertices.iter().enumerate() {
        cut_index[v as usize] = j;
    }
    let mut tree: Vec<Vec<usize>> = vec![Vec::new(); blocks.len() + cut_vertices.len()];
    for (i, bl) in blocks.iter().enumerate() {
        for &v in bl {
            let j = cut_index[v as usize];
            if j != usize::MAX {
                tree[i].push(blocks.len() + j);
                tree[blocks.len() + j].push(i);
            }
        }
    }
    let leaf_blocks = (0..blocks.len()).filter(|&i| tree[i].len() == 1).collect();

    BlockDecomposition { blocks, cut_vertices, isolated_vertices: isolated, tree, leaf_blocks }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct;

    #[test]
    fn glued_cliques_split_into_two_blocks() {
        let g = construct::glue_at_vertex(&construct::complete(4), 0, &construct::complete(3), 0)
            .unwrap();
        let d = blocks(&g);
        assert_eq!(d.blocks.len(), 2);
        assert_eq!(d.cut_vertices, vec![0]);
        assert_eq!(d.leaf_blocks.len(), 2);
        assert_eq!(d.blocks[0], vec![0, 1, 2, 3]);
        assert_eq!(d.blocks[1], vec![0, 4, 5]);
    }

    #[test]
    fn cycle_is_one_block() {
        let d = blocks(&construct::cycle(5).unwrap());
        assert_eq!(d.blocks.len(), 1);
        assert!(d.cut_vertices.is_empty());
        assert!(d.leaf_blocks.is_empty());
    }

    #[test]
    fn path_splits_into_single_edges() {
        let d = blocks(&construct::path(4).unwrap());
        assert_eq!(d.blocks.len(), 3);
        assert_eq!(d.cut_vertices, vec![1, 2]);
        assert_eq!(d.leaf_blocks.len(), 2);
    }

    #[test]
    fn edgeless_graph_yields_no_blocks() {
        let d = blocks(&construct::edgeless(4));
        assert!(d.blocks.is_empty());
        assert_eq!(d.isolated_vertices.len(), 4);
    }

    #[test]
    fn blocks_partition_edges() {
        // three cliques sharing one vertex: the block-cut tree is a star
        let g = construct::GlueSpec {
            cliques: alloc::vec![4, 3, 3],
            attachments: alloc::vec![(0, 0), (0, 0)],
        }
        .build()
        .unwrap();
        let d = blocks(&g);
        assert_eq!(d.blocks.len(), 3);
        assert_eq!(d.cut_vertices, vec![0]);
        let edge_total: usize = d
            .blocks
            .iter()
            .map(|b| {
                let (h, _) = g.induced(b);
                h.e()
            })
            .sum();
        assert_eq!(edge_total, g.e());
        assert_eq!(d.leaf_blocks.len(), 3);
        // bipartite tree over 3 blocks + 1 cut vertex, and it is a forest
        assert_eq!(d.tree[3].len(), 3);
    }
}
