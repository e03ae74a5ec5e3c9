//! Degree-controlled walks on cycles, paths and suns: a closed circuit
//! visiting corona-like vertices once and the rest twice, pumped `N` times
//! and trimmed at both ends, keeps every multiplicity within a window of
//! its class value.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::graph::{Graph, Vertex};
use crate::structures::{validate_cycle_seq, validate_path_seq, validate_sun, StructureViolation, Sun};

/// Host shapes a controlled walk can be built on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WalkHost {
    Cycle(Vec<Vertex>),
    Path(Vec<Vertex>),
    Sun(Sun),
}

impl WalkHost {
    pub fn vertices(&self) -> Vec<Vertex> {
        match self {
            WalkHost::Cycle(c) => c.clone(),
            WalkHost::Path(p) => p.clone(),
            WalkHost::Sun(s) => s.vertices(),
        }
    }

    fn validate(&self, g: &Graph) -> Result<(), StructureViolation> {
        match self {
            WalkHost::Cycle(c) => validate_cycle_seq(g, c),
            WalkHost::Path(p) => {
                if p.len() < 2 {
                    return Err(StructureViolation { clause: "path has at least two vertices" });
                }
                validate_path_seq(g, p)
            }
            WalkHost::Sun(s) => {
                if s.b() == 0 {
                    return Err(StructureViolation { clause: "walk host sun carries a ray" });
                }
                validate_sun(s, g)
            }
        }
    }
}

/// A walk with its per-vertex visit counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Walk {
    pub vertices: Vec<Vertex>,
}

impl Walk {
    pub fn multiplicity(&self) -> BTreeMap<Vertex, usize> {
        let mut m = BTreeMap::new();
        for &v in &self.vertices {
            *m.entry(v).or_insert(0) += 1;
        }
        m
    }

    pub fn first(&self) -> Vertex {
        self.vertices[0]
    }

    pub fn last(&self) -> Vertex {
        *self.vertices.last().expect("walks are nonempty")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WalkError {
    #[error("host shape invalid: {0}")]
    BadHost(#[from] StructureViolation),
    #[error("endpoint {0} is not a host vertex")]
    EndpointOutside(Vertex),
    #[error("multiplicity unit must be at least one")]
    ZeroUnit,
}

/// The class partition `(N_1, N_2)` of the host: vertices whose walk
/// multiplicity lands in `{k n, k n + 1, k n + 2}` for `k = 1` resp. `2`.
/// Cycles have everything in `N_2`; paths put their endpoints in `N_1`;
/// suns put the corona in `N_1`.
pub fn multiplicity_classes(host: &WalkHost) -> (Vec<Vertex>, Vec<Vertex>) {
    match host {
        WalkHost::Cycle(c) => (Vec::new(), c.clone()),
        WalkHost::Path(p) => {
            let n1 = alloc::vec![p[0], *p.last().expect("nonempty")];
            let n2 = p[1..p.len() - 1].to_vec();
            (n1, n2)
        }
        WalkHost::Sun(s) => {
            let corona = s.corona();
            let n2 = s
                .vertices()
                .into_iter()
                .filter(|v| corona.binary_search(v).is_err())
                .collect();
            (corona, n2)
        }
    }
}

/// The circuit each shape is pumped around: the cycle itself; the path
/// walked there and back; for suns, one lap on the cycle followed by a lap
/// detouring through every ray.
fn circuit(host: &WalkHost) -> Vec<Vertex> {
    match host {
        WalkHost::Cycle(c) => c.clone(),
        WalkHost::Path(p) => {
            let mut r = p.clone();
            r.extend(p[1..p.len() - 1].iter().rev());
            r
        }
        WalkHost::Sun(s) => {
            let a = s.a();
            let start = s.ray_indices[0]; // 1-based; suns here have b >= 1
            let mut r: Vec<Vertex> = (0..a).map(|k| s.cycle[(start - 1 + k) % a]).collect();
            let ray_at = |pos1: usize| s.rays.iter().find(|&&(i, _)| i == pos1).map(|&(_, y)| y);
            for k in 0..a {
                let pos1 = (start - 1 + k) % a + 1;
                r.push(ray_at(pos1).unwrap_or(s.cycle[pos1 - 1]));
            }
            r
        }
    }
}

/// Builds a `u,v`-walk on the host whose multiplicities stay within the
/// class windows for the chosen unit: the circuit is repeated `N` times
/// (`N = 2 unit` for cycles, `unit` otherwise) with partial laps glued on
/// both ends.
pub fn build_walk(
    g: &Graph,
    host: &WalkHost,
    u: Vertex,
    v: Vertex,
    unit: usize,
) -> Result<Walk, WalkError> {
    if unit == 0 {
        return Err(WalkError::ZeroUnit);
    }
    host.validate(g)?;
    let circ = circuit(host);
    let pump = match host {
        WalkHost::Cycle(_) => 2 * unit,
        _ => unit,
    };
    let pos_u = circ.iter().position(|&x| x == u).ok_or(WalkError::EndpointOutside(u))?;
    let pos_v = circ.iter().position(|&x| x == v).ok_or(WalkError::EndpointOutside(v))?;

    // build from the later occurrence to the earlier one, then orient
    let (s, t) = (pos_u.min(pos_v), pos_u.max(pos_v));
    let laps = if s == t { pump - 1 } else { pump };
    let mut w: Vec<Vertex> = circ[t..].to_vec();
    for _ in 0..laps {
        w.extend(&circ);
    }
    w.extend(&circ[..=s]);
    if w[0] != u {
        w.reverse();
    }
    debug_assert_eq!((w[0], *w.last().expect("nonempty")), (u, v));
    debug_assert!(w.windows(2).all(|p| g.has_edge(p[0], p[1])), "walk follows host edges");
    Ok(Walk { vertices: w })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct;

    fn windows_ok(g: &Graph, host: &WalkHost, u: Vertex, v: Vertex, unit: usize) {
        let w = build_walk(g, host, u, v, unit).unwrap();
        let mult = w.multiplicity();
        let (n1, n2) = multiplicity_classes(host);
        for &x in &n1 {
            let m = mult.get(&x).copied().unwrap_or(0);
            assert!((unit..=unit + 2).contains(&m), "N1 vertex {x} has multiplicity {m}");
        }
        for &x in &n2 {
            let m = mult.get(&x).copied().unwrap_or(0);
            assert!(
                (2 * unit..=2 * unit + 2).contains(&m),
                "N2 vertex {x} has multiplicity {m}"
            );
        }
        assert_eq!(
            mult.values().sum::<usize>(),
            w.vertices.len(),
            "multiplicities account for every step"
        );
    }

    #[test]
    fn cycle_walk_multiplicities() {
        let g = construct::cycle(5).unwrap();
        let host = WalkHost::Cycle((0..5).collect());
        // closed walk at one vertex: every multiplicity in {6, 7, 8}
        windows_ok(&g, &host, 0, 0, 3);
        windows_ok(&g, &host, 1, 4, 3);
    }

    #[test]
    fn path_walk_multiplicities() {
        let g = construct::path(4).unwrap();
        let host = WalkHost::Path((0..4).collect());
        windows_ok(&g, &host, 0, 3, 2);
        windows_ok(&g, &host, 0, 0, 2);
        windows_ok(&g, &host, 2, 1, 5);
    }

    #[test]
    fn sun_walk_multiplicities() {
        let (g, s) = construct::sun(8, &[2, 5]).unwrap();
        let corona_vertex = s.rays[0].1;
        let host = WalkHost::Sun(s);
        windows_ok(&g, &host, corona_vertex, corona_vertex, 1);
        windows_ok(&g, &host, 0, 6, 2);
    }

    #[test]
    fn endpoint_must_lie_on_host() {
        // C_6 plus a chord so the host cycle is a strict subgraph
        let mut edges: Vec<(u32, u32)> = (0..6).map(|v| (v, (v + 1) % 6)).collect();
        edges.push((0, 3));
        let g = Graph::from_edges(6, &edges).unwrap();
        let host = WalkHost::Cycle(alloc::vec![0, 1, 2, 3]);
        assert!(matches!(
            build_walk(&g, &host, 0, 5, 1),
            Err(WalkError::EndpointOutside(5))
        ));
    }
}
