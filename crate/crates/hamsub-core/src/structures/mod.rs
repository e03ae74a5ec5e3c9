//! Structural witnesses and builders: suns, degree-controlled walks, stars,
//! units, webs, and the two cycle-through-prescribed-cores procedures.
//!
//! Builders return failures as values naming the stalled stage; validators
//! are independent code paths that re-check every definitional clause
//! against the host graph's adjacency.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::graph::{Graph, Vertex};

mod cycle;
mod sun;
mod walk;
mod web;

pub use cycle::{
    build_cycle_dense, build_cycle_sparse, far_apart_set, CycleBuildReport, DenseCycleParams,
    FarApartSet, PathRecord, SparseCycleParams,
};
pub use sun::{find_structure, StructureError, StructureWitness};
pub use walk::{build_walk, multiplicity_classes, Walk, WalkError, WalkHost};
pub use web::{
    find_disjoint_stars, grow_unit, grow_webs, StarSearch, UnitBuildParams, WebBuildParams,
    WebHarvest,
};

/// First definitional clause violated by a structure, by name.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("violated clause: {clause}")]
pub struct StructureViolation {
    pub clause: &'static str,
}

fn fail(clause: &'static str) -> Result<(), StructureViolation> {
    Err(StructureViolation { clause })
}

fn all_distinct(vs: &[Vertex]) -> bool {
    let mut seen = BTreeSet::new();
    vs.iter().all(|&v| seen.insert(v))
}

/// Checks that `seq` traces a cycle of the host: length >= 3, distinct
/// vertices, consecutive edges including the wrap-around.
pub fn validate_cycle_seq(g: &Graph, seq: &[Vertex]) -> Result<(), StructureViolation> {
    if seq.len() < 3 {
        return fail("cycle has at least three vertices");
    }
    if !all_distinct(seq) {
        return fail("cycle vertices distinct");
    }
    for i in 0..seq.len() {
        if !g.has_edge(seq[i], seq[(i + 1) % seq.len()]) {
            return fail("consecutive cycle edges exist");
        }
    }
    Ok(())
}

/// Checks that `seq` traces a path of the host: distinct vertices joined by
/// consecutive edges.
pub fn validate_path_seq(g: &Graph, seq: &[Vertex]) -> Result<(), StructureViolation> {
    if seq.is_empty() {
        return fail("path is nonempty");
    }
    if !all_distinct(seq) {
        return fail("path vertices distinct");
    }
    for w in seq.windows(2) {
        if !g.has_edge(w[0], w[1]) {
            return fail("consecutive path edges exist");
        }
    }
    Ok(())
}

/// An `(a, b)`-sun: an `a`-cycle `x_1..x_a` plus `b` rays, the `j`-th ray
/// `y` sitting at a 1-based cycle position `i` with edges `x_{i-1} y` and
/// `y x_{i+1}`. The corona collects the skipped cycle vertices and the
/// rays.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sun {
    /// `x_1..x_a` in cyclic order.
    pub cycle: Vec<Vertex>,
    /// Strictly increasing 1-based positions `i_1 < ... < i_b`.
    pub ray_indices: Vec<usize>,
    /// `(i_j, y_j)` pairs, aligned with `ray_indices`.
    pub rays: Vec<(usize, Vertex)>,
}

impl Sun {
    pub fn a(&self) -> usize {
        self.cycle.len()
    }

    pub fn b(&self) -> usize {
        self.rays.len()
    }

    /// `{x_{i_j}, y_j : j}`, sorted.
    pub fn corona(&self) -> Vec<Vertex> {
        let mut out: Vec<Vertex> =
            self.rays.iter().flat_map(|&(i, y)| [self.cycle[i - 1], y]).collect();
        out.sort_unstable();
        out
    }

    pub fn vertices(&self) -> Vec<Vertex> {
        let mut out = self.cycle.clone();
        out.extend(self.rays.iter().map(|&(_, y)| y));
        out.sort_unstable();
        out
    }

    /// Cycle vertex at 1-based position `i`, cyclically.
    fn x(&self, i: isize) -> Vertex {
        let a = self.a() as isize;
        self.cycle[(i - 1).rem_euclid(a) as usize]
    }
}

/// Checks every clause of the sun definition against `g`.
pub fn validate_sun(s: &Sun, g: &Graph) -> Result<(), StructureViolation> {
    validate_cycle_seq(g, &s.cycle)?;
    let a = s.a();
    let b = s.b();
    if s.ray_indices.len() != b {
        return fail("ray list aligned with ray indices");
    }
    if !s.rays.iter().zip(&s.ray_indices).all(|(&(i, _), &j)| i == j) {
        return fail("ray list aligned with ray indices");
    }
    if !s.ray_indices.windows(2).all(|w| w[0] < w[1]) {
        return fail("ray indices strictly increasing");
    }
    if b > 0 && (s.ray_indices[0] < 1 || s.ray_indices[b - 1] > a) {
        return fail("ray indices within the cycle");
    }
    if !s.ray_indices.windows(2).all(|w| w[1] - w[0] >= 2) {
        return fail("cyclic ray gaps at least two");
    }
    if b >= 2 && s.ray_indices[0] + a - s.ray_indices[b - 1] < 2 {
        return fail("cyclic ray gaps at least two");
    }
    if 2 * b > a {
        return fail("at most a/2 rays");
    }
    let cycset: BTreeSet<Vertex> = s.cycle.iter().copied().collect();
    let mut rayset = BTreeSet::new();
    for &(i, y) in &s.rays {
        if cycset.contains(&y) || !rayset.insert(y) {
            return fail("ray vertices distinct from cycle and each other");
        }
        let i = i as isize;
        if !g.has_edge(s.x(i - 1), y) || !g.has_edge(y, s.x(i + 1)) {
            return fail("ray adjacent to both cycle neighbours");
        }
    }
    Ok(())
}

/// A star used inside units: a centre and its claimed leaves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Star {
    pub center: Vertex,
    pub leaves: Vec<Vertex>,
}

impl Star {
    pub fn vertices(&self) -> Vec<Vertex> {
        let mut v = self.leaves.clone();
        v.push(self.center);
        v
    }
}

/// An `(h1, h2, h3)`-unit: `h1` internally disjoint paths from a core
/// vertex to branch vertices, each branch carrying a disjoint `h2`-star
/// whose leaves stay off every path. Exterior = star leaves; interior =
/// everything else.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Unit {
    pub core: Vertex,
    /// `paths[i]` runs from `core` to `stars[i].center`, inclusive.
    pub paths: Vec<Vec<Vertex>>,
    pub stars: Vec<Star>,
    /// Declared `(h1, h2, h3)`.
    pub limits: (usize, usize, usize),
}

impl Unit {
    pub fn branch_vertices(&self) -> Vec<Vertex> {
        self.stars.iter().map(|s| s.center).collect()
    }

    /// Sorted union of star leaves.
    pub fn exterior(&self) -> Vec<Vertex> {
        let mut out: Vec<Vertex> = self.stars.iter().flat_map(|s| s.leaves.iter().copied()).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn vertices(&self) -> Vec<Vertex> {
        let mut out: Vec<Vertex> = self.paths.iter().flatten().copied().collect();
        out.extend(self.stars.iter().flat_map(|s| s.leaves.iter().copied()));
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn interior(&self) -> Vec<Vertex> {
        let ext: BTreeSet<Vertex> = self.exterior().into_iter().collect();
        self.vertices().into_iter().filter(|v| !ext.contains(v)).collect()
    }

    /// The unique core-to-`w` path when `w` is an exterior leaf.
    pub fn path_to_exterior(&self, w: Vertex) -> Option<Vec<Vertex>> {
        let i = self.stars.iter().position(|s| s.leaves.contains(&w))?;
        let mut p = self.paths[i].clone();
        p.push(w);
        Some(p)
    }
}

/// Checks every clause of the unit definition against `g`.
pub fn validate_unit(u: &Unit, g: &Graph) -> Result<(), StructureViolation> {
    let (h1, h2, h3) = u.limits;
    if u.paths.len() != h1 || u.stars.len() != h1 || h1 == 0 {
        return fail("h1 paths with h1 stars");
    }
    for (p, s) in u.paths.iter().zip(&u.stars) {
        if p.first() != Some(&u.core) || p.last() != Some(&s.center) {
            return fail("path runs from core to its star centre");
        }
        if p.len() > h3 {
            return fail("path length within h3");
        }
        validate_path_seq(g, p).map_err(|_| StructureViolation { clause: "path traces host edges" })?;
    }
    if !all_distinct(&u.branch_vertices()) || u.branch_vertices().contains(&u.core) {
        return fail("core and branch vertices distinct");
    }
    // paths share exactly the core
    let mut seen: BTreeSet<Vertex> = BTreeSet::new();
    seen.insert(u.core);
    for p in &u.paths {
        for &v in &p[1..] {
            if !seen.insert(v) {
                return fail("paths pairwise internally disjoint");
            }
        }
    }
    let mut star_seen: BTreeSet<Vertex> = BTreeSet::new();
    for s in &u.stars {
        if s.leaves.len() != h2 {
            return fail("stars have exactly h2 leaves");
        }
        for &l in &s.leaves {
            if !g.has_edge(s.center, l) {
                return fail("star edges exist");
            }
        }
        for v in s.vertices() {
            if !star_seen.insert(v) {
                return fail("stars pairwise vertex-disjoint");
            }
        }
    }
    let path_verts: BTreeSet<Vertex> = u.paths.iter().flatten().copied().collect();
    if u.stars.iter().flat_map(|s| &s.leaves).any(|l| path_verts.contains(l)) {
        return fail("star leaves avoid all paths");
    }
    Ok(())
}

/// An `(h0, h1, h2, h3)`-web: `h0` internally disjoint spokes from a core
/// vertex to the cores of pairwise disjoint `(h1, h2, h3)`-units whose
/// bodies stay off the spokes. Centre = spoke vertices; exterior = union
/// of unit exteriors; interior = the rest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Web {
    pub core: Vertex,
    /// `spokes[i]` runs from `core` to `units[i].core`, inclusive.
    pub spokes: Vec<Vec<Vertex>>,
    pub units: Vec<Unit>,
    /// Declared `(h0, h1, h2, h3)`.
    pub limits: (usize, usize, usize, usize),
}

impl Web {
    pub fn unit_cores(&self) -> Vec<Vertex> {
        self.units.iter().map(|u| u.core).collect()
    }

    /// Sorted spoke vertex set.
    pub fn centre(&self) -> Vec<Vertex> {
        let mut out: Vec<Vertex> = self.spokes.iter().flatten().copied().collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn exterior(&self) -> Vec<Vertex> {
        let mut out: Vec<Vertex> = self.units.iter().flat_map(|u| u.exterior()).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn vertices(&self) -> Vec<Vertex> {
        let mut out: Vec<Vertex> = self.spokes.iter().flatten().copied().collect();
        out.extend(self.units.iter().flat_map(|u| u.vertices()));
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn interior(&self) -> Vec<Vertex> {
        let ext: BTreeSet<Vertex> = self.exterior().into_iter().collect();
        self.vertices().into_iter().filter(|v| !ext.contains(v)).collect()
    }

    /// Core-to-`w` path through the owning unit, for `w` in the exterior.
    pub fn path_to_exterior(&self, w: Vertex) -> Option<Vec<Vertex>> {
        for (spoke, unit) in self.spokes.iter().zip(&self.units) {
            if let Some(tail) = unit.path_to_exterior(w) {
                let mut p = spoke.clone();
                p.extend(&tail[1..]);
                return Some(p);
            }
        }
        None
    }
}

/// Checks every clause of the web definition against `g`.
pub fn validate_web(w: &Web, g: &Graph) -> Result<(), StructureViolation> {
    let (h0, h1, h2, h3) = w.limits;
    if w.spokes.len() != h0 || w.units.len() != h0 || h0 == 0 {
        return fail("h0 spokes with h0 units");
    }
    for (sp, unit) in w.spokes.iter().zip(&w.units) {
        if sp.first() != Some(&w.core) || sp.last() != Some(&unit.core) {
            return fail("spoke runs from web core to unit core");
        }
        if sp.len() > h3 {
            return fail("spoke length within h3");
        }
        validate_path_seq(g, sp).map_err(|_| StructureViolation { clause: "spoke traces host edges" })?;
    }
    if !all_distinct(&w.unit_cores()) || w.unit_cores().contains(&w.core) {
        return fail("web core and unit cores distinct");
    }
    let mut seen: BTreeSet<Vertex> = BTreeSet::new();
    seen.insert(w.core);
    for sp in &w.spokes {
        for &v in &sp[1..] {
            if !seen.insert(v) {
                return fail("spokes pairwise internally disjoint");
            }
        }
    }
    for unit in &w.units {
        if unit.limits != (h1, h2, h3) {
            return fail("unit limits match the web's");
        }
        validate_unit(unit, g)?;
    }
    let mut unit_seen: BTreeSet<Vertex> = BTreeSet::new();
    for unit in &w.units {
        for v in unit.vertices() {
            if !unit_seen.insert(v) {
                return fail("units pairwise vertex-disjoint");
            }
        }
    }
    let spoke_verts: BTreeSet<Vertex> = w.spokes.iter().flatten().copied().collect();
    for unit in &w.units {
        if unit.vertices().iter().any(|v| *v != unit.core && spoke_verts.contains(v)) {
            return fail("unit bodies avoid spokes");
        }
    }
    Ok(())
}

/// Stage-labelled failures of the structure builders.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum BuildFailure {
    #[error("star stage: needed {needed} disjoint stars, found {found}")]
    Stars { needed: usize, found: usize },
    #[error("no usable core candidates remain")]
    CoreCandidates,
    #[error("pivot stage: best candidate has {best} good partners, needed {needed}")]
    Pivot { needed: usize, best: usize },
    #[error("unit stage: needed {needed} disjoint units, found {found}")]
    Units { needed: usize, found: usize },
    #[error("connect stage ({stage}): no path from {from} to {to}")]
    Connect { from: Vertex, to: Vertex, stage: &'static str },
    #[error("ball gate at step {index}: |B^r({center})| = {size} < {gate}")]
    BallGate { index: usize, center: Vertex, size: usize, gate: usize },
    #[error("length budget at step {index}: path of {len} vertices exceeds {budget}")]
    LengthBudget { index: usize, len: usize, budget: usize },
    #[error("coverage: cycle met {covered} cores, required {required}")]
    Coverage { covered: usize, required: usize },
    #[error("degenerate input: {0}")]
    Degenerate(&'static str),
    #[error("assembled structure failed validation: {0}")]
    Invalid(StructureViolation),
}
