//! The two cycle-through-prescribed-cores procedures. Dense: thread the
//! exteriors of webs with disjoint interiors, skipping webs whose interior
//! the earlier paths over-used. Sparse: grow balls around far-apart target
//! vertices and connect consecutive balls while avoiding everything built
//! so far. Either way the trace records every connecting path against its
//! length budget, and failures name the stalled step.

use alloc::vec;
use alloc::vec::Vec;

use crate::expander::{connect_avoiding, ExpansionProfile};
use crate::graph::{Graph, Vertex};
use crate::math;
use crate::structures::{BuildFailure, Web};

/// One connecting path of a cycle build, with the budget it was checked
/// against.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathRecord {
    pub from: Vertex,
    pub to: Vertex,
    pub vertices: Vec<Vertex>,
    pub budget: usize,
}

impl PathRecord {
    pub fn within_budget(&self) -> bool {
        self.vertices.len() <= self.budget
    }
}

/// Outcome of a cycle build. `z` is the full core set, `requested` the
/// cores the cycle was asked to visit. On success `cycle` is a simple
/// cycle of the host and `z_intersection` lists the cores it meets.
#[derive(Debug, Clone, PartialEq)]
pub struct CycleBuildReport {
    pub z: Vec<Vertex>,
    pub requested: Vec<Vertex>,
    pub cycle: Option<Vec<Vertex>>,
    pub failure: Option<BuildFailure>,
    pub z_intersection: Vec<Vertex>,
    pub trace: Vec<PathRecord>,
}

impl CycleBuildReport {
    fn failed(
        z: Vec<Vertex>,
        requested: Vec<Vertex>,
        failure: BuildFailure,
        trace: Vec<PathRecord>,
    ) -> Self {
        CycleBuildReport { z, requested, cycle: None, failure: Some(failure), z_intersection: Vec::new(), trace }
    }

    pub fn succeeded(&self) -> bool {
        self.cycle.is_some() && self.failure.is_none()
    }
}

/// Greedy set of vertices with pairwise distance greater than `2k`, lowest
/// indices first. `ball_saturated` reports that the `2k`-balls of the
/// accepted vertices swallowed the graph before `size` was reached.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FarApartSet {
    pub set: Vec<Vertex>,
    pub requested: usize,
    pub ball_saturated: bool,
}

pub fn far_apart_set(g: &Graph, k: usize, size: usize) -> FarApartSet {
    let mut blocked_by_balls = vec![false; g.n()];
    let mut set = Vec::new();
    for v in 0..g.n() as Vertex {
        if set.len() == size {
            break;
        }
        if blocked_by_balls[v as usize] {
            continue;
        }
        set.push(v);
        let none = vec![false; g.n()];
        let dist = g.bfs_distances(&[v], &none);
        for u in 0..g.n() {
            if dist[u] != u32::MAX && dist[u] as usize <= 2 * k {
                blocked_by_balls[u] = true;
            }
        }
    }
    FarApartSet { requested: size, ball_saturated: set.len() < size, set }
}

/// Knobs for the dense (web-threading) builder.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseCycleParams {
    /// Vertex-count budget for each connecting path.
    pub path_budget: usize,
    /// A web is bad once earlier paths hold this many of its interior
    /// vertices; candidates are picked while at most half this used.
    pub overuse_budget: usize,
    /// Fraction of the requested cores the cycle must cover.
    pub coverage: f64,
}

impl DenseCycleParams {
    pub fn desk(path_budget: usize) -> Self {
        DenseCycleParams {
            path_budget,
            overuse_budget: 2 * path_budget * path_budget,
            coverage: 0.9,
        }
    }

    /// The asymptotic preset: `m = (2/eps1) ln^3(450 n / d)`, paths of at
    /// most `18m`, over-use `2m^2`, coverage 98%. Far beyond desk scale for
    /// realistic `n`; kept to document the intended regime.
    pub fn asymptotic(n: usize, d: f64, eps1: f64) -> Self {
        let m = 2.0 / eps1 * math::ln_cubed(450.0 * n as f64 / d);
        DenseCycleParams {
            path_budget: (18.0 * m) as usize,
            overuse_budget: (2.0 * m * m) as usize,
            coverage: 0.98,
        }
    }
}

fn mark(set: &mut [bool], vs: impl IntoIterator<Item = Vertex>) {
    for v in vs {
        set[v as usize] = true;
    }
}

/// Connects two web cores through their exteriors: fresh exterior leaves
/// (in-web path untouched by `used`, leaf off the forbidden set) joined by
/// a shortest hop, then straightened into a simple core-to-core path by a
/// BFS inside the union.
fn connect_webs(
    g: &Graph,
    webs: &[Web],
    a: usize,
    b: usize,
    used: &[bool],
    forbidden_centres: &[bool],
    z_marks: &[bool],
    budget: usize,
) -> Option<Vec<Vertex>> {
    let fresh = |wi: usize| -> Vec<Vertex> {
        webs[wi]
            .exterior()
            .into_iter()
            .filter(|&w| {
                !used[w as usize]
                    && !z_marks[w as usize]
                    && !forbidden_centres[w as usize]
                    && webs[wi]
                        .path_to_exterior(w)
                        .is_some_and(|p| p.iter().all(|&v| !used[v as usize]))
            })
            .collect()
    };
    let from = fresh(a);
    let to = fresh(b);
    if from.is_empty() || to.is_empty() {
        return None;
    }
    let mut blocked = vec![false; g.n()];
    for i in 0..g.n() {
        blocked[i] = used[i] || forbidden_centres[i] || z_marks[i];
    }
    // leaves of the two active webs stay traversable
    for &w in from.iter().chain(&to) {
        blocked[w as usize] = false;
    }
    let hop = g.shortest_path_avoiding(&from, &to, &blocked)?;
    let w1 = *hop.first().expect("nonempty");
    let w2 = *hop.last().expect("nonempty");
    let mut union: Vec<Vertex> = webs[a].path_to_exterior(w1).expect("fresh leaf");
    union.extend(&hop);
    union.extend(webs[b].path_to_exterior(w2).expect("fresh leaf"));
    union.sort_unstable();
    union.dedup();
    // straighten inside the union; chords only ever shorten the path
    let (sub, map) = g.induced(&union);
    let src = union.binary_search(&webs[a].core).ok()? as u32;
    let dst = union.binary_search(&webs[b].core).ok()? as u32;
    let none = vec![false; sub.n()];
    let path = sub.shortest_path_avoiding(&[src], &[dst], &none)?;
    let path: Vec<Vertex> = path.iter().map(|&v| map[v as usize]).collect();
    (path.len() <= budget).then_some(path)
}

/// Builds a cycle through the cores of the webs indexed by `u`, skipping
/// webs whose interiors earlier paths over-used, and closing past any such
/// prefix. On success the cycle meets `Z` (all cores) exactly in the cores
/// it covered, at least the configured fraction of `u`.
pub fn build_cycle_dense(
    g: &Graph,
    webs: &[Web],
    u: &[usize],
    params: &DenseCycleParams,
) -> CycleBuildReport {
    let z: Vec<Vertex> = webs.iter().map(|w| w.core).collect();
    let requested: Vec<Vertex> =
        u.iter().filter_map(|&i| webs.get(i).map(|w| w.core)).collect();
    let fail = |f, trace| CycleBuildReport::failed(z.clone(), requested.clone(), f, trace);

    if u.len() < 2 {
        return fail(BuildFailure::Degenerate("a cycle needs at least two cores"), Vec::new());
    }
    let mut sorted_u = u.to_vec();
    sorted_u.sort_unstable();
    sorted_u.dedup();
    if sorted_u.len() != u.len() || *sorted_u.last().expect("nonempty") >= webs.len() {
        return fail(BuildFailure::Degenerate("core indices distinct and in range"), Vec::new());
    }
    {
        let mut seen = vec![false; g.n()];
        for w in webs {
            for v in w.interior() {
                if seen[v as usize] {
                    return fail(BuildFailure::Degenerate("web interiors overlap"), Vec::new());
                }
                seen[v as usize] = true;
            }
        }
    }

    let mut z_marks = vec![false; g.n()];
    mark(&mut z_marks, z.iter().copied());
    let interiors: Vec<Vec<Vertex>> = webs.iter().map(|w| w.interior()).collect();

    let mut used = vec![false; g.n()]; // interiors of every built path
    let mut trace: Vec<PathRecord> = Vec::new();
    let mut chain: Vec<usize> = vec![u[0]];
    let mut paths: Vec<Vec<Vertex>> = Vec::new();

    let overuse = |wi: usize, used: &[bool]| -> usize {
        interiors[wi].iter().filter(|&&v| used[v as usize]).count()
    };
    let centres_of_others = |a: usize, b: usize| -> Vec<bool> {
        let mut m = vec![false; g.n()];
        for (k, w) in webs.iter().enumerate() {
            if k != a && k != b {
                mark(&mut m, w.centre());
            }
        }
        m
    };

    loop {
        let last = *chain.last().expect("chain starts nonempty");
        let candidates: Vec<usize> = u
            .iter()
            .copied()
            .filter(|&i| !chain.contains(&i) && overuse(i, &used) * 2 <= params.overuse_budget)
            .collect();
        if candidates.is_empty() {
            break;
        }
        let mut connected = false;
        for next in candidates {
            let forbidden = centres_of_others(last, next);
            if let Some(path) =
                connect_webs(g, webs, last, next, &used, &forbidden, &z_marks, params.path_budget)
            {
                mark(&mut used, path[1..path.len() - 1].iter().copied());
                trace.push(PathRecord {
                    from: webs[last].core,
                    to: webs[next].core,
                    vertices: path.clone(),
                    budget: params.path_budget,
                });
                paths.push(path);
                chain.push(next);
                connected = true;
                break;
            }
        }
        if !connected {
            if chain.len() < 2 {
                let give_up = *u.iter().find(|&&i| i != last).expect("u has two indices");
                return fail(
                    BuildFailure::Connect {
                        from: webs[last].core,
                        to: webs[give_up].core,
                        stage: "chain",
                    },
                    trace,
                );
            }
            break;
        }
    }

    // drop any over-used prefix, then close the cycle
    let mut p = 0usize;
    while p < chain.len() && overuse(chain[p], &used) >= params.overuse_budget {
        p += 1;
    }
    if chain.len() - p < 2 {
        return fail(BuildFailure::Coverage { covered: chain.len() - p, required: 2 }, trace);
    }
    let first = chain[p];
    let last = *chain.last().expect("nonempty");
    let forbidden = centres_of_others(last, first);
    let Some(closing) =
        connect_webs(g, webs, last, first, &used, &forbidden, &z_marks, params.path_budget)
    else {
        return fail(
            BuildFailure::Connect { from: webs[last].core, to: webs[first].core, stage: "closure" },
            trace,
        );
    };
    trace.push(PathRecord {
        from: webs[last].core,
        to: webs[first].core,
        vertices: closing.clone(),
        budget: params.path_budget,
    });

    let covered = chain.len() - p;
    let required = math::ceil(params.coverage * u.len() as f64) as usize;
    if covered < required {
        return fail(BuildFailure::Coverage { covered, required }, trace);
    }

    let mut cycle: Vec<Vertex> = Vec::new();
    for path in &paths[p..] {
        cycle.extend(&path[..path.len() - 1]);
    }
    cycle.extend(&closing[..closing.len() - 1]);
    if let Err(v) = crate::structures::validate_cycle_seq(g, &cycle) {
        return fail(BuildFailure::Invalid(v), trace);
    }
    let z_intersection: Vec<Vertex> = {
        let mut on = vec![false; g.n()];
        mark(&mut on, cycle.iter().copied());
        z.iter().copied().filter(|&v| on[v as usize]).collect()
    };
    CycleBuildReport { z, requested, cycle: Some(cycle), failure: None, z_intersection, trace }
}

/// Knobs for the sparse (far-apart) builder. `r` is the gate-ball radius,
/// `k` the connector-ball radius (`r <= k`; the target set must be far
/// apart at radius `k`).
#[derive(Debug, Clone, PartialEq)]
pub struct SparseCycleParams {
    pub r: usize,
    pub k: usize,
    pub length_budget: usize,
    /// Minimum fresh `r`-ball size around each target before connecting.
    pub ball_gate: usize,
}

impl SparseCycleParams {
    pub fn desk(r: usize, k: usize, length_budget: usize, ball_gate: usize) -> Self {
        assert!(r <= k, "gate radius within connector radius");
        SparseCycleParams { r, k, length_budget, ball_gate }
    }

    /// The asymptotic preset: `r = (ln ln n)^5`, `k = ln^{7/8} n`, paths of
    /// at most `2 ln^4 n`, gate `d ln^7 n`. Documents the intended regime;
    /// unusable below astronomical `n`.
    pub fn asymptotic(n: usize, d: f64) -> Self {
        let ln = math::ln(n as f64);
        let lnln = math::ln(ln);
        SparseCycleParams {
            r: libm::pow(lnln, 5.0) as usize,
            k: libm::pow(ln, 7.0 / 8.0) as usize,
            length_budget: (2.0 * ln * ln * ln * ln) as usize,
            ball_gate: (d * libm::pow(ln, 7.0)) as usize,
        }
    }
}

/// Builds a cycle whose intersection with the far-apart set `z` is exactly
/// `u`: consecutive `u`-vertices are joined through their `k`-balls while
/// avoiding earlier path interiors, the `r`-balls of the other targets and
/// all of `z - u`. The fresh-ball gate is checked before every step.
pub fn build_cycle_sparse(
    g: &Graph,
    z: &[Vertex],
    u: &[Vertex],
    params: &SparseCycleParams,
    profile: &ExpansionProfile,
) -> CycleBuildReport {
    let fail = |f, trace| CycleBuildReport::failed(z.to_vec(), u.to_vec(), f, trace);
    if u.len() < 2 {
        return fail(BuildFailure::Degenerate("a cycle needs at least two targets"), Vec::new());
    }
    let mut in_z = vec![false; g.n()];
    mark(&mut in_z, z.iter().copied());
    if u.iter().any(|&v| !in_z[v as usize]) {
        return fail(BuildFailure::Degenerate("targets must lie in the far-apart set"), Vec::new());
    }
    // far-apart precondition: pairwise distance > 2k
    let none = vec![false; g.n()];
    for (i, &a) in z.iter().enumerate() {
        let dist = g.bfs_distances(&[a], &none);
        for &b in &z[i + 1..] {
            if dist[b as usize] as usize <= 2 * params.k {
                return fail(
                    BuildFailure::Degenerate("set is not far apart at radius k"),
                    Vec::new(),
                );
            }
        }
    }

    let mut in_u = vec![false; g.n()];
    mark(&mut in_u, u.iter().copied());
    let r_balls: Vec<Vec<Vertex>> =
        u.iter().map(|&v| g.ball(&[v], params.r).expect("target in graph").members).collect();

    let q = u.len();
    let mut used = vec![false; g.n()];
    let mut paths: Vec<Vec<Vertex>> = Vec::new();
    let mut trace = Vec::new();
    for i in 0..q {
        let (vi, wi) = (u[i], u[(i + 1) % q]);
        // fresh-ball gate at both endpoints
        for &(c, idx) in &[(vi, i), (wi, (i + 1) % q)] {
            let ball = count_ball(g, c, params.r, &used);
            if ball < params.ball_gate {
                return fail(
                    BuildFailure::BallGate { index: idx, center: c, size: ball, gate: params.ball_gate },
                    trace,
                );
            }
        }
        let mut avoid = used.clone();
        for (p, rb) in r_balls.iter().enumerate() {
            if p != i && p != (i + 1) % q {
                mark(&mut avoid, rb.iter().copied());
            }
        }
        for &zv in z {
            if !in_u[zv as usize] {
                avoid[zv as usize] = true;
            }
        }
        let avoid_list: Vec<Vertex> =
            (0..g.n() as Vertex).filter(|&v| avoid[v as usize]).collect();
        let x = ball_members(g, vi, params.k, &avoid);
        let x_prime = ball_members(g, wi, params.k, &avoid);
        let Some(connector) = connect_avoiding(g, &x, &x_prime, &avoid_list, profile) else {
            return fail(
                BuildFailure::Connect { from: vi, to: wi, stage: "ball connector" },
                trace,
            );
        };
        let head = g
            .shortest_path_avoiding(&[vi], &[connector.vertices[0]], &avoid)
            .expect("connector endpoint sits in the source ball");
        let tail = g
            .shortest_path_avoiding(
                &[*connector.vertices.last().expect("nonempty")],
                &[wi],
                &avoid,
            )
            .expect("connector endpoint sits in the target ball");
        let mut path = head;
        path.extend(&connector.vertices[1..]);
        path.extend(&tail[1..]);
        if path.len() > params.length_budget {
            return fail(
                BuildFailure::LengthBudget { index: i, len: path.len(), budget: params.length_budget },
                trace,
            );
        }
        trace.push(PathRecord { from: vi, to: wi, vertices: path.clone(), budget: params.length_budget });
        mark(&mut used, path[1..path.len() - 1].iter().copied());
        paths.push(path);
    }

    let mut cycle = Vec::new();
    for path in &paths {
        cycle.extend(&path[..path.len() - 1]);
    }
    if let Err(v) = crate::structures::validate_cycle_seq(g, &cycle) {
        return fail(BuildFailure::Invalid(v), trace);
    }
    let z_intersection: Vec<Vertex> = {
        let mut on = vec![false; g.n()];
        mark(&mut on, cycle.iter().copied());
        z.iter().copied().filter(|&v| on[v as usize]).collect()
    };
    let mut want = u.to_vec();
    want.sort_unstable();
    let mut got = z_intersection.clone();
    got.sort_unstable();
    if got != want {
        return fail(
            BuildFailure::Degenerate("cycle met the far-apart set outside the targets"),
            trace,
        );
    }
    CycleBuildReport {
        z: z.to_vec(),
        requested: u.to_vec(),
        cycle: Some(cycle),
        failure: None,
        z_intersection,
        trace,
    }
}

fn count_ball(g: &Graph, center: Vertex, r: usize, blocked: &[bool]) -> usize {
    ball_members(g, center, r, blocked).len()
}

fn ball_members(g: &Graph, center: Vertex, r: usize, blocked: &[bool]) -> Vec<Vertex> {
    let dist = g.bfs_distances(&[center], blocked);
    (0..g.n() as Vertex)
        .filter(|&v| dist[v as usize] != u32::MAX && dist[v as usize] as usize <= r)
        .collect()
}
