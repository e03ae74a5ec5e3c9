//! Greedy star packing and the two-level tree builders: grow a unit from a
//! pivot vertex with enough short disjoint connections into star centres,
//! then grow webs the same way one level up, pruning branches that the
//! connecting spokes consumed. Web interiors never overlap; exteriors may.

use alloc::vec;
use alloc::vec::Vec;

use crate::graph::{Graph, Vertex};
use crate::structures::{validate_unit, validate_web, BuildFailure, Star, Unit, Web};

/// Result of the greedy disjoint-star search. When fewer stars than
/// requested are found, `density_hint` reports the average degree of what
/// was left, the quantity the packing argument runs on.
#[derive(Debug, Clone, PartialEq)]
pub struct StarSearch {
    pub stars: Vec<Star>,
    pub requested: usize,
    pub density_hint: Option<f64>,
}

/// Greedily packs up to `count` vertex-disjoint `leaves`-stars in
/// `g - avoid`, lowest centre index first.
pub fn find_disjoint_stars(g: &Graph, count: usize, leaves: usize, avoid: &[Vertex]) -> StarSearch {
    let mut used = vec![false; g.n()];
    for &v in avoid {
        used[v as usize] = true;
    }
    let mut stars = Vec::new();
    for v in 0..g.n() as Vertex {
        if stars.len() == count {
            break;
        }
        if used[v as usize] {
            continue;
        }
        let free: Vec<Vertex> =
            g.neighbors(v).iter().copied().filter(|&u| !used[u as usize]).collect();
        if free.len() >= leaves {
            let taken = &free[..leaves];
            used[v as usize] = true;
            for &u in taken {
                used[u as usize] = true;
            }
            stars.push(Star { center: v, leaves: taken.to_vec() });
        }
    }
    let density_hint = (stars.len() < count).then(|| {
        let alive = used.iter().filter(|&&u| !u).count().max(1);
        let live_edges = g
            .edge_list()
            .iter()
            .filter(|&&(a, b)| !used[a as usize] && !used[b as usize])
            .count();
        2.0 * live_edges as f64 / alive as f64
    });
    StarSearch { stars, requested: count, density_hint }
}

/// Knobs for the unit builder beyond the target shape: how many candidate
/// cores and target stars to lay out, and how much slack each star carries
/// for leaves the connecting paths will eat.
#[derive(Debug, Clone)]
pub struct UnitBuildParams {
    pub star_count: usize,
    pub star_size: usize,
    pub core_candidates: usize,
}

impl UnitBuildParams {
    pub fn desk(h1: usize, h2: usize) -> Self {
        UnitBuildParams { star_count: h1 + 2, star_size: h2 + 2, core_candidates: 3 }
    }
}

/// One member of the maximal path collection: candidate index, star index,
/// and the path from the candidate to the star centre (inclusive).
struct Link {
    cand: usize,
    star: usize,
    path: Vec<Vertex>,
}

/// Grows a maximal collection of candidate-to-star paths subject to the
/// builder's avoidance rules, rescanning after every addition.
///
/// Each path has at most `budget` vertices, ends with a star edge, keeps
/// its interior off the candidates, centres and `hard_avoid`, and is
/// internally disjoint from the rest of the collection.
fn maximal_links(
    g: &Graph,
    candidates: &[Vertex],
    stars: &[Star],
    budget: usize,
    hard_avoid: &[bool],
) -> Vec<Link> {
    let n = g.n();
    let mut links: Vec<Link> = Vec::new();
    let mut used_interior = vec![false; n];
    let mut paired = vec![false; candidates.len() * stars.len()];
    loop {
        let mut added = false;
        for (ci, &cand) in candidates.iter().enumerate() {
            'star: for (si, star) in stars.iter().enumerate() {
                if paired[ci * stars.len() + si] {
                    continue;
                }
                let mut blocked = hard_avoid.to_vec();
                for &c in candidates {
                    blocked[c as usize] = true;
                }
                for s in stars {
                    blocked[s.center as usize] = true;
                }
                for (i, &b) in used_interior.iter().enumerate() {
                    if b {
                        blocked[i] = true;
                    }
                }
                blocked[cand as usize] = false;
                let targets: Vec<Vertex> = star
                    .leaves
                    .iter()
                    .copied()
                    .filter(|&l| !blocked[l as usize] && !used_interior[l as usize])
                    .collect();
                if targets.is_empty() {
                    continue 'star;
                }
                let Some(mut path) = g.shortest_path_avoiding(&[cand], &targets, &blocked) else {
                    continue 'star;
                };
                if path.len() + 1 > budget {
                    continue 'star;
                }
                path.push(star.center);
                for &v in &path[1..path.len() - 1] {
                    used_interior[v as usize] = true;
                }
                paired[ci * stars.len() + si] = true;
                links.push(Link { cand: ci, star: si, path });
                added = true;
            }
        }
        if !added {
            break;
        }
    }
    links
}

/// Grows a validated `(h1, h2, h3)`-unit in `g - avoid`, or reports the
/// stalled stage. Procedure: pack disjoint slack-sized stars, grow a
/// maximal path collection from a few core candidates into the star
/// centres, take a pivot with `h1` good partners, prune star leaves the
/// chosen paths consumed.
pub fn grow_unit(
    g: &Graph,
    h1: usize,
    h2: usize,
    h3: usize,
    avoid: &[Vertex],
    params: &UnitBuildParams,
) -> Result<Unit, BuildFailure> {
    assert!(h1 > 0 && h2 > 0 && h3 >= 3, "unit shape must be positive with h3 >= 3");
    let n = g.n();
    let search = find_disjoint_stars(g, params.star_count, params.star_size, avoid);
    if search.stars.len() < h1 {
        return Err(BuildFailure::Stars { needed: h1, found: search.stars.len() });
    }
    let stars = search.stars;
    let mut in_star = vec![false; n];
    for s in &stars {
        for v in s.vertices() {
            in_star[v as usize] = true;
        }
    }
    let mut hard_avoid = vec![false; n];
    for &v in avoid {
        hard_avoid[v as usize] = true;
    }
    let candidates: Vec<Vertex> = (0..n as Vertex)
        .filter(|&v| !hard_avoid[v as usize] && !in_star[v as usize])
        .take(params.core_candidates)
        .collect();
    if candidates.is_empty() {
        return Err(BuildFailure::CoreCandidates);
    }

    let links = maximal_links(g, &candidates, &stars, h3, &hard_avoid);

    let mut best_pivot = 0usize;
    let mut best_count = 0usize;
    for ci in 0..candidates.len() {
        let cnt = links.iter().filter(|l| l.cand == ci).count();
        if cnt > best_count {
            best_count = cnt;
            best_pivot = ci;
        }
    }
    if best_count < h1 {
        return Err(BuildFailure::Pivot { needed: h1, best: best_count });
    }

    // choose h1 partners whose stars keep h2 leaves clear of every chosen path
    let pivot_links: Vec<&Link> = links.iter().filter(|l| l.cand == best_pivot).collect();
    let mut chosen: Vec<&Link> = Vec::new();
    for link in pivot_links {
        if chosen.len() == h1 {
            break;
        }
        chosen.push(link);
        let mut on_paths = vec![false; n];
        for l in &chosen {
            for &v in &l.path {
                on_paths[v as usize] = true;
            }
        }
        let spoiled = chosen.iter().any(|l| {
            stars[l.star].leaves.iter().filter(|&&lf| !on_paths[lf as usize]).count() < h2
        });
        if spoiled {
            chosen.pop();
        }
    }
    if chosen.len() < h1 {
        return Err(BuildFailure::Pivot { needed: h1, best: chosen.len() });
    }

    let mut on_paths = vec![false; n];
    for l in &chosen {
        for &v in &l.path {
            on_paths[v as usize] = true;
        }
    }
    let unit = Unit {
        core: candidates[best_pivot],
        paths: chosen.iter().map(|l| l.path.clone()).collect(),
        stars: chosen
            .iter()
            .map(|l| {
                let kept: Vec<Vertex> = stars[l.star]
                    .leaves
                    .iter()
                    .copied()
                    .filter(|&lf| !on_paths[lf as usize])
                    .take(h2)
                    .collect();
                Star { center: stars[l.star].center, leaves: kept }
            })
            .collect(),
        limits: (h1, h2, h3),
    };
    validate_unit(&unit, g).map_err(BuildFailure::Invalid)?;
    Ok(unit)
}

/// Knobs for the web builder: target-unit layout (built with slack to
/// survive pruning) and spoke search bounds.
#[derive(Debug, Clone)]
pub struct WebBuildParams {
    pub unit_count: usize,
    pub core_candidates: usize,
    /// Path bound for the inner units; spokes traverse one unit path plus a
    /// hop, so this stays below the web's `h3`.
    pub unit_h3: usize,
    pub branch_slack: usize,
    pub leaf_slack: usize,
    pub unit_params: UnitBuildParams,
}

impl WebBuildParams {
    pub fn desk(h0: usize, h1: usize, h2: usize, h3: usize) -> Self {
        let branch_slack = 2;
        let leaf_slack = 2;
        WebBuildParams {
            unit_count: h0 + 2,
            core_candidates: 3,
            unit_h3: h3.saturating_sub(1).max(3),
            branch_slack,
            leaf_slack,
            unit_params: UnitBuildParams::desk(h1 + branch_slack, h2 + leaf_slack),
        }
    }
}

#[derive(Debug, Clone)]
pub struct WebHarvest {
    pub webs: Vec<Web>,
    /// Stage diagnostics for each web that could not be grown.
    pub failures: Vec<BuildFailure>,
}

/// Prunes a slack-built unit down to `(h1, h2)` keeping only branches and
/// leaves untouched by the spoke vertices. `None` if too little survives.
fn prune_unit(unit: &Unit, spoke_verts: &[bool], h1: usize, h2: usize, h3: usize) -> Option<Unit> {
    let mut paths = Vec::new();
    let mut stars = Vec::new();
    for (p, s) in unit.paths.iter().zip(&unit.stars) {
        if paths.len() == h1 {
            break;
        }
        if p.iter().any(|&v| spoke_verts[v as usize]) {
            continue;
        }
        if spoke_verts[s.center as usize] {
            continue;
        }
        let kept: Vec<Vertex> =
            s.leaves.iter().copied().filter(|&l| !spoke_verts[l as usize]).take(h2).collect();
        if kept.len() < h2 {
            continue;
        }
        paths.push(p.clone());
        stars.push(Star { center: s.center, leaves: kept });
    }
    (paths.len() == h1).then(|| Unit {
        core: unit.core,
        paths,
        stars,
        limits: (h1, h2, h3),
    })
}

/// Grows up to `count` validated `(h0, h1, h2, h3)`-webs with pairwise
/// disjoint interiors (exteriors may overlap). Per web: grow slack units
/// avoiding all previous interiors, connect a fresh pivot vertex to `h0`
/// unit cores through their exteriors, prune what the spokes consumed.
pub fn grow_webs(
    g: &Graph,
    h0: usize,
    h1: usize,
    h2: usize,
    h3: usize,
    count: usize,
    params: &WebBuildParams,
) -> WebHarvest {
    assert!(h0 > 0 && h1 > 0 && h2 > 0 && h3 >= 3, "web shape must be positive with h3 >= 3");
    let n = g.n();
    let mut harvested: Vec<Web> = Vec::new();
    let mut failures: Vec<BuildFailure> = Vec::new();
    let mut interior_used = vec![false; n]; // union of built interiors

    'webs: while harvested.len() < count {
        let avoid: Vec<Vertex> =
            (0..n as Vertex).filter(|&v| interior_used[v as usize]).collect();

        // slack units, pairwise disjoint, off all previous interiors
        let mut units: Vec<Unit> = Vec::new();
        let mut unit_avoid = avoid.clone();
        for _ in 0..params.unit_count {
            match grow_unit(
                g,
                h1 + params.branch_slack,
                h2 + params.leaf_slack,
                params.unit_h3,
                &unit_avoid,
                &params.unit_params,
            ) {
                Ok(u) => {
                    unit_avoid.extend(u.vertices());
                    units.push(u);
                }
                Err(_) => break,
            }
        }
        if units.len() < h0 {
            failures.push(BuildFailure::Units { needed: h0, found: units.len() });
            break 'webs;
        }

        let mut in_unit = vec![false; n];
        let mut in_unit_interior = vec![false; n];
        for u in &units {
            for v in u.vertices() {
                in_unit[v as usize] = true;
            }
            for v in u.interior() {
                in_unit_interior[v as usize] = true;
            }
        }
        let mut hard_avoid = vec![false; n];
        for &v in &avoid {
            hard_avoid[v as usize] = true;
        }
        let candidates: Vec<Vertex> = (0..n as Vertex)
            .filter(|&v| !hard_avoid[v as usize] && !in_unit[v as usize])
            .take(params.core_candidates)
            .collect();
        if candidates.is_empty() {
            failures.push(BuildFailure::CoreCandidates);
            break 'webs;
        }

        // maximal spoke collection: candidate -> exterior leaf -> unit core
        let mut spokes: Vec<(usize, usize, Vec<Vertex>)> = Vec::new(); // (cand, unit, path)
        let mut spoke_verts = vec![false; n];
        let mut paired = vec![false; candidates.len() * units.len()];
        loop {
            let mut added = false;
            for (ci, &cand) in candidates.iter().enumerate() {
                for (ui, unit) in units.iter().enumerate() {
                    if paired[ci * units.len() + ui] {
                        continue;
                    }
                    // hops stay off every unit interior and previous spoke
                    let mut blocked = hard_avoid.clone();
                    for (i, &b) in in_unit_interior.iter().enumerate() {
                        if b {
                            blocked[i] = true;
                        }
                    }
                    for (i, &b) in spoke_verts.iter().enumerate() {
                        if b {
                            blocked[i] = true;
                        }
                    }
                    for &c in &candidates {
                        blocked[c as usize] = true;
                    }
                    blocked[cand as usize] = false;

                    // route through the unit's exterior when that fits h3
                    let mut spoke: Option<Vec<Vertex>> = None;
                    let targets: Vec<Vertex> = unit
                        .exterior()
                        .into_iter()
                        .filter(|&w| {
                            !blocked[w as usize]
                                && unit
                                    .path_to_exterior(w)
                                    .is_some_and(|p| p.iter().all(|&v| !spoke_verts[v as usize]))
                        })
                        .collect();
                    if !targets.is_empty() {
                        if let Some(hop) = g.shortest_path_avoiding(&[cand], &targets, &blocked) {
                            let w = *hop.last().expect("nonempty path");
                            let tail = unit.path_to_exterior(w).expect("w is an exterior leaf");
                            if hop.len() + tail.len() - 1 <= h3 {
                                let mut s = hop;
                                s.extend(tail.iter().rev().skip(1));
                                spoke = Some(s);
                            }
                        }
                    }
                    // otherwise head straight for the core past all unit bodies
                    if spoke.is_none() {
                        let mut direct_blocked = blocked.clone();
                        for u2 in &units {
                            for v in u2.vertices() {
                                direct_blocked[v as usize] = true;
                            }
                        }
                        direct_blocked[unit.core as usize] = false;
                        direct_blocked[cand as usize] = false;
                        spoke = g
                            .shortest_path_avoiding(&[cand], &[unit.core], &direct_blocked)
                            .filter(|p| p.len() <= h3);
                    }
                    let Some(spoke) = spoke else {
                        continue;
                    };
                    for &v in &spoke {
                        spoke_verts[v as usize] = true;
                    }
                    paired[ci * units.len() + ui] = true;
                    spokes.push((ci, ui, spoke));
                    added = true;
                }
            }
            if !added {
                break;
            }
        }

        let mut best_pivot = 0usize;
        let mut best_count = 0usize;
        for ci in 0..candidates.len() {
            let cnt = spokes.iter().filter(|s| s.0 == ci).count();
            if cnt > best_count {
                best_count = cnt;
                best_pivot = ci;
            }
        }
        if best_count < h0 {
            failures.push(BuildFailure::Pivot { needed: h0, best: best_count });
            break 'webs;
        }

        // choose h0 partners whose units survive pruning by the chosen spokes
        let pivot_spokes: Vec<&(usize, usize, Vec<Vertex>)> =
            spokes.iter().filter(|s| s.0 == best_pivot).collect();
        let mut chosen: Vec<&(usize, usize, Vec<Vertex>)> = Vec::new();
        for s in pivot_spokes {
            if chosen.len() == h0 {
                break;
            }
            chosen.push(s);
            let mut marks = vec![false; n];
            for c in &chosen {
                for &v in &c.2 {
                    marks[v as usize] = true;
                }
            }
            marks[candidates[best_pivot] as usize] = true;
            let ok = chosen.iter().all(|c| {
                let mut m = marks.clone();
                m[units[c.1].core as usize] = false; // spoke legitimately ends there
                prune_unit(&units[c.1], &m, h1, h2, h3).is_some()
            });
            if !ok {
                chosen.pop();
            }
        }
        if chosen.len() < h0 {
            failures.push(BuildFailure::Pivot { needed: h0, best: chosen.len() });
            break 'webs;
        }

        let mut marks = vec![false; n];
        for c in &chosen {
            for &v in &c.2 {
                marks[v as usize] = true;
            }
        }
        marks[candidates[best_pivot] as usize] = true;
        let mut web_spokes = Vec::new();
        let mut web_units = Vec::new();
        for c in &chosen {
            let mut m = marks.clone();
            m[units[c.1].core as usize] = false;
            let pruned =
                prune_unit(&units[c.1], &m, h1, h2, h3).expect("goodness checked at choice");
            web_spokes.push(c.2.clone());
            web_units.push(pruned);
        }
        let web = Web {
            core: candidates[best_pivot],
            spokes: web_spokes,
            units: web_units,
            limits: (h0, h1, h2, h3),
        };
        match validate_web(&web, g) {
            Ok(()) => {
                for v in web.interior() {
                    interior_used[v as usize] = true;
                }
                harvested.push(web);
            }
            Err(v) => {
                failures.push(BuildFailure::Invalid(v));
                break 'webs;
            }
        }
    }
    WebHarvest { webs: harvested, failures }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct;
    use crate::random;

    #[test]
    fn star_packing_on_complete_graph() {
        let g = construct::complete(30);
        let s = find_disjoint_stars(&g, 3, 5, &[]);
        assert_eq!(s.stars.len(), 3);
        let mut all: Vec<Vertex> = s.stars.iter().flat_map(|st| st.vertices()).collect();
        all.sort_unstable();
        all.dedup();
        assert_eq!(all.len(), 18, "stars are pairwise disjoint");
    }

    #[test]
    fn star_packing_stalls_on_low_degree() {
        let g = construct::cycle(9).unwrap();
        let s = find_disjoint_stars(&g, 1, 3, &[]);
        assert!(s.stars.is_empty());
        assert!(s.density_hint.is_some());
    }

    #[test]
    fn unit_grows_on_complete_graph() {
        let g = construct::complete(40);
        let u = grow_unit(&g, 3, 4, 3, &[], &UnitBuildParams::desk(3, 4)).unwrap();
        assert!(validate_unit(&u, &g).is_ok());
        assert_eq!(u.paths.len(), 3);
    }

    #[test]
    fn unit_fails_on_forest_at_star_stage() {
        let g = construct::path(30).unwrap();
        match grow_unit(&g, 3, 4, 3, &[], &UnitBuildParams::desk(3, 4)) {
            Err(BuildFailure::Stars { .. }) => {}
            other => panic!("expected star-stage failure, got {other:?}"),
        }
    }

    #[test]
    fn unit_grows_on_random_regular_graph() {
        let g = random::random_regular(2000, 12, 99).unwrap();
        let u = grow_unit(&g, 3, 5, 8, &[], &UnitBuildParams::desk(3, 5)).unwrap();
        assert!(validate_unit(&u, &g).is_ok());
    }

    #[test]
    fn webs_have_disjoint_interiors() {
        let g = construct::complete(200);
        let h = grow_webs(&g, 2, 2, 3, 4, 2, &WebBuildParams::desk(2, 2, 3, 4));
        assert_eq!(h.webs.len(), 2, "failures: {:?}", h.failures);
        let mut seen = alloc::collections::BTreeSet::new();
        for w in &h.webs {
            assert!(validate_web(w, &g).is_ok());
            for v in w.interior() {
                assert!(seen.insert(v), "interiors overlap at {v}");
            }
        }
    }

    #[test]
    fn web_on_tiny_graph_reports_failure() {
        let g = construct::complete(6);
        let h = grow_webs(&g, 2, 2, 3, 4, 1, &WebBuildParams::desk(2, 2, 3, 4));
        assert!(h.webs.is_empty());
        assert!(!h.failures.is_empty());
    }

    #[test]
    fn webs_grow_on_random_regular_graph() {
        let g = random::random_regular(5000, 16, 4).unwrap();
        let h = grow_webs(&g, 2, 2, 3, 6, 5, &WebBuildParams::desk(2, 2, 3, 6));
        assert_eq!(h.webs.len(), 5, "failures: {:?}", h.failures);
        let mut seen = alloc::collections::BTreeSet::new();
        for w in &h.webs {
            assert!(validate_web(w, &g).is_ok());
            for v in w.interior() {
                assert!(seen.insert(v));
            }
        }
    }
}
