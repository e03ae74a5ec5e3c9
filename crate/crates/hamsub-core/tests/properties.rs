//! Property and invariant tests: the DP against independent oracles,
//! monotonicity and additivity laws of the counts, ball geometry, peel
//! order-independence, expander certificate re-verification.

use hamsub_core::classical::{longest_cycle, min_degree_core, posa_check};
use hamsub_core::counting::{
    count_all_cycles, ham_subsets_count, path_subsets_count, CountOptions,
};
use hamsub_core::expander::{
    connect_avoiding, is_expander, CertRequest, ExpansionProfile, EXPANSION_SLACK,
};
use hamsub_core::graph::{Graph, Vertex};
use hamsub_core::{blocks, construct, graph6, oracle, random, verify};
use num_rational::Ratio;
use num_traits::ToPrimitive;
use proptest::prelude::*;
use rand::prelude::*;

fn random_graph(n: usize, p: f64, rng: &mut StdRng) -> Graph {
    let mut edges = Vec::new();
    for i in 0..n as Vertex {
        for j in i + 1..n as Vertex {
            if rng.random_bool(p) {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

fn c_of(g: &Graph) -> u64 {
    ham_subsets_count(g, &CountOptions::default()).unwrap().c.to_u64().unwrap()
}

proptest! {
    #[test]
    fn graph6_roundtrip(n in 1usize..=10, seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let g = random_graph(n, 0.5, &mut rng);
        let encoded = graph6::encode(&g);
        prop_assert_eq!(graph6::decode(&encoded).unwrap(), g);
    }

    #[test]
    fn dp_matches_naive_oracle(n in 1usize..=8, seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let g = random_graph(n, 0.45, &mut rng);
        prop_assert_eq!(c_of(&g), oracle::ham_count(&g));
    }

    #[test]
    fn cycle_census_matches_dfs_oracle(n in 1usize..=8, seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let g = random_graph(n, 0.5, &mut rng);
        let nu = count_all_cycles(&g, &CountOptions::default()).unwrap().to_u64().unwrap();
        prop_assert_eq!(nu, oracle::cycle_count(&g));
    }

    #[test]
    fn adding_an_edge_never_decreases_counts(n in 3usize..=8, seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let g = random_graph(n, 0.4, &mut rng);
        let non_edges: Vec<(Vertex, Vertex)> = (0..n as Vertex)
            .flat_map(|i| ((i + 1)..n as Vertex).map(move |j| (i, j)))
            .filter(|&(i, j)| !g.has_edge(i, j))
            .collect();
        if let Some(&(a, b)) = non_edges.first() {
            let mut edges = g.edge_list();
            edges.push((a, b));
            let h = Graph::from_edges(n, &edges).unwrap();
            let opts = CountOptions::default();
            let (rg, rh) =
                (ham_subsets_count(&g, &opts).unwrap(), ham_subsets_count(&h, &opts).unwrap());
            prop_assert!(rh.c >= rg.c);
            prop_assert!(rh.weak >= rg.weak);
            prop_assert!(
                count_all_cycles(&h, &opts).unwrap() >= count_all_cycles(&g, &opts).unwrap()
            );
            let (x, y) = (0, 1);
            prop_assert!(
                path_subsets_count(&h, x, y, &opts).unwrap().p
                    >= path_subsets_count(&g, x, y, &opts).unwrap().p
            );
        }
    }

    #[test]
    fn count_is_additive_over_blocks(n in 2usize..=9, seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let g = random_graph(n, 0.35, &mut rng);
        let dec = blocks::blocks(&g);
        let total: u64 = dec
            .blocks
            .iter()
            .map(|b| {
                let (h, _) = g.induced(b);
                c_of(&h)
            })
            .sum();
        prop_assert_eq!(c_of(&g), total);
    }

    #[test]
    fn ball_is_monotone_and_degree_bounded(n in 1usize..=12, seed in any::<u64>(), r in 0usize..=4) {
        let mut rng = StdRng::seed_from_u64(seed);
        let g = random_graph(n, 0.3, &mut rng);
        let v = (rng.random_range(0..n)) as Vertex;
        let small = g.ball(&[v], r).unwrap();
        let big = g.ball(&[v], r + 1).unwrap();
        prop_assert!(small.members.iter().all(|m| big.members.contains(m)));
        let delta = g.max_degree().max(1);
        let mut bound = 1usize;
        let mut shell = delta;
        for _ in 0..r {
            bound += shell;
            shell = shell.saturating_mul(delta.saturating_sub(1).max(1));
        }
        prop_assert!(small.members.len() <= bound);
    }

    #[test]
    fn peel_emptiness_is_order_independent(n in 1usize..=10, seed in any::<u64>(), dq in 1i64..=8) {
        let mut rng = StdRng::seed_from_u64(seed);
        let g = random_graph(n, 0.4, &mut rng);
        let d = Ratio::new(dq, 2);
        let (core, _) = min_degree_core(&g, d);
        // any-order peel: delete the highest-index violating vertex instead
        let mut alive: Vec<bool> = vec![true; g.n()];
        let mut degs: Vec<i64> = (0..g.n() as Vertex).map(|v| g.degree(v) as i64).collect();
        loop {
            let pick = (0..g.n())
                .rev()
                .find(|&v| alive[v] && Ratio::new(2 * degs[v], 1) < d);
            match pick {
                None => break,
                Some(v) => {
                    alive[v] = false;
                    for &u in g.neighbors(v as Vertex) {
                        degs[u as usize] -= 1;
                    }
                }
            }
        }
        let other_empty = alive.iter().all(|a| !a);
        prop_assert_eq!(core.n() == 0, other_empty);
    }

    #[test]
    fn posa_pass_implies_hamiltonian(n in 3usize..=9, seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let g = random_graph(n, 0.6, &mut rng);
        if posa_check(&g).unwrap().passes {
            let dp_cycle = longest_cycle(&g, 24).unwrap();
            prop_assert_eq!(dp_cycle.map(|c| c.len()), Some(n));
        }
    }

    #[test]
    fn longest_cycle_beats_average_degree(n in 3usize..=12, seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let g = random_graph(n, 0.5, &mut rng);
        if g.is_connected() && g.average_degree() >= Ratio::new(2, 1) {
            let len = longest_cycle(&g, 24).unwrap().map(|c| c.len()).unwrap_or(0);
            prop_assert!(len as i64 >= g.average_degree().floor().to_integer());
        }
    }
}

#[test]
fn ahrens_bounds_hold_on_connected_samples() {
    let mut rng = StdRng::seed_from_u64(99);
    let opts = CountOptions::default();
    let mut checked = 0;
    while checked < 400 {
        let n = rng.random_range(3..=9usize);
        let g = random_graph(n, 0.5, &mut rng);
        if !g.is_connected() {
            continue;
        }
        checked += 1;
        let nu = count_all_cycles(&g, &opts).unwrap().to_u64().unwrap();
        let dim = (g.e() + 1 - g.n()) as u64;
        assert!(nu >= dim, "lower Ahrens bound on {:?}", g.edge_list());
        assert!(nu <= (1u64 << dim) - 1 || dim == 0 && nu == 0);
    }
}

#[test]
fn tuza_bound_holds_on_samples() {
    let mut rng = StdRng::seed_from_u64(7);
    for _ in 0..400 {
        let n = rng.random_range(4..=9usize);
        let g = random_graph(n, 0.7, &mut rng);
        let floor_d = g.average_degree().floor().to_integer();
        if floor_d >= 3 {
            let bound = hamsub_core::counting::tuza_floor(floor_d as u64);
            assert!(
                ham_subsets_count(&g, &CountOptions::default()).unwrap().c >= bound,
                "{:?}",
                g.edge_list()
            );
        }
    }
}

#[test]
fn exact_certificates_survive_relabeling() {
    let mut rng = StdRng::seed_from_u64(21);
    let profile = ExpansionProfile::new(1.0, 6.0);
    for _ in 0..40 {
        let n = rng.random_range(6..=12usize);
        let g = random_graph(n, 0.4, &mut rng);
        let cert = is_expander(&g, &profile, CertRequest::Exact).unwrap();
        // relabel and re-certify: the verdict is isomorphism-invariant
        let mut perm: Vec<Vertex> = (0..n as Vertex).collect();
        perm.shuffle(&mut rng);
        let edges: Vec<(Vertex, Vertex)> = g
            .edge_list()
            .iter()
            .map(|&(a, b)| (perm[a as usize], perm[b as usize]))
            .collect();
        let h = Graph::from_edges(n, &edges).unwrap();
        let cert2 = is_expander(&h, &profile, CertRequest::Exact).unwrap();
        assert_eq!(cert.pass, cert2.pass);
        if let Some(set) = &cert.violating_set {
            let gamma = g.external_neighborhood(set).len() as f64;
            assert!(gamma < profile.demand(set.len()) - EXPANSION_SLACK);
        }
    }
}

#[test]
fn epsilon_monotonicity_on_grid() {
    for &(eps1, t) in &[(1.0, 2.0), (0.25, 6.0), (1.0 / 130.0, 0.3)] {
        let p = ExpansionProfile::new(eps1, t);
        let mut x = t / 2.0;
        let step = (10_000.0_f64).powf(1.0 / 10_000.0);
        let mut prev_eps = p.epsilon(x);
        let mut prev_xe = prev_eps * x;
        for _ in 0..10_000 {
            x *= step;
            let e = p.epsilon(x);
            assert!(e <= prev_eps + 1e-12);
            assert!(e * x >= prev_xe - 1e-12);
            prev_eps = e;
            prev_xe = e * x;
        }
    }
}

#[test]
fn connector_bound_holds_under_checked_hypotheses() {
    // random regular graphs, certified heuristically; whenever the set-size
    // hypotheses hold the diameter-style bound must too
    for seed in 0..6u64 {
        let g = random::random_regular(200, 6, seed).unwrap();
        let profile = ExpansionProfile::from_degree(0.5, 1.0 / 30.0, 6.0);
        let cert = is_expander(&g, &profile, CertRequest::Auto { seed }).unwrap();
        assert!(cert.pass, "fixture should certify: {:?}", cert.violating_set);
        let mut rng = StdRng::seed_from_u64(seed);
        for _ in 0..10 {
            let mut verts: Vec<Vertex> = (0..200).collect();
            verts.shuffle(&mut rng);
            let x = &verts[..20];
            let x_prime = &verts[20..40];
            let w = &verts[40..43];
            let c = connect_avoiding(&g, x, x_prime, w, &profile).unwrap();
            if c.hypotheses_hold {
                assert!(c.within_bound, "len {} bound {}", c.vertices.len(), c.length_bound);
            }
        }
    }
}

#[test]
fn komlos_check_reverifies_witnesses() {
    // every equality witness recorded in a report re-verifies in isolation
    let opts = CountOptions::default();
    let mut report = verify::VerificationReport::default();
    let graphs = [
        construct::complete(4),
        construct::complete(5),
        construct::cycle(6).unwrap(),
        construct::glue_at_vertex(&construct::complete(4), 0, &construct::complete(3), 0).unwrap(),
    ];
    for g in &graphs {
        report.record(g, &verify::check_komlos(g, 3, &opts).unwrap());
    }
    report.finalize();
    for g6 in &report.equalities {
        let g = graph6::decode(g6).unwrap();
        let c = ham_subsets_count(&g, &opts).unwrap().c;
        assert_eq!(c, hamsub_core::counting::closed_form_complete(3));
    }
    assert!(report.violations.is_empty());
}
