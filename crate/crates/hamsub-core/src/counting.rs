//! Exact counting of Hamiltonian subsets, spanning-path subsets, weak
//! Hamiltonian subsets and the cycle census, plus the closed forms they are
//! checked against.
//!
//! The core engine is one anchored subset DP: for every vertex set `S` the
//! bit-row `table[S]` holds the vertices `u` such that `G[S]` has a
//! Hamiltonian `min(S),u`-path. `S` is Hamiltonian iff some such `u` is
//! adjacent to `min(S)`. One pass over all `2^n` masks decides every
//! induced subgraph at once, against `O(3^n)` for per-subset restarts.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::One;
use rand_core::{RngCore, SeedableRng};

use crate::graph::{Graph, Vertex};
use crate::{DEFAULT_DESK_CAP, DEFAULT_NU_CAP, HARD_DP_LIMIT};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CountError {
    #[error("graph order {n} exceeds the subset-DP cap {cap}; use the Monte Carlo estimate instead")]
    CapExceeded { n: usize, cap: usize },
    #[error("graph order {n} exceeds the cycle-census cap {cap} (memory grows as n * 2^n)")]
    NuCapExceeded { n: usize, cap: usize },
    #[error("endpoints must be distinct")]
    EqualEndpoints,
    #[error("vertex {0} out of range for order {1}")]
    VertexOutOfRange(Vertex, usize),
}

#[derive(Debug, Clone)]
pub struct CountOptions {
    /// Cap on `n` for the `2^n` subset DP.
    pub cap: usize,
    /// Cap on `n` for the cycle census (needs `n * 2^n` 128-bit counters).
    pub nu_cap: usize,
}

impl Default for CountOptions {
    fn default() -> Self {
        CountOptions { cap: DEFAULT_DESK_CAP, nu_cap: DEFAULT_NU_CAP }
    }
}

/// Exact counts for one graph. `c` is the number of Hamiltonian subsets;
/// `weak` additionally admits edges and sets of size <= 1; `nu` is the
/// full cycle census when it was requested.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountReport {
    pub n: usize,
    pub e: usize,
    pub c: BigUint,
    pub weak: BigUint,
    pub by_size: BTreeMap<usize, BigUint>,
    pub nu: Option<BigUint>,
}

/// Number of subsets spanning an `x,y`-path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathCount {
    pub x: Vertex,
    pub y: Vertex,
    pub p: BigUint,
}

/// The anchored-DP table: `table[mask]` has bit `u` set iff `G[mask]` has a
/// Hamiltonian path from `min(mask)` to `u`.
pub struct SubsetDp {
    n: usize,
    rows: Vec<u32>,
    table: Vec<u32>,
}

fn small_rows(g: &Graph) -> Vec<u32> {
    g.rows()
        .expect("order within DP cap")
        .iter()
        .map(|&r| r as u32)
        .collect()
}

impl SubsetDp {
    /// Runs the DP for every subset, anchored at each subset's least vertex.
    pub fn build(g: &Graph, cap: usize) -> Result<Self, CountError> {
        let n = g.n();
        let cap = cap.min(HARD_DP_LIMIT);
        if n > cap {
            return Err(CountError::CapExceeded { n, cap });
        }
        let rows = small_rows(g);
        let full = 1usize << n;
        let mut table = vec![0u32; full];
        for a in 0..n {
            table[1 << a] = 1 << a;
        }
        for mask in 1..full {
            let ends = table[mask];
            if ends == 0 {
                continue;
            }
            let a = mask.trailing_zeros();
            // grow by vertices above the anchor so min(mask) is preserved
            let mut cand = !mask & (full - 1) & (usize::MAX << (a + 1));
            while cand != 0 {
                let v = cand.trailing_zeros() as usize;
                cand &= cand - 1;
                if rows[v] & ends != 0 {
                    table[mask | (1 << v)] |= 1 << v;
                }
            }
        }
        Ok(SubsetDp { n, rows, table })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Is `G[mask]` spanned by a cycle? Requires at least three vertices.
    pub fn is_hamiltonian(&self, mask: usize) -> bool {
        if mask.count_ones() < 3 {
            return false;
        }
        let a = mask.trailing_zeros() as usize;
        self.table[mask] & self.rows[a] != 0
    }

    /// Recovers one Hamiltonian cycle of `G[mask]` as a vertex sequence,
    /// lowest-index choices throughout.
    pub fn hamiltonian_cycle(&self, mask: usize) -> Option<Vec<Vertex>> {
        if !self.is_hamiltonian(mask) {
            return None;
        }
        let a = mask.trailing_zeros() as usize;
        let mut cur = (self.table[mask] & self.rows[a]).trailing_zeros() as usize;
        let mut cur_mask = mask;
        let mut tail = vec![cur as Vertex];
        while cur_mask != 1 << a {
            let prev_mask = cur_mask & !(1 << cur);
            if prev_mask == 1 << a {
                break;
            }
            let preds = self.table[prev_mask] & self.rows[cur];
            debug_assert!(preds != 0, "DP table is inconsistent");
            cur = preds.trailing_zeros() as usize;
            cur_mask = prev_mask;
            tail.push(cur as Vertex);
        }
        tail.push(a as Vertex);
        tail.reverse(); // cycle reads a, ..., u with u adjacent to a
        Some(tail)
    }

    /// Hamiltonian subsets by size, as plain u64 tallies (at most `2^n`).
    pub fn census(&self) -> BTreeMap<usize, u64> {
        let mut by_size = BTreeMap::new();
        for mask in 1..self.table.len() {
            if self.is_hamiltonian(mask) {
                *by_size.entry(mask.count_ones() as usize).or_insert(0u64) += 1;
            }
        }
        by_size
    }

    /// Largest Hamiltonian subset, smallest mask first among ties.
    pub fn largest_hamiltonian_mask(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for mask in 1..self.table.len() {
            if self.is_hamiltonian(mask)
                && best.is_none_or(|b| mask.count_ones() > b.count_ones())
            {
                best = Some(mask);
            }
        }
        best
    }
}

/// Counts Hamiltonian subsets of `g`: vertex sets of size >= 3 whose induced
/// subgraph has a spanning cycle.
pub fn ham_subsets_count(g: &Graph, opts: &CountOptions) -> Result<CountReport, CountError> {
    let dp = SubsetDp::build(g, opts.cap)?;
    let by_size_u64 = dp.census();
    let c_u64: u64 = by_size_u64.values().sum();
    let c = BigUint::from(c_u64);
    let weak = &c + BigUint::from(g.e() + g.n() + 1);
    Ok(CountReport {
        n: g.n(),
        e: g.e(),
        c,
        weak,
        by_size: by_size_u64.into_iter().map(|(k, v)| (k, BigUint::from(v))).collect(),
        nu: None,
    })
}

/// `c + e + n + 1`: Hamiltonian subsets plus edges, singletons and the
/// empty set.
pub fn weak_ham_count(g: &Graph, opts: &CountOptions) -> Result<BigUint, CountError> {
    Ok(ham_subsets_count(g, opts)?.weak)
}

/// Counts subsets `U` containing `x, y` such that `G[U]` has a Hamiltonian
/// `x,y`-path. `U = {x, y}` counts exactly when `xy` is an edge.
pub fn path_subsets_count(
    g: &Graph,
    x: Vertex,
    y: Vertex,
    opts: &CountOptions,
) -> Result<PathCount, CountError> {
    let n = g.n();
    let cap = opts.cap.min(HARD_DP_LIMIT);
    if n > cap {
        return Err(CountError::CapExceeded { n, cap });
    }
    if x == y {
        return Err(CountError::EqualEndpoints);
    }
    for v in [x, y] {
        if v as usize >= n {
            return Err(CountError::VertexOutOfRange(v, n));
        }
    }
    let rows = small_rows(g);
    let full = 1usize << n;
    // same DP, anchored at x instead of the subset minimum
    let mut table = vec![0u32; full];
    table[1 << x] = 1 << x;
    for mask in 1..full {
        let ends = table[mask];
        if ends == 0 {
            continue;
        }
        let mut cand = !mask & (full - 1);
        while cand != 0 {
            let v = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            if rows[v] & ends != 0 {
                table[mask | (1 << v)] |= 1 << v;
            }
        }
    }
    let mut p = 0u64;
    let need = (1usize << x) | (1usize << y);
    for (mask, ends) in table.iter().enumerate() {
        if mask & need == need && mask.count_ones() >= 2 && ends >> y & 1 == 1 {
            p += 1;
        }
    }
    Ok(PathCount { x, y, p: BigUint::from(p) })
}

/// Exact cycle census: the number of distinct cycles (as subgraphs).
///
/// Runs a counting variant of the DP per anchor vertex; directed closed
/// walks are halved to quotient out direction, anchoring kills rotation.
pub fn count_all_cycles(g: &Graph, opts: &CountOptions) -> Result<BigUint, CountError> {
    let n = g.n();
    let cap = opts.nu_cap.min(HARD_DP_LIMIT);
    if n > cap {
        return Err(CountError::NuCapExceeded { n, cap });
    }
    if n < 3 {
        return Ok(BigUint::ZERO);
    }
    let rows = small_rows(g);
    let mut doubled: u128 = 0;
    for a in 0..n - 2 {
        // universe: vertices above the anchor, re-indexed from 0
        let q = n - 1 - a;
        let sub_row = |v: usize| -> u32 { rows[a + 1 + v] >> (a + 1) };
        let a_row: u32 = rows[a] >> (a + 1);
        if a_row == 0 {
            continue;
        }
        let mut dp = vec![0u128; (1usize << q) * q];
        for v in 0..q {
            if a_row >> v & 1 == 1 {
                dp[(1 << v) * q + v] = 1;
            }
        }
        for mask in 1usize..1 << q {
            let base = mask * q;
            let mut ends = mask;
            while ends != 0 {
                let u = ends.trailing_zeros() as usize;
                ends &= ends - 1;
                let paths = dp[base + u];
                if paths == 0 {
                    continue;
                }
                if mask.count_ones() >= 2 && a_row >> u & 1 == 1 {
                    doubled += paths;
                }
                let mut cand = !mask & ((1 << q) - 1) & sub_row(u) as usize;
                while cand != 0 {
                    let v = cand.trailing_zeros() as usize;
                    cand &= cand - 1;
                    dp[(mask | (1 << v)) * q + v] += paths;
                }
            }
        }
    }
    Ok(BigUint::from(doubled / 2))
}

/// `C(n, k)` exactly.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::ZERO;
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// `c(K_{d+1}) = 2^{d+1} - C(d+1, 2) - d - 2`: every subset of size at
/// least three in a complete graph is Hamiltonian.
pub fn closed_form_complete(d: u64) -> BigUint {
    (BigUint::one() << (d + 1)) - binomial(d + 1, 2) - BigUint::from(d + 2)
}

/// `c(K_{d+1} * K_d) = c(K_{d+1}) + c(K_d) = 3 * 2^d - d^2 - 2d - 3`.
pub fn closed_form_glued(d: u64) -> BigUint {
    BigUint::from(3u32) * (BigUint::one() << d) - BigUint::from(d * d + 2 * d + 3)
}

/// `c(K_{a,b}) = C(a+b, a) - (ab + 1)`: a cycle meets both sides equally.
pub fn closed_form_bipartite(a: u64, b: u64) -> BigUint {
    binomial(a + b, a) - BigUint::from(a * b + 1)
}

/// `ceil(2^{d/2})`, the Tuza lower bound on `c(G)` for `d(G) >= d`.
pub fn tuza_floor(d: u64) -> BigUint {
    if d % 2 == 0 {
        return BigUint::one() << (d / 2);
    }
    let sq = BigUint::one() << d;
    let root = sq.sqrt();
    if &root * &root == sq {
        root
    } else {
        root + BigUint::one()
    }
}

/// Monte Carlo estimate of the Hamiltonian fraction of the subset lattice.
#[derive(Debug, Clone, PartialEq)]
pub struct FractionEstimate {
    pub hits: u64,
    pub samples: u64,
    /// Samples whose induced order exceeded the per-sample DP limit and
    /// passed every cheap filter; they count as misses.
    pub undecided: u64,
    /// 95% normal-approximation half-width of the estimate.
    pub half_width: f64,
}

impl FractionEstimate {
    pub fn value(&self) -> num_rational::Ratio<u64> {
        num_rational::Ratio::new(self.hits, self.samples.max(1))
    }

    pub fn value_f64(&self) -> f64 {
        self.hits as f64 / self.samples.max(1) as f64
    }
}

fn subset_is_hamiltonian(g: &Graph, verts: &[Vertex]) -> Option<bool> {
    let k = verts.len();
    if k < 3 {
        return Some(false);
    }
    let (h, _) = g.induced(verts);
    if h.min_degree() < 2 || !h.is_connected() {
        return Some(false);
    }
    if h.n() > HARD_DP_LIMIT {
        return None;
    }
    let dp = SubsetDp::build(&h, HARD_DP_LIMIT).expect("within hard limit");
    Some(dp.is_hamiltonian((1usize << h.n()) - 1))
}

/// Samples vertex subsets uniformly and tests each for a spanning cycle.
/// Deterministic given the seed: sample `i` uses stream `i` of a counter
/// keyed ChaCha8, so shards of the sample space can run anywhere.
pub fn ham_fraction_estimate(g: &Graph, samples: u64, seed: u64) -> FractionEstimate {
    assert!(samples >= 1, "at least one sample");
    let n = g.n();
    let mut hits = 0u64;
    let mut undecided = 0u64;
    let mut verts: Vec<Vertex> = Vec::with_capacity(n);
    for i in 0..samples {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(i);
        verts.clear();
        let mut word = 0u64;
        for v in 0..n {
            if v % 64 == 0 {
                word = rng.next_u64();
            }
            if word >> (v % 64) & 1 == 1 {
                verts.push(v as Vertex);
            }
        }
        match subset_is_hamiltonian(g, &verts) {
            Some(true) => hits += 1,
            Some(false) => {}
            None => undecided += 1,
        }
    }
    let p = hits as f64 / samples as f64;
    let half_width = 1.96 * crate::math::sqrt(p * (1.0 - p) / samples as f64);
    FractionEstimate { hits, samples, undecided, half_width }
}
