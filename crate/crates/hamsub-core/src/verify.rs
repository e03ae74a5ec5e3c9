//! Per-graph conjecture checks and the mergeable report they accumulate
//! into. The harness side (stream parsing, sharding, timing) lives in the
//! companion crate; everything here is pure.

use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_rational::{BigRational, Ratio};
use num_traits::One;

use crate::blocks::blocks;
use crate::counting::{closed_form_bipartite, closed_form_complete, ham_subsets_count, CountError,
    CountOptions};
use crate::graph::{Graph, Vertex};
use crate::graph6;

/// What one graph contributed to a verification run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CheckOutcome {
    /// Below the bound under test.
    Violation,
    /// Met the bound with equality.
    Equality,
    /// Strictly above the bound.
    Above,
    /// Outside the hypothesis (minimum degree, bipartiteness, filter).
    Skipped(SkipReason),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SkipReason {
    MinDegree,
    NotBipartite,
    AverageDegree,
    /// Exempt extremal graph (stability mode only).
    Exception,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphCheck {
    pub c: Option<BigUint>,
    pub outcome: CheckOutcome,
}

/// `c(G) >= c(K_{d+1})` for graphs with minimum degree at least `d`.
pub fn check_komlos(g: &Graph, d: u64, opts: &CountOptions) -> Result<GraphCheck, CountError> {
    if (g.min_degree() as u64) < d {
        return Ok(GraphCheck { c: None, outcome: CheckOutcome::Skipped(SkipReason::MinDegree) });
    }
    let c = ham_subsets_count(g, opts)?.c;
    let bound = closed_form_complete(d);
    let outcome = match c.cmp(&bound) {
        core::cmp::Ordering::Less => CheckOutcome::Violation,
        core::cmp::Ordering::Equal => CheckOutcome::Equality,
        core::cmp::Ordering::Greater => CheckOutcome::Above,
    };
    Ok(GraphCheck { c: Some(c), outcome })
}

/// Proper 2-colouring, if one exists.
pub fn bipartition(g: &Graph) -> Option<(Vec<Vertex>, Vec<Vertex>)> {
    let n = g.n();
    let mut color = alloc::vec![u8::MAX; n];
    let mut queue = alloc::collections::VecDeque::new();
    for s in 0..n as Vertex {
        if color[s as usize] != u8::MAX {
            continue;
        }
        color[s as usize] = 0;
        queue.push_back(s);
        while let Some(v) = queue.pop_front() {
            for &u in g.neighbors(v) {
                if color[u as usize] == u8::MAX {
                    color[u as usize] = 1 - color[v as usize];
                    queue.push_back(u);
                } else if color[u as usize] == color[v as usize] {
                    return None;
                }
            }
        }
    }
    let a = (0..n as Vertex).filter(|&v| color[v as usize] == 0).collect();
    let b = (0..n as Vertex).filter(|&v| color[v as usize] == 1).collect();
    Some((a, b))
}

/// `c(G) >= c(K_{d,d})` for bipartite graphs with minimum degree at least `d`.
pub fn check_bipartite(g: &Graph, d: u64, opts: &CountOptions) -> Result<GraphCheck, CountError> {
    if bipartition(g).is_none() {
        return Ok(GraphCheck { c: None, outcome: CheckOutcome::Skipped(SkipReason::NotBipartite) });
    }
    if (g.min_degree() as u64) < d {
        return Ok(GraphCheck { c: None, outcome: CheckOutcome::Skipped(SkipReason::MinDegree) });
    }
    let c = ham_subsets_count(g, opts)?.c;
    let bound = closed_form_bipartite(d, d);
    let outcome = match c.cmp(&bound) {
        core::cmp::Ordering::Less => CheckOutcome::Violation,
        core::cmp::Ordering::Equal => CheckOutcome::Equality,
        core::cmp::Ordering::Greater => CheckOutcome::Above,
    };
    Ok(GraphCheck { c: Some(c), outcome })
}

/// Is `g` the complete graph on `order` vertices?
pub fn is_complete_graph(g: &Graph, order: usize) -> bool {
    g.n() == order && g.is_complete()
}

/// Is `g` two cliques of orders `d+1` and `d` identified at one vertex?
/// Structure test, no general isomorphism: exactly two blocks, one cut
/// vertex, blocks complete of the right orders.
pub fn is_glued_cliques(g: &Graph, d: usize) -> bool {
    if d < 2 || g.n() != 2 * d || g.e() != d * (d + 1) / 2 + d * (d - 1) / 2 {
        return false;
    }
    let dec = blocks(g);
    if dec.blocks.len() != 2 || dec.cut_vertices.len() != 1 || !dec.isolated_vertices.is_empty() {
        return false;
    }
    let mut orders: Vec<usize> = dec.blocks.iter().map(|b| b.len()).collect();
    orders.sort_unstable();
    if orders != [d, d + 1] {
        return false;
    }
    dec.blocks.iter().all(|b| {
        let (h, _) = g.induced(b);
        h.is_complete()
    })
}

/// Stability check: graphs of average degree at least `d` other than
/// `K_{d+1}` and `K_{d+1} * K_d` are flagged when `c < (2 - alpha) 2^{d+1}`.
/// For small `d` flags are findings, not failures.
pub fn check_stability(
    g: &Graph,
    d: u64,
    alpha: &BigRational,
    opts: &CountOptions,
) -> Result<GraphCheck, CountError> {
    if g.average_degree() < Ratio::new(d as i64, 1) {
        return Ok(GraphCheck { c: None, outcome: CheckOutcome::Skipped(SkipReason::AverageDegree) });
    }
    if is_complete_graph(g, d as usize + 1) || is_glued_cliques(g, d as usize) {
        return Ok(GraphCheck { c: None, outcome: CheckOutcome::Skipped(SkipReason::Exception) });
    }
    let c = ham_subsets_count(g, opts)?.c;
    let two = BigRational::from_integer(BigInt::from(2));
    let bound = (two - alpha) * BigRational::from_integer(BigInt::one() << (d + 1));
    let c_rat = BigRational::from_integer(BigInt::from(c.clone()));
    let outcome = if c_rat < bound {
        CheckOutcome::Violation
    } else if c_rat == bound {
        CheckOutcome::Equality
    } else {
        CheckOutcome::Above
    };
    Ok(GraphCheck { c: Some(c), outcome })
}

/// Accumulated result of scanning a stream. Witness lists hold graph6
/// records and are sorted on finalize, so the report is independent of
/// shard boundaries and worker count.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VerificationReport {
    pub scanned: u64,
    pub skipped_min_degree: u64,
    pub skipped_not_bipartite: u64,
    pub skipped_average_degree: u64,
    pub exceptions: Vec<String>,
    pub parse_failures: Vec<(u64, String)>,
    pub n_min: Option<usize>,
    pub n_max: Option<usize>,
    pub min_c: Option<(BigUint, String)>,
    pub violations: Vec<(String, BigUint)>,
    pub equalities: Vec<String>,
    /// Milliseconds, filled by the harness.
    pub elapsed_ms: Option<u64>,
}

impl VerificationReport {
    pub fn record(&mut self, g: &Graph, check: &GraphCheck) {
        let g6 = graph6::encode(g);
        match &check.outcome {
            CheckOutcome::Skipped(SkipReason::MinDegree) => self.skipped_min_degree += 1,
            CheckOutcome::Skipped(SkipReason::NotBipartite) => self.skipped_not_bipartite += 1,
            CheckOutcome::Skipped(SkipReason::AverageDegree) => self.skipped_average_degree += 1,
            CheckOutcome::Skipped(SkipReason::Exception) => self.exceptions.push(g6),
            outcome => {
                self.scanned += 1;
                self.n_min = Some(self.n_min.map_or(g.n(), |m| m.min(g.n())));
                self.n_max = Some(self.n_max.map_or(g.n(), |m| m.max(g.n())));
                let c = check.c.clone().expect("counted outcomes carry c");
                if self.min_c.as_ref().is_none_or(|(mc, _)| c < *mc) {
                    self.min_c = Some((c.clone(), g6.clone()));
                }
                match outcome {
                    CheckOutcome::Violation => self.violations.push((g6, c)),
                    CheckOutcome::Equality => self.equalities.push(g6),
                    _ => {}
                }
            }
        }
    }

    pub fn record_parse_failure(&mut self, line: u64, err: String) {
        self.parse_failures.push((line, err));
    }

    /// Associative merge for sharded scans.
    pub fn merge(mut self, other: VerificationReport) -> VerificationReport {
        self.scanned += other.scanned;
        self.skipped_min_degree += other.skipped_min_degree;
        self.skipped_not_bipartite += other.skipped_not_bipartite;
        self.skipped_average_degree += other.skipped_average_degree;
        self.exceptions.extend(other.exceptions);
        self.parse_failures.extend(other.parse_failures);
        self.n_min = match (self.n_min, other.n_min) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        self.n_max = match (self.n_max, other.n_max) {
            (Some(a), Some(b)) => Some(a.max(b)),
            (a, b) => a.or(b),
        };
        self.min_c = match (self.min_c.take(), other.min_c) {
            (Some(a), Some(b)) => Some(if b.0 < a.0 || (b.0 == a.0 && b.1 < a.1) { b } else { a }),
            (a, b) => a.or(b),
        };
        self.violations.extend(other.violations);
        self.equalities.extend(other.equalities);
        self
    }

    /// Sorts witness lists so output does not depend on scan order.
    pub fn finalize(&mut self) {
        self.exceptions.sort_unstable();
        self.parse_failures.sort();
        self.violations.sort();
        self.equalities.sort_unstable();
    }
}
