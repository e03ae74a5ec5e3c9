//! JSON shapes for every report the CLI emits. Big integers become plain
//! JSON numbers when they fit in u64 and decimal strings otherwise, so
//! output is stable and exact.

use hamsub_core::counting::{CountReport, PathCount};
use hamsub_core::expander::{CertMode, ConnectorPath, ExpanderCertificate, ExtractionResult};
use hamsub_core::structures::{CycleBuildReport, StructureWitness, Sun, Unit, Web};
use hamsub_core::verify::VerificationReport;
use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

pub fn big(value: &BigUint) -> Value {
    match value.to_u64() {
        Some(v) => json!(v),
        None => json!(value.to_string()),
    }
}

pub fn rational(r: Ratio<i64>) -> Value {
    json!({ "num": *r.numer(), "den": *r.denom() })
}

pub fn count_report(g6: &str, r: &CountReport, sizes: bool) -> Value {
    let mut obj = json!({
        "graph6": g6,
        "n": r.n,
        "e": r.e,
        "c": big(&r.c),
        "weak": big(&r.weak),
    });
    if let Some(nu) = &r.nu {
        obj["nu"] = big(nu);
    }
    if sizes {
        obj["by_size"] = Value::Object(
            r.by_size.iter().map(|(k, v)| (k.to_string(), big(v))).collect(),
        );
    }
    obj
}

pub fn path_count(g6: &str, r: &PathCount) -> Value {
    json!({ "graph6": g6, "x": r.x, "y": r.y, "p": big(&r.p) })
}

pub fn mode(m: CertMode) -> &'static str {
    match m {
        CertMode::Exact => "exact",
        CertMode::Heuristic => "heuristic",
    }
}

pub fn certificate(g6: &str, c: &ExpanderCertificate) -> Value {
    json!({
        "graph6": g6,
        "eps1": c.profile.eps1,
        "t": c.profile.t,
        "mode": mode(c.mode),
        "verdict": if c.pass { "pass" } else { "fail" },
        "violating_set": c.violating_set,
    })
}

pub fn extraction(g6: &str, r: &ExtractionResult) -> Value {
    json!({
        "graph6": g6,
        "subgraph": hamsub_core::graph6::encode(&r.subgraph),
        "vertices": r.vertex_map,
        "d_in": rational(r.d_in),
        "d_out": rational(r.subgraph.average_degree()),
        "eps0": r.eps0,
        "nu": r.nu,
        "iterations": r.iterations,
        "checks": {
            "avg_degree": r.checks.avg_degree_ok,
            "min_degree": r.checks.min_degree_ok,
            "connectivity": r.checks.connectivity_ok,
            "expander_mode": mode(r.checks.certificate.mode),
            "expander_pass": r.checks.certificate.pass,
        },
    })
}

pub fn connector(c: &ConnectorPath) -> Value {
    json!({
        "path": c.vertices,
        "length": c.vertices.len(),
        "bound": c.length_bound,
        "hypotheses_hold": c.hypotheses_hold,
        "within_bound": c.within_bound,
    })
}

fn sun(s: &Sun) -> Value {
    json!({
        "cycle": s.cycle,
        "ray_indices": s.ray_indices,
        "rays": s.rays.iter().map(|&(_, y)| y).collect::<Vec<_>>(),
        "corona": s.corona(),
    })
}

pub fn witness(g6: &str, w: &StructureWitness) -> Value {
    match w {
        StructureWitness::TwoCycles { c1, c2 } => {
            json!({ "graph6": g6, "kind": "two_cycles", "c1": c1, "c2": c2 })
        }
        StructureWitness::LongPath { path } => {
            json!({ "graph6": g6, "kind": "long_path", "path": path })
        }
        StructureWitness::Sun { sun: s } => {
            json!({ "graph6": g6, "kind": "sun", "sun": sun(s) })
        }
    }
}

fn unit(u: &Unit) -> Value {
    json!({
        "core": u.core,
        "paths": u.paths,
        "stars": u.stars.iter().map(|s| json!({ "center": s.center, "leaves": s.leaves })).collect::<Vec<_>>(),
        "interior": u.interior(),
        "exterior": u.exterior(),
    })
}

pub fn web(w: &Web) -> Value {
    json!({
        "core": w.core,
        "spokes": w.spokes,
        "units": w.units.iter().map(unit).collect::<Vec<_>>(),
        "limits": [w.limits.0, w.limits.1, w.limits.2, w.limits.3],
        "centre": w.centre(),
        "interior_size": w.interior().len(),
        "exterior_size": w.exterior().len(),
    })
}

pub fn cycle_build(r: &CycleBuildReport) -> Value {
    json!({
        "z": r.z,
        "requested": r.requested,
        "cycle": r.cycle,
        "failure": r.failure.as_ref().map(|f| f.to_string()),
        "z_intersection": r.z_intersection,
        "trace": r.trace.iter().map(|p| json!({
            "from": p.from,
            "to": p.to,
            "length": p.vertices.len(),
            "budget": p.budget,
            "within_budget": p.within_budget(),
        })).collect::<Vec<_>>(),
    })
}

pub fn verification(kind: &str, d: u64, r: &VerificationReport) -> Value {
    let mut doc = json!({
        "kind": kind,
        "d": d,
        "scanned": r.scanned,
        "skipped": {
            "min_degree": r.skipped_min_degree,
            "not_bipartite": r.skipped_not_bipartite,
            "average_degree": r.skipped_average_degree,
        },
        "exceptions": r.exceptions,
        "parse_failures": r.parse_failures.iter().map(|(l, e)| json!({"line": l, "error": e})).collect::<Vec<_>>(),
        "n_min": r.n_min,
        "n_max": r.n_max,
        "min_c": r.min_c.as_ref().map(|(c, g6)| json!({ "c": big(c), "graph6": g6 })),
        "violations": r.violations.iter().map(|(g6, c)| json!({ "graph6": g6, "c": big(c) })).collect::<Vec<_>>(),
        "equalities": r.equalities,
    });
    if let Some(ms) = r.elapsed_ms {
        doc["elapsed_ms"] = json!(ms);
    }
    doc
}
