//! Exact counting of Hamiltonian subsets and the sparse-expander structure
//! toolkit behind it: bitset graphs, anchored subset DP, block decomposition,
//! degree-sequence Hamiltonicity tests, `(eps1, t)`-expander certification,
//! and the sun/unit/web builders used to assemble cycles with prescribed
//! core-vertex intersections.
//!
//! The crate is `no_std` + `alloc`; everything here is pure computation.
//! IO, file formats on disk, the CLI and the exhaustive verification harness
//! live in the companion `hamsub` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod blocks;
pub mod classical;
pub mod connectivity;
pub mod construct;
pub mod counting;
pub mod expander;
pub mod graph;
pub mod graph6;
#[cfg(feature = "testing")]
pub mod oracle;
pub mod random;
pub mod structures;
pub mod verify;

pub use graph::{Ball, DegreeStats, Graph, GraphError, Vertex};

/// Default cap on `n` for the exact subset DP (`2^n`-sized tables).
pub const DEFAULT_DESK_CAP: usize = 24;

/// Hard limit on the subset DP: masks are `usize`, end-rows are `u32`.
pub const HARD_DP_LIMIT: usize = 31;

/// Default cap for the exact cycle census, which needs `n * 2^n` counters.
pub const DEFAULT_NU_CAP: usize = 20;

pub(crate) mod math {
    //! f64 helpers routed through libm so the crate builds without std.

    #[inline]
    pub fn ln(x: f64) -> f64 {
        libm::log(x)
    }

    #[inline]
    pub fn sqrt(x: f64) -> f64 {
        libm::sqrt(x)
    }

    #[inline]
    pub fn ceil(x: f64) -> f64 {
        libm::ceil(x)
    }

    /// ln(x) cubed, the shape of the Komlos-Szemeredi diameter bound.
    #[inline]
    pub fn ln_cubed(x: f64) -> f64 {
        let l = ln(x);
        l * l * l
    }
}
