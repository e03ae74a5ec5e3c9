//! Harness side of the Hamiltonian-subset toolkit: graph6 streams,
//! isomorph-free enumeration of small graphs, JSON reports, run
//! configuration and the deterministic worker pool. The algorithms live in
//! `hamsub-core`; the `hamsub` binary wires both together.

pub mod config;
pub mod enumerate;
pub mod io;
pub mod report;
pub mod runner;
