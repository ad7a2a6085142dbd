//! Core algorithms for predicting a protein's SSE interaction network
//! (SSE-IN): Cα contact maps, graph metrics, a multi-objective genetic
//! algorithm for the SSE-level graph and a two-stage ant colony optimizer
//! for residue-level shortcut edges.
//!
//! The crate is `no_std` and only needs `alloc`. Parsing, file formats and
//! the command line live in the `ssein` crate.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod aco;
pub mod contact;
pub mod error;
pub mod geometry;
pub mod graph;
pub mod matrix;
pub mod metrics;
pub mod moga;
pub mod protein;
pub mod rng;
pub mod synth;

pub use error::{Error, Result};
