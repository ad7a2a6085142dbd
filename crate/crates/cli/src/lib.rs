//! Structure ingestion, file formats, the `predict` pipeline and the
//! benchmark harness around [`ssein_core`].

pub mod benchmark;
pub mod config;
pub mod error;
pub mod family;
pub mod formats;
pub mod pdb;
pub mod pipeline;
pub mod report;
pub mod synthetic;

pub use error::{Error, Result};
