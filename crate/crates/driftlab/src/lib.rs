//! Host-side companion of `driftlab-core`: CSV ingestion, stream and event
//! files, detector timing, and the benchmark harness behind the `driftlab`
//! command.

pub mod bench;
pub mod cli;
pub mod detect;
mod error;
pub mod ingest;
pub mod stream_io;
pub mod timing;

pub use driftlab_core as core;
pub use error::{DriftlabError, Result};
