//! Input documents and report rendering for the `qdelta` binary.

pub mod doc;
pub mod report;
