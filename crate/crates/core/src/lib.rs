//! Node-removal strategies for covert networks.
//!
//! Candidate removal sets are scored on two objectives: how much they shrink
//! the largest connected component (`rho`) and how far, on average, the
//! removed nodes sit from the nearest law-enforcement headquarters (`D`).
//! Two genetic drivers search for good sets at a fixed budget (a weighted
//! sum GA and NSGA-II), and centrality-ranked removal serves as the
//! baseline to beat.

pub mod baselines;
pub mod error;
pub mod experiment;
pub mod graph;
pub mod moga;
pub mod objectives;
pub mod spatial;

pub use error::{Error, ErrorKind, Result};
