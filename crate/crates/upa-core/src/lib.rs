//! Uniform-preferential-attachment (UPA) random graphs.
//!
//! A growth process in which each new node attaches to a uniformly chosen
//! recent node (probability `p`, within a fixed or linearly growing window)
//! or to a degree-proportionally chosen node (probability `1 - p`). The
//! crate provides:
//!
//! * [`model`] — the seeded simulator itself;
//! * [`expectation`] — exact recursions for the expected degree counts
//!   `E[N(k, t)]` and for the degree law of each window slot;
//! * [`asymptotics`] — the limiting degree distribution `P(k)`, its window
//!   limit constants `H_k`, and power-law tail approximations;
//! * [`analysis`] — ensembles, empirical distributions, distance metrics,
//!   concentration checks, and log-log tail fitting;
//! * [`io`] — deterministic CSV/JSON tables and run manifests.

pub mod analysis;
pub mod asymptotics;
pub mod error;
pub mod expectation;
pub mod io;
pub mod model;

pub use error::{Error, Result};
pub use model::{DegreeHistogram, GraphState, ModelParams, WindowSpec};
