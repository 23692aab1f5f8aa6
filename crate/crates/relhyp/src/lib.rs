//! A desk-scale laboratory for relative hyperbolicity.
//!
//! The crate builds finite approximations of the spaces used to study
//! relatively hyperbolic group pairs — Cayley balls, coned-off Cayley
//! graphs, and cusped Cayley graphs with combinatorial horoballs — and
//! measures hyperbolicity constants, coset penetration, circuit growth,
//! and boundary structure on them.
//!
//! Start with the runnable examples (`cargo run --release --example …`):
//!
//! - **`build_ball`** — Cayley balls and sphere growth for the built-in
//!   group families
//! - **`cone_off`** — coned-off Cayley graphs, hat-paths, penetration
//!   records
//! - **`cusp_space`** — combinatorial horoballs and cusped Cayley graphs
//! - **`horoball_metric`** — the horoball distance law on path graphs
//! - **`delta_scan`** — four-point and slim-triangle δ across radii
//! - **`bcp_witness`** — the unbounded coset-penetration witness family
//! - **`fineness_profile`** — circuit counts through cone edges
//! - **`boundary_cantor`** — sphere clustering of the free group
//! - **`boundary_circle`** — circle signal of a cusped free group
//! - **`apollonian_gasket`** — three-peripheral boundary demo (SVG only)
//! - **`pipeline_run`** — config-driven pipeline with a run manifest
//!
//! The same pipelines are scriptable through the thin `relhyp` binary
//! (`ball`, `cone`, `cusp`, `delta`, `bcp`, `fineness`, `boundary`,
//! `run <config>`).

pub mod analysis;
pub mod bcp;
pub mod boundary;
pub mod cayley;
pub mod config;
pub mod coning;
pub mod cusping;
pub mod error;
pub mod graph;
pub mod pipeline;
pub mod plot;
pub mod rng;
pub mod words;

pub use error::{Error, Result};

/// Default cap on vertex counts for ball construction and all-pairs
/// matrices; keeps quadratic memory at desk scale.
pub const DEFAULT_VERTEX_CAP: usize = 20_000;
