//! Command-line front end for box certification of polynomial systems.
//!
//! The library half of the binary: load a system and candidate points,
//! build interval boxes, certify each box, optionally classify pairs of
//! certified boxes, and render deterministic TSV or JSON tables. The
//! binary in `main.rs` only parses arguments and maps results to exit
//! codes (0: all boxes certified, 1: some box not certified, 2: bad
//! input or configuration).

pub mod config;
pub mod points;
pub mod render;
pub mod run;

pub use config::{CliError, OutputFormat, Precision, RunConfig};
pub use points::{parse_points, PointsFile};
pub use render::{render_certify, render_sweep, sci};
pub use run::{
    run_certify, run_precision_sweep, run_radius_sweep, CertifyReport, Row, SweepKey, SweepReport,
};
