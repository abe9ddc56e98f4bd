//! Command-line companion to `oscquad-core`: convergence sweeps over the
//! quadrature pipelines, the sweep spec file format, and CSV/JSON reports.

pub mod error;
pub mod names;
pub mod report;
pub mod sweep;

pub use error::CliError;
pub use report::{emit_report, write_report, Destination, Format};
pub use sweep::{run_sweep, SweepRow, SweepSpec};
