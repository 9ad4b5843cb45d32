//! Batch front end for the `ssnn` library: reads δ-vectors, runs solves
//! and bound checks, and writes JSON-lines reports, CSV tables or plot data.

pub mod batch;
pub mod commands;
pub mod input;
pub mod plot;
pub mod report;

pub use batch::{run_batch, Check, RunConfig};
pub use input::{ParseError, Record};
pub use plot::emit_plot_data;
pub use report::{exit_code, RunReport, Status};
