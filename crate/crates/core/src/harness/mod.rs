//! Instance generation, sweeps, file formats, rendering and the CLI.

pub mod cli;
pub mod generate;
pub mod io;
pub mod svg;
pub mod sweep;
