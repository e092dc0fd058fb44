//! Structure files and the `homcat` subcommands.

pub mod bundled;
pub mod commands;
pub mod format;

pub use commands::{cmd_check, cmd_construct, cmd_roundtrip, Options, Outcome, ReportFile};
pub use format::{emit, parse, Structure, StructureFile};
