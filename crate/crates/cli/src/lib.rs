//! Command layer for turanpack: every subcommand is a function returning a
//! [`ResultRecord`], so tests and the binary share one code path.

pub mod error;
pub mod formula;
pub mod graph_cmds;
pub mod probe;
pub mod record;
pub mod settings;

pub use error::CliError;
pub use record::{OutcomeKind, ResultRecord};
pub use settings::Settings;
