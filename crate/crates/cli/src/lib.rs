//! JSON and CSV front end for `circuit-descartes`: instance files, reports,
//! the subcommands of `circdes` and the fuzz driver.

pub mod commands;
pub mod error;
pub mod format;
pub mod fuzz;
pub mod instance;
pub mod report;

pub use error::{CliError, CliResult};
pub use format::Q;
pub use instance::InstanceFile;
