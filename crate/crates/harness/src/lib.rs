//! Verification runs over the isoq checks: suite registry, settings,
//! JSON reports and the `isoq` command line.
//!
//! Every check has a hierarchical id (`tensor.qybe.su2`, `rep.adj.gamma`,
//! `dsl.yang_baxter.2`, ...), so runs compose by prefix filtering.

pub mod cli;
pub mod config;
pub mod report;
pub mod run;

pub use config::{BackendChoice, Options};
pub use report::{write_report, CheckReport, Status};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("{0}")]
    Config(String),
    #[error("{0}: {1}")]
    Io(String, std::io::Error),
    #[error("{0}: {1}")]
    Dsl(String, qvt::QvtError),
    #[error(transparent)]
    Rep(#[from] isoq::rep::RepError),
}
