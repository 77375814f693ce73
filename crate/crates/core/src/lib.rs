pub mod connectivity;
pub mod deletion;
pub mod error;
pub mod field;
pub mod generate;
pub mod graph;
pub mod io;
pub mod matroid;
pub mod oracle;
pub mod problem;
pub mod repfam;
pub mod report;
pub mod sse;
pub mod suites;
pub mod verify;

pub use error::{Error, Result};
