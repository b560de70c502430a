//! Standard-library side of `equicount`: multi-threaded counting, the CSV
//! result cache, table formats, and the verification suite.

pub mod cache;
pub mod formats;
pub mod oracle;
pub mod parallel;
pub mod verify;

pub use equicount_core as core;
