//! Exact expansions of rank-2 cluster variables `X_{n+1} = (X_n^r + 1) / X_{n-1}`
//! through maximal Dyck paths.
//!
//! The crate builds the paths `D_n` and `C_n`, enumerates colored subpath
//! collections on `D_n` and compatible pairs on `C_n`, maps between them, and
//! produces classical, principal-coefficient and quantum Laurent expansions
//! that are checked against the exchange recurrence.

mod edgeset;
pub mod error;
pub mod bijection;
pub mod cli;
pub mod coloring;
pub mod compat;
pub mod laurent;
pub mod paths;
pub mod quantum;

pub use edgeset::EdgeSet;
pub use error::{Error, Result};
