//! Exact computations with Lie superalgebras in the Verlinde category Ver4+
//! over fields of characteristic 2, and their mixed-characteristic lifts.

pub mod catalog;
pub mod classify;
pub mod envelop;
pub mod error;
pub mod io;
pub mod mixed;
pub mod scalars;
pub mod supermod;
pub mod verlie;

pub use error::{Error, Result};
