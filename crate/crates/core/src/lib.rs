//! Executable laboratory for linear transmission schemes on the MISO
//! broadcast channel with hybrid (instantaneous / delayed) CSIT.

pub mod error;
pub mod numerics;
pub mod channel;
pub mod scheme_core;
pub mod schemes;
pub mod decoding;
pub mod dof_lab;

pub use error::{Error, Result};
