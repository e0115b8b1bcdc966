pub mod error;
pub mod exactla;

pub use error::{Error, Result};
pub mod polygraded;
pub mod kron;
pub mod bridge;
pub mod cli;
