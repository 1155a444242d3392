mod arith;
pub mod charsum;
pub mod classgroup;
pub mod error;
pub mod ffpoly;
pub mod oracle;
mod rabin;
pub mod sripm;
pub mod tables;
pub mod verify;

pub use error::{Error, Result};
