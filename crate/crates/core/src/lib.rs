pub mod analysis;
pub mod error;
pub mod harness;
pub mod operators;
pub mod rff;
pub mod rng;
pub mod sampling;
pub mod sim;
pub mod spectrum;

pub use error::{Error, Result};
