pub mod bits;
pub mod corpus;
pub mod encoder;
pub mod error;
pub mod hamming;
pub mod overlap;
pub mod patterns;
pub mod sim;
pub mod tolerance;

pub use bits::BitPattern;
pub use error::{Error, Result};
