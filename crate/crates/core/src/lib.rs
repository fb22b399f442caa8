//! W-algebra characters for type A at admissible level.

pub mod error;
pub mod linalg;
pub mod rational;
pub mod rootdata;
pub mod weights;
pub mod admissible;
pub mod brst;
pub mod characters;
pub mod cli;
pub mod verify;

pub use error::{Error, Result};
pub use rational::Rational;
