pub mod algebra;
pub mod error;
pub mod minkowski;
pub mod representations;
pub mod suite;
pub mod topology;

pub use error::{Error, Result};
