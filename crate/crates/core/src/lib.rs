pub mod cli;
pub mod error;
pub mod field;
pub mod form;
pub mod group;
pub mod linalg;
pub mod modrep;
pub mod monomial;
pub mod wreath;

pub use error::{Error, Hypothesis, Result};
