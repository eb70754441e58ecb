//! Generalized asymptotes of implicit plane algebraic curves.

pub mod algebra;
pub mod asymptote;
pub mod branch;
pub mod classify;
pub mod error;
pub mod parser;
pub mod plot;
pub mod puiseux;
pub mod report;
pub mod verify;

pub use error::Error;
pub use parser::{format_poly, parse_poly, ParseError, Style};
