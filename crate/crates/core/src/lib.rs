//! Chevalley groups over exact commutative rings and equation reductions
//! between groups and rings.

pub mod chevalley;
pub mod cli;
pub mod decomp;
pub mod dioph;
pub mod error;
pub mod group;
pub mod matrix;
pub mod reduce;
pub mod rings;
pub mod rootsys;
pub mod words;

pub use error::{Error, Result};
