//! Resonant 3-soliton solutions of the KPII equation and the geometry of
//! their variable-length stem structures.

#![allow(clippy::needless_range_loop)]

pub mod catalog;
pub mod cli;
pub mod error;
pub mod geometry;
pub mod tau;
pub mod verification;

pub use error::{Error, Result};
