//! Frog, blind-frog, hatted-frog and crowned-frog processes on rings and on
//! the 2×k grid, exact frog speeds and LCS constants for periodic words, and
//! the enumeration and simulation tools used to check them.

pub mod analysis;
pub mod blind;
pub mod crowned;
pub mod error;
pub mod grid;
pub mod hatted;
pub mod montecarlo;
pub mod ring;
pub mod verify;
pub mod words;

pub use error::{FrogError, Result};
