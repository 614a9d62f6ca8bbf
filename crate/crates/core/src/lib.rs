//! Exact verification engine for q-deformed Howe duality between generalized
//! quantum groups of type C/D and ıquantum groups of type AI/AII, acting on
//! q-oscillator Fock spaces.

pub mod cli;
pub mod combinatorics;
pub mod duality;
pub mod error;
pub mod fock;
pub mod gqg;
pub mod iqg;
pub mod report;
pub mod scalars;

pub use error::Error;
