pub mod bounds;
pub mod cli;
pub mod diagram;
pub mod error;
pub mod generators;
pub mod inertia;
pub mod io;
pub mod poly;
pub mod psi;
pub mod reduction;
pub mod search;

pub use error::{Error, Result};
