pub mod cli;
pub mod complex;
pub mod error;
pub mod fibration;
pub mod gluing;
pub mod io;
pub mod lattice;
pub mod monoid;
pub mod poly;
pub mod polyhedra;
pub mod toric;

pub use error::{Error, Result};
