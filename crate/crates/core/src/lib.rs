pub mod asdim;
pub mod charworks;
pub mod coxeter;
pub mod dirac;
pub mod error;
pub mod fock;
pub mod linalg;
pub mod rootcore;
pub mod twistaff;

pub use error::{Error, Result};
