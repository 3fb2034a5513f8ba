pub mod charge;
pub mod crystal;
pub mod deg;
pub mod error;
mod par;
pub mod symfun;
pub mod tableaux;
pub mod verify;

pub use error::{Error, Result};
