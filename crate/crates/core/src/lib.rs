pub mod error;
pub mod diffop;
pub mod exactalg;
pub mod models;
pub mod repspace;
pub mod separation;
pub mod verify;

pub use error::{Error, Result};
