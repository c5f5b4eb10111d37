pub mod ansatz;
pub mod cli;
pub mod error;
pub mod exactalg;
pub mod gauge;
pub mod heisenberg;
pub mod numcheck;
pub mod realslice;
pub mod report;
pub mod so6model;
pub mod twistor;

pub use error::{Error, Result};
