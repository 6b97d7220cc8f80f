pub mod csv_out;
pub mod error;
pub mod localization;
pub mod propagators;
pub mod quadrature;
pub mod response;
pub mod scenario_file;
pub mod selftest;
pub mod signal;
pub mod special;
pub mod sweep;

pub use error::{Error, Result};
