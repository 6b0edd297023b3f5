pub mod clifford;
pub mod error;
pub mod exact;
pub mod factors;
pub mod matrix;
pub mod params;
pub mod residue;
pub mod weil;

pub use error::{Error, Result};
pub use params::TameParams;
