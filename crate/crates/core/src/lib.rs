pub mod error;
pub mod fit;
pub mod integrator;
pub mod model;
pub mod par;
pub mod propagators;
pub mod spectral;
pub mod verify;

pub use error::{Error, Result};
