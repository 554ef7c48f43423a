//! Exponential Strang splitting for the `(varrho, u, phi)` system.

pub mod config;
pub mod ic;
pub mod run;
pub mod snapshot;
pub mod step;

pub use config::{IcFamily, RunConfig};
pub use ic::initial_state;
pub use run::{evolve, run, setup, state_distance, RunSummary, ENERGY_ORDER};
pub use step::{Integrator, LinearFlow};
