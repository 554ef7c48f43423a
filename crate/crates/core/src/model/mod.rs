//! The `(varrho, u, phi)` system: state, nonlinearities, director
//! consistency, energies and profiles.

pub mod director;
pub mod energy;
pub mod nonlinear;
pub mod profiles;
pub mod residual;
pub mod state;

pub use director::director_from_angles;
pub use energy::{energy_e1, phi_energy, Dissipation, EnergyLedger, LedgerRow};
pub use nonlinear::{F2Groups, Model, Sources};
pub use profiles::{make_profiles, ProfileRecord};
pub use state::State;
