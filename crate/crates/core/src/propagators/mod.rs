//! Exact linear flows and a whole-space radial oracle for decay rates.

pub mod apply;
pub mod params;
pub mod probe;
pub mod radial;
pub mod symbol;

pub use apply::{apply_propagator, Propagator};
pub use params::Params;
pub use probe::{decay_probe, DecaySeries, ProbeKind};
pub use radial::{radial_eval, radial_gradient, RadialProfile};
pub use symbol::{etb_symbol, lambda_pm, semigroup_compose_check, EtbSymbol};
