//! Frequency-lattice infrastructure on a periodic cube.

pub mod cutoff;
pub mod fft;
pub mod field;
pub mod grid;
pub mod helmholtz;
pub mod lp;
pub mod norms;
pub mod vectorfield;

pub use cutoff::{base_cutoff, Selector};
pub use field::{Parity, SpectralField};
pub use grid::{make_grid, GridSpec};
pub use helmholtz::{helmholtz_join, helmholtz_split, Vector};
pub use lp::{f_jk, project, q_localize};
pub use norms::{norm, NormKind};
