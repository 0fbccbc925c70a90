//! Radial densities, density functionals and their behaviour under the
//! ζ-scaling `n_ζ(r) = ζ² n(ζ^{1/3} r)`, with Thomas–Fermi and Kohn–Sham LDA
//! atoms as test densities.

pub mod asymptotics;
pub mod atom;
pub mod density;
pub mod error;
pub mod functionals;
pub mod grid;
pub mod io;
pub mod poisson;
pub mod tf;

pub use density::{RadialDensity, ReducedGradients};
pub use error::{Error, Result};
pub use functionals::{FunctionalId, FunctionalResult};
pub use grid::{GridKind, GridSpec, RadialGrid};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
