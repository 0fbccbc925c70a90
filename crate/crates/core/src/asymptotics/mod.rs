//! Asymptotic fits and region analysis.

pub mod fit;
pub mod regions;
pub mod series;

pub use fit::{least_squares, polynomial, AsymptoticFit};
pub use regions::{
    gradient_onset, region_contributions, region_energies, region_radii, region_scaling_exponents, tau_onset,
    ExponentialDensity, Region, RegionReport,
};
pub use series::{fit_c_lda, fit_delta_c, residuals_oscillate, SeriesPoint, TF_EXCHANGE_COEFFICIENT};
