use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::{configuration, solve_radial, symbol, Orbital, OrbitalSet};
use crate::density::{RadialDensity, DENSITY_FLOOR};
use crate::error::{Error, Result};
use crate::functionals::{correlation, lda_exchange_density};
use crate::grid::{GridSpec, RadialGrid};
use crate::poisson::hartree_potential;
use crate::tf::TfSolution;

/// Exchange-correlation treatment of the Kohn–Sham potential.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum XcModel {
    /// LDA exchange with PW92 correlation.
    #[default]
    Lda,
    /// Exact exchange without correlation, available for two electrons,
    /// where the exchange potential is `−V_H/2`.
    ExactExchangeTwoElectron,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ScfConfig {
    pub max_iterations: usize,
    /// Fraction of the output density mixed into the next input.
    pub mixing: f64,
    /// Stop once successive total energies differ by less than this (hartree).
    pub energy_tolerance: f64,
    /// Also require `∫ |n_out − n_in| d³r` below this (electrons).
    pub density_tolerance: f64,
    /// `None` uses [`GridSpec::atomic`] for the nuclear charge.
    pub grid: Option<GridSpec>,
    #[serde(default)]
    pub xc: XcModel,
}

impl Default for ScfConfig {
    fn default() -> Self {
        Self {
            max_iterations: 200,
            mixing: 0.3,
            energy_tolerance: 1e-8,
            density_tolerance: 1e-6,
            grid: None,
            xc: XcModel::Lda,
        }
    }
}

impl ScfConfig {
    /// Exact exchange for helium, LDA otherwise. For two electrons this is
    /// the exchange-only optimized-potential density.
    pub fn reference(z: u32) -> Self {
        let xc = if z == 2 { XcModel::ExactExchangeTwoElectron } else { XcModel::Lda };
        Self { xc, ..Self::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.mixing > 0.0 && self.mixing <= 1.0) {
            return Err(Error::Parameter(format!("mixing must lie in (0, 1], got {}", self.mixing)));
        }
        if !(self.energy_tolerance > 0.0) {
            return Err(Error::Parameter(format!(
                "energy tolerance must be positive, got {}",
                self.energy_tolerance
            )));
        }
        if !(self.density_tolerance > 0.0) {
            return Err(Error::Parameter(format!(
                "density tolerance must be positive, got {}",
                self.density_tolerance
            )));
        }
        if self.max_iterations == 0 {
            return Err(Error::Parameter("max_iterations must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, Default, Serialize, Deserialize)]
pub struct EnergyComponents {
    pub kinetic: f64,
    pub nuclear: f64,
    pub hartree: f64,
    pub exchange: f64,
    pub correlation: f64,
    pub total: f64,
}

#[derive(Clone, Debug)]
pub struct AtomResult {
    pub z: u32,
    pub symbol: &'static str,
    pub orbitals: OrbitalSet,
    /// Output density of the last iteration, with τ and τ′ attached.
    pub density: RadialDensity,
    pub energies: EnergyComponents,
    pub iterations: usize,
    /// Total energy after each iteration.
    pub trace: Vec<f64>,
}

impl AtomResult {
    pub fn total_energy(&self) -> f64 {
        self.energies.total
    }
}

fn volume_integral(grid: &RadialGrid, f: impl Fn(usize) -> f64) -> Result<f64> {
    let r = grid.r();
    let g: Vec<f64> = (0..r.len()).map(|i| 4.0 * PI * r[i] * r[i] * f(i)).collect();
    grid.integrate(&g)
}

fn xc_potential(n: f64) -> f64 {
    if n <= DENSITY_FLOOR {
        return 0.0;
    }
    -(3.0 * n / PI).cbrt() + correlation::lda_correlation_potential(n)
}

fn xc_energy_densities(n: f64) -> (f64, f64) {
    if n <= DENSITY_FLOOR {
        return (0.0, 0.0);
    }
    (lda_exchange_density(n), n * correlation::epsilon_c(n))
}

fn initial_density(z: f64, grid: &RadialGrid) -> Result<Vec<f64>> {
    let tf = TfSolution::shared()?;
    let d = tf.density_on(z, grid.clone())?;
    let count = volume_integral(grid, |i| d.n()[i])?;
    Ok(d.n().iter().map(|n| n * z / count).collect())
}

/// Self-consistent KS-LDA (PW92 correlation) ground state of a closed-shell
/// noble gas.
pub fn solve_atom(z: u32, cfg: &ScfConfig) -> Result<AtomResult> {
    cfg.validate()?;
    let shells = configuration(z)?;
    if cfg.xc == XcModel::ExactExchangeTwoElectron && z != 2 {
        return Err(Error::Parameter(format!(
            "two-electron exact exchange needs Z=2, got Z={z}"
        )));
    }
    let zf = z as f64;
    let spec = cfg.grid.unwrap_or_else(|| GridSpec::atomic(zf));
    let grid = spec.build()?;
    let r = grid.r().to_vec();

    let mut n_in = initial_density(zf, &grid)?;
    let mut trace = Vec::new();
    let mut previous = f64::NAN;
    for iteration in 1..=cfg.max_iterations {
        let vh = hartree_potential(&grid, &n_in)?;
        let v: Vec<f64> = (0..r.len())
            .map(|i| {
                let xc = match cfg.xc {
                    XcModel::Lda => xc_potential(n_in[i]),
                    XcModel::ExactExchangeTwoElectron => -0.5 * vh[i],
                };
                -zf / r[i] + vh[i] + xc
            })
            .collect();

        let mut orbitals = Vec::with_capacity(shells.len());
        for &(n, l) in &shells {
            let sol = solve_radial(&grid, &v, n, l, zf)?;
            orbitals.push(Orbital {
                n,
                l,
                occupation: 2.0 * (2 * l + 1) as f64,
                eigenvalue: sol.eigenvalue,
                u: sol.u,
            });
        }
        let set = OrbitalSet::new(zf, grid.clone(), orbitals)?;
        let n_out = set.density_samples();

        let band: f64 = set.shells.iter().map(|o| o.occupation * o.eigenvalue).sum();
        let kinetic = band - volume_integral(&grid, |i| n_out[i] * v[i])?;
        let nuclear = volume_integral(&grid, |i| -zf / r[i] * n_out[i])?;
        let vh_out = hartree_potential(&grid, &n_out)?;
        let hartree = 0.5 * volume_integral(&grid, |i| vh_out[i] * n_out[i])?;
        let (exchange, correlation) = match cfg.xc {
            XcModel::Lda => {
                let xc: Vec<(f64, f64)> = n_out.iter().map(|&n| xc_energy_densities(n)).collect();
                (volume_integral(&grid, |i| xc[i].0)?, volume_integral(&grid, |i| xc[i].1)?)
            }
            XcModel::ExactExchangeTwoElectron => (-0.5 * hartree, 0.0),
        };
        let total = kinetic + nuclear + hartree + exchange + correlation;
        trace.push(total);

        let residual = volume_integral(&grid, |i| (n_out[i] - n_in[i]).abs())?;
        if (total - previous).abs() < cfg.energy_tolerance && residual < cfg.density_tolerance {
            let density = set.density()?;
            return Ok(AtomResult {
                z,
                symbol: symbol(z).unwrap_or("?"),
                orbitals: set,
                density,
                energies: EnergyComponents {
                    kinetic,
                    nuclear,
                    hartree,
                    exchange,
                    correlation,
                    total,
                },
                iterations: iteration,
                trace,
            });
        }
        previous = total;
        let a = cfg.mixing;
        for (i, n) in n_in.iter_mut().enumerate() {
            *n = (1.0 - a) * *n + a * n_out[i];
        }
    }
    let tail: Vec<String> = trace.iter().rev().take(5).rev().map(|e| format!("{e:.10}")).collect();
    Err(Error::Solver(format!(
        "SCF for Z={z} did not converge in {} iterations; last energies [{}]",
        cfg.max_iterations,
        tail.join(", ")
    )))
}
