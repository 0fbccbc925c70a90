//! Closed-shell atoms in spherical Kohn–Sham LDA.

mod radial;
mod scf;
mod table;

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::density::{RadialDensity, DENSITY_FLOOR};
use crate::error::{check_len, Error, Result};
use crate::grid::RadialGrid;

pub use radial::{count_nodes, solve_radial, RadialSolution};
pub use scf::{solve_atom, AtomResult, EnergyComponents, ScfConfig, XcModel};
pub use table::{table_row, TableRow};

/// Nuclear charges with a hard-coded closed-shell configuration.
pub const NOBLE_GASES: [u32; 6] = [2, 10, 18, 36, 54, 86];

const ORBITAL_LETTERS: [char; 4] = ['s', 'p', 'd', 'f'];

pub(crate) fn shell_label(n: u32, l: u32) -> String {
    let letter = ORBITAL_LETTERS.get(l as usize).copied().unwrap_or('?');
    format!("{n}{letter}")
}

pub fn symbol(z: u32) -> Option<&'static str> {
    Some(match z {
        1 => "H",
        2 => "He",
        10 => "Ne",
        18 => "Ar",
        36 => "Kr",
        54 => "Xe",
        86 => "Rn",
        _ => return None,
    })
}

/// Occupied `(n, l)` shells of a noble gas, each filled to `2(2l+1)`.
pub fn configuration(z: u32) -> Result<Vec<(u32, u32)>> {
    const SHELLS: [(u32, u32); 15] = [
        (1, 0),
        (2, 0),
        (2, 1),
        (3, 0),
        (3, 1),
        (3, 2),
        (4, 0),
        (4, 1),
        (4, 2),
        (5, 0),
        (5, 1),
        (4, 3),
        (5, 2),
        (6, 0),
        (6, 1),
    ];
    let count = match z {
        2 => 1,
        10 => 3,
        18 => 5,
        36 => 8,
        54 => 11,
        86 => 15,
        _ => {
            return Err(Error::Parameter(format!(
                "Z={z} is not a supported closed-shell atom; use one of {NOBLE_GASES:?}"
            )))
        }
    };
    let mut shells = SHELLS[..count].to_vec();
    shells.sort();
    Ok(shells)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Orbital {
    pub n: u32,
    pub l: u32,
    pub occupation: f64,
    /// hartree
    pub eigenvalue: f64,
    /// `u = r R(r)` on the set's grid.
    pub u: Vec<f64>,
}

impl Orbital {
    pub fn label(&self) -> String {
        shell_label(self.n, self.l)
    }
}

#[derive(Clone, Debug)]
pub struct OrbitalSet {
    pub z: f64,
    pub shells: Vec<Orbital>,
    grid: RadialGrid,
}

impl OrbitalSet {
    pub fn new(z: f64, grid: RadialGrid, shells: Vec<Orbital>) -> Result<Self> {
        for o in &shells {
            check_len(grid.len(), o.u.len())?;
            let cap = 2.0 * (2.0 * o.l as f64 + 1.0);
            if o.l >= o.n || !(o.occupation >= 0.0 && o.occupation <= cap) {
                return Err(Error::Parameter(format!(
                    "shell {} with occupation {} is not allowed",
                    o.label(),
                    o.occupation
                )));
            }
        }
        Ok(Self { z, shells, grid })
    }

    pub fn grid(&self) -> &RadialGrid {
        &self.grid
    }

    pub fn electron_count(&self) -> f64 {
        self.shells.iter().map(|o| o.occupation).sum()
    }

    /// `n(r) = Σ occ u²/(4πr²)`.
    pub fn density_samples(&self) -> Vec<f64> {
        let r = self.grid.r();
        let mut n = vec![0.0; r.len()];
        for o in &self.shells {
            for (i, u) in o.u.iter().enumerate() {
                n[i] += o.occupation * u * u / (4.0 * PI * r[i] * r[i]);
            }
        }
        n
    }

    pub fn density(&self) -> Result<RadialDensity> {
        let (tau, tau_prime) = kinetic_energy_densities(self)?;
        RadialDensity::from_samples(self.grid.clone(), self.density_samples())?.with_kinetic(tau, tau_prime)
    }
}

const NORMALIZATION_TOLERANCE: f64 = 1e-6;

/// Positive `τ = Σ occ |∇ψ|²/2` and orbital `τ′ = Σ occ ψ(−∇²/2)ψ`, both
/// per unit volume.
pub fn kinetic_energy_densities(orbs: &OrbitalSet) -> Result<(Vec<f64>, Vec<f64>)> {
    let grid = orbs.grid();
    let r = grid.r();
    let mut tau = vec![0.0; r.len()];
    let mut tau_prime = vec![0.0; r.len()];
    for o in &orbs.shells {
        let sq: Vec<f64> = o.u.iter().map(|u| u * u).collect();
        let norm = grid.integrate(&sq)?;
        if (norm - 1.0).abs() > NORMALIZATION_TOLERANCE {
            return Err(Error::Domain(format!(
                "orbital {} is not normalized (norm {norm})",
                o.label()
            )));
        }
        let big_r: Vec<f64> = o.u.iter().zip(r).map(|(u, r)| u / r).collect();
        let d1 = grid.differentiate(&big_r, 1)?;
        let d2 = grid.differentiate(&big_r, 2)?;
        let ll = (o.l * (o.l + 1)) as f64;
        for i in 0..r.len() {
            let centrifugal = ll * big_r[i] * big_r[i] / (r[i] * r[i]);
            tau[i] += o.occupation / (8.0 * PI) * (d1[i] * d1[i] + centrifugal);
            let lap = d2[i] + 2.0 * d1[i] / r[i] - ll * big_r[i] / (r[i] * r[i]);
            tau_prime[i] += -o.occupation / (8.0 * PI) * big_r[i] * lap;
        }
    }
    Ok((tau, tau_prime))
}

/// Kohn–Sham kinetic energy from the positive kinetic energy density.
pub fn kinetic_energy(orbs: &OrbitalSet) -> Result<f64> {
    let (tau, _) = kinetic_energy_densities(orbs)?;
    let r = orbs.grid().r();
    let f: Vec<f64> = tau.iter().zip(r).map(|(t, r)| 4.0 * PI * r * r * t).collect();
    orbs.grid().integrate(&f)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SProfile {
    pub z: f64,
    /// `Z^{1/3} r`
    pub scaled_r: Vec<f64>,
    /// NaN where the density is below the floor.
    pub s: Vec<f64>,
    /// s at the smallest grid radius.
    pub s_origin: f64,
}

pub fn s_profile(d: &RadialDensity, z: f64) -> SProfile {
    let c = z.cbrt();
    let scaled_r = d.grid().r().iter().map(|r| c * r).collect();
    let s: Vec<f64> = d
        .n()
        .iter()
        .zip(d.dn())
        .map(|(&n, &dn)| {
            if n > DENSITY_FLOOR {
                dn.abs() / (2.0 * (3.0 * PI * PI * n).cbrt() * n)
            } else {
                f64::NAN
            }
        })
        .collect();
    SProfile { z, scaled_r, s_origin: s[0], s }
}
