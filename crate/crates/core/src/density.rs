//! Spherical electron densities, reduced gradients and ζ-scaling.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{check_len, Error, Result};
use crate::grid::RadialGrid;

/// Densities below this value (bohr⁻³) are treated as empty space: reduced
/// gradients are masked there and gradient integrands vanish.
pub const DENSITY_FLOOR: f64 = 1e-30;

#[derive(Clone, Debug)]
pub struct RadialDensity {
    grid: RadialGrid,
    n: Vec<f64>,
    dn: Vec<f64>,
    d2n: Vec<f64>,
    n_electrons: f64,
    tau: Option<Vec<f64>>,
    tau_prime: Option<Vec<f64>>,
}

impl RadialDensity {
    /// Density from samples; derivatives come from the grid stencils.
    pub fn from_samples(grid: RadialGrid, n: Vec<f64>) -> Result<Self> {
        check_len(grid.len(), n.len())?;
        validate_samples(&n)?;
        let dn = grid.differentiate(&n, 1)?;
        let d2n = grid.differentiate(&n, 2)?;
        Self::assemble(grid, n, dn, d2n)
    }

    /// Density with externally supplied (e.g. analytic) derivatives.
    pub fn from_parts(grid: RadialGrid, n: Vec<f64>, dn: Vec<f64>, d2n: Vec<f64>) -> Result<Self> {
        check_len(grid.len(), n.len())?;
        check_len(grid.len(), dn.len())?;
        check_len(grid.len(), d2n.len())?;
        validate_samples(&n)?;
        Self::assemble(grid, n, dn, d2n)
    }

    /// Samples a closed-form density and its first two derivatives.
    pub fn from_closed_form(
        grid: RadialGrid,
        n: impl Fn(f64) -> f64,
        dn: impl Fn(f64) -> f64,
        d2n: impl Fn(f64) -> f64,
    ) -> Result<Self> {
        let r = grid.r();
        let (a, b, c) = (
            r.iter().map(|&x| n(x)).collect(),
            r.iter().map(|&x| dn(x)).collect(),
            r.iter().map(|&x| d2n(x)).collect(),
        );
        Self::from_parts(grid, a, b, c)
    }

    fn assemble(grid: RadialGrid, n: Vec<f64>, dn: Vec<f64>, d2n: Vec<f64>) -> Result<Self> {
        let n_electrons = electron_count(&grid, &n)?;
        Ok(RadialDensity {
            grid,
            n,
            dn,
            d2n,
            n_electrons,
            tau: None,
            tau_prime: None,
        })
    }

    /// Attaches orbital kinetic-energy densities (positive form `tau` and
    /// Laplacian form `tau_prime`).
    pub fn with_kinetic(mut self, tau: Vec<f64>, tau_prime: Vec<f64>) -> Result<Self> {
        check_len(self.grid.len(), tau.len())?;
        check_len(self.grid.len(), tau_prime.len())?;
        if let Some((i, v)) = tau.iter().enumerate().find(|(_, v)| !(**v >= 0.0)) {
            return Err(Error::Domain(format!(
                "tau must be nonnegative, got {v} at index {i}"
            )));
        }
        self.tau = Some(tau);
        self.tau_prime = Some(tau_prime);
        Ok(self)
    }

    pub fn grid(&self) -> &RadialGrid {
        &self.grid
    }

    pub fn n(&self) -> &[f64] {
        &self.n
    }

    pub fn dn(&self) -> &[f64] {
        &self.dn
    }

    pub fn d2n(&self) -> &[f64] {
        &self.d2n
    }

    pub fn n_electrons(&self) -> f64 {
        self.n_electrons
    }

    pub fn tau(&self) -> Option<&[f64]> {
        self.tau.as_deref()
    }

    pub fn tau_prime(&self) -> Option<&[f64]> {
        self.tau_prime.as_deref()
    }

    /// ∇²n = n'' + 2n'/r for a spherical density.
    pub fn laplacian(&self) -> Vec<f64> {
        self.grid
            .r()
            .iter()
            .zip(self.dn.iter().zip(&self.d2n))
            .map(|(r, (d1, d2))| d2 + 2.0 * d1 / r)
            .collect()
    }

    /// `4πr² f(r)` for per-volume samples `f`.
    pub fn radial_weighted(&self, f: &[f64]) -> Vec<f64> {
        self.grid
            .r()
            .iter()
            .zip(f)
            .map(|(r, v)| 4.0 * PI * r * r * v)
            .collect()
    }

    /// Integral over all space of per-volume samples `f`.
    pub fn integrate_volume(&self, f: &[f64]) -> Result<f64> {
        check_len(self.grid.len(), f.len())?;
        self.grid.integrate(&self.radial_weighted(f))
    }

    /// Density at an arbitrary radius: cubic interpolation in `ln n` where the
    /// stencil is above the floor, in `n` otherwise. Zero outside the grid tail.
    pub fn value_at(&self, r: f64) -> f64 {
        interpolate_positive(&self.grid, &self.n, &log_samples(&self.n), r)
    }

    /// [`Self::value_at`] for many radii.
    pub fn values_at(&self, radii: &[f64]) -> Vec<f64> {
        let logs = log_samples(&self.n);
        radii
            .iter()
            .map(|&r| interpolate_positive(&self.grid, &self.n, &logs, r))
            .collect()
    }

    pub fn reduced_gradients(&self) -> Result<ReducedGradients> {
        ReducedGradients::of(self)
    }

    /// ζ-scaled density `n_ζ(r) = ζ² n(ζ^{1/3} r)` on this grid shrunk by
    /// `ζ^{-1/3}`. Kinetic-energy densities are not carried over.
    pub fn zeta_scale(&self, zeta: f64) -> Result<Self> {
        if !(zeta > 0.0 && zeta.is_finite()) {
            return Err(Error::Parameter(format!("zeta must be positive, got {zeta}")));
        }
        let stretch = zeta.cbrt();
        let grid = self.grid.scaled(1.0 / stretch)?;
        let z2 = zeta * zeta;
        let z73 = z2 * stretch;
        let z83 = z73 * stretch;
        let logs = log_samples(&self.n);
        let mut n = Vec::with_capacity(grid.len());
        let mut dn = Vec::with_capacity(grid.len());
        let mut d2n = Vec::with_capacity(grid.len());
        for &r in grid.r() {
            let rho = r * stretch;
            n.push(z2 * interpolate_positive(&self.grid, &self.n, &logs, rho));
            dn.push(z73 * self.grid.interpolate(&self.dn, rho));
            d2n.push(z83 * self.grid.interpolate(&self.d2n, rho));
        }
        Self::from_parts(grid, n, dn, d2n)
    }

    /// Resamples onto another grid by interpolation (derivatives included).
    pub fn resample(&self, grid: RadialGrid) -> Result<Self> {
        let inside = |r: f64| self.grid.contains(r);
        let n = self.values_at(grid.r());
        let dn = grid
            .r()
            .iter()
            .map(|&r| if inside(r) { self.grid.interpolate(&self.dn, r) } else { 0.0 })
            .collect();
        let d2n = grid
            .r()
            .iter()
            .map(|&r| if inside(r) { self.grid.interpolate(&self.d2n, r) } else { 0.0 })
            .collect();
        Self::from_parts(grid, n, dn, d2n)
    }
}

fn validate_samples(n: &[f64]) -> Result<()> {
    if let Some((i, v)) = n.iter().enumerate().find(|(_, v)| !(**v >= 0.0 && v.is_finite())) {
        return Err(Error::Domain(format!(
            "density must be finite and nonnegative, got {v} at index {i}"
        )));
    }
    Ok(())
}

fn electron_count(grid: &RadialGrid, n: &[f64]) -> Result<f64> {
    let f: Vec<f64> = grid
        .r()
        .iter()
        .zip(n)
        .map(|(r, v)| 4.0 * PI * r * r * v)
        .collect();
    grid.integrate(&f)
}

pub(crate) fn log_samples(n: &[f64]) -> Vec<f64> {
    n.iter()
        .map(|v| if *v > DENSITY_FLOOR { v.ln() } else { f64::NAN })
        .collect()
}

pub(crate) fn interpolate_positive(grid: &RadialGrid, n: &[f64], logs: &[f64], r: f64) -> f64 {
    if r > grid.r_max() * (1.0 + 1e-12) {
        return 0.0;
    }
    let lv = grid.interpolate(logs, r);
    if lv.is_finite() && n.len() >= 4 {
        lv.exp()
    } else {
        grid.interpolate(n, r).max(0.0)
    }
}

/// Dimensionless gradients on the Fermi (`s`, `q`) and screening (`t`) scales.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ReducedGradients {
    pub s: Vec<f64>,
    pub q: Vec<f64>,
    pub t: Vec<f64>,
    pub k_f: Vec<f64>,
    pub k_s: Vec<f64>,
    /// `false` where the density is below [`DENSITY_FLOOR`]; all fields are
    /// zero at masked points.
    pub valid: Vec<bool>,
}

pub fn fermi_wavevector(n: f64) -> f64 {
    (3.0 * PI * PI * n).cbrt()
}

pub fn screening_wavevector(k_f: f64) -> f64 {
    (4.0 * k_f / PI).sqrt()
}

impl ReducedGradients {
    pub fn of(d: &RadialDensity) -> Result<Self> {
        if !d.n.iter().any(|v| *v > DENSITY_FLOOR) {
            return Err(Error::Domain(
                "density is zero everywhere; reduced gradients are undefined".into(),
            ));
        }
        let lap = d.laplacian();
        let len = d.n.len();
        let mut g = ReducedGradients {
            s: vec![0.0; len],
            q: vec![0.0; len],
            t: vec![0.0; len],
            k_f: vec![0.0; len],
            k_s: vec![0.0; len],
            valid: vec![false; len],
        };
        for i in 0..len {
            let n = d.n[i];
            if n <= DENSITY_FLOOR {
                continue;
            }
            let kf = fermi_wavevector(n);
            let ks = screening_wavevector(kf);
            let grad = d.dn[i].abs();
            g.k_f[i] = kf;
            g.k_s[i] = ks;
            g.s[i] = grad / (2.0 * kf * n);
            g.q[i] = lap[i] / (4.0 * kf * kf * n);
            g.t[i] = grad / (2.0 * ks * n);
            g.valid[i] = true;
        }
        Ok(g)
    }
}

/// Largest deviations from the exact ζ-scaling laws of the reduced gradients
/// and the electron number.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct ScalingReport {
    pub zeta: f64,
    /// Relative deviation of `N[n_ζ]` from `ζ N[n]`.
    pub electron_number: f64,
    /// max |s_ζ(r) − s(ζ^{1/3}r)/ζ^{1/3}| / max(1, |s(ζ^{1/3}r)/ζ^{1/3}|)
    pub s_law: f64,
    /// Same measure for `q_ζ(r)` against `q(ζ^{1/3}r)/ζ^{2/3}`.
    pub q_law: f64,
    /// Same measure for `t_ζ(r)` against `t(ζ^{1/3}r)`.
    pub t_law: f64,
    pub points_compared: usize,
}

impl ScalingReport {
    pub fn max_deviation(&self) -> f64 {
        self.electron_number.max(self.s_law).max(self.q_law).max(self.t_law)
    }
}

pub fn verify_scaling_laws(d: &RadialDensity, zeta: f64) -> Result<ScalingReport> {
    let scaled = d.zeta_scale(zeta)?;
    let g = d.reduced_gradients()?;
    let gz = scaled.reduced_gradients()?;
    let stretch = zeta.cbrt();

    let n0 = d.n_electrons();
    let electron_number = if n0 > 0.0 {
        ((scaled.n_electrons() - zeta * n0) / (zeta * n0)).abs()
    } else {
        scaled.n_electrons().abs()
    };

    let dev = |a: f64, b: f64| (a - b).abs() / b.abs().max(1.0);
    let mut report = ScalingReport {
        zeta,
        electron_number,
        s_law: 0.0,
        q_law: 0.0,
        t_law: 0.0,
        points_compared: 0,
    };
    let grid = d.grid();
    for (i, &r) in scaled.grid().r().iter().enumerate() {
        let rho = r * stretch;
        if !gz.valid[i] || !grid.contains(rho) {
            continue;
        }
        // only compare where the whole interpolation stencil is unmasked
        let (lo, hi) = stencil_window(grid, rho);
        if !g.valid[lo..=hi].iter().all(|v| *v) {
            continue;
        }
        let s_ref = grid.interpolate(&g.s, rho) / stretch;
        let q_ref = grid.interpolate(&g.q, rho) / (stretch * stretch);
        let t_ref = grid.interpolate(&g.t, rho);
        report.s_law = report.s_law.max(dev(gz.s[i], s_ref));
        report.q_law = report.q_law.max(dev(gz.q[i], q_ref));
        report.t_law = report.t_law.max(dev(gz.t[i], t_ref));
        report.points_compared += 1;
    }
    Ok(report)
}

fn stencil_window(grid: &RadialGrid, r: f64) -> (usize, usize) {
    let n = grid.len();
    let idx = grid.r().partition_point(|x| *x <= r).saturating_sub(1);
    let lo = idx.saturating_sub(1).min(n.saturating_sub(4));
    (lo, (lo + 3).min(n - 1))
}
