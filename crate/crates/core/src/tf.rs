//! Universal Thomas–Fermi screening function and neutral-atom TF densities.
//!
//! `φ'' = φ^{3/2}/√x`, `φ(0) = 1`, `φ(∞) = 0`. The equation is integrated in
//! `t = ln x` with RK4: outward from a series start near the origin and inward
//! from the large-x asymptote `φ ≈ 144/x³ (1 − F x^{-λ})`. The initial slope
//! `B = φ'(0)` and the tail amplitude `F` are fixed by matching `φ` and `xφ'`
//! at an interior point.

use std::f64::consts::PI;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::asymptotics::fit::{least_squares, AsymptoticFit};
use crate::density::{RadialDensity, DENSITY_FLOOR};
use crate::error::{Error, Result};
use crate::functionals::{self, correlation, FunctionalId};
use crate::grid::{GridKind, RadialGrid};
use crate::poisson::hartree_potential;

const X_MIN: f64 = 1e-10;
const X_MAX: f64 = 1e5;
const X_MATCH: f64 = 5.0;
const STEP: f64 = 1e-3;

/// Exponent of the leading correction to the 144/x³ tail.
pub fn tail_exponent() -> f64 {
    (73f64.sqrt() - 7.0) / 2.0
}

/// TF length unit `b = (1/2)(3π/4)^{2/3} Z^{-1/3}` (bohr).
pub fn length_scale(z: f64) -> f64 {
    0.5 * (0.75 * PI).powf(2.0 / 3.0) * z.powf(-1.0 / 3.0)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TfSolution {
    /// `ln x` nodes, uniformly spaced.
    t: Vec<f64>,
    phi: Vec<f64>,
    /// `x φ'(x)` at the nodes.
    x_dphi: Vec<f64>,
    pub phi_slope_origin: f64,
    pub tail_amplitude: f64,
    pub newton_iterations: usize,
}

type State = [f64; 2];

fn rhs(t: f64, y: State) -> State {
    let x = t.exp();
    let phi = y[0].max(0.0);
    [y[1], y[1] + x * x.sqrt() * phi * phi.sqrt()]
}

fn rk4_step(t: f64, y: State, h: f64) -> State {
    let add = |y: State, k: State, c: f64| [y[0] + c * k[0], y[1] + c * k[1]];
    let k1 = rhs(t, y);
    let k2 = rhs(t + h / 2.0, add(y, k1, h / 2.0));
    let k3 = rhs(t + h / 2.0, add(y, k2, h / 2.0));
    let k4 = rhs(t + h, add(y, k3, h));
    [
        y[0] + h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
        y[1] + h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]),
    ]
}

fn series_start(slope: f64, x: f64) -> State {
    let sx = x.sqrt();
    let phi = 1.0 + slope * x + 4.0 / 3.0 * x * sx + 0.4 * slope * x * x * sx + x * x * x / 3.0;
    let dphi = slope + 2.0 * sx + slope * x * sx + x * x;
    [phi, x * dphi]
}

fn tail_start(amplitude: f64, x: f64) -> State {
    let lam = tail_exponent();
    let lead = 144.0 / (x * x * x);
    let corr = amplitude * x.powf(-lam);
    [lead * (1.0 - corr), lead * (-3.0 + (3.0 + lam) * corr)]
}

struct Mesh {
    t: Vec<f64>,
    matched: usize,
}

impl Mesh {
    fn new() -> Self {
        let (t0, t1) = (X_MIN.ln(), X_MAX.ln());
        let n = ((t1 - t0) / STEP).ceil() as usize;
        let h = (t1 - t0) / n as f64;
        let t: Vec<f64> = (0..=n).map(|i| t0 + h * i as f64).collect();
        let matched = ((X_MATCH.ln() - t0) / h).round() as usize;
        Mesh { t, matched }
    }

    fn outward(&self, slope: f64, store: Option<&mut Vec<State>>) -> State {
        let mut y = series_start(slope, X_MIN);
        let mut out = store;
        if let Some(v) = out.as_deref_mut() {
            v.push(y);
        }
        for i in 0..self.matched {
            y = rk4_step(self.t[i], y, self.t[i + 1] - self.t[i]);
            if let Some(v) = out.as_deref_mut() {
                v.push(y);
            }
        }
        y
    }

    fn inward(&self, amplitude: f64, store: Option<&mut Vec<State>>) -> State {
        let last = self.t.len() - 1;
        let mut y = tail_start(amplitude, X_MAX);
        let mut out = store;
        if let Some(v) = out.as_deref_mut() {
            v.push(y);
        }
        for i in (self.matched + 1..=last).rev() {
            y = rk4_step(self.t[i], y, self.t[i - 1] - self.t[i]);
            if let Some(v) = out.as_deref_mut() {
                v.push(y);
            }
        }
        y
    }

    fn mismatch(&self, slope: f64, amplitude: f64) -> State {
        let a = self.outward(slope, None);
        let b = self.inward(amplitude, None);
        [a[0] - b[0], a[1] - b[1]]
    }
}

impl TfSolution {
    /// Solves the neutral-atom problem; Newton iterations stop once the slope
    /// update falls below `tolerance`.
    pub fn solve(tolerance: f64) -> Result<Self> {
        if !(tolerance > 0.0) {
            return Err(Error::Parameter(format!("tolerance must be positive, got {tolerance}")));
        }
        let mesh = Mesh::new();
        let (mut slope, mut amp) = (-1.588, 13.27);
        let mut converged = false;
        let mut iterations = 0;
        for it in 0..60 {
            iterations = it + 1;
            let f = mesh.mismatch(slope, amp);
            let (ds, da) = (1e-7, 1e-5);
            let fs = mesh.mismatch(slope + ds, amp);
            let fa = mesh.mismatch(slope, amp + da);
            let j = [
                [(fs[0] - f[0]) / ds, (fa[0] - f[0]) / da],
                [(fs[1] - f[1]) / ds, (fa[1] - f[1]) / da],
            ];
            let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
            if det == 0.0 || !det.is_finite() {
                break;
            }
            let step_s = (f[0] * j[1][1] - f[1] * j[0][1]) / det;
            let step_a = (j[0][0] * f[1] - j[1][0] * f[0]) / det;
            slope -= step_s;
            amp -= step_a;
            if step_s.abs() < tolerance && step_a.abs() < tolerance * 1e3 {
                converged = true;
                break;
            }
        }
        if !converged || !(-1.7..-1.5).contains(&slope) {
            return Err(Error::Solver(format!(
                "TF shooting did not converge: slope={slope}, tail amplitude={amp}, iterations={iterations}"
            )));
        }

        let mut outer = Vec::new();
        let mut inner = Vec::new();
        mesh.outward(slope, Some(&mut outer));
        mesh.inward(amp, Some(&mut inner));
        inner.reverse();
        // both pieces contain the matching node; keep the outward value there
        let states: Vec<State> = outer.into_iter().chain(inner.into_iter().skip(1)).collect();
        debug_assert_eq!(states.len(), mesh.t.len());
        Ok(TfSolution {
            phi: states.iter().map(|s| s[0]).collect(),
            x_dphi: states.iter().map(|s| s[1]).collect(),
            t: mesh.t,
            phi_slope_origin: slope,
            tail_amplitude: amp,
            newton_iterations: iterations,
        })
    }

    fn hermite(&self, x: f64) -> (f64, f64) {
        let t = x.ln();
        let h = self.t[1] - self.t[0];
        let i = (((t - self.t[0]) / h).floor() as usize).min(self.t.len() - 2);
        let s = (t - self.t[i]) / h;
        let (p0, p1) = (self.phi[i], self.phi[i + 1]);
        let (m0, m1) = (self.x_dphi[i] * h, self.x_dphi[i + 1] * h);
        let s2 = s * s;
        let s3 = s2 * s;
        let phi = (2.0 * s3 - 3.0 * s2 + 1.0) * p0
            + (s3 - 2.0 * s2 + s) * m0
            + (-2.0 * s3 + 3.0 * s2) * p1
            + (s3 - s2) * m1;
        // x φ' interpolated on its own, with d(xφ')/dt = xφ' + x^{3/2} φ^{3/2}
        let slope = |j: usize| {
            let xj = self.t[j].exp();
            (self.x_dphi[j] + (xj * self.phi[j].max(0.0)).powf(1.5)) * h
        };
        let (w0, w1) = (self.x_dphi[i], self.x_dphi[i + 1]);
        let x_dphi = (2.0 * s3 - 3.0 * s2 + 1.0) * w0
            + (s3 - 2.0 * s2 + s) * slope(i)
            + (-2.0 * s3 + 3.0 * s2) * w1
            + (s3 - s2) * slope(i + 1);
        (phi, x_dphi / x)
    }

    /// Solution at tolerance 1e-12, computed once per process.
    pub fn shared() -> Result<&'static TfSolution> {
        static SOL: OnceLock<TfSolution> = OnceLock::new();
        if let Some(s) = SOL.get() {
            return Ok(s);
        }
        let s = TfSolution::solve(1e-12)?;
        Ok(SOL.get_or_init(|| s))
    }

    /// Screening function φ(x).
    pub fn phi(&self, x: f64) -> f64 {
        if x <= X_MIN {
            series_start(self.phi_slope_origin, x.max(0.0))[0]
        } else if x >= X_MAX {
            tail_start(self.tail_amplitude, x)[0]
        } else {
            self.hermite(x).0
        }
    }

    /// φ'(x).
    pub fn dphi(&self, x: f64) -> f64 {
        if x <= X_MIN {
            let s = series_start(self.phi_slope_origin, x.max(1e-300));
            s[1] / x.max(1e-300)
        } else if x >= X_MAX {
            tail_start(self.tail_amplitude, x)[1] / x
        } else {
            self.hermite(x).1
        }
    }

    /// Nodes `(x, φ)` of the stored solution.
    pub fn samples(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.t.iter().map(|t| t.exp()).zip(self.phi.iter().copied())
    }

    /// Default grid for a TF atom: `x ∈ [1e-12, 1e3]` in units of `b`.
    pub fn grid_for(z: f64) -> Result<RadialGrid> {
        let b = length_scale(z);
        RadialGrid::new(GridKind::Exponential, 1e-12 * b, 1e3 * b, 2400)
    }

    /// Neutral-atom TF density `(1/3π²)(2Zφ(r/b)/r)^{3/2}` on the default grid.
    pub fn density(&self, z: f64) -> Result<RadialDensity> {
        if !(z > 0.0 && z.is_finite()) {
            return Err(Error::Parameter(format!("nuclear charge must be positive, got {z}")));
        }
        self.density_on(z, Self::grid_for(z)?)
    }

    /// TF density sampled on a caller-supplied grid, with analytic derivatives.
    pub fn density_on(&self, z: f64, grid: RadialGrid) -> Result<RadialDensity> {
        if !(z > 0.0 && z.is_finite()) {
            return Err(Error::Parameter(format!("nuclear charge must be positive, got {z}")));
        }
        let b = length_scale(z);
        let c = 1.0 / (3.0 * PI * PI);
        let mut n = Vec::with_capacity(grid.len());
        let mut dn = Vec::with_capacity(grid.len());
        let mut d2n = Vec::with_capacity(grid.len());
        for &r in grid.r() {
            let x = r / b;
            let phi = self.phi(x).max(0.0);
            let dphi = self.dphi(x) / b;
            // φ'' from the ODE, in r
            let d2phi = phi * phi.sqrt() / x.sqrt() / (b * b);
            // n = c (2Z)^{3/2} g^{3/2}, g = φ/r
            let g = phi / r;
            let dg = dphi / r - phi / (r * r);
            let d2g = d2phi / r - 2.0 * dphi / (r * r) + 2.0 * phi / (r * r * r);
            let k = c * (2.0 * z).powf(1.5);
            let sg = g.sqrt();
            n.push(k * g * sg);
            dn.push(1.5 * k * sg * dg);
            d2n.push(if sg > 0.0 { k * (0.75 * dg * dg / sg + 1.5 * sg * d2g) } else { 0.0 });
        }
        RadialDensity::from_parts(grid, n, dn, d2n)
    }

    /// TF energy assembled from the density: kinetic, nuclear attraction and
    /// Hartree terms.
    pub fn total_energy(&self, z: f64) -> Result<TfEnergy> {
        let d = self.density(z)?;
        let kinetic = functionals::tf_kinetic(&d)?.energy;
        let r = d.grid().r();
        let nuclear_integrand: Vec<f64> = r
            .iter()
            .zip(d.n())
            .map(|(r, n)| -4.0 * PI * z * r * n)
            .collect();
        let nuclear = d.grid().integrate(&nuclear_integrand)?;
        let vh = hartree_potential(d.grid(), d.n())?;
        let hartree_integrand: Vec<f64> = vh.iter().zip(d.n()).map(|(v, n)| 0.5 * v * n).collect();
        let hartree = d.integrate_volume(&hartree_integrand)?;
        let total = kinetic + nuclear + hartree;
        let from_slope = self.total_energy_from_slope(z);
        Ok(TfEnergy {
            z,
            kinetic,
            nuclear,
            hartree,
            total,
            from_slope,
        })
    }

    /// `E = (3/7) Z² φ'(0) / b`.
    pub fn total_energy_from_slope(&self, z: f64) -> f64 {
        3.0 / 7.0 * z * z * self.phi_slope_origin / length_scale(z)
    }

    /// LDA exchange energy of the TF density.
    pub fn lda_exchange(&self, z: f64) -> Result<f64> {
        Ok(functionals::lda_exchange(&self.density(z)?)?.energy)
    }

    /// Evaluates a correlation functional on `n_ζ` of the `Z = 1` TF density
    /// for every ζ and fits `E_C(ζ)` with the requested model.
    pub fn correlation_asymptotics(
        &self,
        id: FunctionalId,
        zetas: &[f64],
        model: CorrelationModel,
    ) -> Result<AsymptoticFit> {
        if !matches!(id, FunctionalId::LdaC | FunctionalId::PbeC) {
            return Err(Error::Parameter(format!(
                "correlation asymptotics support lda_c and pbe_c, got `{id}`"
            )));
        }
        if zetas.len() < 8 {
            return Err(Error::Parameter(format!("need at least 8 zeta values, got {}", zetas.len())));
        }
        if zetas.iter().any(|z| !(*z >= 1.0)) {
            return Err(Error::Parameter("zeta values must be ≥ 1".into()));
        }
        let lo = zetas.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = zetas.iter().cloned().fold(0.0, f64::max);
        if hi / lo < 100.0 - 1e-9 {
            return Err(Error::Parameter(format!(
                "zeta values must span at least two decades, got [{lo}, {hi}]"
            )));
        }
        let base = self.density(1.0)?;
        let energies = zetas
            .iter()
            .map(|&zeta| Ok(functionals::evaluate(&base.zeta_scale(zeta)?, id)?.energy))
            .collect::<Result<Vec<f64>>>()?;
        fit_correlation_series(id, zetas, &energies, model)
    }

    /// `ζ → ∞` limit of `E_C/ζ − A_C ln ζ` from the high-density expansion of
    /// the functional applied to the `Z = 1` TF density. Returns `(A_C, B_C)`.
    pub fn correlation_limit(&self, id: FunctionalId) -> Result<(f64, f64)> {
        let d = self.density(1.0)?;
        let a = -2.0 / 3.0 * correlation::PW92_LOG_COEFFICIENT;
        let c0 = correlation::pw92_high_density_constant();
        let g = d.reduced_gradients()?;
        let mut integrand = vec![0.0; d.n().len()];
        for (i, v) in integrand.iter_mut().enumerate() {
            let n = d.n()[i];
            if n <= DENSITY_FLOOR {
                continue;
            }
            let rs = correlation::wigner_seitz_radius(n);
            let mut e = correlation::PW92_LOG_COEFFICIENT * rs.ln() + c0;
            match id {
                FunctionalId::LdaC => {}
                FunctionalId::PbeC => {
                    let t2 = g.t[i] * g.t[i];
                    e += correlation::GAMMA_PBE * (correlation::BETA_PBE / correlation::GAMMA_PBE * t2).ln_1p();
                }
                other => {
                    return Err(Error::Parameter(format!(
                        "correlation limit supports lda_c and pbe_c, got `{other}`"
                    )))
                }
            }
            *v = n * e;
        }
        let b = d.integrate_volume(&integrand)? / d.n_electrons();
        Ok((a, b))
    }
}

/// Basis used to fit `E_C(ζ)`. The first two terms are always `ζ ln ζ` and
/// `ζ`; the optional corrections follow the high-density expansion
/// (`r_s ln r_s` and `r_s` terms scale as `ζ^{1/3} ln ζ` and `ζ^{1/3}`) and
/// an O(1) contribution of the low-density tail.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorrelationModel {
    pub corrections: usize,
}

impl CorrelationModel {
    pub const LEADING: CorrelationModel = CorrelationModel { corrections: 0 };
    pub const FULL: CorrelationModel = CorrelationModel { corrections: 3 };

    fn basis(&self, zeta: f64) -> Vec<f64> {
        let l = zeta.ln();
        let c = zeta.cbrt();
        let all = [zeta * l, zeta, c * l, c, 1.0];
        all[..2 + self.corrections.min(3)].to_vec()
    }

    fn names(&self) -> Vec<String> {
        ["A_C", "B_C", "c_cbrt_log", "c_cbrt", "c_const"][..2 + self.corrections.min(3)]
            .iter()
            .map(|s| s.to_string())
            .collect()
    }
}

impl Default for CorrelationModel {
    fn default() -> Self {
        Self::FULL
    }
}

pub fn fit_correlation_series(
    id: FunctionalId,
    zetas: &[f64],
    energies: &[f64],
    model: CorrelationModel,
) -> Result<AsymptoticFit> {
    let rows: Vec<Vec<f64>> = zetas.iter().map(|z| model.basis(*z)).collect();
    let mut fit = least_squares(&format!("{id}: E_C(zeta) correlation expansion"), &model.names(), &rows, energies)?;
    fit.abscissa = zetas.to_vec();
    fit.values = energies.to_vec();
    Ok(fit)
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct TfEnergy {
    pub z: f64,
    pub kinetic: f64,
    pub nuclear: f64,
    pub hartree: f64,
    pub total: f64,
    pub from_slope: f64,
}

impl TfEnergy {
    /// Relative disagreement between the two energy routes.
    pub fn discrepancy(&self) -> f64 {
        ((self.total - self.from_slope) / self.from_slope).abs()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn solution() -> &'static TfSolution {
        TfSolution::shared().unwrap()
    }

    /// Independent shooting: plain RK4 in x from the series start, bisection
    /// on the slope by whether φ crosses zero or turns upward.
    fn bisection_slope() -> f64 {
        let f = |x: f64, y: [f64; 2]| [y[1], y[0].max(0.0).powf(1.5) / x.sqrt()];
        let escapes_low = |slope: f64| -> bool {
            let mut x = 1e-6;
            let mut y = [1.0 + slope * x + 4.0 / 3.0 * x.powf(1.5), slope + 2.0 * x.sqrt()];
            let h0 = 1e-6;
            while x < 40.0 {
                let h = (h0 + 1e-3 * x).min(0.01);
                let k1 = f(x, y);
                let k2 = f(x + h / 2.0, [y[0] + h / 2.0 * k1[0], y[1] + h / 2.0 * k1[1]]);
                let k3 = f(x + h / 2.0, [y[0] + h / 2.0 * k2[0], y[1] + h / 2.0 * k2[1]]);
                let k4 = f(x + h, [y[0] + h * k3[0], y[1] + h * k3[1]]);
                y[0] += h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]);
                y[1] += h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]);
                x += h;
                if y[0] < 0.0 {
                    return true;
                }
                if y[1] > 0.0 {
                    return false;
                }
            }
            false
        };
        let (mut lo, mut hi) = (-1.7, -1.5);
        for _ in 0..50 {
            let mid = 0.5 * (lo + hi);
            if escapes_low(mid) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn slope_matches_bisection_oracle() {
        let oracle = bisection_slope();
        let sol = solution();
        assert!((oracle - (-1.58807)).abs() < 5e-5, "oracle {oracle}");
        assert!((sol.phi_slope_origin - oracle).abs() < 2e-5, "{} vs {oracle}", sol.phi_slope_origin);
    }

    #[test]
    fn boundary_values_and_shape() {
        let sol = solution();
        assert!((sol.phi(0.0) - 1.0).abs() < 1e-15);
        let mut prev = sol.phi(1e-9);
        let mut prev_slope = sol.dphi(1e-9);
        for k in 0..400 {
            let x = 1e-8 * 10f64.powf(k as f64 * 0.03);
            let p = sol.phi(x);
            assert!(p < prev + 1e-15 && p > 0.0, "x={x}");
            let s = sol.dphi(x);
            assert!(s >= prev_slope - 1e-9, "convexity at x={x}");
            prev = p;
            prev_slope = s;
        }
    }

    #[test]
    fn ode_residual_is_small() {
        let sol = solution();
        for x in [0.01, 0.1, 1.0, 3.0, 10.0, 50.0] {
            let h = 1e-3 * x;
            let d2 = (sol.dphi(x + h) - sol.dphi(x - h)) / (2.0 * h);
            let p = sol.phi(x);
            let rhs = p.powf(1.5) / x.sqrt();
            assert!((d2 - rhs).abs() < 1e-5 * rhs.max(1e-6), "x={x} d2={d2} rhs={rhs}");
        }
    }

    #[test]
    fn large_x_asymptote() {
        let sol = solution();
        let ratio = |x: f64| sol.phi(x) * x.powi(3) / 144.0;
        assert!(ratio(1e3) < ratio(1e4));
        assert!((ratio(9e4) - 1.0).abs() < 0.01, "{}", ratio(9e4));
    }

    #[test]
    fn density_normalization_and_origin() {
        let sol = solution();
        let d = sol.density(10.0).unwrap();
        assert!((d.n_electrons() - 10.0).abs() < 0.01, "{}", d.n_electrons());
        // n r^{3/2} tends to (2Z)^{3/2}/(3π²) at the origin
        let r0 = d.grid().r_min();
        let lim = (20.0f64).powf(1.5) / (3.0 * PI * PI);
        assert!((d.n()[0] * r0.powf(1.5) / lim - 1.0).abs() < 1e-4);
        assert!(sol.density(0.0).is_err());
        assert!(sol.density(-1.0).is_err());
    }

    #[test]
    fn density_commutes_with_zeta_scaling() {
        let sol = solution();
        let base = sol.density(2.0).unwrap();
        for zeta in [1.0, 3.0, 17.0, 100.0] {
            let scaled = base.zeta_scale(zeta).unwrap();
            let direct = sol.density_on(2.0 * zeta, scaled.grid().clone()).unwrap();
            for (a, b) in scaled.n().iter().zip(direct.n()).step_by(13) {
                if *b > 1e-20 {
                    assert!((a - b).abs() < 1e-9 * b, "zeta={zeta}");
                }
            }
        }
    }

    #[test]
    fn energies_follow_power_laws() {
        let sol = solution();
        let e1 = sol.total_energy(1.0).unwrap();
        assert!(e1.discrepancy() < 2e-3, "{e1:?}");
        assert!((e1.total / -0.7687 - 1.0).abs() < 1e-3, "{e1:?}");
        let e2 = sol.total_energy(2.0).unwrap();
        assert!((e2.total / e1.total / 2f64.powf(7.0 / 3.0) - 1.0).abs() < 1e-6);
        // virial theorem: E = −T
        assert!((e1.total + e1.kinetic).abs() < 1e-3 * e1.kinetic);
        let x1 = sol.lda_exchange(1.0).unwrap();
        let x2 = sol.lda_exchange(2.0).unwrap();
        assert!((x1 / -0.2208 - 1.0).abs() < 5e-3);
        assert!((x2 / x1 / 2f64.powf(5.0 / 3.0) - 1.0).abs() < 1e-6);
    }
}
