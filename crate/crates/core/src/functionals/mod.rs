//! Kinetic, exchange and correlation energy functionals on spherical densities.
//!
//! Every functional returns its energy together with the radial energy
//! density `4πr² e(r)`; the energy is the grid quadrature of that curve.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::density::{RadialDensity, ReducedGradients, DENSITY_FLOOR};
use crate::error::{Error, Result};

pub mod correlation;

pub use correlation::{BETA_MB, BETA_PBE, GAMMA_PBE};

/// Gradient coefficient of exchange for the slowly varying gas.
pub const MU_GEA: f64 = 10.0 / 81.0;
pub const MU_PBE: f64 = 0.21951;
pub const KAPPA_PBE: f64 = 0.804;
/// Fitted B88 coefficient.
pub const BETA_B88: f64 = 0.0042;

/// `(3/4)(3/π)^{1/3}`
pub fn lda_exchange_constant() -> f64 {
    0.75 * (3.0 / PI).cbrt()
}

/// `(3/10)(3π²)^{2/3}`
pub fn tf_kinetic_constant() -> f64 {
    0.3 * (3.0 * PI * PI).powf(2.0 / 3.0)
}

/// B88 coefficient that makes the gradient term twice the slowly-varying one,
/// `5/(108 (6π⁵)^{1/3})`.
pub fn b88_beta_asymptotic() -> f64 {
    5.0 / (108.0 * (6.0 * PI.powi(5)).cbrt())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FunctionalId {
    #[serde(rename = "tf")]
    Tf,
    #[serde(rename = "vw9")]
    Vw9,
    #[serde(rename = "gea4")]
    Gea4,
    #[serde(rename = "lda_x")]
    LdaX,
    #[serde(rename = "gea_x")]
    GeaX,
    #[serde(rename = "pbe_x")]
    PbeX,
    #[serde(rename = "b88_x")]
    B88X,
    #[serde(rename = "lda_c")]
    LdaC,
    #[serde(rename = "gea_c")]
    GeaC,
    #[serde(rename = "pbe_c")]
    PbeC,
}

impl FunctionalId {
    pub const ALL: [FunctionalId; 10] = [
        FunctionalId::Tf,
        FunctionalId::Vw9,
        FunctionalId::Gea4,
        FunctionalId::LdaX,
        FunctionalId::GeaX,
        FunctionalId::PbeX,
        FunctionalId::B88X,
        FunctionalId::LdaC,
        FunctionalId::GeaC,
        FunctionalId::PbeC,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FunctionalId::Tf => "tf",
            FunctionalId::Vw9 => "vw9",
            FunctionalId::Gea4 => "gea4",
            FunctionalId::LdaX => "lda_x",
            FunctionalId::GeaX => "gea_x",
            FunctionalId::PbeX => "pbe_x",
            FunctionalId::B88X => "b88_x",
            FunctionalId::LdaC => "lda_c",
            FunctionalId::GeaC => "gea_c",
            FunctionalId::PbeC => "pbe_c",
        }
    }

    pub fn is_exchange(self) -> bool {
        matches!(
            self,
            FunctionalId::LdaX | FunctionalId::GeaX | FunctionalId::PbeX | FunctionalId::B88X
        )
    }

    pub fn is_correlation(self) -> bool {
        matches!(self, FunctionalId::LdaC | FunctionalId::GeaC | FunctionalId::PbeC)
    }

    pub fn valid_ids() -> String {
        Self::ALL.map(|f| f.as_str()).join(", ")
    }
}

impl fmt::Display for FunctionalId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FunctionalId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|f| f.as_str() == s)
            .ok_or_else(|| {
                Error::Parameter(format!(
                    "unknown functional `{s}` (valid: {})",
                    Self::valid_ids()
                ))
            })
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FunctionalResult {
    pub functional_id: FunctionalId,
    /// hartree
    pub energy: f64,
    /// `4πr² e(r)` in hartree/bohr, on the density's grid.
    pub radial_energy_density: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub warning: Option<String>,
}

fn finish(d: &RadialDensity, id: FunctionalId, per_volume: Vec<f64>) -> Result<FunctionalResult> {
    let radial = d.radial_weighted(&per_volume);
    let energy = d.grid().integrate(&radial)?;
    Ok(FunctionalResult {
        functional_id: id,
        energy,
        radial_energy_density: radial,
        warning: None,
    })
}

/// Reduced gradients, or all-zero masked gradients for an empty density.
fn gradients(d: &RadialDensity) -> ReducedGradients {
    d.reduced_gradients().unwrap_or_else(|_| {
        let len = d.n().len();
        ReducedGradients {
            s: vec![0.0; len],
            q: vec![0.0; len],
            t: vec![0.0; len],
            k_f: vec![0.0; len],
            k_s: vec![0.0; len],
            valid: vec![false; len],
        }
    })
}

pub fn tf_kinetic(d: &RadialDensity) -> Result<FunctionalResult> {
    let c = tf_kinetic_constant();
    let e = d.n().iter().map(|n| c * n.powf(5.0 / 3.0)).collect();
    finish(d, FunctionalId::Tf, e)
}

/// One ninth of the von Weizsäcker term, `(1/72) |∇n|²/n`.
pub fn vw_gradient_kinetic(d: &RadialDensity) -> Result<FunctionalResult> {
    let e = d
        .n()
        .iter()
        .zip(d.dn())
        .map(|(n, dn)| if *n > DENSITY_FLOOR { dn * dn / (72.0 * n) } else { 0.0 })
        .collect();
    finish(d, FunctionalId::Vw9, e)
}

/// Fourth-order gradient correction to the kinetic energy,
/// `(3/10)(3π²)^{2/3} n^{5/3} [ (8/81) q² − (1/9) s² q + (8/243) s⁴ ]`.
///
/// Flags a warning when the density has a cusp at the innermost point, where
/// this term is not a valid asymptotic correction.
pub fn gea4_kinetic(d: &RadialDensity) -> Result<FunctionalResult> {
    let g = gradients(d);
    let c = tf_kinetic_constant();
    let e = (0..d.n().len())
        .map(|i| {
            if !g.valid[i] {
                return 0.0;
            }
            let (s2, q) = (g.s[i] * g.s[i], g.q[i]);
            c * d.n()[i].powf(5.0 / 3.0) * (8.0 / 81.0 * q * q - s2 * q / 9.0 + 8.0 / 243.0 * s2 * s2)
        })
        .collect();
    let mut res = finish(d, FunctionalId::Gea4, e)?;
    if has_cusp(d) {
        res.warning = Some("density has a nuclear cusp; the fourth-order term is not asymptotically valid".into());
    }
    Ok(res)
}

/// An analytic spherical density has n'(r) ≈ n''(0) r near the origin; a cusp
/// keeps n'(0) finite.
pub fn has_cusp(d: &RadialDensity) -> bool {
    let r0 = d.grid().r_min();
    let (n, d1, d2) = (d.n()[0], d.dn()[0], d.d2n()[0]);
    n > DENSITY_FLOOR && d1.abs() > 10.0 * d2.abs() * r0 && d1.abs() > 0.0
}

/// LDA exchange energy per volume.
pub fn lda_exchange_density(n: f64) -> f64 {
    -lda_exchange_constant() * n.powf(4.0 / 3.0)
}

pub fn gea_enhancement(s: f64) -> f64 {
    1.0 + MU_GEA * s * s
}

pub fn pbe_enhancement(s: f64) -> f64 {
    1.0 + KAPPA_PBE - KAPPA_PBE / (1.0 + MU_PBE * s * s / KAPPA_PBE)
}

/// B88 enhancement over LDA expressed through `s`, for the unpolarized gas.
pub fn b88_enhancement(s: f64, beta: f64) -> f64 {
    let x = 2.0 * (3.0 * PI * PI).cbrt() * s;
    let xs = 2f64.cbrt() * x;
    1.0 + beta * 2f64.cbrt() * x * x / (lda_exchange_constant() * (1.0 + 6.0 * beta * xs * xs.asinh()))
}

pub fn lda_exchange(d: &RadialDensity) -> Result<FunctionalResult> {
    let e = d.n().iter().map(|n| lda_exchange_density(*n)).collect();
    finish(d, FunctionalId::LdaX, e)
}

fn enhanced_exchange(d: &RadialDensity, id: FunctionalId, f: impl Fn(f64) -> f64) -> Result<FunctionalResult> {
    let g = gradients(d);
    let e = d
        .n()
        .iter()
        .zip(g.s.iter().zip(&g.valid))
        .map(|(n, (s, ok))| {
            let base = lda_exchange_density(*n);
            if *ok { base * f(*s) } else { base }
        })
        .collect();
    finish(d, id, e)
}

pub fn gea_exchange(d: &RadialDensity) -> Result<FunctionalResult> {
    enhanced_exchange(d, FunctionalId::GeaX, gea_enhancement)
}

pub fn pbe_exchange(d: &RadialDensity) -> Result<FunctionalResult> {
    enhanced_exchange(d, FunctionalId::PbeX, pbe_enhancement)
}

/// B88 exchange for a closed-shell density. The spin-resolved form is
/// evaluated with `n_σ = n/2`, so `x_σ = 2^{1/3} x` and the correction becomes
/// `−β 2^{1/3} n^{4/3} x² / (1 + 6β x_σ asinh x_σ)`.
pub fn b88_exchange(d: &RadialDensity, beta: f64) -> Result<FunctionalResult> {
    if !(beta > 0.0 && beta.is_finite()) {
        return Err(Error::Parameter(format!("B88 beta must be positive, got {beta}")));
    }
    let spin = 2f64.cbrt();
    let e = d
        .n()
        .iter()
        .zip(d.dn())
        .map(|(n, dn)| {
            let base = lda_exchange_density(*n);
            if *n <= DENSITY_FLOOR {
                return base;
            }
            let n43 = n.powf(4.0 / 3.0);
            let x = dn.abs() / n43;
            let xs = spin * x;
            base - beta * spin * n43 * x * x / (1.0 + 6.0 * beta * xs * xs.asinh())
        })
        .collect();
    finish(d, FunctionalId::B88X, e)
}

pub fn lda_correlation(d: &RadialDensity) -> Result<FunctionalResult> {
    let e = d
        .n()
        .iter()
        .map(|n| if *n > DENSITY_FLOOR { n * correlation::epsilon_c(*n) } else { 0.0 })
        .collect();
    finish(d, FunctionalId::LdaC, e)
}

/// LDA correlation plus the high-density second-order term `n β t²`.
pub fn gea_correlation(d: &RadialDensity) -> Result<FunctionalResult> {
    let g = gradients(d);
    let e = (0..d.n().len())
        .map(|i| {
            let n = d.n()[i];
            if !g.valid[i] {
                return 0.0;
            }
            n * (correlation::epsilon_c(n) + BETA_MB * g.t[i] * g.t[i])
        })
        .collect();
    finish(d, FunctionalId::GeaC, e)
}

pub fn pbe_correlation(d: &RadialDensity) -> Result<FunctionalResult> {
    let g = gradients(d);
    let e = (0..d.n().len())
        .map(|i| {
            let n = d.n()[i];
            if !g.valid[i] {
                return 0.0;
            }
            let eps = correlation::epsilon_c(n);
            n * (eps + correlation::pbe_h(eps, g.t[i]))
        })
        .collect();
    finish(d, FunctionalId::PbeC, e)
}

/// Evaluates a functional by id (B88 with the fitted β).
pub fn evaluate(d: &RadialDensity, id: FunctionalId) -> Result<FunctionalResult> {
    match id {
        FunctionalId::Tf => tf_kinetic(d),
        FunctionalId::Vw9 => vw_gradient_kinetic(d),
        FunctionalId::Gea4 => gea4_kinetic(d),
        FunctionalId::LdaX => lda_exchange(d),
        FunctionalId::GeaX => gea_exchange(d),
        FunctionalId::PbeX => pbe_exchange(d),
        FunctionalId::B88X => b88_exchange(d, BETA_B88),
        FunctionalId::LdaC => lda_correlation(d),
        FunctionalId::GeaC => gea_correlation(d),
        FunctionalId::PbeC => pbe_correlation(d),
    }
}

/// `4πr² (e_x − e_x^{LDA})` for an exchange functional.
pub fn exchange_energy_density_difference(d: &RadialDensity, id: FunctionalId) -> Result<Vec<f64>> {
    if !id.is_exchange() {
        return Err(Error::Parameter(format!(
            "`{id}` is not an exchange functional (valid: lda_x, gea_x, pbe_x, b88_x)"
        )));
    }
    let lda = lda_exchange(d)?;
    let other = evaluate(d, id)?;
    Ok(other
        .radial_energy_density
        .iter()
        .zip(&lda.radial_energy_density)
        .map(|(a, b)| a - b)
        .collect())
}
