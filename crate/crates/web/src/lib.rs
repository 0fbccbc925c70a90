//! Browser bindings: scaled exponential densities, exchange enhancement
//! factors and the cusp/bulk/evanescent split of `a·e^{−br}`.

use std::f64::consts::PI;

use wasm_bindgen::prelude::*;
use zetalab::asymptotics::regions::{region_energies, ExponentialDensity, Region};
use zetalab::functionals::{b88_beta_asymptotic, b88_enhancement, gea_enhancement, pbe_enhancement};
use zetalab::{Error, FunctionalId, Result};

fn js(e: Error) -> JsError {
    JsError::new(&e.to_string())
}

fn profile(a: f64, b: f64, zeta: f64, radii: &[f64]) -> Result<Vec<f64>> {
    let d = ExponentialDensity::new(a, b)?.zeta_scale(zeta)?;
    Ok(radii.iter().map(|&r| 4.0 * PI * r * r * d.n(r)).collect())
}

fn reduced_gradient(a: f64, b: f64, zeta: f64, radii: &[f64]) -> Result<Vec<f64>> {
    let d = ExponentialDensity::new(a, b)?.zeta_scale(zeta)?;
    Ok(radii.iter().map(|&r| d.s(r)).collect())
}

fn enhancement_factors(functional: &str, s: &[f64]) -> Result<Vec<f64>> {
    let f: fn(f64) -> f64 = match functional.parse::<FunctionalId>()? {
        FunctionalId::LdaX => |_| 1.0,
        FunctionalId::GeaX => gea_enhancement,
        FunctionalId::PbeX => pbe_enhancement,
        FunctionalId::B88X => |s| b88_enhancement(s, b88_beta_asymptotic()),
        other => return Err(Error::Parameter(format!("`{other}` has no exchange enhancement factor"))),
    };
    Ok(s.iter().map(|&s| f(s)).collect())
}

/// 4πr² n_ζ(r) of `a·e^{−br}` at each radius.
#[wasm_bindgen(js_name = scaledProfile)]
pub fn scaled_profile(a: f64, b: f64, zeta: f64, radii: &[f64]) -> std::result::Result<Vec<f64>, JsError> {
    profile(a, b, zeta, radii).map_err(js)
}

/// Reduced gradient `s` of the scaled density at each radius.
#[wasm_bindgen(js_name = scaledS)]
pub fn scaled_s(a: f64, b: f64, zeta: f64, radii: &[f64]) -> std::result::Result<Vec<f64>, JsError> {
    reduced_gradient(a, b, zeta, radii).map_err(js)
}

/// `F_x(s)` for lda_x, gea_x, pbe_x or b88_x.
#[wasm_bindgen]
pub fn enhancement(functional: &str, s: &[f64]) -> std::result::Result<Vec<f64>, JsError> {
    enhancement_factors(functional, s).map_err(js)
}

/// Region radii and per-region energies. Absent radii are NaN.
#[wasm_bindgen]
#[derive(Clone, Debug)]
pub struct RegionSplit {
    pub r_c: f64,
    pub r_s: f64,
    pub r_e: f64,
    pub electrons: f64,
    tf: [f64; 3],
    lda_x: [f64; 3],
}

#[wasm_bindgen]
impl RegionSplit {
    /// `[cusp, bulk, evanescent]` Thomas–Fermi kinetic energy.
    pub fn tf(&self) -> Vec<f64> {
        self.tf.to_vec()
    }

    /// `[cusp, bulk, evanescent]` LDA exchange energy.
    pub fn lda_x(&self) -> Vec<f64> {
        self.lda_x.to_vec()
    }
}

fn split(a: f64, b: f64, zeta: f64, threshold: f64) -> Result<RegionSplit> {
    let d = ExponentialDensity::new(a, b)?;
    let parts = |id| -> Result<_> {
        let (report, e) = region_energies(&d, zeta, threshold, id)?;
        Ok((report, Region::ALL.map(|r| e[&r])))
    };
    let (report, tf) = parts(FunctionalId::Tf)?;
    let (_, lda_x) = parts(FunctionalId::LdaX)?;
    Ok(RegionSplit {
        r_c: report.r_c.unwrap_or(f64::NAN),
        r_s: report.r_s.unwrap_or(f64::NAN),
        r_e: report.r_e.unwrap_or(f64::NAN),
        electrons: d.zeta_scale(zeta)?.electron_count(),
        tf,
        lda_x,
    })
}

#[wasm_bindgen]
pub fn regions(a: f64, b: f64, zeta: f64, threshold: f64) -> std::result::Result<RegionSplit, JsError> {
    split(a, b, zeta, threshold).map_err(js)
}
