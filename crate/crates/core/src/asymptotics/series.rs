//! Large-Z fits of exchange energies over the noble-gas series.

use serde::{Deserialize, Serialize};

use super::fit::{polynomial, AsymptoticFit};
use crate::error::{Error, Result};

/// Leading coefficient of LDA exchange on the Thomas–Fermi density.
pub const TF_EXCHANGE_COEFFICIENT: f64 = 0.2208;

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct SeriesPoint {
    pub z: f64,
    pub e_x: f64,
    pub e_x_lda: f64,
}

fn check(points: usize, order: usize) -> Result<()> {
    if points < order + 2 {
        return Err(Error::Fit(format!(
            "an order-{order} fit needs at least {} atoms, got {points}",
            order + 2
        )));
    }
    Ok(())
}

/// Fits `(E_x − E_x^LDA)/Z` as a polynomial in `Z^{-1/3}`; the intercept is
/// reported as `delta_c`.
pub fn fit_delta_c(points: &[SeriesPoint], order: usize) -> Result<AsymptoticFit> {
    check(points.len(), order)?;
    let x: Vec<f64> = points.iter().map(|p| p.z.powf(-1.0 / 3.0)).collect();
    let y: Vec<f64> = points.iter().map(|p| (p.e_x - p.e_x_lda) / p.z).collect();
    let mut fit = polynomial(&format!("delta_c: order-{order} polynomial in Z^(-1/3)"), &x, &y, order)?;
    let c0 = fit.coefficient("c0");
    fit.coefficients.insert("delta_c".into(), c0);
    Ok(fit)
}

/// Fits `(E_x^LDA + 0.2208 Z^{5/3})/Z` as a polynomial in `Z^{-1/3}`. The
/// intercept `c_lda` comes with `uncertainty`, the largest residual, since
/// shell oscillations dominate the scatter. `residual_sign_changes` counts
/// sign flips of the residuals ordered by Z.
pub fn fit_c_lda(points: &[(f64, f64)], order: usize) -> Result<AsymptoticFit> {
    check(points.len(), order)?;
    let mut pts = points.to_vec();
    pts.sort_by(|a, b| a.0.total_cmp(&b.0));
    let x: Vec<f64> = pts.iter().map(|p| p.0.powf(-1.0 / 3.0)).collect();
    let y: Vec<f64> = pts
        .iter()
        .map(|&(z, e)| (e + TF_EXCHANGE_COEFFICIENT * z.powf(5.0 / 3.0)) / z)
        .collect();
    let mut fit = polynomial(&format!("c_lda: order-{order} polynomial in Z^(-1/3)"), &x, &y, order)?;
    let c0 = fit.coefficient("c0");
    let spread = fit.residuals.iter().fold(0.0f64, |m, r| m.max(r.abs()));
    let flips = fit.residuals.windows(2).filter(|w| w[0] * w[1] < 0.0).count();
    fit.coefficients.insert("c_lda".into(), c0);
    fit.coefficients.insert("uncertainty".into(), spread);
    fit.coefficients.insert("residual_sign_changes".into(), flips as f64);
    Ok(fit)
}

/// True when residuals ordered by Z are neither non-decreasing nor
/// non-increasing.
pub fn residuals_oscillate(fit: &AsymptoticFit) -> bool {
    let r = &fit.residuals;
    let up = r.windows(2).all(|w| w[1] >= w[0]);
    let down = r.windows(2).all(|w| w[1] <= w[0]);
    !(up || down)
}
