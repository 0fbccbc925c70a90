//! Linear least squares with named coefficients.

use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AsymptoticFit {
    pub model: String,
    pub coefficients: BTreeMap<String, f64>,
    /// Data minus model, per point.
    pub residuals: Vec<f64>,
    pub residual_norm: f64,
    /// Ratio of extreme singular values of the column-normalized design matrix.
    pub condition_number: f64,
    /// Independent variable of each point, for reporting.
    pub abscissa: Vec<f64>,
    /// Fitted data, for reporting.
    pub values: Vec<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notices: Vec<String>,
}

impl AsymptoticFit {
    /// Coefficient by name; panics on a name the model does not define.
    pub fn coefficient(&self, name: &str) -> f64 {
        match self.coefficients.get(name) {
            Some(v) => *v,
            None => panic!("fit `{}` has no coefficient `{name}`", self.model),
        }
    }
}

/// Minimizes `Σ (y_i − Σ_j c_j rows[i][j])²` by SVD.
pub fn least_squares(model: &str, names: &[String], rows: &[Vec<f64>], y: &[f64]) -> Result<AsymptoticFit> {
    let m = rows.len();
    let k = names.len();
    if m != y.len() {
        return Err(Error::Shape { expected: m, got: y.len() });
    }
    if k == 0 || m < k {
        return Err(Error::Fit(format!(
            "{model}: {m} points cannot determine {k} coefficients"
        )));
    }
    if let Some(bad) = rows.iter().find(|r| r.len() != k) {
        return Err(Error::Shape { expected: k, got: bad.len() });
    }
    if rows.iter().flatten().chain(y).any(|v| !v.is_finite()) {
        return Err(Error::Fit(format!("{model}: non-finite input")));
    }
    let a = DMatrix::from_fn(m, k, |i, j| rows[i][j]);
    let scale: Vec<f64> = (0..k)
        .map(|j| {
            let n = a.column(j).norm();
            if n > 0.0 {
                n
            } else {
                1.0
            }
        })
        .collect();
    let scaled = DMatrix::from_fn(m, k, |i, j| a[(i, j)] / scale[j]);
    let b = DVector::from_column_slice(y);
    let svd = scaled.svd(true, true);
    let sv = &svd.singular_values;
    let (smax, smin) = (sv.max(), sv.min());
    if !(smin > smax * 1e-14) {
        return Err(Error::Fit(format!("{model}: design matrix is rank deficient")));
    }
    let x = svd
        .solve(&b, 0.0)
        .map_err(|e| Error::Fit(format!("{model}: {e}")))?;
    let coefficients: Vec<f64> = (0..k).map(|j| x[j] / scale[j]).collect();
    if coefficients.iter().any(|c| !c.is_finite()) {
        return Err(Error::Fit(format!("{model}: non-finite coefficients")));
    }
    let residuals: Vec<f64> = rows
        .iter()
        .zip(y)
        .map(|(row, y)| y - row.iter().zip(&coefficients).map(|(a, c)| a * c).sum::<f64>())
        .collect();
    let residual_norm = residuals.iter().map(|r| r * r).sum::<f64>().sqrt();
    Ok(AsymptoticFit {
        model: model.to_string(),
        coefficients: names.iter().cloned().zip(coefficients).collect(),
        residuals,
        residual_norm,
        condition_number: smax / smin,
        abscissa: Vec::new(),
        values: y.to_vec(),
        notices: Vec::new(),
    })
}

/// Least squares in a polynomial of `x` of the given order, coefficients
/// named `c0, c1, …`.
pub fn polynomial(model: &str, x: &[f64], y: &[f64], order: usize) -> Result<AsymptoticFit> {
    let names: Vec<String> = (0..=order).map(|p| format!("c{p}")).collect();
    let rows: Vec<Vec<f64>> = x.iter().map(|x| (0..=order).map(|p| x.powi(p as i32)).collect()).collect();
    let mut fit = least_squares(model, &names, &rows, y)?;
    fit.abscissa = x.to_vec();
    Ok(fit)
}
