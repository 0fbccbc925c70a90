//! Hartree potential of a spherical charge distribution.

use std::f64::consts::PI;

use crate::error::Result;
use crate::grid::RadialGrid;

/// `V_H(r) = Q(r)/r + 4π ∫_r^∞ n(r') r' dr'` with `Q(r) = 4π ∫_0^r n r'² dr'`.
pub fn hartree_potential(grid: &RadialGrid, n: &[f64]) -> Result<Vec<f64>> {
    let r = grid.r();
    let inner: Vec<f64> = r.iter().zip(n).map(|(r, n)| 4.0 * PI * r * r * n).collect();
    let outer: Vec<f64> = r.iter().zip(n).map(|(r, n)| 4.0 * PI * r * n).collect();
    let q = grid.cumulative(&inner)?;
    let p = grid.cumulative(&outer)?;
    let total_p = p[p.len() - 1];
    Ok(r
        .iter()
        .zip(q.iter().zip(&p))
        .map(|(r, (q, p))| q / r + (total_p - p))
        .collect())
}
