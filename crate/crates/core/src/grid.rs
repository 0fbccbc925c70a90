//! Radial grids, quadrature, finite differences and interpolation.
//!
//! Every grid is uniform in an auxiliary coordinate `u`: `u = ln r` for the
//! exponential kind and `u = r` for the linear kind. Quadrature, cumulative
//! integrals, stencils and interpolation all work in `u`, which keeps the
//! formulas identical for both kinds.

use serde::{Deserialize, Serialize};

use crate::error::{check_len, Error, Result};

pub const DEFAULT_POINTS: usize = 1200;
pub const DEFAULT_R_MAX: f64 = 50.0;
pub const DEFAULT_R_MIN_TIMES_Z: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GridKind {
    Exponential,
    Linear,
}

impl GridKind {
    pub fn as_str(self) -> &'static str {
        match self {
            GridKind::Exponential => "exponential",
            GridKind::Linear => "linear",
        }
    }
}

impl std::str::FromStr for GridKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "exponential" => Ok(GridKind::Exponential),
            "linear" => Ok(GridKind::Linear),
            other => Err(Error::Parameter(format!("unknown grid kind `{other}`"))),
        }
    }
}

/// Parameters that fully determine a grid.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub kind: GridKind,
    pub r_min: f64,
    pub r_max: f64,
    pub n_points: usize,
}

impl GridSpec {
    /// Default grid for an atom of nuclear charge `z`: the inner bound follows
    /// the cusp radius, the outer bound is fixed.
    pub fn atomic(z: f64) -> Self {
        GridSpec {
            kind: GridKind::Exponential,
            r_min: DEFAULT_R_MIN_TIMES_Z / z,
            r_max: DEFAULT_R_MAX,
            n_points: DEFAULT_POINTS,
        }
    }

    pub fn build(&self) -> Result<RadialGrid> {
        RadialGrid::new(self.kind, self.r_min, self.r_max, self.n_points)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RadialGrid {
    kind: GridKind,
    r: Vec<f64>,
    w: Vec<f64>,
    /// Spacing in the uniform coordinate.
    step: f64,
}

impl RadialGrid {
    pub fn new(kind: GridKind, r_min: f64, r_max: f64, n_points: usize) -> Result<Self> {
        if !(r_min > 0.0 && r_min.is_finite()) {
            return Err(Error::Parameter(format!("r_min must be positive, got {r_min}")));
        }
        if !(r_max > r_min && r_max.is_finite()) {
            return Err(Error::Parameter(format!(
                "r_max must exceed r_min, got r_min={r_min}, r_max={r_max}"
            )));
        }
        if n_points < 2 {
            return Err(Error::Parameter(format!(
                "a grid needs at least 2 points, got {n_points}"
            )));
        }
        let last = (n_points - 1) as f64;
        let (r, step) = match kind {
            GridKind::Exponential => {
                let ratio = r_max / r_min;
                let r: Vec<f64> = (0..n_points)
                    .map(|i| r_min * ratio.powf(i as f64 / last))
                    .collect();
                (r, ratio.ln() / last)
            }
            GridKind::Linear => {
                let h = (r_max - r_min) / last;
                let r: Vec<f64> = (0..n_points).map(|i| r_min + h * i as f64).collect();
                (r, h)
            }
        };
        let mut grid = RadialGrid {
            kind,
            r,
            w: Vec::new(),
            step,
        };
        grid.w = grid.quadrature_weights();
        Ok(grid)
    }

    pub fn from_spec(spec: &GridSpec) -> Result<Self> {
        spec.build()
    }

    /// Default atomic grid, see [`GridSpec::atomic`].
    pub fn atomic(z: f64) -> Self {
        GridSpec::atomic(z)
            .build()
            .expect("default atomic grid parameters are valid")
    }

    pub fn spec(&self) -> GridSpec {
        GridSpec {
            kind: self.kind,
            r_min: self.r_min(),
            r_max: self.r_max(),
            n_points: self.len(),
        }
    }

    pub fn kind(&self) -> GridKind {
        self.kind
    }

    pub fn r(&self) -> &[f64] {
        &self.r
    }

    pub fn weights(&self) -> &[f64] {
        &self.w
    }

    pub fn len(&self) -> usize {
        self.r.len()
    }

    pub fn is_empty(&self) -> bool {
        self.r.is_empty()
    }

    pub fn r_min(&self) -> f64 {
        self.r[0]
    }

    pub fn r_max(&self) -> f64 {
        self.r[self.r.len() - 1]
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    /// Same kind and point count with every radius multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        if !(factor > 0.0 && factor.is_finite()) {
            return Err(Error::Parameter(format!(
                "grid scale factor must be positive, got {factor}"
            )));
        }
        RadialGrid::new(
            self.kind,
            self.r_min() * factor,
            self.r_max() * factor,
            self.len(),
        )
    }

    /// dr/du at each point.
    fn jacobian(&self, i: usize) -> f64 {
        match self.kind {
            GridKind::Exponential => self.r[i],
            GridKind::Linear => 1.0,
        }
    }

    fn coordinate(&self, r: f64) -> f64 {
        match self.kind {
            GridKind::Exponential => (r / self.r[0]).ln(),
            GridKind::Linear => r - self.r[0],
        }
    }

    fn quadrature_weights(&self) -> Vec<f64> {
        let n = self.len();
        let c = end_corrected_trapezoid(n);
        (0..n).map(|i| c[i] * self.step * self.jacobian(i)).collect()
    }

    /// `∑ w_i f_i`, approximating the integral of `f` over `[r_min, r_max]`.
    pub fn integrate(&self, f: &[f64]) -> Result<f64> {
        check_len(self.len(), f.len())?;
        Ok(self.w.iter().zip(f).map(|(w, f)| w * f).sum())
    }

    /// Running integral `F_i = ∫_{r_0}^{r_i} f dr` (piecewise cubic, fourth order).
    pub fn cumulative(&self, f: &[f64]) -> Result<Vec<f64>> {
        let pieces = self.pieces(f)?;
        let mut out = vec![0.0; pieces.len() + 1];
        for (i, p) in pieces.iter().enumerate() {
            out[i + 1] = out[i] + p;
        }
        Ok(out)
    }

    /// Tail integral `∫_{r_i}^{r_max} f dr`, accumulated from the outer end so
    /// small tails keep their relative accuracy.
    pub fn tail_cumulative(&self, f: &[f64]) -> Result<Vec<f64>> {
        let pieces = self.pieces(f)?;
        let mut out = vec![0.0; pieces.len() + 1];
        for i in (0..pieces.len()).rev() {
            out[i] = out[i + 1] + pieces[i];
        }
        Ok(out)
    }

    /// Integrals over each grid interval.
    fn pieces(&self, f: &[f64]) -> Result<Vec<f64>> {
        let n = self.len();
        check_len(n, f.len())?;
        if n < 4 {
            return Err(Error::Parameter(
                "cumulative integration needs at least 4 points".into(),
            ));
        }
        let g: Vec<f64> = (0..n).map(|i| f[i] * self.jacobian(i)).collect();
        let h = self.step / 24.0;
        Ok((0..n - 1)
            .map(|i| {
                if i == 0 {
                    h * (9.0 * g[0] + 19.0 * g[1] - 5.0 * g[2] + g[3])
                } else if i == n - 2 {
                    h * (9.0 * g[n - 1] + 19.0 * g[n - 2] - 5.0 * g[n - 3] + g[n - 4])
                } else {
                    h * (-g[i - 1] + 13.0 * g[i] + 13.0 * g[i + 1] - g[i + 2])
                }
            })
            .collect())
    }

    /// First or second radial derivative by five-point stencils in the uniform
    /// coordinate (one-sided stencils at both ends).
    pub fn differentiate(&self, f: &[f64], order: u8) -> Result<Vec<f64>> {
        let n = self.len();
        check_len(n, f.len())?;
        if !(order == 1 || order == 2) {
            return Err(Error::Parameter(format!(
                "derivative order must be 1 or 2, got {order}"
            )));
        }
        if n < 5 {
            return Err(Error::Parameter(
                "differentiation needs at least 5 points".into(),
            ));
        }
        let fu = stencil_first(f, self.step);
        match (self.kind, order) {
            (GridKind::Linear, 1) => Ok(fu),
            (GridKind::Linear, _) => Ok(stencil_second(f, self.step)),
            (GridKind::Exponential, 1) => Ok(fu.iter().zip(&self.r).map(|(d, r)| d / r).collect()),
            (GridKind::Exponential, _) => {
                let fuu = stencil_second(f, self.step);
                Ok((0..n)
                    .map(|i| (fuu[i] - fu[i]) / (self.r[i] * self.r[i]))
                    .collect())
            }
        }
    }

    /// Index `i` of the cell `[r_i, r_{i+1}]` holding `r`, clamped to the grid,
    /// and the fractional position in the uniform coordinate.
    fn locate(&self, r: f64) -> (usize, f64) {
        let u = self.coordinate(r) / self.step;
        let n = self.len();
        if !(u > 0.0) {
            return (0, u);
        }
        let i = (u.floor() as usize).min(n - 2);
        (i, u - i as f64)
    }

    /// Cubic Lagrange interpolation of grid samples at radius `r`. Points
    /// outside the grid are extrapolated from the end cell.
    pub fn interpolate(&self, f: &[f64], r: f64) -> f64 {
        let n = f.len();
        debug_assert_eq!(n, self.len());
        if n < 4 {
            let (i, t) = self.locate(r);
            return f[i] + t * (f[i + 1] - f[i]);
        }
        let (i, t) = self.locate(r);
        // Stencil i-1..=i+2, shifted to stay in range.
        let start = i.saturating_sub(1).min(n - 4);
        let s = t + (i - start) as f64;
        lagrange4(&f[start..start + 4], s)
    }

    /// Whether `r` lies inside the grid bounds (with a relative slack).
    pub fn contains(&self, r: f64) -> bool {
        let eps = 1e-12;
        r >= self.r_min() * (1.0 - eps) && r <= self.r_max() * (1.0 + eps)
    }
}

/// Cubic Lagrange polynomial through `y[0..4]` at nodes 0,1,2,3 evaluated at `s`.
fn lagrange4(y: &[f64], s: f64) -> f64 {
    let l0 = -(s - 1.0) * (s - 2.0) * (s - 3.0) / 6.0;
    let l1 = s * (s - 2.0) * (s - 3.0) / 2.0;
    let l2 = -s * (s - 1.0) * (s - 3.0) / 2.0;
    let l3 = s * (s - 1.0) * (s - 2.0) / 6.0;
    l0 * y[0] + l1 * y[1] + l2 * y[2] + l3 * y[3]
}

/// Trapezoid weights with the fourth-order end corrections
/// `3/8, 7/6, 23/24, 1, ...` (falls back to Simpson/trapezoid on short grids).
fn end_corrected_trapezoid(n: usize) -> Vec<f64> {
    let mut c = vec![1.0; n];
    if n >= 6 {
        let ends = [3.0 / 8.0, 7.0 / 6.0, 23.0 / 24.0];
        for (k, e) in ends.iter().enumerate() {
            c[k] = *e;
            c[n - 1 - k] = *e;
        }
    } else if n % 2 == 1 && n >= 3 {
        for (i, ci) in c.iter_mut().enumerate() {
            *ci = if i == 0 || i == n - 1 {
                1.0 / 3.0
            } else if i % 2 == 1 {
                4.0 / 3.0
            } else {
                2.0 / 3.0
            };
        }
    } else {
        c[0] = 0.5;
        c[n - 1] = 0.5;
    }
    c
}

fn stencil_first(f: &[f64], h: f64) -> Vec<f64> {
    let n = f.len();
    let d = 12.0 * h;
    let mut out = vec![0.0; n];
    out[0] = (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]) / d;
    out[1] = (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]) / d;
    for i in 2..n - 2 {
        out[i] = (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]) / d;
    }
    let m = n - 1;
    out[m] = (25.0 * f[m] - 48.0 * f[m - 1] + 36.0 * f[m - 2] - 16.0 * f[m - 3] + 3.0 * f[m - 4]) / d;
    out[m - 1] = (3.0 * f[m] + 10.0 * f[m - 1] - 18.0 * f[m - 2] + 6.0 * f[m - 3] - f[m - 4]) / d;
    out
}

fn stencil_second(f: &[f64], h: f64) -> Vec<f64> {
    let n = f.len();
    let d = 12.0 * h * h;
    let mut out = vec![0.0; n];
    out[0] = (35.0 * f[0] - 104.0 * f[1] + 114.0 * f[2] - 56.0 * f[3] + 11.0 * f[4]) / d;
    out[1] = (11.0 * f[0] - 20.0 * f[1] + 6.0 * f[2] + 4.0 * f[3] - f[4]) / d;
    for i in 2..n - 2 {
        out[i] = (-f[i - 2] + 16.0 * f[i - 1] - 30.0 * f[i] + 16.0 * f[i + 1] - f[i + 2]) / d;
    }
    let m = n - 1;
    out[m] = (35.0 * f[m] - 104.0 * f[m - 1] + 114.0 * f[m - 2] - 56.0 * f[m - 3] + 11.0 * f[m - 4]) / d;
    out[m - 1] = (11.0 * f[m] - 20.0 * f[m - 1] + 6.0 * f[m - 2] + 4.0 * f[m - 3] - f[m - 4]) / d;
    out
}
