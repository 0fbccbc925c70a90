//! Bound states of the radial Schrödinger equation on an exponential grid.
//!
//! With `r = e^x` and `u = √r y`, the radial equation becomes
//! `y'' = [(l+½)² + 2r²(V − ε)] y`, which Numerov integrates on the uniform
//! `x` mesh. Outward and inward solutions meet at the outermost classical
//! turning point; the log-derivative mismatch there drives a safeguarded
//! Newton iteration on `ε` inside a bracket maintained by node counting.

use crate::error::{check_len, Error, Result};
use crate::grid::{GridKind, RadialGrid};

#[derive(Clone, Debug)]
pub struct RadialSolution {
    pub eigenvalue: f64,
    /// `u = r R(r)`, normalized to `∫u² dr = 1`, positive near the origin.
    pub u: Vec<f64>,
    pub iterations: usize,
}

const ENERGY_TOLERANCE: f64 = 1e-10;
const MAX_ITERATIONS: usize = 300;
/// WKB decay exponent past the turning point at which the inward solution starts.
const TAIL_EXPONENT: f64 = 45.0;
const OVERFLOW: f64 = 1e150;

struct Channel<'a> {
    grid: &'a RadialGrid,
    v: &'a [f64],
    l: f64,
    h2: f64,
}

struct Shot {
    nodes: usize,
    /// Outward log-derivative minus inward log-derivative at the matching point.
    mismatch: f64,
    /// `∫ r² y² dx / y_m²`, the energy derivative scale of the mismatch.
    norm: f64,
    y: Vec<f64>,
    matched: bool,
}

impl<'a> Channel<'a> {
    fn g(&self, i: usize, e: f64) -> f64 {
        let r = self.grid.r()[i];
        (self.l + 0.5).powi(2) + 2.0 * r * r * (self.v[i] - e)
    }

    fn classically_allowed(&self, i: usize, e: f64) -> bool {
        let r = self.grid.r()[i];
        e > self.v[i] + self.l * (self.l + 1.0) / (2.0 * r * r)
    }

    fn numerov_step(&self, y_prev: f64, y_cur: f64, g_prev: f64, g_cur: f64, g_next: f64) -> f64 {
        let h2 = self.h2;
        (2.0 * y_cur * (1.0 + 5.0 * h2 * g_cur / 12.0) - y_prev * (1.0 - h2 * g_prev / 12.0))
            / (1.0 - h2 * g_next / 12.0)
    }

    fn shoot(&self, e: f64, z: f64) -> Shot {
        let len = self.grid.len();
        let r = self.grid.r();
        let turning = (0..len).rev().find(|&i| self.classically_allowed(i, e));
        let Some(turning) = turning else {
            return Shot { nodes: 0, mismatch: f64::INFINITY, norm: 0.0, y: Vec::new(), matched: false };
        };
        let m = turning.clamp(5, len - 10);

        let g: Vec<f64> = (0..len).map(|i| self.g(i, e)).collect();
        let mut y = vec![0.0; len];
        let start = |r: f64| r.powf(self.l + 0.5) * (1.0 - z * r / (self.l + 1.0));
        y[0] = start(r[0]);
        y[1] = start(r[1]);
        let mut nodes = 0;
        for i in 1..=m {
            y[i + 1] = self.numerov_step(y[i - 1], y[i], g[i - 1], g[i], g[i + 1]);
            if y[i + 1].abs() > OVERFLOW {
                y[..=i + 1].iter_mut().for_each(|v| *v /= OVERFLOW);
            }
            if i < m && y[i] != 0.0 && y[i].signum() != y[i + 1].signum() {
                nodes += 1;
            }
        }
        let (out_m, out_lo, out_hi) = (y[m], y[m - 1], y[m + 1]);

        // inward start where the WKB exponent beyond the turning point is large
        let h = self.grid.step();
        let mut exponent = 0.0;
        let mut k = len - 1;
        for i in m + 1..len {
            exponent += g[i].max(0.0).sqrt() * h;
            if exponent > TAIL_EXPONENT {
                k = i;
                break;
            }
        }
        let k = k.max(m + 3);
        let mut w = vec![0.0; len];
        w[k] = 0.0;
        w[k - 1] = 1e-20;
        for i in (m..k - 1).rev() {
            w[i] = self.numerov_step(w[i + 2], w[i + 1], g[i + 2], g[i + 1], g[i]);
            if w[i].abs() > OVERFLOW {
                w[i..=k].iter_mut().for_each(|v| *v /= OVERFLOW);
            }
        }
        let w_lo = self.numerov_step(w[m + 1], w[m], g[m + 1], g[m], g[m - 1]);
        let scale = out_m / w[m];
        let in_lo = w_lo * scale;
        let in_hi = w[m + 1] * scale;
        for i in m + 1..=k {
            y[i] = w[i] * scale;
        }
        for v in y.iter_mut().skip(k + 1) {
            *v = 0.0;
        }

        let mismatch = ((out_hi - out_lo) - (in_hi - in_lo)) / (2.0 * h * out_m);
        let weighted: Vec<f64> = (0..len).map(|i| r[i] * r[i] * y[i] * y[i] / r[i]).collect();
        // grid weights carry the jacobian r, hence the division above
        let norm = self.grid.integrate(&weighted).unwrap_or(f64::NAN) / (out_m * out_m);
        Shot { nodes, mismatch, norm, y, matched: true }
    }
}

/// Finds the bound state with `n − l − 1` radial nodes in potential `v`
/// (hartree, including the nuclear term) for nuclear charge `z`.
pub fn solve_radial(grid: &RadialGrid, v: &[f64], n: u32, l: u32, z: f64) -> Result<RadialSolution> {
    check_len(grid.len(), v.len())?;
    if grid.kind() != GridKind::Exponential {
        return Err(Error::Parameter("the radial solver needs an exponential grid".into()));
    }
    if n == 0 || l >= n {
        return Err(Error::Parameter(format!("invalid quantum numbers n={n}, l={l}")));
    }
    let wanted = (n - l - 1) as usize;
    let label = crate::atom::shell_label(n, l);
    let ch = Channel {
        grid,
        v,
        l: l as f64,
        h2: grid.step() * grid.step(),
    };

    let mut lo = -(z * z) - 10.0;
    let mut hi = 0.0;
    // make sure the lower end is below the state
    for _ in 0..20 {
        let s = ch.shoot(lo, z);
        if s.nodes < wanted || (s.nodes == wanted && s.mismatch > 0.0) || !s.matched {
            break;
        }
        lo *= 4.0;
    }
    {
        let s = ch.shoot(hi, z);
        if s.matched && s.nodes < wanted {
            return Err(Error::Solver(format!(
                "eigenvalue search failed for {label}: only {} nodes below zero energy",
                s.nodes
            )));
        }
    }

    let mut e = 0.5 * (lo + hi);
    for it in 1..=MAX_ITERATIONS {
        let s = ch.shoot(e, z);
        let too_low = !s.matched || s.nodes < wanted || (s.nodes == wanted && s.mismatch > 0.0);
        if too_low {
            lo = e;
        } else {
            hi = e;
        }
        let mut next = 0.5 * (lo + hi);
        let mut step = f64::INFINITY;
        if s.matched && s.nodes == wanted && s.norm.is_finite() && s.norm > 0.0 {
            let newton = e + s.mismatch / (2.0 * s.norm);
            step = (newton - e).abs();
            if newton > lo && newton < hi {
                next = newton;
            }
        }
        let done = s.matched && s.nodes == wanted && (step < ENERGY_TOLERANCE || hi - lo < ENERGY_TOLERANCE);
        if done {
            return finish(grid, e, s, wanted, it, &label);
        }
        e = next;
    }
    Err(Error::Solver(format!(
        "eigenvalue search for {label} did not converge; bracket [{lo}, {hi}]"
    )))
}

fn finish(grid: &RadialGrid, e: f64, s: Shot, wanted: usize, iterations: usize, label: &str) -> Result<RadialSolution> {
    let r = grid.r();
    let mut u: Vec<f64> = s.y.iter().zip(r).map(|(y, r)| y * r.sqrt()).collect();
    let sq: Vec<f64> = u.iter().map(|v| v * v).collect();
    let norm = grid.integrate(&sq)?.sqrt();
    if !(norm > 0.0 && norm.is_finite()) {
        return Err(Error::Solver(format!("{label}: could not normalize the orbital")));
    }
    let first = u.iter().copied().find(|v| v.abs() > 0.0).unwrap_or(1.0);
    let sign = first.signum() / norm;
    u.iter_mut().for_each(|v| *v *= sign);
    let nodes = count_nodes(&u);
    if nodes != wanted {
        return Err(Error::Solver(format!(
            "{label}: converged orbital has {nodes} nodes, expected {wanted}"
        )));
    }
    Ok(RadialSolution { eigenvalue: e, u, iterations })
}

/// Sign changes of `u`, ignoring the numerically negligible tail.
pub fn count_nodes(u: &[f64]) -> usize {
    let peak = u.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let cut = 1e-10 * peak;
    let mut nodes = 0;
    let mut prev = 0.0f64;
    for &v in u {
        if v.abs() <= cut {
            continue;
        }
        if prev != 0.0 && v.signum() != prev.signum() {
            nodes += 1;
        }
        prev = v;
    }
    nodes
}
