//! Cusp, bulk and evanescent regions of exponential densities under ζ-scaling.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::fit::{least_squares, AsymptoticFit};
use crate::density::{RadialDensity, DENSITY_FLOOR};
use crate::error::{Error, Result};
use crate::functionals::{self, FunctionalId};
use crate::grid::{GridKind, RadialGrid};

/// `n(r) = a e^{−br}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExponentialDensity {
    pub a: f64,
    pub b: f64,
}

impl ExponentialDensity {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a > 0.0 && b > 0.0 && a.is_finite() && b.is_finite()) {
            return Err(Error::Parameter(format!("exponential density needs a, b > 0, got a={a}, b={b}")));
        }
        Ok(Self { a, b })
    }

    /// `n_ζ` is again exponential, with `a → ζ²a` and `b → ζ^{1/3}b`.
    pub fn zeta_scale(&self, zeta: f64) -> Result<Self> {
        if !(zeta > 0.0 && zeta.is_finite()) {
            return Err(Error::Parameter(format!("zeta must be positive, got {zeta}")));
        }
        Self::new(zeta * zeta * self.a, zeta.cbrt() * self.b)
    }

    pub fn n(&self, r: f64) -> f64 {
        self.a * (-self.b * r).exp()
    }

    pub fn electron_count(&self) -> f64 {
        8.0 * PI * self.a / self.b.powi(3)
    }

    fn k_f(&self, r: f64) -> f64 {
        (3.0 * PI * PI * self.n(r)).cbrt()
    }

    /// `s = b/(2k_F)`
    pub fn s(&self, r: f64) -> f64 {
        self.b / (2.0 * self.k_f(r))
    }

    /// `q/s = (b − 2/r)/(2k_F)`
    pub fn q_over_s(&self, r: f64) -> f64 {
        (self.b - 2.0 / r) / (2.0 * self.k_f(r))
    }

    /// Grid reaching from deep inside the cusp to where `n` has decayed by `e^{−100}`.
    pub fn grid(&self) -> Result<RadialGrid> {
        RadialGrid::new(GridKind::Exponential, 1e-10 / self.b, 100.0 / self.b, 6000)
    }

    pub fn density(&self) -> Result<RadialDensity> {
        let (a, b) = (self.a, self.b);
        RadialDensity::from_closed_form(
            self.grid()?,
            |r| a * (-b * r).exp(),
            |r| -b * a * (-b * r).exp(),
            |r| b * b * a * (-b * r).exp(),
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Region {
    Cusp,
    Bulk,
    Evanescent,
}

impl Region {
    pub const ALL: [Region; 3] = [Region::Cusp, Region::Bulk, Region::Evanescent];

    pub fn as_str(self) -> &'static str {
        match self {
            Region::Cusp => "cusp",
            Region::Bulk => "bulk",
            Region::Evanescent => "evanescent",
        }
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Region {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Region::ALL
            .into_iter()
            .find(|r| r.as_str() == s)
            .ok_or_else(|| Error::Parameter(format!("unknown region `{s}`; valid: cusp, bulk, evanescent")))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RegionReport {
    pub zeta: f64,
    pub threshold: f64,
    /// Evanescent onset: beyond it both `s` and `|q/s|` exceed the threshold.
    pub r_e: Option<f64>,
    /// Root of `s = threshold` alone.
    pub r_s: Option<f64>,
    /// Cusp extent: below it `|q/s|` exceeds the threshold.
    pub r_c: Option<f64>,
    /// Keyed `"<functional>/<region>"`, hartree.
    pub contributions: BTreeMap<String, f64>,
}

const SCAN_POINTS: usize = 4000;

fn bisect(f: impl Fn(f64) -> bool, mut inside: f64, mut outside: f64) -> f64 {
    for _ in 0..200 {
        let mid = 0.5 * (inside + outside);
        if f(mid) {
            inside = mid;
        } else {
            outside = mid;
        }
        if (inside - outside).abs() <= 4.0 * f64::EPSILON * inside.abs().max(outside.abs()) {
            break;
        }
    }
    0.5 * (inside + outside)
}

fn log_scan(lo: f64, hi: f64) -> impl DoubleEndedIterator<Item = f64> {
    let ratio = (hi / lo).ln();
    (0..SCAN_POINTS).map(move |i| lo * (ratio * i as f64 / (SCAN_POINTS - 1) as f64).exp())
}

/// Region radii of `d` after ζ-scaling; absent regions are `None`.
pub fn region_radii(d: &ExponentialDensity, zeta: f64, threshold: f64) -> Result<RegionReport> {
    if !(threshold > 0.0 && threshold.is_finite()) {
        return Err(Error::Parameter(format!("threshold must be positive, got {threshold}")));
    }
    let e = d.zeta_scale(zeta)?;
    let b = e.b;

    let cusp = |r: f64| e.q_over_s(r).abs() > threshold;
    let r_c = {
        let mut prev = None;
        let mut root = None;
        for r in log_scan(1e-12 / b, 2.0 / b) {
            if !cusp(r) {
                root = prev.map(|p| bisect(cusp, p, r));
                break;
            }
            prev = Some(r);
        }
        root
    };

    // s grows like e^{br/3}; far enough out both conditions hold
    let s0 = e.s(0.0);
    let r_far = 3.0 / b * (100.0 * threshold / s0).max(1.0).ln() + 8.0 / b;
    let evanescent = |r: f64| e.s(r) > threshold && e.q_over_s(r).abs() > threshold;
    let r_e = if !evanescent(r_far) {
        None
    } else {
        let mut prev = r_far;
        let mut root = Some(0.0);
        for r in log_scan(1e-12 / b, r_far).rev() {
            if !evanescent(r) {
                root = Some(bisect(evanescent, prev, r));
                break;
            }
            prev = r;
        }
        root
    };
    let r_s = if s0 >= threshold {
        None
    } else {
        Some(3.0 / b * (threshold / s0).ln())
    };

    Ok(RegionReport {
        zeta,
        threshold,
        r_e,
        r_s,
        r_c,
        contributions: BTreeMap::new(),
    })
}

/// Region integrals of one functional on `n_ζ`, from the cumulative radial
/// energy density. Missing radii leave the neighbouring region empty.
pub fn region_energies(
    d: &ExponentialDensity,
    zeta: f64,
    threshold: f64,
    id: FunctionalId,
) -> Result<(RegionReport, BTreeMap<Region, f64>)> {
    let mut report = region_radii(d, zeta, threshold)?;
    let density = d.zeta_scale(zeta)?.density()?;
    let res = functionals::evaluate(&density, id)?;
    let grid = density.grid();
    let head = grid.cumulative(&res.radial_energy_density)?;
    let tail = grid.tail_cumulative(&res.radial_energy_density)?;
    let total = res.energy;
    let clamp = |r: f64| r.clamp(grid.r_min(), grid.r_max());
    let r_c = report.r_c.map_or(grid.r_min(), clamp);
    let c = grid.interpolate(&head, r_c);
    let ev = report.r_e.map_or(0.0, |r_e| grid.interpolate(&tail, clamp(r_e.max(r_c))));
    let mut out = BTreeMap::new();
    out.insert(Region::Cusp, c);
    out.insert(Region::Bulk, total - c - ev);
    out.insert(Region::Evanescent, ev);
    for (region, v) in &out {
        report.contributions.insert(format!("{id}/{region}"), *v);
    }
    Ok((report, out))
}

fn check_zetas(zetas: &[f64]) -> Result<()> {
    if zetas.len() < 3 {
        return Err(Error::Fit(format!("need at least 3 zeta values, got {}", zetas.len())));
    }
    if zetas.iter().any(|z| !(*z > 1.0 && z.is_finite())) {
        return Err(Error::Parameter("zeta values must exceed 1 for the log-log fits".into()));
    }
    Ok(())
}

/// `ln|E| = p ln ζ + a ln ln ζ + c`.
fn exponent_fit(model: &str, zetas: &[f64], values: &[f64]) -> Result<AsymptoticFit> {
    let names: Vec<String> = ["p", "log_log", "const"].iter().map(|s| s.to_string()).collect();
    let rows: Vec<Vec<f64>> = zetas.iter().map(|z| vec![z.ln(), z.ln().ln(), 1.0]).collect();
    let y: Vec<f64> = values.iter().map(|v| v.abs().ln()).collect();
    let mut fit = least_squares(model, &names, &rows, &y)?;
    fit.abscissa = zetas.to_vec();
    fit.values = values.to_vec();
    Ok(fit)
}

/// Log-log fit of `r_c(ζ)` (coefficients `r_c_exponent`, `r_c_log_prefactor`),
/// plus the `r_e ζ^{1/3}/ln ζ` ratio: its values at the two largest ζ and
/// its relative spread over the top decade of the list.
pub fn region_scaling_exponents(d: &ExponentialDensity, zetas: &[f64], threshold: f64) -> Result<AsymptoticFit> {
    check_zetas(zetas)?;
    let mut zs = zetas.to_vec();
    zs.sort_by(f64::total_cmp);
    let lo = zs[0];
    let hi = zs[zs.len() - 1];
    if hi / lo < 1e3 * (1.0 - 1e-12) {
        return Err(Error::Fit(format!("zeta values must span three decades, got [{lo}, {hi}]")));
    }
    let reports = zs
        .iter()
        .map(|&z| region_radii(d, z, threshold))
        .collect::<Result<Vec<_>>>()?;
    let mut notices = Vec::new();
    let mut cz = Vec::new();
    let mut rc = Vec::new();
    for r in &reports {
        match r.r_c {
            Some(v) => {
                cz.push(r.zeta);
                rc.push(v);
            }
            None => notices.push(format!("zeta={}: no cusp region", r.zeta)),
        }
    }
    let names = vec!["r_c_exponent".to_string(), "r_c_log_prefactor".to_string()];
    let rows: Vec<Vec<f64>> = cz.iter().map(|z| vec![z.ln(), 1.0]).collect();
    let y: Vec<f64> = rc.iter().map(|r| r.ln()).collect();
    let mut fit = least_squares("r_c(zeta) log-log", &names, &rows, &y)?;
    fit.abscissa = cz;
    fit.values = rc;

    let ratios: Vec<(f64, f64)> = reports
        .iter()
        .filter_map(|r| r.r_e.map(|re| (r.zeta, re * r.zeta.cbrt() / r.zeta.ln())))
        .collect();
    let top: Vec<f64> = ratios.iter().filter(|(z, _)| *z >= hi / 10.0).map(|p| p.1).collect();
    if top.len() >= 2 {
        let max = top.iter().cloned().fold(f64::MIN, f64::max);
        let min = top.iter().cloned().fold(f64::MAX, f64::min);
        fit.coefficients.insert("r_e_ratio_top_decade_spread".into(), (max - min) / min);
        fit.coefficients.insert("r_e_ratio_at_max_zeta".into(), top[top.len() - 1]);
    } else {
        notices.push("fewer than two evanescent radii in the top decade".into());
    }
    if ratios.len() >= 3 {
        let re_z: Vec<f64> = ratios.iter().map(|p| p.0).collect();
        let re: Vec<f64> = ratios.iter().map(|(z, q)| q * z.ln() / z.cbrt()).collect();
        let ef = exponent_fit("r_e", &re_z, &re)?;
        fit.coefficients.insert("r_e_exponent".into(), ef.coefficient("p"));
        fit.coefficients.insert("r_e_log_log".into(), ef.coefficient("log_log"));
    }
    fit.notices = notices;
    Ok(fit)
}

/// ζ-order of one functional's contribution from one region.
pub fn region_contributions(
    d: &ExponentialDensity,
    zetas: &[f64],
    threshold: f64,
    id: FunctionalId,
    region: Region,
) -> Result<AsymptoticFit> {
    if !matches!(id, FunctionalId::Tf | FunctionalId::Vw9 | FunctionalId::LdaX | FunctionalId::GeaX) {
        return Err(Error::Parameter(format!(
            "region contributions support tf, vw9, lda_x and gea_x, got `{id}`"
        )));
    }
    check_zetas(zetas)?;
    let mut notices = Vec::new();
    let mut zs = Vec::new();
    let mut vals = Vec::new();
    for &z in zetas {
        let (_, parts) = region_energies(d, z, threshold, id)?;
        let v = parts[&region];
        if v.abs() > 0.0 && v.is_finite() {
            zs.push(z);
            vals.push(v);
        } else {
            notices.push(format!("zeta={z}: {region} region is empty"));
        }
    }
    let mut fit = exponent_fit(&format!("{id}/{region} zeta order"), &zs, &vals)?;
    fit.notices = notices;
    Ok(fit)
}

/// Evanescent onset of a numerical density: the smallest radius beyond which
/// `s > threshold` and `|q/s| > threshold` at every grid point with
/// appreciable density.
pub fn gradient_onset(d: &RadialDensity, threshold: f64) -> Result<Option<f64>> {
    let g = d.reduced_gradients()?;
    let r = d.grid().r();
    let last = match d.n().iter().rposition(|&n| n > 1e6 * DENSITY_FLOOR) {
        Some(i) => i,
        None => return Ok(None),
    };
    let holds = |i: usize| g.valid[i] && g.s[i] > threshold && g.s[i] > 0.0 && (g.q[i] / g.s[i]).abs() > threshold;
    if !holds(last) {
        return Ok(None);
    }
    let mut i = last;
    while i > 0 && holds(i - 1) {
        i -= 1;
    }
    Ok(Some(r[i]))
}

/// Onset of the classically forbidden tail: the smallest radius beyond which
/// `τ′ < 0` wherever the density is appreciable.
pub fn tau_onset(d: &RadialDensity) -> Result<Option<f64>> {
    let tp = d
        .tau_prime()
        .ok_or_else(|| Error::Domain("density carries no orbital kinetic energy density".into()))?;
    let r = d.grid().r();
    let last = match d.n().iter().rposition(|&n| n > 1e6 * DENSITY_FLOOR) {
        Some(i) => i,
        None => return Ok(None),
    };
    if tp[last] >= 0.0 {
        return Ok(None);
    }
    let mut i = last;
    while i > 0 && tp[i - 1] < 0.0 {
        i -= 1;
    }
    Ok(Some(r[i]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit() -> ExponentialDensity {
        ExponentialDensity::new(1.0, 1.0).unwrap()
    }

    #[test]
    fn unit_exponential_radii() {
        let rep = region_radii(&unit(), 1.0, 1.0).unwrap();
        let r_s = rep.r_s.unwrap();
        // s(r) = e^{r/3}/(2(3π²)^{1/3})
        let oracle = 3.0 * (2.0 * (3.0 * PI * PI).cbrt()).ln();
        assert!((r_s - oracle).abs() < 1e-10, "{r_s} {oracle}");
        assert!((r_s - 5.467).abs() < 1e-3);
        let r_c = rep.r_c.unwrap();
        assert!((r_c - 0.30).abs() < 0.01, "{r_c}");
        let r_e = rep.r_e.unwrap();
        assert!(r_e > r_s && r_c < r_e);
        // at r_e the binding condition is |q/s| = 1
        assert!((unit().q_over_s(r_e) - 1.0).abs() < 1e-10);
    }

    #[test]
    fn smaller_threshold_widens_cusp() {
        let a = region_radii(&unit(), 10.0, 1.0).unwrap().r_c.unwrap();
        let b = region_radii(&unit(), 10.0, 0.5).unwrap().r_c.unwrap();
        assert!(b > a);
    }

    #[test]
    fn absent_regions_are_not_errors() {
        // s exceeds a tiny threshold everywhere
        let rep = region_radii(&unit(), 1.0, 1e-3).unwrap();
        assert!(rep.r_s.is_none());
        assert!(region_radii(&unit(), 1.0, 0.0).is_err());
    }

    #[test]
    fn partition_is_exhaustive() {
        let d = unit();
        for id in [FunctionalId::Tf, FunctionalId::LdaX] {
            let (_, parts) = region_energies(&d, 100.0, 1.0, id).unwrap();
            let sum: f64 = parts.values().sum();
            let total = functionals::evaluate(&d.zeta_scale(100.0).unwrap().density().unwrap(), id)
                .unwrap()
                .energy;
            assert!((sum - total).abs() < 1e-10 * total.abs());
            assert!(parts.values().all(|v| v.signum() == total.signum()));
        }
    }

    #[test]
    fn scaled_exponential_matches_scaled_density() {
        let d = unit();
        let direct = d.zeta_scale(8.0).unwrap();
        assert!((direct.n(0.3) - 64.0 * (-0.6f64).exp()).abs() < 1e-12);
        assert!((direct.electron_count() - 8.0 * d.electron_count()).abs() < 1e-9);
    }

    #[test]
    fn fits_need_enough_points() {
        assert!(matches!(region_scaling_exponents(&unit(), &[10.0], 1.0), Err(Error::Fit(_))));
        assert!(region_contributions(&unit(), &[10.0, 100.0, 1e3], 1.0, FunctionalId::PbeX, Region::Bulk).is_err());
    }

    #[test]
    fn region_parse() {
        assert_eq!("cusp".parse::<Region>().unwrap(), Region::Cusp);
        assert!("core".parse::<Region>().is_err());
    }
}
