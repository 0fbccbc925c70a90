//! Uniform-gas correlation (PW92, spin-unpolarized) and its gradient corrections.

use std::f64::consts::{LN_2, PI};

/// Second-order gradient coefficient of correlation in the high-density limit.
pub const BETA_MB: f64 = 0.066725;
/// `(1 − ln 2)/π²`
pub const GAMMA_PBE: f64 = (1.0 - LN_2) / (PI * PI);

const A: f64 = 0.031091;
const ALPHA1: f64 = 0.21370;
const BETA1: f64 = 7.5957;
const BETA2: f64 = 3.5876;
const BETA3: f64 = 1.6382;
const BETA4: f64 = 0.49294;

/// Coefficient of `ln r_s` in the high-density expansion of PW92.
pub const PW92_LOG_COEFFICIENT: f64 = A;

/// Constant term of the high-density expansion, `ε_c ≈ A ln r_s + c`.
pub fn pw92_high_density_constant() -> f64 {
    2.0 * A * (2.0 * A * BETA1).ln()
}

pub fn wigner_seitz_radius(n: f64) -> f64 {
    (3.0 / (4.0 * PI * n)).cbrt()
}

/// Correlation energy per electron and its `r_s` derivative.
pub fn pw92(rs: f64) -> (f64, f64) {
    let sq = rs.sqrt();
    let q1 = BETA1 * sq + BETA2 * rs + BETA3 * rs * sq + BETA4 * rs * rs;
    let dq1 = 0.5 * BETA1 / sq + BETA2 + 1.5 * BETA3 * sq + 2.0 * BETA4 * rs;
    let log = (1.0 / (2.0 * A * q1)).ln_1p();
    let eps = -2.0 * A * (1.0 + ALPHA1 * rs) * log;
    let deps = -2.0 * A * ALPHA1 * log + 2.0 * A * (1.0 + ALPHA1 * rs) * dq1 / (q1 * (2.0 * A * q1 + 1.0));
    (eps, deps)
}

/// Correlation energy per electron at density `n`.
pub fn epsilon_c(n: f64) -> f64 {
    pw92(wigner_seitz_radius(n)).0
}

/// LDA correlation potential `ε_c − (r_s/3) dε_c/dr_s`.
pub fn lda_correlation_potential(n: f64) -> f64 {
    let rs = wigner_seitz_radius(n);
    let (eps, deps) = pw92(rs);
    eps - rs / 3.0 * deps
}

/// PBE gradient correction `H(r_s, t)` per electron for the unpolarized gas.
pub fn pbe_h(eps_c: f64, t: f64) -> f64 {
    let ratio = BETA_PBE / GAMMA_PBE;
    let denom = (-eps_c / GAMMA_PBE).exp_m1();
    let t2 = t * t;
    let frac = if denom.is_infinite() {
        1.0
    } else {
        let a = ratio / denom;
        let y = a * t2;
        (1.0 + y) / (1.0 + y + y * y)
    };
    GAMMA_PBE * (ratio * t2 * frac).ln_1p()
}

/// β of the PBE correlation gradient term (same value as [`BETA_MB`]).
pub const BETA_PBE: f64 = BETA_MB;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pw92_reference_values() {
        // rs = 1 and rs = 2 values of the unpolarized PW92 fit
        let (e1, _) = pw92(1.0);
        assert!((e1 - (-0.0598)).abs() < 2e-4, "{e1}");
        let (e2, _) = pw92(2.0);
        assert!((e2 - (-0.0448)).abs() < 2e-4, "{e2}");
    }

    #[test]
    fn pw92_derivative_matches_finite_difference() {
        for rs in [0.01, 0.3, 1.0, 4.0, 30.0] {
            let h = 1e-6 * rs;
            let fd = (pw92(rs + h).0 - pw92(rs - h).0) / (2.0 * h);
            let (_, d) = pw92(rs);
            assert!((fd - d).abs() < 1e-7 * d.abs().max(1e-3), "rs={rs}");
        }
    }

    #[test]
    fn high_density_expansion() {
        let rs: f64 = 1e-8;
        let approx = A * rs.ln() + pw92_high_density_constant();
        assert!((pw92(rs).0 - approx).abs() < 1e-5);
        assert!((pw92_high_density_constant() - (-0.046644)).abs() < 1e-5);
    }

    #[test]
    fn pbe_h_limits() {
        let eps = epsilon_c(1.0);
        assert_eq!(pbe_h(eps, 0.0), 0.0);
        // small t recovers β t²
        let t = 1e-4;
        assert!((pbe_h(eps, t) / (BETA_PBE * t * t) - 1.0).abs() < 1e-3);
        // saturates at −ε_c for large t
        assert!((pbe_h(eps, 1e6) + eps).abs() < 1e-6);
        // finite for extreme densities
        assert!(pbe_h(epsilon_c(1e12), 3.0).is_finite());
        assert!(pbe_h(epsilon_c(1e-25), 3.0).is_finite());
    }
}
