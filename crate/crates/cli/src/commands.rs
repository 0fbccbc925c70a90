use std::collections::BTreeMap;
use std::f64::consts::PI;

use anyhow::{bail, Context, Result};
use rayon::prelude::*;
use serde_json::{json, Value};
use zetalab::asymptotics::{
    fit_c_lda, fit_delta_c, gradient_onset, region_contributions, region_energies, region_radii,
    region_scaling_exponents, residuals_oscillate, tau_onset, ExponentialDensity, Region, SeriesPoint,
};
use zetalab::atom::{configuration, s_profile, solve_atom, table_row, AtomResult, ScfConfig, TableRow, XcModel};
use zetalab::density::verify_scaling_laws;
use zetalab::functionals::{self, exchange_energy_density_difference};
use zetalab::io::{columns_to_csv, density_to_csv, load_density, orbitals_to_csv};
use zetalab::tf::{CorrelationModel, TfSolution};
use zetalab::{FunctionalId, GridSpec, RadialDensity};

use crate::args::*;
use crate::output::OutDir;
use crate::UsageError;

fn scf_config(z: u32, a: &ScfArgs, xc: XcModel) -> ScfConfig {
    let mut grid = GridSpec::atomic(z as f64);
    if let Some(n) = a.points {
        grid.n_points = n;
    }
    if let Some(r) = a.r_min {
        grid.r_min = r;
    }
    if let Some(r) = a.r_max {
        grid.r_max = r;
    }
    ScfConfig {
        max_iterations: a.max_iter,
        mixing: a.mixing,
        energy_tolerance: a.tol,
        density_tolerance: a.density_tol,
        grid: Some(grid),
        xc,
    }
}

fn solve_all(atoms: &[u32], choice: DensityChoice) -> Result<Vec<AtomResult>> {
    for &z in atoms {
        configuration(z)?;
    }
    atoms
        .par_iter()
        .map(|&z| {
            let cfg = match choice {
                DensityChoice::Reference => ScfConfig::reference(z),
                DensityChoice::Lda => ScfConfig::default(),
            };
            solve_atom(z, &cfg).with_context(|| format!("Z={z}"))
        })
        .collect()
}

fn log_space(lo: f64, hi: f64, points: usize) -> Result<Vec<f64>> {
    if !(lo > 0.0 && hi > lo && points >= 2) {
        return Err(UsageError(format!("need 0 < zmin < zmax and at least 2 points, got [{lo}, {hi}] with {points}")).into());
    }
    let span = (hi / lo).ln();
    Ok((0..points).map(|i| lo * (span * i as f64 / (points - 1) as f64).exp()).collect())
}

fn load_source(src: &DensitySource) -> Result<RadialDensity> {
    if let Some(path) = &src.density {
        return load_density(path).with_context(|| format!("reading {}", path.display()));
    }
    if let Some(z) = src.atom {
        return Ok(solve_atom(z, &ScfConfig::default())?.density);
    }
    match src.exponential.as_deref() {
        Some(&[a, b]) => Ok(ExponentialDensity::new(a, b)?.density()?),
        _ => bail!(UsageError("give --density, --atom or --exponential".into())),
    }
}

pub fn atom(args: &AtomArgs) -> Result<()> {
    let cfg = scf_config(args.z, &args.scf, args.xc.into());
    let res = solve_atom(args.z, &cfg)?;
    let row = table_row(&res)?;
    let out = OutDir::create(&args.output.out)?;
    out.write("density.csv", &density_to_csv(&res.density))?;
    out.write("orbitals.csv", &orbitals_to_csv(&res.orbitals))?;
    let result = json!({
        "z": res.z,
        "symbol": res.symbol,
        "iterations": res.iterations,
        "n_electrons": res.density.n_electrons(),
        "components": res.energies,
        "table_row": row,
        "evanescent_onset": gradient_onset(&res.density, 1.0)?,
        "tau_prime_onset": tau_onset(&res.density)?,
    });
    out.report("energies.json", "atom", &json!({ "args": args, "scf": cfg }), result)?;
    println!(
        "{} (Z={}): E = {:.8} hartree after {} iterations; E_x(LDA) = {:.6}, E_c(LDA) = {:.6}",
        res.symbol,
        res.z,
        res.total_energy(),
        res.iterations,
        row.energies[&FunctionalId::LdaX],
        row.energies[&FunctionalId::LdaC]
    );
    Ok(())
}

pub fn tf(args: &TfArgs) -> Result<()> {
    let sol = TfSolution::shared()?;
    let z = args.z;
    let density = sol.density(z)?;
    let energy = sol.total_energy(z)?;
    let ex = sol.lda_exchange(z)?;
    let model = match args.model {
        CorrModel::Leading => CorrelationModel::LEADING,
        CorrModel::Full => CorrelationModel::FULL,
    };
    let mut fits = Vec::new();
    if !args.fit_corr.is_empty() {
        let zetas = log_space(args.zmin, args.zmax, args.zeta_points)?;
        for &id in &args.fit_corr {
            let fit = sol.correlation_asymptotics(id, &zetas, model)?;
            let (a, b) = sol.correlation_limit(id)?;
            println!(
                "{id}: A_C = {:.6}, B_C = {:.6} (high-density limit {a:.6}, {b:.6})",
                fit.coefficient("A_C"),
                fit.coefficient("B_C")
            );
            fits.push(json!({
                "functional": id,
                "A_C": fit.coefficient("A_C"),
                "B_C": fit.coefficient("B_C"),
                "high_density_limit": { "A_C": a, "B_C": b },
                "fit": fit,
            }));
        }
    }
    let out = OutDir::create(&args.output.out)?;
    out.write("tf_density.csv", &density_to_csv(&density))?;
    let result = json!({
        "z": z,
        "phi_slope_origin": sol.phi_slope_origin,
        "tail_amplitude": sol.tail_amplitude,
        "energy": energy,
        "e_tf_over_z73": energy.total / z.powf(7.0 / 3.0),
        "e_x_lda": ex,
        "e_x_lda_over_z53": ex / z.powf(5.0 / 3.0),
        "correlation_fits": fits,
    });
    out.report("tf_report.json", "tf", args, result)?;
    println!(
        "TF Z={z}: E = {:.6} (E/Z^(7/3) = {:.6}), E_x(LDA)/Z^(5/3) = {:.6}",
        energy.total,
        energy.total / z.powf(7.0 / 3.0),
        ex / z.powf(5.0 / 3.0)
    );
    Ok(())
}

pub fn scale(args: &ScaleArgs) -> Result<()> {
    let d = load_source(&args.source)?;
    let mut reports = Vec::new();
    let mut scaled = Vec::new();
    for &zeta in &args.zeta {
        scaled.push((zeta, d.zeta_scale(zeta)?));
        let r = verify_scaling_laws(&d, zeta)?;
        println!(
            "zeta={zeta}: N = {:.10}, max deviation {:.2e} over {} points",
            scaled.last().unwrap().1.n_electrons(),
            r.max_deviation(),
            r.points_compared
        );
        reports.push(r);
    }
    let out = OutDir::create(&args.output.out)?;
    for (zeta, s) in &scaled {
        out.write(&format!("scaled_zeta_{zeta}.csv"), &density_to_csv(s))?;
    }
    let result = json!({ "n_electrons": d.n_electrons(), "laws": reports });
    out.report("scale_report.json", "scale", args, result)?;
    Ok(())
}

pub fn eval(args: &EvalArgs) -> Result<()> {
    let d = load_source(&args.source)?;
    let ids = if args.functionals.is_empty() { FunctionalId::ALL.to_vec() } else { args.functionals.clone() };
    let mut energies = BTreeMap::new();
    let mut warnings = BTreeMap::new();
    let mut curves = Vec::new();
    for &id in &ids {
        let res = functionals::evaluate(&d, id)?;
        println!("{id:>6} {:>20.12}", res.energy);
        if let Some(w) = &res.warning {
            eprintln!("warning: {id}: {w}");
            warnings.insert(id, w.clone());
        }
        energies.insert(id, res.energy);
        curves.push(res.radial_energy_density);
    }
    let out = OutDir::create(&args.output.out)?;
    if args.curves {
        let mut names = vec!["r".to_string()];
        names.extend(ids.iter().map(|id| id.to_string()));
        let names: Vec<&str> = names.iter().map(String::as_str).collect();
        let mut columns: Vec<&[f64]> = vec![d.grid().r()];
        columns.extend(curves.iter().map(Vec::as_slice));
        out.write("eval_curves.csv", &columns_to_csv(&names, &columns))?;
    }
    let result = json!({ "n_electrons": d.n_electrons(), "energies": energies, "warnings": warnings });
    out.report("eval.json", "eval", args, result)?;
    Ok(())
}

pub fn fit(args: &FitArgs) -> Result<()> {
    if let Some(id) = args.series.iter().find(|id| !id.is_exchange()) {
        bail!(UsageError(format!("`{id}` is not an exchange functional (valid: lda_x, gea_x, pbe_x, b88_x)")));
    }
    let atoms = solve_all(&args.atoms, args.densities)?;
    let rows = atoms.iter().map(table_row).collect::<zetalab::Result<Vec<_>>>()?;
    let lda = |r: &TableRow| r.energies[&FunctionalId::LdaX];
    let mut fits = BTreeMap::new();
    for &id in &args.series {
        let value = if id == FunctionalId::LdaX {
            let points: Vec<(f64, f64)> = rows.iter().map(|r| (r.z as f64, lda(r))).collect();
            let f = fit_c_lda(&points, args.order)?;
            println!(
                "lda_x: C^LDA = {:.4} (largest residual {:.4}, residuals oscillate: {})",
                f.coefficient("c_lda"),
                f.coefficient("uncertainty"),
                residuals_oscillate(&f)
            );
            json!({ "c_lda": f.coefficient("c_lda"), "oscillating": residuals_oscillate(&f), "fit": f })
        } else {
            let points: Vec<SeriesPoint> = rows
                .iter()
                .map(|r| SeriesPoint { z: r.z as f64, e_x: r.energies[&id], e_x_lda: lda(r) })
                .collect();
            let f = fit_delta_c(&points, args.order)?;
            println!("{id}: delta C = {:.4} (condition number {:.1})", f.coefficient("delta_c"), f.condition_number);
            json!({ "delta_c": f.coefficient("delta_c"), "fit": f })
        };
        fits.insert(id, value);
    }
    let xc: BTreeMap<u32, XcModel> = args
        .atoms
        .iter()
        .map(|&z| {
            let xc = match args.densities {
                DensityChoice::Reference => ScfConfig::reference(z).xc,
                DensityChoice::Lda => XcModel::Lda,
            };
            (z, xc)
        })
        .collect();
    let out = OutDir::create(&args.output.out)?;
    let config = json!({ "args": args, "density_xc": xc });
    out.report("fit_report.json", "fit", &config, json!({ "rows": rows, "fits": fits }))?;
    Ok(())
}

pub fn regions(args: &RegionsArgs) -> Result<()> {
    let d = ExponentialDensity::new(args.a, args.b)?;
    let out = OutDir::create(&args.output.out)?;
    if let Some(bounds) = &args.sweep {
        let decades = (bounds[1] / bounds[0]).log10();
        let points = (decades * args.per_decade as f64).round() as usize + 1;
        let zetas = log_space(bounds[0], bounds[1], points)?;
        let laws = region_scaling_exponents(&d, &zetas, args.threshold)?;
        println!(
            "r_c exponent {:.4}; r_e zeta^(1/3)/ln zeta spread over the top decade {:.3}",
            laws.coefficient("r_c_exponent"),
            laws.coefficients.get("r_e_ratio_top_decade_spread").copied().unwrap_or(f64::NAN)
        );
        let mut orders = BTreeMap::new();
        for &id in &args.functionals {
            for region in Region::ALL {
                let f = region_contributions(&d, &zetas, args.threshold, id, region)?;
                println!("{id}/{region}: zeta order {:.4}", f.coefficient("p"));
                orders.insert(format!("{id}/{region}"), json!({ "order": f.coefficient("p"), "fit": f }));
            }
        }
        let result = json!({ "zetas": zetas, "radii": laws, "orders": orders });
        out.report("regions_fit.json", "regions", args, result)?;
        return Ok(());
    }
    let mut reports = Vec::new();
    for &zeta in &args.zeta {
        let mut report = region_radii(&d, zeta, args.threshold)?;
        for &id in &args.functionals {
            let (r, _) = region_energies(&d, zeta, args.threshold, id)?;
            report.contributions.extend(r.contributions);
        }
        let show = |r: Option<f64>| r.map_or("none".to_string(), |v| format!("{v:.6}"));
        println!(
            "zeta={zeta}: r_c = {}, r_s = {}, r_e = {}",
            show(report.r_c),
            show(report.r_s),
            show(report.r_e)
        );
        reports.push(report);
    }
    out.report("regions.json", "regions", args, json!({ "reports": reports }))?;
    Ok(())
}

pub fn figures(args: &FiguresArgs) -> Result<()> {
    let atoms = solve_all(&zetalab::atom::NOBLE_GASES, DensityChoice::Reference)?;
    let rows = atoms.iter().map(table_row).collect::<zetalab::Result<Vec<_>>>()?;
    let by_z = |z: u32| atoms.iter().find(|a| a.z == z).expect("solved above");
    let out = OutDir::create(&args.output.out)?;

    // scaled radial densities of helium
    let he = &by_z(2).density;
    let r = he.grid().r();
    let mut names = vec!["r".to_string()];
    let mut cols = vec![r.to_vec()];
    for &zeta in &args.he_zeta {
        if !(zeta > 0.0) {
            bail!(UsageError(format!("zeta must be positive, got {zeta}")));
        }
        let c = zeta.cbrt();
        let stretched: Vec<f64> = r.iter().map(|x| c * x).collect();
        let n = he.values_at(&stretched);
        names.push(format!("radial_n_zeta_{zeta}"));
        cols.push(r.iter().zip(&n).map(|(x, n)| 4.0 * PI * x * x * zeta * zeta * n).collect());
    }
    write_columns(&out, "fig1.csv", &names, &cols)?;

    let mut names = Vec::new();
    let mut cols = Vec::new();
    for z in [36, 86] {
        let p = s_profile(&by_z(z).density, z as f64);
        names.push(format!("scaled_r_{}", by_z(z).symbol));
        names.push(format!("s_{}", by_z(z).symbol));
        cols.push(p.scaled_r);
        cols.push(p.s);
    }
    write_columns(&out, "fig2.csv", &names, &cols)?;

    let xe = &by_z(54).density;
    let mut names = vec!["r".to_string()];
    let mut cols = vec![xe.grid().r().to_vec()];
    for id in [FunctionalId::GeaX, FunctionalId::PbeX, FunctionalId::B88X] {
        names.push(format!("{id}_minus_lda_x"));
        cols.push(exchange_energy_density_difference(xe, id)?);
    }
    write_columns(&out, "fig3.csv", &names, &cols)?;

    let tf = TfSolution::shared()?;
    let (a_lda, b_lda) = tf.correlation_limit(FunctionalId::LdaC)?;
    let (a_pbe, b_pbe) = tf.correlation_limit(FunctionalId::PbeC)?;
    let zs: Vec<f64> = rows.iter().map(|r| r.z as f64).collect();
    let scaled = |id: FunctionalId| -> Vec<f64> {
        rows.iter().map(|r| r.energies[&id] / (r.z as f64 * (r.z as f64).ln())).collect()
    };
    let names = ["z", "z_inv_cbrt", "lda_c", "pbe_c", "lda_c_limit", "pbe_c_limit"].map(String::from);
    let cols = vec![
        zs.clone(),
        zs.iter().map(|z| z.powf(-1.0 / 3.0)).collect(),
        scaled(FunctionalId::LdaC),
        scaled(FunctionalId::PbeC),
        zs.iter().map(|z| a_lda + b_lda / z.ln()).collect(),
        zs.iter().map(|z| a_pbe + b_pbe / z.ln()).collect(),
    ];
    write_columns(&out, "fig4.csv", &names, &cols)?;

    let mut names = vec!["z".to_string(), "kinetic".to_string(), "tf_plus_vw9".to_string()];
    names.extend(FunctionalId::ALL.iter().map(|id| id.to_string()));
    let mut cols = vec![zs, rows.iter().map(|r| r.kinetic).collect(), rows.iter().map(|r| r.gradient_expansion_kinetic).collect()];
    cols.extend(FunctionalId::ALL.iter().map(|id| rows.iter().map(|r| r.energies[id]).collect()));
    write_columns(&out, "tables.csv", &names, &cols)?;

    let onsets: Vec<Value> = atoms
        .iter()
        .map(|a| {
            Ok(json!({
                "z": a.z,
                "gradient_onset": gradient_onset(&a.density, 1.0)?,
                "tau_prime_onset": tau_onset(&a.density)?,
            }))
        })
        .collect::<zetalab::Result<_>>()?;
    let xc: BTreeMap<u32, XcModel> = atoms.iter().map(|a| (a.z, ScfConfig::reference(a.z).xc)).collect();
    let result = json!({
        "rows": rows,
        "evanescent_onsets": onsets,
        "correlation_limits": {
            "lda_c": { "A_C": a_lda, "B_C": b_lda },
            "pbe_c": { "A_C": a_pbe, "B_C": b_pbe },
        },
        "files": ["fig1.csv", "fig2.csv", "fig3.csv", "fig4.csv", "tables.csv"],
    });
    out.report("figures.json", "figures", &json!({ "args": args, "density_xc": xc }), result)?;
    Ok(())
}

fn write_columns(out: &OutDir, name: &str, names: &[String], cols: &[Vec<f64>]) -> Result<()> {
    let names: Vec<&str> = names.iter().map(String::as_str).collect();
    let cols: Vec<&[f64]> = cols.iter().map(Vec::as_slice).collect();
    out.write(name, &columns_to_csv(&names, &cols))?;
    Ok(())
}
