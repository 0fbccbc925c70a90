use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn zetalab(out: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zetalab"))
        .args(args)
        .env("ZETALAB_OUT", out)
        .output()
        .expect("binary runs")
}

fn json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn atom_writes_density_orbitals_and_report() {
    let dir = TempDir::new().unwrap();
    let o = zetalab(dir.path(), &["atom", "--Z", "10"]);
    assert!(o.status.success(), "{}", stderr(&o));
    for f in ["density.csv", "orbitals.csv", "energies.json"] {
        assert!(dir.path().join(f).exists(), "{f}");
    }
    let report = json(&dir.path().join("energies.json"));
    assert_eq!(report["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(report["config"]["scf"]["grid"]["n_points"], 1200);
    let ex = report["result"]["table_row"]["energies"]["lda_x"].as_f64().unwrap();
    assert!((ex / -11.03 - 1.0).abs() < 0.015, "{ex}");

    let orbitals = std::fs::read_to_string(dir.path().join("orbitals.csv")).unwrap();
    assert!(orbitals.contains("# shell: 2p occupation=6"));
    assert!(orbitals.lines().any(|l| l == "r,u_1s,u_2s,u_2p"));
}

#[test]
fn explicit_out_flag_beats_environment() {
    let env_dir = TempDir::new().unwrap();
    let flag_dir = TempDir::new().unwrap();
    let o = zetalab(env_dir.path(), &["tf", "--Z", "1", "--out", flag_dir.path().to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(flag_dir.path().join("tf_report.json").exists());
    assert!(!env_dir.path().join("tf_report.json").exists());
}

#[test]
fn usage_errors_exit_with_two() {
    let dir = TempDir::new().unwrap();
    let open_shell = zetalab(dir.path(), &["atom", "--Z", "3"]);
    assert_eq!(open_shell.status.code(), Some(2));
    assert!(stderr(&open_shell).contains("closed-shell"));

    assert_eq!(zetalab(dir.path(), &["tf", "--Z", "0"]).status.code(), Some(2));
    assert_eq!(zetalab(dir.path(), &["regions", "--b", "-1"]).status.code(), Some(2));

    let unknown = zetalab(dir.path(), &["eval", "--exponential", "1", "1", "--functional", "pw91_x"]);
    assert_eq!(unknown.status.code(), Some(2));
    assert!(stderr(&unknown).contains("lda_x, gea_x"), "{}", stderr(&unknown));
}

#[test]
fn non_convergence_exits_with_three() {
    let dir = TempDir::new().unwrap();
    let o = zetalab(dir.path(), &["atom", "--Z", "10", "--max-iter", "2"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("did not converge"));
    assert!(!dir.path().join("energies.json").exists());
}

#[test]
fn tf_report_and_correlation_fit() {
    let dir = TempDir::new().unwrap();
    let o = zetalab(dir.path(), &["tf", "--Z", "1", "--fit-corr", "lda_c", "--zmin", "1", "--zmax", "1e4"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let r = json(&dir.path().join("tf_report.json"));
    let e = r["result"]["e_tf_over_z73"].as_f64().unwrap();
    assert!((e + 0.7687).abs() < 1e-3 * 0.7687, "{e}");
    let a = r["result"]["correlation_fits"][0]["A_C"].as_f64().unwrap();
    assert!((a / -0.02072 - 1.0).abs() < 0.05, "{a}");
    assert_eq!(r["config"]["zmax"], 1e4);
}

#[test]
fn density_file_round_trip_through_eval() {
    let dir = TempDir::new().unwrap();
    let o = zetalab(dir.path(), &["scale", "--exponential", "1", "1", "--zeta", "1,8"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let report = json(&dir.path().join("scale_report.json"));
    for law in report["result"]["laws"].as_array().unwrap() {
        assert!(law["s_law"].as_f64().unwrap() < 1e-8);
    }

    let file = dir.path().join("scaled_zeta_1.csv");
    let o = zetalab(
        dir.path(),
        &["eval", "--density", file.to_str().unwrap(), "--functional", "lda_x", "--curves"],
    );
    assert!(o.status.success(), "{}", stderr(&o));
    let e = json(&dir.path().join("eval.json"))["result"]["energies"]["lda_x"].as_f64().unwrap();
    assert!((e + 7.830846).abs() < 1e-5, "{e}");
    let curves = std::fs::read_to_string(dir.path().join("eval_curves.csv")).unwrap();
    assert!(curves.starts_with("r,lda_x\n"));
}

#[test]
fn malformed_density_file_is_a_usage_error() {
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.csv");
    std::fs::write(&bad, "# kind: exponential\nr,n\n0.1,1.0\n0.05,0.5\n").unwrap();
    let o = zetalab(dir.path(), &["eval", "--density", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line"), "{}", stderr(&o));
}

#[test]
fn exchange_fits_over_noble_gases() {
    let dir = TempDir::new().unwrap();
    let o = zetalab(dir.path(), &["fit", "--series", "gea_x", "--atoms", "10,18,36,54,86"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let r = json(&dir.path().join("fit_report.json"));
    let dc = r["result"]["fits"]["gea_x"]["delta_c"].as_f64().unwrap();
    assert!((dc / -0.098 - 1.0).abs() < 0.10, "{dc}");
    assert_eq!(r["config"]["args"]["order"], 1);

    let too_few = zetalab(dir.path(), &["fit", "--series", "gea_x", "--atoms", "10,18"]);
    assert_eq!(too_few.status.code(), Some(4));
    let not_exchange = zetalab(dir.path(), &["fit", "--series", "pbe_c"]);
    assert_eq!(not_exchange.status.code(), Some(2));
}

#[test]
fn region_radii_of_unit_exponential() {
    let dir = TempDir::new().unwrap();
    let o = zetalab(dir.path(), &["regions", "--b", "1", "--zeta", "1"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let rep = &json(&dir.path().join("regions.json"))["result"]["reports"][0];
    assert!((rep["r_c"].as_f64().unwrap() - 0.3034).abs() < 1e-3);
    assert!((rep["r_s"].as_f64().unwrap() - 5.4675).abs() < 1e-3);
    assert!((rep["r_e"].as_f64().unwrap() - 6.5588).abs() < 1e-3);
    assert!(rep["contributions"]["tf/bulk"].as_f64().unwrap() > 0.0);

    let o = zetalab(dir.path(), &["regions", "--sweep", "10", "1e6", "--functional", "tf"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let fit = json(&dir.path().join("regions_fit.json"));
    let p = fit["result"]["orders"]["tf/bulk"]["order"].as_f64().unwrap();
    assert!((p - 7.0 / 3.0).abs() < 0.02, "{p}");
}

#[test]
fn figures_emit_all_curves() {
    let dir = TempDir::new().unwrap();
    let o = zetalab(dir.path(), &["figures"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let header = |f: &str| {
        std::fs::read_to_string(dir.path().join(f)).unwrap().lines().next().unwrap().to_string()
    };
    assert_eq!(header("fig1.csv"), "r,radial_n_zeta_1,radial_n_zeta_2");
    assert_eq!(header("fig2.csv"), "scaled_r_Kr,s_Kr,scaled_r_Rn,s_Rn");
    assert!(header("fig3.csv").starts_with("r,gea_x_minus_lda_x,pbe_x_minus_lda_x"));
    assert_eq!(header("fig4.csv"), "z,z_inv_cbrt,lda_c,pbe_c,lda_c_limit,pbe_c_limit");
    let report = json(&dir.path().join("figures.json"));
    assert_eq!(report["config"]["density_xc"]["2"], "exact_exchange_two_electron");
    assert_eq!(report["result"]["rows"].as_array().unwrap().len(), 6);
}
