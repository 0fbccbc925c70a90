//! Density and orbital CSV files.
//!
//! Density files start with `#`-prefixed `key: value` header lines
//! (`kind`, `r_min`, `r_max`, `n_points`, `n_electrons`), followed by the
//! column header `r,n` and one comma-separated row per grid point.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::atom::OrbitalSet;
use crate::density::RadialDensity;
use crate::error::{Error, Result};
use crate::grid::{GridKind, RadialGrid};

pub fn density_to_csv(d: &RadialDensity) -> String {
    let g = d.grid();
    let mut out = String::with_capacity(g.len() * 48);
    let _ = writeln!(out, "# kind: {}", g.kind().as_str());
    let _ = writeln!(out, "# r_min: {:e}", g.r_min());
    let _ = writeln!(out, "# r_max: {:e}", g.r_max());
    let _ = writeln!(out, "# n_points: {}", g.len());
    let _ = writeln!(out, "# n_electrons: {:e}", d.n_electrons());
    out.push_str("r,n\n");
    for (r, n) in g.r().iter().zip(d.n()) {
        let _ = writeln!(out, "{r:e},{n:e}");
    }
    out
}

pub fn save_density(d: &RadialDensity, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, density_to_csv(d))?;
    Ok(())
}

pub fn load_density(path: impl AsRef<Path>) -> Result<RadialDensity> {
    parse_density_csv(&fs::read_to_string(path)?)
}

fn format_err(line: usize, message: impl Into<String>) -> Error {
    Error::Format {
        line,
        message: message.into(),
    }
}

pub fn parse_density_csv(text: &str) -> Result<RadialDensity> {
    let mut header: BTreeMap<String, (usize, String)> = BTreeMap::new();
    let mut radii = Vec::new();
    let mut samples = Vec::new();
    let mut seen_columns = false;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('#') {
            let (key, value) = rest
                .split_once(':')
                .ok_or_else(|| format_err(line_no, "header line must be `# key: value`"))?;
            header.insert(key.trim().to_string(), (line_no, value.trim().to_string()));
            continue;
        }
        if !seen_columns {
            let cols: Vec<&str> = line.split(',').map(str::trim).collect();
            if cols != ["r", "n"] {
                return Err(format_err(line_no, format!("expected column header `r,n`, got `{line}`")));
            }
            seen_columns = true;
            continue;
        }
        let mut fields = line.split(',');
        let (Some(r), Some(n), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(format_err(line_no, "expected exactly two columns"));
        };
        let r: f64 = r
            .trim()
            .parse()
            .map_err(|_| format_err(line_no, format!("bad radius `{}`", r.trim())))?;
        let n: f64 = n
            .trim()
            .parse()
            .map_err(|_| format_err(line_no, format!("bad density `{}`", n.trim())))?;
        if !(n >= 0.0 && n.is_finite()) {
            return Err(format_err(line_no, format!("density must be nonnegative, got {n}")));
        }
        if let Some(&prev) = radii.last() {
            if !(r > prev) {
                return Err(format_err(line_no, format!("radii must increase, {r} follows {prev}")));
            }
        } else if !(r > 0.0) {
            return Err(format_err(line_no, format!("radii must be positive, got {r}")));
        }
        radii.push(r);
        samples.push(n);
    }

    let get = |key: &str| -> Result<(usize, String)> {
        header
            .get(key)
            .cloned()
            .ok_or_else(|| format_err(1, format!("missing header `{key}`")))
    };
    let parse_f = |key: &str| -> Result<f64> {
        let (line, v) = get(key)?;
        v.parse().map_err(|_| format_err(line, format!("bad `{key}` value `{v}`")))
    };
    let (kind_line, kind) = get("kind")?;
    let kind: GridKind = kind
        .parse()
        .map_err(|_| format_err(kind_line, format!("unknown grid kind `{kind}`")))?;
    let r_min = parse_f("r_min")?;
    let r_max = parse_f("r_max")?;
    let (np_line, np) = get("n_points")?;
    let n_points: usize = np
        .parse()
        .map_err(|_| format_err(np_line, format!("bad `n_points` value `{np}`")))?;
    let stated_electrons = parse_f("n_electrons")?;

    if radii.len() != n_points {
        return Err(format_err(
            np_line,
            format!("header declares {n_points} points, file has {}", radii.len()),
        ));
    }
    let grid = RadialGrid::new(kind, r_min, r_max, n_points).map_err(|e| format_err(1, e.to_string()))?;
    let data_start = text.lines().position(|l| l.trim() == "r,n").unwrap_or(0) + 2;
    for (i, (a, b)) in grid.r().iter().zip(&radii).enumerate() {
        if (a - b).abs() > 1e-9 * a.abs() {
            return Err(format_err(
                data_start + i,
                format!("radius {b} does not match the {} grid ({a})", kind.as_str()),
            ));
        }
    }
    let d = RadialDensity::from_samples(grid, samples)?;
    let tol = 1e-8 * stated_electrons.abs().max(1e-12);
    if (d.n_electrons() - stated_electrons).abs() > tol.max(1e-12) {
        let (line, _) = get("n_electrons")?;
        return Err(format_err(
            line,
            format!(
                "stated electron count {stated_electrons} disagrees with integrated {}",
                d.n_electrons()
            ),
        ));
    }
    Ok(d)
}

/// Orbital table: header lines list each shell with occupation and
/// eigenvalue, then columns `r,u_<n><l>...`.
pub fn orbitals_to_csv(orbs: &OrbitalSet) -> String {
    let g = orbs.grid();
    let mut out = String::new();
    let _ = writeln!(out, "# Z: {}", orbs.z);
    let _ = writeln!(out, "# kind: {}", g.kind().as_str());
    let _ = writeln!(out, "# r_min: {:e}", g.r_min());
    let _ = writeln!(out, "# r_max: {:e}", g.r_max());
    let _ = writeln!(out, "# n_points: {}", g.len());
    for o in &orbs.shells {
        let _ = writeln!(
            out,
            "# shell: {} occupation={} eigenvalue={:e}",
            o.label(),
            o.occupation,
            o.eigenvalue
        );
    }
    out.push('r');
    for o in &orbs.shells {
        let _ = write!(out, ",u_{}", o.label());
    }
    out.push('\n');
    for (i, r) in g.r().iter().enumerate() {
        let _ = write!(out, "{r:e}");
        for o in &orbs.shells {
            let _ = write!(out, ",{:e}", o.u[i]);
        }
        out.push('\n');
    }
    out
}

pub fn save_orbitals(orbs: &OrbitalSet, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, orbitals_to_csv(orbs))?;
    Ok(())
}

/// Writes named columns sharing one abscissa as CSV.
pub fn columns_to_csv(names: &[&str], columns: &[&[f64]]) -> String {
    assert_eq!(names.len(), columns.len());
    let rows = columns.iter().map(|c| c.len()).max().unwrap_or(0);
    let mut out = names.join(",");
    out.push('\n');
    for i in 0..rows {
        let row: Vec<String> = columns
            .iter()
            .map(|c| c.get(i).map(|v| format!("{v:e}")).unwrap_or_default())
            .collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exponential() -> RadialDensity {
        let g = RadialGrid::new(GridKind::Exponential, 1e-6, 50.0, 600).unwrap();
        let n = g.r().iter().map(|r| (-r).exp()).collect();
        RadialDensity::from_samples(g, n).unwrap()
    }

    #[test]
    fn round_trip_is_exact() {
        let d = exponential();
        let back = parse_density_csv(&density_to_csv(&d)).unwrap();
        assert_eq!(back.n(), d.n());
        assert_eq!(back.grid().r(), d.grid().r());
        assert_eq!(back.n_electrons(), d.n_electrons());
    }

    #[test]
    fn file_round_trip() {
        let d = exponential();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("d.csv");
        save_density(&d, &path).unwrap();
        let back = load_density(&path).unwrap();
        assert_eq!(back.n(), d.n());
    }

    fn corrupt(f: impl Fn(&mut Vec<String>)) -> Error {
        let mut lines: Vec<String> = density_to_csv(&exponential()).lines().map(String::from).collect();
        f(&mut lines);
        parse_density_csv(&lines.join("\n")).unwrap_err()
    }

    #[test]
    fn negative_density_is_rejected_with_line() {
        let err = corrupt(|l| l[20] = "1.0e-3,-5e-1".into());
        match err {
            Error::Format { line, message } => {
                assert_eq!(line, 21);
                assert!(message.contains("nonnegative"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn non_monotone_radii_are_rejected() {
        let err = corrupt(|l| {
            let (a, b) = (l[30].clone(), l[31].clone());
            l[30] = b;
            l[31] = a;
        });
        assert!(matches!(err, Error::Format { line: 32, .. }), "{err:?}");
    }

    #[test]
    fn malformed_header_and_columns() {
        assert!(matches!(corrupt(|l| l[5] = "x,y".into()), Error::Format { line: 6, .. }));
        assert!(matches!(corrupt(|l| l[0] = "# kind exponential".into()), Error::Format { line: 1, .. }));
        assert!(matches!(corrupt(|l| l[10] = "1,2,3".into()), Error::Format { line: 11, .. }));
        assert!(matches!(corrupt(|l| { l.remove(3); }), Error::Format { .. }));
    }
}
