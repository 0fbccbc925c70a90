use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::AtomResult;
use crate::error::Result;
use crate::functionals::{self, FunctionalId};

/// Functional energies and kinetic decompositions on one converged atom.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TableRow {
    pub z: u32,
    pub symbol: String,
    pub total_energy: f64,
    /// Every functional id evaluated on the self-consistent density (hartree).
    pub energies: BTreeMap<FunctionalId, f64>,
    /// Kohn–Sham kinetic energy.
    pub kinetic: f64,
    /// `T_TF + T_vW/9` on the same density.
    pub gradient_expansion_kinetic: f64,
    pub eigenvalues: BTreeMap<String, f64>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub warnings: Vec<String>,
}

pub fn table_row(atom: &AtomResult) -> Result<TableRow> {
    let mut energies = BTreeMap::new();
    let mut warnings = Vec::new();
    for id in FunctionalId::ALL {
        let res = functionals::evaluate(&atom.density, id)?;
        if let Some(w) = res.warning {
            warnings.push(format!("{id}: {w}"));
        }
        energies.insert(id, res.energy);
    }
    let gradient_expansion_kinetic = energies[&FunctionalId::Tf] + energies[&FunctionalId::Vw9];
    let eigenvalues = atom
        .orbitals
        .shells
        .iter()
        .map(|o| (o.label(), o.eigenvalue))
        .collect();
    Ok(TableRow {
        z: atom.z,
        symbol: atom.symbol.to_string(),
        total_energy: atom.total_energy(),
        energies,
        kinetic: atom.energies.kinetic,
        gradient_expansion_kinetic,
        eigenvalues,
        warnings,
    })
}
