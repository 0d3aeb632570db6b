//! Expected braid-orbit data stored as JSON, and the check against a fresh
//! computation.

use serde::{Deserialize, Serialize};

use super::braid::{braid_orbits, orbit_genus_with, BraidOrbit, GenusConvention};
use super::cycle_type::CycleType;
use super::enumerate::enumerate_nielsen;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrbitTable {
    pub degree: usize,
    pub genus_convention: GenusConvention,
    pub rows: Vec<OrbitRow>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrbitRow {
    pub case: String,
    pub cycle_types: Vec<String>,
    pub orbit_length: usize,
    pub group_order: u64,
    /// Dimension of the Hurwitz space, `r - 3`.
    pub dimension: usize,
    pub genus: Option<i64>,
}

impl OrbitTable {
    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(format!("orbit table: {e}")))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RowOutcome {
    pub case: String,
    pub cycle_types: Vec<String>,
    pub class_size: usize,
    pub orbits: Vec<BraidOrbit>,
    /// The orbit matching the expected length and group, if any.
    pub matched: Option<usize>,
    pub genus: Option<i64>,
    pub dimension: usize,
    pub pass: bool,
}

/// Enumerates the Nielsen class of `row`, splits it into braid orbits and
/// looks for an orbit with the expected length, group order and genus.
pub fn check_row(table: &OrbitTable, row: &OrbitRow) -> Result<RowOutcome> {
    let n = table.degree;
    let types: Vec<CycleType> =
        row.cycle_types.iter().map(|s| CycleType::parse(s, n)).collect::<Result<_>>()?;
    let class = enumerate_nielsen(n, &types)?;
    let mut orbits = braid_orbits(&class.tuples)?;
    if types.len() == 4 {
        for o in &mut orbits {
            o.genus = Some(orbit_genus_with(o, table.genus_convention)?.genus);
        }
    }
    let matched = orbits.iter().position(|o| {
        o.length == row.orbit_length
            && o.group_order == row.group_order
            && (row.genus.is_none() || o.genus == row.genus)
    });
    let dimension = types.len() - 3;
    Ok(RowOutcome {
        case: row.case.clone(),
        cycle_types: row.cycle_types.clone(),
        class_size: class.tuples.len(),
        genus: matched.and_then(|k| orbits[k].genus),
        pass: matched.is_some() && dimension == row.dimension,
        matched,
        orbits,
        dimension,
    })
}
