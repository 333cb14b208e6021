//! JSON wire formats: the universal group spec, catalog exports, and the
//! cohomology report fragment.

use crate::cohomology::CohomologyAnalysis;
use crate::constructions::NamedConstruction;
use crate::error::{Error, Result};
use crate::gmodule::GModule;
use crate::group::MatrixGroup;
use crate::matrix::ModMatrix;
use crate::ring::Modulus;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::Path;

/// {"p", "l", "n", "generators"} with each generator a row-major n^2 array.
/// This is the universal CLI input.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSpec {
    pub p: u64,
    pub l: u32,
    pub n: usize,
    pub generators: Vec<Vec<u64>>,
}

impl GroupSpec {
    pub fn from_group(group: &MatrixGroup) -> Self {
        GroupSpec {
            p: group.modulus().p(),
            l: group.modulus().l(),
            n: group.dim(),
            generators: group.generators().iter().map(|g| g.entries().to_vec()).collect(),
        }
    }

    pub fn modulus(&self) -> Result<Modulus> {
        Modulus::new(self.p, self.l)
    }

    pub fn to_group(&self, element_cap: usize) -> Result<MatrixGroup> {
        let modulus = self.modulus()?;
        if self.n == 0 {
            return Err(Error::InvalidInput("dimension must be positive".into()));
        }
        if self.generators.is_empty() {
            return Ok(MatrixGroup::trivial(modulus, self.n));
        }
        let mats: Result<Vec<ModMatrix>> = self
            .generators
            .iter()
            .map(|entries| {
                if entries.len() != self.n * self.n {
                    return Err(Error::InvalidInput(format!(
                        "generator needs {} entries, got {}",
                        self.n * self.n,
                        entries.len()
                    )));
                }
                ModMatrix::new(modulus, self.n, self.n, entries.iter().map(|&e| e as i64).collect())
            })
            .collect();
        MatrixGroup::closure(mats?, element_cap)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Ok(serde_json::from_str(&text)?)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, serde_json::to_string_pretty(self)?)?;
        Ok(())
    }

    /// Sort- and merge-stable instance key: (q, n, sorted generator tuples).
    pub fn canonical_key(&self) -> String {
        let q = self.p.pow(self.l);
        let mut gens = self.generators.clone();
        gens.sort();
        let parts: Vec<String> = gens
            .iter()
            .map(|g| g.iter().map(|e| e.to_string()).collect::<Vec<_>>().join("."))
            .collect();
        format!("q{:07}-n{}-g[{}]", q, self.n, parts.join("|"))
    }
}

/// {"h1": [...], "h1loc": [...], "witness_cocycle": {...}} report fragment.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CohomologyFragment {
    pub h1: Vec<u64>,
    pub h1loc: Vec<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_cocycle: Option<BTreeMap<String, Vec<u64>>>,
}

impl CohomologyFragment {
    pub fn from_analysis(module: &GModule, analysis: &CohomologyAnalysis) -> Self {
        let witness = analysis
            .h1_loc
            .representatives()
            .first()
            .map(|c| c.to_map(module));
        CohomologyFragment {
            h1: analysis.h1.invariants().factors().to_vec(),
            h1loc: analysis.h1_loc.invariants().factors().to_vec(),
            witness_cocycle: witness,
        }
    }
}

/// Catalog export entry: {"name", "class", "group", "expected_order", "provenance"}.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CatalogEntrySpec {
    pub name: String,
    pub class: String,
    pub group: Option<GroupSpec>,
    pub expected_order: Option<u64>,
    pub provenance: String,
}

impl CatalogEntrySpec {
    pub fn from_construction(c: &NamedConstruction) -> Self {
        CatalogEntrySpec {
            name: c.name.clone(),
            class: c.class.to_string(),
            group: c.group.as_ref().map(GroupSpec::from_group),
            expected_order: c.expected_order,
            provenance: c.provenance.clone(),
        }
    }
}
