//! JSON documents for families and pair systems.
//!
//! Elements are 1-indexed in all documents, matching the ground set
//! `[n] = {1, ..., n}`.

use serde::{Deserialize, Serialize};

use crate::bollobas::PairSystem;
use crate::family::SetFamily;
use crate::set::{ElementSet, GroundParams};
use crate::{Error, Result};

/// On-disk form of a [`SetFamily`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FamilyDocument {
    pub n: u32,
    pub k: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<u32>,
    pub sets: Vec<Vec<u32>>,
}

impl FamilyDocument {
    pub fn from_family(family: &SetFamily, t: Option<u32>) -> Self {
        FamilyDocument {
            n: family.n(),
            k: family.rank_bound(),
            t,
            sets: family
                .iter()
                .map(|m| m.elements().collect())
                .collect(),
        }
    }

    /// Validates and converts; duplicate sets and out-of-range elements are
    /// rejected with a diagnostic.
    pub fn to_family(&self) -> Result<SetFamily> {
        let params = GroundParams::new(self.n, self.k, self.t.unwrap_or(0).min(self.k))?;
        if let Some(t) = self.t {
            if t > self.k {
                return Err(Error::BadParams {
                    n: self.n,
                    k: self.k,
                    t,
                });
            }
        }
        let members = self
            .sets
            .iter()
            .map(|s| ElementSet::from_elements(self.n, s))
            .collect::<Result<Vec<_>>>()?;
        SetFamily::new(params, members)
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Document(format!("family document: {e}")))
    }
}

/// One `(A_i, B_i)` entry of a pair-system document.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PairDocument {
    #[serde(rename = "A")]
    pub a: Vec<u32>,
    #[serde(rename = "B")]
    pub b: Vec<u32>,
}

/// On-disk form of a [`PairSystem`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PairSystemDocument {
    pub n: u32,
    pub t: u32,
    pub pairs: Vec<PairDocument>,
}

impl PairSystemDocument {
    pub fn from_system(system: &PairSystem) -> Self {
        PairSystemDocument {
            n: system.n(),
            t: system.t(),
            pairs: system
                .pairs()
                .iter()
                .map(|(a, b)| PairDocument {
                    a: a.elements().collect(),
                    b: b.elements().collect(),
                })
                .collect(),
        }
    }

    pub fn to_system(&self) -> Result<PairSystem> {
        let pairs = self
            .pairs
            .iter()
            .map(|p| {
                Ok((
                    ElementSet::from_elements(self.n, &p.a)?,
                    ElementSet::from_elements(self.n, &p.b)?,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        PairSystem::new(self.n, self.t, pairs)
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text)
            .map_err(|e| Error::Document(format!("pair-system document: {e}")))
    }
}
