//! The JSON fan document.
//!
//! ```json
//! { "name": "P(1,2,3)", "dim": 2,
//!   "rays": [[1,0],[0,1],[-2,-3]],
//!   "cones": [[0,1],[1,2],[2,0]] }
//! ```
//!
//! `dimension` and `max_cones` are accepted as aliases. An optional
//! `metadata` object is carried through untouched; any other field is
//! ignored with a warning.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::lattice::LatticeVec;
use crate::variety::ToricFano;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FanSpec {
    pub name: String,
    #[serde(alias = "dimension")]
    pub dim: usize,
    pub rays: Vec<Vec<i64>>,
    #[serde(alias = "max_cones")]
    pub cones: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<BTreeMap<String, Value>>,
    #[serde(flatten, skip_serializing)]
    unknown: BTreeMap<String, Value>,
}

impl FanSpec {
    pub fn new(name: impl Into<String>, dim: usize, rays: Vec<Vec<i64>>, cones: Vec<Vec<usize>>) -> Self {
        FanSpec {
            name: name.into(),
            dim,
            rays,
            cones,
            metadata: None,
            unknown: BTreeMap::new(),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let spec: FanSpec = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        for key in spec.unknown.keys() {
            log::warn!("fan document {:?}: ignoring unknown field {key:?}", spec.name);
        }
        Ok(spec)
    }

    pub fn unknown_fields(&self) -> Vec<&str> {
        self.unknown.keys().map(String::as_str).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("fan spec serializes")
    }

    /// Validates every fan invariant.
    pub fn to_fan(&self) -> Result<Fan> {
        for (i, r) in self.rays.iter().enumerate() {
            if r.len() != self.dim {
                return Err(Error::Parse(format!(
                    "ray {i} has {} coordinates, expected {}",
                    r.len(),
                    self.dim
                )));
            }
        }
        let rays = self.rays.iter().map(|r| LatticeVec::from_i64(r)).collect();
        Fan::new(self.dim, rays, self.cones.clone())
    }

    /// Validates the fan and the Q-Fano condition.
    pub fn to_variety(&self) -> Result<ToricFano> {
        ToricFano::new(self.to_fan()?)
    }
}

pub fn load_fan_spec(path: &Path) -> Result<FanSpec> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    FanSpec::parse(&text)
}

/// Reads, parses and validates a fan document.
pub fn load_fan(path: &Path) -> Result<(FanSpec, ToricFano)> {
    let spec = load_fan_spec(path)?;
    let variety = spec.to_variety()?;
    Ok((spec, variety))
}
