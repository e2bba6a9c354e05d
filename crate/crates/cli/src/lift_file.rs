//! On-disk lift format.

use crsphere_core::surface_algebra::PolyVector;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Family {
    Phi1,
    Family { k: u32, l: u32, t: f64, minimal: bool },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LiftFile {
    pub id: String,
    pub family: Family,
    pub n: usize,
    pub e0: PolyVector,
}

impl Family {
    pub fn id(&self) -> String {
        match self {
            Family::Phi1 => "phi1".to_owned(),
            Family::Family { k, l, minimal: true, .. } => format!("family_k{k}_l{l}_minimal"),
            Family::Family { k, l, t, minimal: false } => format!("family_k{k}_l{l}_t{t}"),
        }
    }
}
