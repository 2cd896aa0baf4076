//! The three reducers behind one selector.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::graph::MultiGraph;
use crate::planar::{reduce_planar_with, LedgerState, PlanarError, PlanarOptions};
use crate::pseudoforest::reduce_pseudoforest;
use crate::solution::ReductionSolution;
use crate::treewidth2::reduce_treewidth2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    Pseudoforest,
    Treewidth2,
    Planar,
}

impl Algorithm {
    pub const ALL: [Algorithm; 3] = [
        Algorithm::Pseudoforest,
        Algorithm::Treewidth2,
        Algorithm::Planar,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Pseudoforest => "pseudoforest",
            Algorithm::Treewidth2 => "tw2",
            Algorithm::Planar => "planar",
        }
    }

    /// Runs the reducer; the ledger is present for [`Algorithm::Planar`] only.
    pub fn run(
        self,
        g: &MultiGraph,
        planar: &PlanarOptions,
    ) -> Result<(ReductionSolution, Option<LedgerState>), PlanarError> {
        Ok(match self {
            Algorithm::Pseudoforest => (reduce_pseudoforest(g), None),
            Algorithm::Treewidth2 => (reduce_treewidth2(g), None),
            Algorithm::Planar => {
                let run = reduce_planar_with(g, planar)?;
                (run.solution, Some(run.ledger))
            }
        })
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "pseudoforest" | "pf" => Ok(Algorithm::Pseudoforest),
            "tw2" | "treewidth2" => Ok(Algorithm::Treewidth2),
            "planar" => Ok(Algorithm::Planar),
            _ => Err(format!(
                "unknown algorithm {s:?} (expected pseudoforest, tw2 or planar)"
            )),
        }
    }
}
