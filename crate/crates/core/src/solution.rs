//! Reduction output shared by the three reducers, and trace replay.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{GraphError, MultiGraph, VertexId};
use crate::rational::Rational;

/// Case labels of all three reducers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Case {
    Preprocess,
    HarvestIsolated,
    // pseudoforest
    Leaf,
    Deg2NoTriangle,
    DeltaA,
    DeltaB,
    DeltaC,
    DeltaD,
    Deg3AdjDeg4,
    ThreeRegular,
    FourRegA,
    FourRegB,
    FourRegC1,
    FourRegC2,
    FourRegC3,
    FourRegC4,
    // treewidth 2
    ContractDeg12,
    DeleteAdjDeg3,
    DeleteMaxDeg,
    // planar
    ContractLowDegree,
    Planar,
    PlanarThreeRegular,
    DegreeFive,
    MixedDegrees,
    FourRegular,
}

/// One reduction step. Within a step, mutations happen in field order:
/// deletions, contractions (absorbed vertex into survivor), optional
/// simplification at the survivors, then removal of the `s_added`
/// vertices still present.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub case: Case,
    pub deleted: Vec<VertexId>,
    pub contracted: Vec<(VertexId, VertexId)>,
    /// Edge units that left with deleted vertices or with vertices accepted into S.
    pub removed_edges: usize,
    /// Loop and surplus parallel units removed by simplification.
    pub simplified: usize,
    pub s_added: Vec<VertexId>,
}

impl TraceStep {
    pub fn new(case: Case) -> Self {
        TraceStep {
            case,
            deleted: Vec::new(),
            contracted: Vec::new(),
            removed_edges: 0,
            simplified: 0,
            s_added: Vec::new(),
        }
    }

    /// Edge units consumed: removed, contracted or simplified away.
    pub fn edge_events(&self) -> usize {
        self.removed_edges + self.contracted.len() + self.simplified
    }
}

/// Guarantee `|S| >= n - num/den * m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bound {
    pub num: u64,
    pub den: u64,
}

impl Bound {
    pub const PSEUDOFOREST: Bound = Bound { num: 2, den: 9 };
    pub const TREEWIDTH2: Bound = Bound { num: 1, den: 5 };
    pub const PLANAR: Bound = Bound { num: 23, den: 120 };

    /// `den·|S| ≥ den·n − num·m` in exact integers.
    pub fn holds(&self, n: usize, m: usize, s: usize) -> bool {
        let den = self.den as i128;
        den * s as i128 >= den * n as i128 - self.num as i128 * m as i128
    }

    /// `n - num·m/den` as an exact rational.
    pub fn value(&self, n: usize, m: usize) -> Rational {
        Rational::from_integer(n as i64)
            - Rational::new(self.num as i64 * m as i64, self.den as i64)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionSolution {
    pub s: BTreeSet<VertexId>,
    pub bound: Bound,
    pub trace: Vec<TraceStep>,
}

impl ReductionSolution {
    pub fn new(bound: Bound) -> Self {
        ReductionSolution {
            s: BTreeSet::new(),
            bound,
            trace: Vec::new(),
        }
    }

    pub fn satisfies_bound(&self, g: &MultiGraph) -> bool {
        self.bound.holds(g.n(), g.m(), self.s.len())
    }

    pub fn deleted_count(&self) -> usize {
        self.trace.iter().map(|t| t.deleted.len()).sum()
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TraceError {
    #[error("trace step {step}: {source}")]
    Graph { step: usize, source: GraphError },
    #[error("trace step {step}: recorded {field} = {recorded}, replay found {replayed}")]
    CountMismatch {
        step: usize,
        field: &'static str,
        recorded: usize,
        replayed: usize,
    },
    #[error("trace step {step}: vertex {vertex} added to S twice or after deletion")]
    BadMembership { step: usize, vertex: VertexId },
    #[error("replay leaves {0} vertices in the graph")]
    Unfinished(usize),
    #[error("replayed S differs from the solution")]
    SetMismatch,
}

/// Totals recomputed by replaying a trace.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ReplayReport {
    pub deleted: usize,
    pub contracted: usize,
    pub removed_edges: usize,
    pub simplified: usize,
    pub s: BTreeSet<VertexId>,
}

impl ReplayReport {
    pub fn edge_events(&self) -> usize {
        self.removed_edges + self.contracted + self.simplified
    }
}

/// Applies `trace` to a copy of `g`, checking every recorded count, and
/// requires that the graph ends empty with S equal to `solution.s`.
pub fn replay(g: &MultiGraph, solution: &ReductionSolution) -> Result<ReplayReport, TraceError> {
    let mut work = g.clone();
    let mut rep = ReplayReport::default();
    let mut gone: BTreeSet<VertexId> = BTreeSet::new();
    for (step, t) in solution.trace.iter().enumerate() {
        let graph_err = |source| TraceError::Graph { step, source };
        let mut removed = 0;
        for &v in &t.deleted {
            removed += work.delete_vertex(v).map_err(graph_err)?;
            gone.insert(v);
        }
        let mut simplified = 0;
        for &(a, b) in &t.contracted {
            work.contract_edge(a, b, b).map_err(graph_err)?;
        }
        if t.simplified > 0 {
            let survivors: BTreeSet<VertexId> = t.contracted.iter().map(|&(_, b)| b).collect();
            for b in survivors {
                simplified += work.simplify_at(b);
            }
        }
        for &v in &t.s_added {
            if gone.contains(&v) || !rep.s.insert(v) {
                return Err(TraceError::BadMembership { step, vertex: v });
            }
            if work.contains(v) {
                removed += work.delete_vertex(v).map_err(graph_err)?;
            }
        }
        for (field, recorded, replayed) in [
            ("removed_edges", t.removed_edges, removed),
            ("simplified", t.simplified, simplified),
        ] {
            if recorded != replayed {
                return Err(TraceError::CountMismatch {
                    step,
                    field,
                    recorded,
                    replayed,
                });
            }
        }
        rep.deleted += t.deleted.len();
        rep.contracted += t.contracted.len();
        rep.removed_edges += removed;
        rep.simplified += simplified;
    }
    if work.n() > 0 {
        return Err(TraceError::Unfinished(work.n()));
    }
    if rep.s != solution.s {
        return Err(TraceError::SetMismatch);
    }
    Ok(rep)
}

/// Aggregate charge `edge_weight · edge_events − delete_weight · deleted`
/// recomputed from a replayed trace.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AggregateCharge {
    pub edge_events: usize,
    pub deleted: usize,
    pub edge_weight: i64,
    pub delete_weight: i64,
    pub total: i64,
}

impl AggregateCharge {
    pub fn new(rep: &ReplayReport, edge_weight: i64, delete_weight: i64) -> Self {
        let total = edge_weight * rep.edge_events() as i64 - delete_weight * rep.deleted as i64;
        AggregateCharge {
            edge_events: rep.edge_events(),
            deleted: rep.deleted,
            edge_weight,
            delete_weight,
            total,
        }
    }

    pub fn non_negative(&self) -> bool {
        self.total >= 0
    }
}
