//! Large induced pseudoforests, partial 2-trees and planar subgraphs in
//! sparse graphs, with certificates, exact oracles and LP tooling.

pub mod algorithm;
pub mod certify;
pub mod generators;
pub mod graph;
pub mod io;
pub mod lp;
pub mod minors;
pub mod oracle;
pub mod planar;
pub mod pseudoforest;
pub mod rational;
pub mod solution;
pub mod treewidth2;

pub use algorithm::Algorithm;
pub use certify::{verdicts, ComponentClass, Verdicts};
pub use generators::{generate, FamilySpec, Fixture, GenError};
pub use graph::{Girth, GraphError, MultiGraph, VertexId};
pub use lp::{check_feasible, solve, Assignment, LpError, LpSolution, RationalLp};
pub use minors::{level_contract, verify_minor_density, DensityReport, MinorError, MinorResult};
pub use oracle::{max_induced, MaxInduced, OracleError, PropertyId};
pub use planar::{
    reduce_planar, reduce_planar_with, ChargeParams, PlanarError, PlanarOptions, PlanarRun,
};
pub use pseudoforest::reduce_pseudoforest;
pub use rational::Rational;
pub use solution::{replay, Bound, Case, ReductionSolution, TraceError, TraceStep};
pub use treewidth2::reduce_treewidth2;
