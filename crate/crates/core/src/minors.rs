//! Level contraction of a BFS spanning tree: a simple minor of a
//! high-girth graph with few vertices and exactly `m - n + n'` edges.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Girth, GraphError, MultiGraph, VertexId};
use crate::rational::Rational;

/// Smallest girth for which `ell = (g - 3) / 4` is positive.
pub const MIN_GIRTH: usize = 7;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MinorError {
    #[error("girth {0} is below {MIN_GIRTH}")]
    InsufficientGirth(usize),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph has no cycle")]
    Acyclic,
    #[error("input must be simple")]
    NotSimple,
    #[error("graph is empty")]
    Empty,
    #[error("root {0} is not a vertex")]
    BadRoot(VertexId),
    #[error("minor invariant violated: {0}")]
    Invariant(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Clone, Debug)]
pub struct MinorResult {
    pub minor: MultiGraph,
    pub girth: usize,
    pub ell: usize,
    pub offset_a: usize,
    pub root: VertexId,
    /// Kept vertices, sorted. These are the minor's vertex ids.
    pub kept: Vec<VertexId>,
    /// Every input vertex mapped to the kept vertex it was contracted into.
    pub branch: BTreeMap<VertexId, VertexId>,
    pub n: usize,
    pub m: usize,
    pub n_prime: usize,
    pub m_prime: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DensityReport {
    pub n: usize,
    pub m: usize,
    pub girth: usize,
    pub ell: usize,
    pub n_prime: usize,
    pub m_prime: usize,
    pub surplus: i64,
    /// `surplus * g / n`.
    pub ratio: Rational,
    pub level_bound: usize,
    pub girth_bound: usize,
    pub girth_bound_holds: bool,
}

fn ceil_div(a: usize, b: usize) -> usize {
    a.div_ceil(b)
}

pub fn level_contract(g: &MultiGraph, root: Option<VertexId>) -> Result<MinorResult, MinorError> {
    if g.n() == 0 {
        return Err(MinorError::Empty);
    }
    if !g.is_simple() {
        return Err(MinorError::NotSimple);
    }
    let root = match root {
        Some(r) if g.contains(r) => r,
        Some(r) => return Err(MinorError::BadRoot(r)),
        None => g.vertices().next().expect("nonempty"),
    };
    if g.components().len() > 1 {
        return Err(MinorError::Disconnected);
    }
    let girth = match g.girth() {
        Girth::Infinite => return Err(MinorError::Acyclic),
        Girth::Finite(x) if x < MIN_GIRTH => return Err(MinorError::InsufficientGirth(x)),
        Girth::Finite(x) => x,
    };
    let ell = (girth - 3) / 4;

    let mut dist = BTreeMap::new();
    let mut parent = BTreeMap::new();
    let mut order = Vec::with_capacity(g.n());
    let mut queue = VecDeque::from([root]);
    dist.insert(root, 0usize);
    while let Some(u) = queue.pop_front() {
        order.push(u);
        let du = dist[&u];
        for w in g.adjacent(u) {
            if let std::collections::btree_map::Entry::Vacant(e) = dist.entry(w) {
                e.insert(du + 1);
                parent.insert(w, u);
                queue.push_back(w);
            }
        }
    }

    let keeps = |a: usize, v: VertexId| v == root || dist[&v] % ell == a;
    let offset_a = (0..ell)
        .min_by_key(|&a| (order.iter().filter(|&&v| keeps(a, v)).count(), a))
        .expect("ell >= 1");

    let mut branch = BTreeMap::new();
    for &v in &order {
        let b = if keeps(offset_a, v) {
            v
        } else {
            branch[&parent[&v]]
        };
        branch.insert(v, b);
    }

    let mut minor = g.clone();
    for &v in order.iter().rev() {
        if !keeps(offset_a, v) {
            let p = parent[&v];
            minor.contract_edge(p, v, p)?;
        }
    }
    let kept: Vec<VertexId> = minor.vertices().collect();
    let result = MinorResult {
        n_prime: minor.n(),
        m_prime: minor.m(),
        minor,
        girth,
        ell,
        offset_a,
        root,
        kept,
        branch,
        n: g.n(),
        m: g.m(),
    };
    check_result(g, &result)?;
    Ok(result)
}

/// Re-derives the minor from `branch` and checks simplicity, the edge count
/// and the size bound.
pub fn check_result(g: &MultiGraph, r: &MinorResult) -> Result<(), MinorError> {
    let bad = |s: String| Err(MinorError::Invariant(s));
    if !r.minor.is_simple() {
        return bad("minor is not simple".into());
    }
    if r.m_prime + r.n != r.m + r.n_prime {
        return bad(format!(
            "m' = {} but m - n + n' = {}",
            r.m_prime,
            r.m as i64 - r.n as i64 + r.n_prime as i64
        ));
    }
    if r.n_prime > ceil_div(r.n, r.ell) + 1 {
        return bad(format!("n' = {} exceeds ceil(n/ell) + 1", r.n_prime));
    }
    let kept: BTreeSet<VertexId> = r.kept.iter().copied().collect();
    if r.branch.values().any(|b| !kept.contains(b)) {
        return bad("branch target is not kept".into());
    }
    let mut relabeled = BTreeMap::new();
    for (u, w, k) in g.edges() {
        let (a, b) = (r.branch[&u], r.branch[&w]);
        if a != b {
            *relabeled.entry((a.min(b), a.max(b))).or_insert(0) += k;
        }
    }
    let actual: BTreeMap<_, _> = r
        .minor
        .edges()
        .into_iter()
        .map(|(u, w, k)| ((u, w), k))
        .collect();
    if relabeled != actual {
        return bad("minor edges differ from the relabeled input edges".into());
    }
    Ok(())
}

pub fn verify_minor_density(r: &MinorResult) -> DensityReport {
    let surplus = r.m_prime as i64 - r.n_prime as i64;
    let girth_bound = ceil_div(5 * r.n, r.girth) + 1;
    DensityReport {
        n: r.n,
        m: r.m,
        girth: r.girth,
        ell: r.ell,
        n_prime: r.n_prime,
        m_prime: r.m_prime,
        surplus,
        ratio: Rational::new(surplus * r.girth as i64, r.n as i64),
        level_bound: ceil_div(r.n, r.ell) + 1,
        girth_bound,
        girth_bound_holds: r.n_prime <= girth_bound,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, cycle, fixture, path, Fixture};

    #[test]
    fn c19_contracts_to_short_cycle() {
        let r = level_contract(&cycle(19).unwrap(), None).unwrap();
        assert_eq!(r.ell, 4);
        assert!(r.n_prime <= 5);
        assert_eq!(r.m_prime, r.n_prime);
        assert_eq!(verify_minor_density(&r).surplus, 0);
    }

    #[test]
    fn mcgee_is_identity() {
        let g = fixture(Fixture::McGee);
        let r = level_contract(&g, None).unwrap();
        assert_eq!(r.ell, 1);
        assert_eq!(r.minor, g);
    }

    #[test]
    fn tutte_coxeter_surplus() {
        let r = level_contract(&fixture(Fixture::TutteCoxeter), None).unwrap();
        assert_eq!((r.n_prime, r.m_prime), (30, 45));
        assert_eq!(verify_minor_density(&r).surplus, 15);
    }

    #[test]
    fn rejections() {
        assert_eq!(
            level_contract(&fixture(Fixture::Petersen), None).unwrap_err(),
            MinorError::InsufficientGirth(5)
        );
        assert_eq!(
            level_contract(&path(5), None).unwrap_err(),
            MinorError::Acyclic
        );
        assert_eq!(
            level_contract(&complete(4), None).unwrap_err(),
            MinorError::InsufficientGirth(3)
        );
        let two = crate::generators::disjoint_copies(&cycle(9).unwrap(), 2);
        assert_eq!(
            level_contract(&two, None).unwrap_err(),
            MinorError::Disconnected
        );
        assert_eq!(
            level_contract(&MultiGraph::default(), None).unwrap_err(),
            MinorError::Empty
        );
    }

    #[test]
    fn explicit_root() {
        let g = cycle(31).unwrap();
        let r = level_contract(&g, Some(VertexId(7))).unwrap();
        assert_eq!(r.root, VertexId(7));
        assert!(r.kept.contains(&VertexId(7)));
        assert!(matches!(
            level_contract(&g, Some(VertexId(99))),
            Err(MinorError::BadRoot(_))
        ));
    }
}
